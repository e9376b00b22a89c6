//! `koszul verify|pbw|gm`: runs the verification suites and writes
//! deterministic JSON reports. Exit code 0 on success, 1 when an identity
//! fails, 2 on bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use koszul::envelope::{self, Envelope, EnvelopeStructure};
use koszul::error::Error;
use koszul::fixtures;
use koszul::gauss_manin::{envelope_cochain_table, CochainEntry, Normalization};
use koszul::linf::LInf;
use koszul::report::{IdentityCheck, SuiteReport};
use koszul::suites::{self, Options, Suite};

#[derive(Parser)]
#[command(name = "koszul", version, about = "Exact verification of bar/cobar contractions, envelopes and Gauss–Manin data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an identity suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        common: Common,
        /// Truncation in powers of u for the cone and Gauss–Manin checks.
        #[arg(long, default_value_t = 1)]
        u_trunc: u32,
        /// Seed for the random-element layer.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Structure constants of the enveloping A∞-algebra and the PBW comparison.
    Pbw {
        #[command(flatten)]
        common: Common,
    },
    /// The Gauss–Manin twisting cochain, its Maurer–Cartan verdict and the
    /// homotopy normalization.
    Gm {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        u_trunc: u32,
    },
}

#[derive(Args)]
struct Common {
    /// Fixture name or path to a structure JSON file.
    #[arg(long, default_value = "v2")]
    space: String,
    /// Largest weight of the basis words checked.
    #[arg(long, default_value_t = 3)]
    weight: usize,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Bar,
    Cobar,
    Perturbation,
    Appendix,
    Gm,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Bar => Suite::Bar,
            SuiteArg::Cobar => Suite::Cobar,
            SuiteArg::Perturbation => Suite::Perturbation,
            SuiteArg::Appendix => Suite::Appendix,
            SuiteArg::Gm => Suite::Gm,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    /// One line per identity.
    Text,
}

/// Failures of the command itself, as opposed to failing identities.
#[derive(Debug)]
enum Failure {
    Input(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidInput(_) | Error::Truncation(_) => Failure::Input(e.to_string()),
            other => Failure::Compute(other.to_string()),
        }
    }
}

fn load(space: &str) -> Result<LInf, Failure> {
    if let Some(l) = fixtures::lie_by_name(&space.to_lowercase()) {
        return Ok(l);
    }
    let path = Path::new(space);
    if !path.is_file() {
        return Err(Failure::Input(format!(
            "{space:?} is neither a fixture ({}) nor a readable file",
            fixtures::NAMES.join(", ")
        )));
    }
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{space}: {e}")))?;
    LInf::parse_json(&text).map_err(|e| Failure::Input(format!("{space}: {e}")))
}

#[derive(Serialize)]
struct PbwOutput {
    fixture: String,
    structure: EnvelopeStructure,
    iso: IsoVerdict,
    /// The envelope twisting cochain `BS∗L → ΩCL`.
    cochain: Vec<CochainEntry>,
}

#[derive(Serialize)]
struct IsoVerdict {
    /// `pass`, `fail` or `skipped`, for `x ↦ ½x`.
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    /// Scales `c` for which `x ↦ c·x` is an isomorphism `UL → S∗L`.
    holds_at: Vec<String>,
}

#[derive(Serialize)]
struct GmOutput {
    fixture: String,
    u_trunc: u32,
    weight: usize,
    maurer_cartan: &'static str,
    normalization: Normalization,
    cochain: Vec<CochainEntry>,
    report: SuiteReport,
}

struct Outcome {
    json: String,
    text: String,
    passed: bool,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn check_lines(cs: &[IdentityCheck], tag: &str, out: &mut String) {
    for c in cs {
        let mark = if c.holds { "ok  " } else { "FAIL" };
        out.push_str(&format!("{tag}{mark} {} [{}; {} checked]\n", c.id, c.truncation, c.checked));
        if let Some(ce) = &c.counterexample {
            out.push_str(&format!("       counterexample: {ce}\n"));
        }
    }
}

fn report_text(r: &SuiteReport) -> String {
    let mut out = format!("suite {} (seed {}): {}\n", r.suite, r.seed, if r.passed() { "pass" } else { "FAIL" });
    check_lines(&r.identities, "", &mut out);
    check_lines(&r.findings, "finding ", &mut out);
    for n in &r.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out
}

fn verify(suite: Suite, common: &Common, u_trunc: u32, seed: u64) -> Result<Outcome, Failure> {
    let l = load(&common.space)?;
    let report = suites::run(suite, &l, Options { weight: common.weight, u_trunc, seed })?;
    Ok(Outcome { json: to_json(&report), text: report_text(&report), passed: report.passed() })
}

fn pbw(common: &Common) -> Result<Outcome, Failure> {
    let l = load(&common.space)?;
    if common.weight < 2 {
        return Err(Failure::Input("pbw needs --weight ≥ 2".into()));
    }
    let env = Envelope::new(l.clone());
    let structure = envelope::structure(&env, common.weight)?;
    let iso = if structure.dg_lie {
        let half = structure.pbw.first().is_some_and(|p| p.holds);
        IsoVerdict {
            status: if half { "pass" } else { "fail" },
            reason: None,
            holds_at: structure.pbw.iter().filter(|p| p.holds).map(|p| p.scale.clone()).collect(),
        }
    } else {
        IsoVerdict { status: "skipped", reason: Some("not dg Lie".into()), holds_at: Vec::new() }
    };
    let passed = structure.identities.iter().all(|c| c.holds) && iso.status != "fail";
    let mut text = format!("envelope of {} up to weight {}\n", common.space, common.weight);
    for p in &structure.products {
        let out: Vec<String> = p.output.iter().map(|t| format!("{}·{}", t.coeff, t.word)).collect();
        text.push_str(&format!("m{}({}) = {}\n", p.arity, p.inputs.join(", "), out.join(" + ")));
    }
    check_lines(&structure.identities, "", &mut text);
    for p in &structure.pbw {
        check_lines(&p.identities, &format!("scale {}: ", p.scale), &mut text);
    }
    text.push_str(&format!("PBW isomorphism at x ↦ ½x: {}", iso.status));
    if let Some(r) = &iso.reason {
        text.push_str(&format!(" ({r})"));
    }
    text.push('\n');
    let cochain = envelope_cochain_table(&env, common.weight);
    let out = PbwOutput { fixture: common.space.clone(), structure, iso, cochain };
    Ok(Outcome { json: to_json(&out), text, passed })
}

fn gm(common: &Common, u_trunc: u32) -> Result<Outcome, Failure> {
    let l = load(&common.space)?;
    let run = suites::gm_run(&l, Options { weight: common.weight, u_trunc, seed: 0 })?;
    let mc = run.report.identities.iter().find(|c| c.id == "gm: Maurer–Cartan residual of t").is_some_and(|c| c.holds);
    let out = GmOutput {
        fixture: common.space.clone(),
        u_trunc,
        weight: common.weight,
        maurer_cartan: if mc { "residual zero" } else { "residual nonzero" },
        normalization: run.normalization,
        cochain: run.cochain,
        report: run.report,
    };
    let mut text = format!("Maurer–Cartan: {}\nnormalization: {}\n", out.maurer_cartan, out.normalization.verdict);
    for e in &out.cochain {
        for c in &e.by_u {
            let terms: Vec<String> = c.terms.iter().map(|t| format!("{}·{}", t.coeff, t.word)).collect();
            text.push_str(&format!("t{} [u^{}] = {}\n", e.input, c.u, terms.join(" + ")));
        }
    }
    text.push_str(&report_text(&out.report));
    Ok(Outcome { passed: out.report.passed(), json: to_json(&out), text })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = match &cli.command {
        Command::Verify { suite, common, u_trunc, seed } => (common, verify((*suite).into(), common, *u_trunc, *seed)),
        Command::Pbw { common } => (common, pbw(common)),
        Command::Gm { common, u_trunc } => (common, gm(common, *u_trunc)),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(1);
        }
    };
    let body = match common.format {
        Format::Json => &outcome.json,
        Format::Text => &outcome.text,
    };
    match &common.out {
        Some(path) => {
            if let Err(e) = fs::write(path, body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
            eprintln!("{}", if outcome.passed { "pass" } else { "FAIL" });
        }
        None => print!("{body}"),
    }
    ExitCode::from(if outcome.passed { 0 } else { 1 })
}
