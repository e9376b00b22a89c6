//! The ten acceptance criteria, evaluated in one run with one PASS/FAIL line
//! per criterion written straight to stderr (so it shows without
//! `--nocapture`).

use std::io::Write;
use std::time::{Duration, Instant};

use koszul::dwl::{self, bsv_contraction};
use koszul::enumerate::{monomial_words, words};
use koszul::envelope::{self, commutator_constant, pbw_check, Envelope};
use koszul::fixtures::{self, contraction_spaces};
use koszul::gauss_manin::{envelope_cochain_table, GaussManin, Normalization};
use koszul::lin::{Basis, Lin};
use koszul::linf::LInf;
use koszul::monomial::{self, monomials_upto, Ext, Sym, SymMono};
use koszul::omega::OWord;
use koszul::report::{IdentityCheck, SuiteReport};
use koszul::scalar::{self, ratio};
use koszul::suites::{self, Options, Suite};
use koszul::word::{Bar, BarWord, Cobar};

const W: usize = 5;

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn from_checks<'a>(cs: impl IntoIterator<Item = &'a IdentityCheck>, extra: &str) -> Self {
        let mut n = 0;
        let mut bad = Vec::new();
        for c in cs {
            n += 1;
            if !c.holds {
                bad.push(format!("{} ({})", c.id, c.counterexample.clone().unwrap_or_default()));
            }
        }
        let detail = if bad.is_empty() { format!("{n} identities hold{extra}") } else { format!("failing: {}", bad.join("; ")) };
        Verdict { passed: bad.is_empty() && n > 0, detail }
    }
}

fn line(n: usize, title: &str, v: &Verdict) {
    let mark = if v.passed { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    writeln!(err, "criterion {n:>2} [{mark}] {title}: {}", v.detail).unwrap();
}

fn bar_reports() -> (Vec<SuiteReport>, Duration) {
    let start = Instant::now();
    let reports = contraction_spaces()
        .into_iter()
        .map(|(_, v)| suites::run(Suite::Bar, &fixtures::abelian(v), Options { weight: W, ..Options::default() }).unwrap())
        .collect();
    (reports, start.elapsed())
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut checks = Vec::new();
    for (_, v) in contraction_spaces() {
        let ws = monomial_words::<Bar, Sym>(&v, W);
        let ys = monomials_upto::<Ext>(&v, W);
        checks.extend(bsv_contraction(v.clone()).check(&ws, &ys, "weight ≤ 5"));
    }
    let t = start.elapsed();
    let mut v = Verdict::from_checks(&checks, &format!(" in {:.1}s", t.as_secs_f64()));
    if t > Duration::from_secs(120) {
        v.passed = false;
        v.detail = format!("runtime {:.1}s exceeds two minutes", t.as_secs_f64());
    }
    v
}

fn criterion_2(reports: &[SuiteReport]) -> Verdict {
    let ids = [
        "bar: [δ,ξ] = ρ − λ",
        "bar: [δ,λ] = 0",
        "bar: [ξ,λ] = 0",
        "bar: ξ² = 0",
        "bar: ξ is a shuffle derivation",
        "bar: (λ)_k = k! p on length k",
        "bar: (λ)_{k+1} = 0 on length k",
    ];
    let picked: Vec<&IdentityCheck> = reports.iter().flat_map(|r| r.identities.iter()).filter(|c| ids.contains(&c.id.as_str())).collect();
    assert_eq!(picked.len(), ids.len() * reports.len());
    Verdict::from_checks(picked, " on ℚx, V₂, V₂ with dx = y")
}

fn criterion_3() -> Verdict {
    let mut checks = Vec::new();
    for (name, v) in contraction_spaces() {
        let ws = monomial_words::<Bar, Sym>(&v, W);
        checks.push(IdentityCheck::zero_residual(format!("h explicit = spectral on {name}"), "weight ≤ 5", &ws, |w| {
            dwl::h_explicit(&v, w) - dwl::h_spectral(&v, w)
        }));
    }
    let words: usize = checks.iter().map(|c| c.checked).sum();
    Verdict::from_checks(&checks, &format!(", {words} basis words"))
}

fn criterion_4() -> Verdict {
    let mut checks = Vec::new();
    for (_, v) in contraction_spaces() {
        let r = suites::run(Suite::Cobar, &fixtures::abelian(v), Options { weight: W, ..Options::default() }).unwrap();
        checks.extend(r.identities.into_iter().filter(|c| c.id.starts_with("cobar: ")));
    }
    Verdict::from_checks(&checks, " on Ω∧V")
}

fn sm(l: &LInf, names: &[&str]) -> SymMono {
    let (c, m) = monomial::sym_normalize(l.space(), names).unwrap().unwrap();
    assert_eq!(c, scalar::one());
    m
}

/// Criterion 5 as stated: `x ↦ ½x` and `e∗f − f∗e = 2h`.
fn criterion_5() -> Verdict {
    let mut failing = Vec::new();
    for (name, l) in [("sl₂", fixtures::sl2()), ("h₃", fixtures::heisenberg())] {
        let env = Envelope::new(l);
        let r = pbw_check(&env, 4, ratio(1, 2)).unwrap();
        for c in r.checks.iter().filter(|c| !c.holds) {
            failing.push(format!("{name} at x ↦ ½x: {}", c.id));
        }
        for (d, k, rank, dim) in &r.ranks {
            if rank != dim {
                failing.push(format!("{name}: rank {rank} ≠ {dim} in degree {d}, filtration {k}"));
            }
        }
    }
    let l = fixtures::sl2();
    let env = Envelope::new(l.clone());
    let (e, f, h) = (sm(&l, &["e"]), sm(&l, &["f"]), sm(&l, &["h"]));
    let comm = env.star(&e, &f) - env.star(&f, &e);
    if comm != Lin::term(h, scalar::int(2)) {
        let shown: Vec<String> = comm.iter().map(|(m, c)| format!("{}·{}", scalar::format(c), m.render(l.space()))).collect();
        failing.push(format!("e∗f − f∗e = {}, not 2h", shown.join(" + ")));
    }
    if failing.is_empty() {
        Verdict { passed: true, detail: "x ↦ ½x is an isomorphism for sl₂ and h₃, e∗f − f∗e = 2h".into() }
    } else {
        Verdict { passed: false, detail: failing.join("; ") }
    }
}

/// The measured form of criterion 5: the commutator constant is 1, so
/// `x ↦ x` is the isomorphism.
fn criterion_5_measured() {
    for l in [fixtures::sl2(), fixtures::heisenberg()] {
        let env = Envelope::new(l);
        assert_eq!(commutator_constant(&env), Some(scalar::one()));
        let half = pbw_check(&env, 4, ratio(1, 2)).unwrap();
        assert!(!half.checks[0].holds, "relations at x ↦ ½x");
        let one = pbw_check(&env, 4, scalar::one()).unwrap();
        assert!(one.passed(), "{one:?}");
    }
    let l = fixtures::sl2();
    let env = Envelope::new(l.clone());
    let (e, f, h) = (sm(&l, &["e"]), sm(&l, &["f"]), sm(&l, &["h"]));
    assert_eq!(env.star(&e, &f) - env.star(&f, &e), Lin::basis(h.clone()));
    assert_eq!(env.star(&e, &f), Lin::basis(sm(&l, &["e", "f"])) + Lin::term(h, ratio(1, 2)));
}

fn criterion_6() -> Verdict {
    let env = Envelope::new(fixtures::l3());
    let stasheff = env.stasheff(4);
    let top = env.top_arity(4);
    let mut v = Verdict::from_checks([&stasheff], &format!(", highest nonzero m_k has k = {top}"));
    if top < 3 {
        v.passed = false;
        v.detail = format!("only m₂ is nonzero up to weight 4; {}", v.detail);
    }
    v
}

fn criterion_7() -> Verdict {
    let mut checks = Vec::new();
    for l in [fixtures::sl2(), fixtures::l3()] {
        let n = 3;
        let env = Envelope::new(l.clone());
        let mut by_weight: Vec<Vec<OWord>> = vec![Vec::new(); n + 1];
        for w in monomial_words::<Cobar, Ext>(l.space(), n) {
            by_weight[w.weight()].push(w);
        }
        let bx: Vec<BarWord<OWord>> = words::<Bar, OWord>(&by_weight, n).into_iter().filter(|w| w.len() <= 3).collect();
        let by: Vec<BarWord<SymMono>> = env.bsl_words(n).into_iter().filter(|w| w.len() <= 3).collect();
        checks.extend(env.transfer.checks(&bx, &by, "bar length ≤ 3, weight ≤ 3"));
    }
    Verdict::from_checks(&checks, " for sl₂ and L3")
}

fn criterion_8() -> Verdict {
    let mut checks = Vec::new();
    for (_, v) in contraction_spaces() {
        let r = suites::run(Suite::Appendix, &fixtures::abelian(v), Options { weight: 4, ..Options::default() }).unwrap();
        checks.extend(r.identities);
    }
    Verdict::from_checks(&checks, "; f₊, g₊ compared through the sign φ")
}

fn criterion_9() -> (Verdict, Normalization) {
    let l = fixtures::sl2();
    let gm = GaussManin::new(l.clone(), 1).unwrap();
    let env = Envelope::new(l);
    let cochain = gm.cochain_checks(&env, 3);
    let norm = Normalization::from_checks(&gm.checks(3));
    let mut v = Verdict::from_checks(&cochain, "");
    let resolved = !norm.p_eps && norm.fitting;
    v.passed &= resolved;
    v.detail = format!("{}; normalization: {}", v.detail, norm.verdict);
    (v, norm)
}

fn criterion_10() -> Verdict {
    let render = || {
        let l = fixtures::sl2();
        let opts = Options { weight: 3, u_trunc: 1, seed: 11 };
        let verify = serde_json::to_string_pretty(&suites::run(Suite::Bar, &l, opts).unwrap()).unwrap();
        let env = Envelope::new(l.clone());
        let pbw = serde_json::to_string_pretty(&envelope::structure(&env, 3).unwrap()).unwrap();
        let gm = serde_json::to_string_pretty(&envelope_cochain_table(&env, 3)).unwrap();
        (verify, pbw, gm)
    };
    let (a, b) = (render(), render());
    let passed = a == b;
    Verdict {
        passed,
        detail: if passed { "verify, pbw and cochain reports byte-identical across runs".into() } else { "reports differ".into() },
    }
}

#[test]
fn acceptance_criteria() {
    let (bar, _) = bar_reports();
    let c1 = criterion_1();
    line(1, "contraction BSV → ∧V, weight ≤ 5", &c1);
    let c2 = criterion_2(&bar);
    line(2, "dWL identity and corollaries, weight ≤ 5", &c2);
    let c3 = criterion_3();
    line(3, "explicit homotopy = spectral homotopy, weight ≤ 5", &c3);
    let c4 = criterion_4();
    line(4, "dual results on Ω∧V, weight ≤ 5", &c4);
    let c5 = criterion_5();
    line(5, "PBW at x ↦ ½x and e∗f − f∗e = 2h", &c5);
    let c6 = criterion_6();
    line(6, "L∞ envelope of L3, weight ≤ 4", &c6);
    let c7 = criterion_7();
    line(7, "tensor trick over the envelope pipeline, bar length ≤ 3", &c7);
    let c8 = criterion_8();
    line(8, "Koszul resolution identities, weight ≤ 4", &c8);
    let (c9, norm) = criterion_9();
    line(9, "Gauss–Manin cochain for sl₂, K = 1, weight ≤ 3", &c9);
    let c10 = criterion_10();
    line(10, "deterministic reports", &c10);

    for (n, c) in [(1, &c1), (2, &c2), (3, &c3), (4, &c4), (6, &c6), (7, &c7), (8, &c8), (9, &c9), (10, &c10)] {
        assert!(c.passed, "criterion {n}: {}", c.detail);
    }
    // criterion 5 fails as stated; pin down exactly how
    assert!(!c5.passed);
    assert!(c5.detail.contains("pbw: relations"), "{}", c5.detail);
    assert!(c5.detail.contains("not 2h"), "{}", c5.detail);
    criterion_5_measured();
    // the normalization: 1 − p_ε fails for sl₂ because ker Θ exceeds SL
    assert!(!norm.one_minus_p_eps && !norm.kernel_is_sl);
}
