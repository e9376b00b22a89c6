//! The universal enveloping `A∞`-algebra of an `L∞`-algebra `L`: the
//! contraction of `Ω∧L` onto `SL` is perturbed by the brackets, then the
//! tensor trick transfers the product of `ΩCL` to an `A∞` structure on
//! `SL`. For a dg Lie algebra this is a dg algebra `S∗L`, and `x ↦ ½x`
//! identifies `UL` with it.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::bar::bar_d2;
use crate::contraction::{Contraction, Perturbed};
use crate::error::{Error, Result};
use crate::lin::{Basis, Lin};
use crate::linalg;
use crate::linf::LInf;
use crate::monomial::{self, monomials_upto, Sym, SymMono};
use crate::omega::{omega_contraction, CobarCe, OWord};
use crate::operator::Op;
use crate::report::IdentityCheck;
use crate::scalar::{self, ratio, Scalar};
use crate::sign::odd;
use crate::space::Gen;
use crate::tensor_trick::{bar_contraction, letterwise_odd, Transfer};
use crate::word::BarWord;

pub type BOWord = BarWord<OWord>;
pub type BSWord = BarWord<SymMono>;

fn sgn(e: i64) -> Scalar {
    scalar::sign(odd(e))
}

/// The envelope pipeline for one `L∞`-algebra.
pub struct Envelope {
    pub l: LInf,
    pub ce: Arc<CobarCe>,
    /// `(Ω∧L, SL, f, g, h)`.
    pub letters: Contraction<OWord, SymMono>,
    /// `(BΩ∧L, BSL, 𝖿, 𝗀, 𝗁)` perturbed by `δ_B + μ`.
    pub transfer: Transfer<OWord, SymMono>,
}

impl Envelope {
    pub fn new(l: LInf) -> Self {
        let ce = Arc::new(CobarCe::new(l.clone()));
        let letters = omega_contraction(l.space().clone());
        let bar = bar_contraction(&letters);
        let pert = Self::perturbation(&ce, bar.dx.domain());
        let transfer = Transfer::new(bar, &pert);
        Envelope { l, ce, letters, transfer }
    }

    /// `δ_B + μ` on `BΩCL`.
    fn perturbation(ce: &Arc<CobarCe>, dom: &str) -> Op<BOWord> {
        let c1 = ce.clone();
        let mu_letters = Op::new(1, "ΩCL", "ΩCL", move |w: &OWord| c1.mu(w));
        let c2 = ce.clone();
        Op::new(1, dom, dom, move |w: &BOWord| bar_d2(&*c2, w) + letterwise_odd(&mu_letters, w))
    }

    /// The letter contraction perturbed by `μ` alone: `(ΩCL, SL, f*, g, h*)`.
    pub fn perturbed_letters(&self) -> Perturbed<OWord, SymMono> {
        let ce = self.ce.clone();
        let dom = self.letters.dx.domain().to_string();
        self.letters.perturb(&Op::new(1, dom.as_str(), dom.as_str(), move |w: &OWord| ce.mu(w)))
    }

    /// `∂*` on `BSL`.
    pub fn codifferential(&self) -> &Op<BSWord> {
        self.transfer.codifferential()
    }

    pub fn m(&self, letters: &[SymMono]) -> Lin<SymMono> {
        self.transfer.m(letters)
    }

    /// `x ∗ y = (−1)^{|x|} m₂(x, y)`.
    pub fn star(&self, x: &SymMono, y: &SymMono) -> Lin<SymMono> {
        self.m(&[x.clone(), y.clone()]).scale(&sgn(x.degree() as i64))
    }

    pub fn star_elems(&self, a: &Lin<SymMono>, b: &Lin<SymMono>) -> Lin<SymMono> {
        let mut out = Lin::zero();
        for (x, c) in a.iter() {
            for (y, d) in b.iter() {
                out.add_scaled(&self.star(x, y), &(c * d));
            }
        }
        out
    }

    /// Nonzero structure constants of `m_k` on monomials of total weight
    /// at most `max_weight`.
    pub fn table(&self, k: usize, max_weight: usize) -> Vec<(Vec<SymMono>, Lin<SymMono>)> {
        let letters = monomials_upto::<Sym>(self.l.space(), max_weight);
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.table_rec(k, max_weight, &letters, &mut cur, &mut out);
        out
    }

    fn table_rec(
        &self,
        k: usize,
        left: usize,
        letters: &[SymMono],
        cur: &mut Vec<SymMono>,
        out: &mut Vec<(Vec<SymMono>, Lin<SymMono>)>,
    ) {
        if cur.len() == k {
            let v = self.m(cur);
            if !v.is_zero() {
                out.push((cur.clone(), v));
            }
            return;
        }
        for a in letters {
            if a.weight() + (k - cur.len() - 1) <= left {
                cur.push(a.clone());
                self.table_rec(k, left - a.weight(), letters, cur, out);
                cur.pop();
            }
        }
    }

    /// Bar words on `SL` up to a weight, for the structure checks.
    pub fn bsl_words(&self, max_weight: usize) -> Vec<BSWord> {
        crate::enumerate::monomial_words::<crate::word::Bar, Sym>(self.l.space(), max_weight)
    }

    /// `m∘m = 0`, i.e. `∂*² = 0` on `BSL`.
    pub fn stasheff(&self, max_weight: usize) -> IdentityCheck {
        let d = self.codifferential();
        let ws = self.bsl_words(max_weight);
        IdentityCheck::zero_residual("envelope: m∘m = 0", format!("weight ≤ {max_weight}"), &ws, |w| d.apply(&d.on(w)))
    }

    /// Largest `k` with some `m_k ≠ 0` on words up to the weight.
    pub fn top_arity(&self, max_weight: usize) -> usize {
        (2..=max_weight).filter(|&k| !self.table(k, max_weight).is_empty()).max().unwrap_or(1)
    }

    /// `m_k = 0` for `k ≥ 3` on words up to the weight.
    pub fn higher_vanish(&self, max_weight: usize) -> IdentityCheck {
        let ws: Vec<BSWord> = self.bsl_words(max_weight).into_iter().filter(|w| w.len() >= 3).collect();
        IdentityCheck::zero_residual("envelope: m_k = 0 for k ≥ 3", format!("weight ≤ {max_weight}"), &ws, |w| {
            self.m(w.letters())
        })
    }

    /// The operator form of the simplification for dg Lie algebras:
    /// `𝖿((1+μ𝗁)⁻¹δ_B𝗁)^j(1+μ𝗁)⁻¹δ_B𝗀 = 0` for `j ≥ 1`.
    pub fn filtration_lemma(&self, max_weight: usize, max_j: usize) -> IdentityCheck {
        let bar = &self.transfer.bar;
        let ce = self.ce.clone();
        let dom = bar.dx.domain().to_string();
        let db = Op::new(1, dom.as_str(), dom.as_str(), move |w: &BOWord| bar_d2(&*ce, w));
        let ce2 = self.ce.clone();
        let mu_l = Op::new(1, "ΩCL", "ΩCL", move |w: &OWord| ce2.mu(w));
        let mu = Op::new(1, dom.as_str(), dom.as_str(), move |w: &BOWord| letterwise_odd(&mu_l, w));
        let inv = crate::contraction::one_plus_inverse(&mu.after(&bar.h).unwrap());
        let step = inv.after(&db).unwrap().after(&bar.h).unwrap();
        let tail = inv.after(&db).unwrap().after(&bar.g).unwrap();
        let ws = self.bsl_words(max_weight);
        IdentityCheck::zero_residual("envelope: f((1+mu h)^-1 dB h)^j (1+mu h)^-1 dB g = 0, j ≥ 1", format!("weight ≤ {max_weight}"), &ws, |w| {
            let mut x = tail.on(w);
            let mut out = Lin::zero();
            for _ in 0..max_j {
                x = step.apply(&x);
                out += &bar.f.apply(&x);
            }
            out
        })
    }
}

/// A PBW word of `UL`: generators in nondecreasing order, odd ones at most
/// once.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct UWord(pub Vec<Gen>);

impl Basis for UWord {
    fn degree(&self) -> i32 {
        self.0.iter().map(|g| g.deg).sum()
    }
    fn weight(&self) -> usize {
        self.0.len()
    }
}

/// The universal enveloping algebra of a dg Lie algebra, with products
/// reduced to PBW words by commutator rewriting.
pub struct Ul {
    l: LInf,
}

impl Ul {
    pub fn new(l: LInf) -> Result<Self> {
        if !l.is_dg_lie() {
            return Err(Error::InvalidInput("universal enveloping algebra needs a dg Lie algebra".into()));
        }
        Ok(Ul { l })
    }

    /// Reduces a word in the generators to PBW normal form.
    pub fn normal_form(&self, raw: &[Gen]) -> Lin<UWord> {
        let mut todo: BTreeMap<Vec<Gen>, Scalar> = BTreeMap::new();
        todo.insert(raw.to_vec(), scalar::one());
        let mut out = Lin::zero();
        while let Some((w, c)) = todo.pop_last() {
            if c == scalar::zero() {
                continue;
            }
            let bad = (1..w.len()).find(|&i| w[i - 1] > w[i] || (w[i - 1] == w[i] && odd(w[i].deg as i64)));
            let Some(i) = bad else {
                out.add_term(UWord(w), c);
                continue;
            };
            let (a, b) = (w[i - 1], w[i]);
            let mut push = |word: Vec<Gen>, k: Scalar| {
                let e = todo.entry(word).or_insert_with(scalar::zero);
                *e += k;
            };
            let br = self.l.bracket(&[a, b]);
            if a == b {
                // a·a = ½[a, a] for odd a
                for (g, k) in br.iter() {
                    let mut v = w[..i - 1].to_vec();
                    v.push(*g);
                    v.extend_from_slice(&w[i + 1..]);
                    push(v, &c * k * ratio(1, 2));
                }
            } else {
                // ab = (−1)^{|a||b|} ba + [a, b]
                let mut v = w.clone();
                v.swap(i - 1, i);
                push(v, &c * sgn(a.deg as i64 * b.deg as i64));
                for (g, k) in br.iter() {
                    let mut v = w[..i - 1].to_vec();
                    v.push(*g);
                    v.extend_from_slice(&w[i + 1..]);
                    push(v, &c * k);
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &UWord, b: &UWord) -> Lin<UWord> {
        let raw: Vec<Gen> = a.0.iter().chain(&b.0).copied().collect();
        self.normal_form(&raw)
    }

    /// PBW words up to a length.
    pub fn pbw_words(&self, max_len: usize) -> Vec<UWord> {
        monomials_upto::<Sym>(self.l.space(), max_len).into_iter().map(|m| UWord(m.gens().to_vec())).collect()
    }
}

/// The comparison `φ : UL → S∗L`, `φ(x) = c·x` on generators, extended
/// multiplicatively along PBW words.
pub struct PbwMap<'a> {
    pub env: &'a Envelope,
    pub scale: Scalar,
}

impl PbwMap<'_> {
    pub fn on_gen(&self, g: Gen) -> Lin<SymMono> {
        Lin::term(SymMono::gen(g), self.scale.clone())
    }

    pub fn on_word(&self, w: &UWord) -> Lin<SymMono> {
        let mut it = w.0.iter();
        let Some(first) = it.next() else {
            return Lin::zero();
        };
        let mut acc = self.on_gen(*first);
        for g in it {
            acc = self.env.star_elems(&acc, &self.on_gen(*g));
        }
        acc
    }
}

/// Result of the PBW comparison.
#[derive(Clone, Debug)]
pub struct PbwReport {
    pub checks: Vec<IdentityCheck>,
    /// `(degree, max length, rank, PBW dimension)` per filtered piece.
    pub ranks: Vec<(i32, usize, usize, usize)>,
}

impl PbwReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds) && self.ranks.iter().all(|r| r.2 == r.3)
    }
}

/// The constant `κ` with `x∗y − (−1)^{|x||y|}y∗x = κ[x,y]` on generators, or
/// `None` if no single constant fits (or `L` is abelian).
pub fn commutator_constant(env: &Envelope) -> Option<Scalar> {
    let gens: Vec<Gen> = env.l.space().gens().collect();
    let mut kappa: Option<Scalar> = None;
    for &a in &gens {
        for &b in &gens {
            let (x, y) = (SymMono::gen(a), SymMono::gen(b));
            let comm = env.star(&x, &y) - env.star(&y, &x).scale(&sgn(a.deg as i64 * b.deg as i64));
            let br = env.l.bracket(&[a, b]).map_basis(|g| SymMono::gen(*g));
            let Some((m, c)) = br.iter().next() else {
                if !comm.is_zero() {
                    return None;
                }
                continue;
            };
            let k = comm.coeff(m) / c;
            if comm != br.scale(&k) || kappa.as_ref().is_some_and(|q| *q != k) {
                return None;
            }
            kappa = Some(k);
        }
    }
    kappa
}

/// Verifies that `x ↦ scale·x` defines an isomorphism `UL → S∗L` up to the
/// given weight. The scale making this work is `1/κ`, see
/// [`commutator_constant`].
pub fn pbw_check(env: &Envelope, max_weight: usize, scale: Scalar) -> Result<PbwReport> {
    let ul = Ul::new(env.l.clone())?;
    let phi = PbwMap { env, scale };
    let space = env.l.space().clone();
    let trunc = format!("weight ≤ {max_weight}");
    let gens: Vec<Gen> = space.gens().collect();
    let mut checks = Vec::new();
    // relations xy − (−1)^{|x||y|}yx = [x,y]
    let pairs: Vec<(Gen, Gen)> = gens.iter().flat_map(|&a| gens.iter().map(move |&b| (a, b))).collect();
    checks.push(IdentityCheck::zero_residual("pbw: relations", trunc.clone(), &pairs, |&(a, b)| {
        let xy = env.star_elems(&phi.on_gen(a), &phi.on_gen(b));
        let yx = env.star_elems(&phi.on_gen(b), &phi.on_gen(a));
        let br = env.l.bracket(&[a, b]).flat_map(|g| phi.on_gen(*g));
        xy - yx.scale(&sgn(a.deg as i64 * b.deg as i64)) - br
    }));
    // multiplicativity on PBW words
    let words = ul.pbw_words(max_weight);
    let mut prods = Vec::new();
    for u in &words {
        for v in &words {
            if u.weight() + v.weight() <= max_weight {
                prods.push((u.clone(), v.clone()));
            }
        }
    }
    checks.push(IdentityCheck::zero_residual("pbw: multiplicative", trunc.clone(), &prods, |(u, v)| {
        let lhs = ul.mul(u, v).flat_map(|w| phi.on_word(w));
        let rhs = env.star_elems(&phi.on_word(u), &phi.on_word(v));
        lhs - rhs
    }));
    // associativity of ∗ on monomials
    let monos = monomials_upto::<Sym>(&space, max_weight);
    let mut triples = Vec::new();
    for a in &monos {
        for b in &monos {
            for c in &monos {
                if a.weight() + b.weight() + c.weight() <= max_weight {
                    triples.push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }
    checks.push(IdentityCheck::zero_residual("pbw: ∗ associative", trunc, &triples, |(a, b, c)| {
        let l = env.star_elems(&env.star(a, b), &Lin::basis(c.clone()));
        let r = env.star_elems(&Lin::basis(a.clone()), &env.star(b, c));
        l - r
    }));
    // rank on each filtered graded piece
    let mut ranks = Vec::new();
    let mut degrees: Vec<i32> = words.iter().map(Basis::degree).collect();
    degrees.sort();
    degrees.dedup();
    for k in 1..=max_weight {
        for &d in &degrees {
            let src: Vec<&UWord> = words.iter().filter(|w| w.weight() <= k && w.degree() == d).collect();
            if src.is_empty() {
                continue;
            }
            let tgt: Vec<SymMono> = monos.iter().filter(|m| m.weight() <= k && m.degree() == d).cloned().collect();
            let index: BTreeMap<&SymMono, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut mat = vec![vec![scalar::zero(); src.len()]; tgt.len()];
            for (j, w) in src.iter().enumerate() {
                for (m, c) in phi.on_word(w).iter() {
                    let i = *index.get(m).ok_or_else(|| Error::Truncation(format!("φ({w:?}) leaves S^≤{k}")))?;
                    mat[i][j] = c.clone();
                }
            }
            ranks.push((d, k, linalg::rank(&mat), src.len()));
        }
    }
    Ok(PbwReport { checks, ranks })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub coeff: String,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductEntry {
    pub arity: usize,
    pub inputs: Vec<String>,
    pub output: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbwSummary {
    pub scale: String,
    pub holds: bool,
    pub identities: Vec<IdentityCheck>,
    /// `[degree, filtration, rank, PBW dimension]`
    pub ranks: Vec<(i32, usize, usize, usize)>,
}

/// Structure constants of the envelope on monomials up to a weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopeStructure {
    pub generators: Vec<String>,
    pub max_weight: usize,
    pub dg_lie: bool,
    pub products: Vec<ProductEntry>,
    /// `κ` in `x∗y − (−1)^{|x||y|}y∗x = κ[x,y]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutator_constant: Option<String>,
    pub identities: Vec<IdentityCheck>,
    /// The comparison with `UL` at `x ↦ ½x` and at `x ↦ x/κ`.
    pub pbw: Vec<PbwSummary>,
}

pub fn render_elem(space: &crate::space::GradedSpace, v: &Lin<SymMono>) -> Vec<Term> {
    v.iter().map(|(m, c)| Term { coeff: scalar::format(c), word: m.render(space) }).collect()
}

/// Computes the structure table and, for dg Lie algebras, the PBW reports.
pub fn structure(env: &Envelope, max_weight: usize) -> Result<EnvelopeStructure> {
    let space = env.l.space().clone();
    let mut products = Vec::new();
    for k in 2..=max_weight {
        for (ins, out) in env.table(k, max_weight) {
            products.push(ProductEntry {
                arity: k,
                inputs: ins.iter().map(|m| m.render(&space)).collect(),
                output: render_elem(&space, &out),
            });
        }
    }
    let mut identities = vec![env.stasheff(max_weight)];
    let dg_lie = env.l.is_dg_lie();
    let mut pbw = Vec::new();
    let kappa = if dg_lie { commutator_constant(env) } else { None };
    if dg_lie {
        identities.push(env.higher_vanish(max_weight));
        identities.push(leading_term_check(env, max_weight));
        let mut scales = vec![ratio(1, 2)];
        if let Some(k) = kappa.as_ref().filter(|k| !k.is_zero() && **k != scalar::int(2)) {
            scales.push(k.recip());
        }
        for scale in scales {
            let r = pbw_check(env, max_weight, scale.clone())?;
            pbw.push(PbwSummary { scale: scalar::format(&scale), holds: r.passed(), identities: r.checks, ranks: r.ranks });
        }
    }
    Ok(EnvelopeStructure {
        generators: space.names().to_vec(),
        max_weight,
        dg_lie,
        products,
        commutator_constant: kappa.map(|k| scalar::format(&k)),
        identities,
        pbw,
    })
}

/// `S∗L` products are `SL` products up to lower filtration: the leading part
/// of `x ∗ y` in `S^{|x|+|y|}` is `xy`.
pub fn leading_term_check(env: &Envelope, max_weight: usize) -> IdentityCheck {
    let monos = monomials_upto::<Sym>(env.l.space(), max_weight);
    let mut pairs = Vec::new();
    for a in &monos {
        for b in &monos {
            if a.weight() + b.weight() <= max_weight {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    IdentityCheck::zero_residual("envelope: x∗y = xy mod lower filtration", format!("weight ≤ {max_weight}"), &pairs, |(a, b)| {
        let top = a.weight() + b.weight();
        let lead = env.star(a, b).filter(|m| m.weight() == top);
        lead - monomial::mul(&Lin::basis(a.clone()), &Lin::basis(b.clone()))
    })
}
