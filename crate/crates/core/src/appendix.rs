//! A second contraction of `B₊SV` onto `∧V₊`, through the bar construction
//! with coefficients in the Koszul complex `KV = SV⁺ ⊗ ∧V₊`.
//!
//! `B₊(SV, KV)` carries two anticommuting differentials: `𝖽𝖽𝖽` (bar part
//! and module action) and `𝖽𝖽` (Koszul part). Each has an elementary
//! contraction, `𝗁𝗁𝗁` onto `∧V₊` and `𝗁𝗁` onto `B₊SV`. Perturbing each by the
//! other and composing gives `H = 𝖿𝖿* 𝗁𝗁𝗁* 𝗀𝗀*` on `B₊SV`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bar::{bar_differential, SymAlgebra};
use crate::contraction::{Contraction, Perturbed};
use crate::dwl::{self, BWord};
use crate::enumerate::monomial_words;
use crate::envelope::Term;
use crate::lin::{Basis, Lin};
use crate::monomial::{derivation, monomials_upto, Ext, ExtMono, Sym, SymMono};
use crate::operator::Op;
use crate::report::IdentityCheck;
use crate::scalar::{self, int, Scalar};
use crate::sign::odd;
use crate::space::{Gen, Space};
use crate::word::{Bar, BarWord};

const X: &str = "B₊(SV,KV)";
const WEDGE: &str = "∧V₊";
const BAR: &str = "B₊SV";

fn sgn(e: i64) -> Scalar {
    scalar::sign(odd(e))
}

/// `[a₁|…|a_k] ⊗ a ⊗ b` with `a ∈ SV⁺`, `b ∈ ∧V₊`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KWord {
    pub w: BWord,
    pub a: SymMono,
    pub b: ExtMono,
}

impl KWord {
    pub fn new(w: BWord, a: SymMono, b: ExtMono) -> Self {
        KWord { w, a, b }
    }

    /// `ρ = p + q` on `S^pV ⊗ ∧_qV`.
    fn rho(&self) -> usize {
        self.a.weight() + self.b.weight()
    }
}

impl Basis for KWord {
    fn degree(&self) -> i32 {
        self.w.degree() + self.a.degree() + self.b.degree()
    }
    fn weight(&self) -> usize {
        self.w.weight() + self.a.weight() + self.b.weight()
    }
}

impl fmt::Debug for KWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}⊗{:?}⊗{:?}", self.w, self.a, self.b)
    }
}

fn kword_terms(w: &Lin<BWord>, a: &Lin<SymMono>, b: &Lin<ExtMono>) -> Lin<KWord> {
    let mut out = Lin::zero();
    for (x, c) in w.iter() {
        for (y, d) in a.iter() {
            for (z, e) in b.iter() {
                out.add_term(KWord::new(x.clone(), y.clone(), z.clone()), c * d * e);
            }
        }
    }
    out
}

/// `ι_α`, contraction of `∧V₊` with the dual basis vector of `x^α`.
pub fn iota(g: Gen, b: &ExtMono) -> Lin<ExtMono> {
    b.partial(g)
}

/// `d` on `∧V₊` with `d(sx) = −s(dx)`, the sign for which `𝖽𝖽` and the
/// internal differential of `KV` anticommute.
pub fn wedge_d(space: &Space, b: &ExtMono) -> Lin<ExtMono> {
    derivation(b, 1, |x| -space.d(x).map_basis(|y| ExtMono::gen(*y)))
}

/// `φ(sx₁ ∧ … ∧ sx_q) = (−1)^{Σ(|x_i|+1)} sx₁ ∧ … ∧ sx_q`, an isomorphism
/// from `∧V₊` with `d(sx) = s(dx)` to `∧V₊` with `d(sx) = −s(dx)`.
pub fn phi(b: &ExtMono) -> Lin<ExtMono> {
    let e: i64 = b.gens().iter().map(|g| g.deg as i64 + 1).sum();
    Lin::term(b.clone(), sgn(e))
}

/// The operators on `B₊(SV, KV)` and the maps to `∧V₊` and `B₊SV`.
#[derive(Clone, Debug)]
pub struct Koszul {
    pub space: Space,
    alg: SymAlgebra,
}

impl Koszul {
    pub fn new(space: Space) -> Self {
        Koszul { alg: SymAlgebra::new(space.clone()), space }
    }

    /// `𝖽𝖽𝖽`: bar differential, action of the last letter on `a`, and the
    /// internal differential of `KV`.
    pub fn ddd(&self, x: &KWord) -> Lin<KWord> {
        let KWord { w, a, b } = x;
        let k = w.len();
        let om_k = w.omega(k);
        let one = |t: &SymMono| Lin::basis(t.clone());
        let mut out = kword_terms(&bar_differential(&self.alg, w), &one(a), &Lin::basis(b.clone()));
        if k > 0 {
            let rest = Lin::basis(w.slice(0, k - 1));
            let act = w.letters()[k - 1].mul(a);
            out.add_scaled(&kword_terms(&rest, &act, &Lin::basis(b.clone())), &sgn(om_k + 1));
        }
        let da = crate::monomial::sym_d(&self.space, a);
        let db = wedge_d(&self.space, b);
        let wl = Lin::basis(w.clone());
        out.add_scaled(&kword_terms(&wl, &da, &Lin::basis(b.clone())), &sgn(om_k));
        out.add_scaled(&kword_terms(&wl, &one(a), &db), &sgn(om_k + a.degree() as i64));
        out
    }

    /// `𝗁𝗁𝗁[w] ⊗ a ⊗ b = (−1)^{ω_k+|a|} [w|a − ε(a)] ⊗ 1 ⊗ b`.
    pub fn hhh(&self, x: &KWord) -> Lin<KWord> {
        if x.a.is_one() {
            return Lin::zero();
        }
        let mut letters = x.w.letters().to_vec();
        letters.push(x.a.clone());
        let s = sgn(x.w.omega(x.w.len()) + x.a.degree() as i64);
        Lin::term(KWord::new(BarWord::new(letters), SymMono::one(), x.b.clone()), s)
    }

    /// `𝖽𝖽[w] ⊗ a ⊗ b = (−1)^{ω_k+|a|} Σ_α [w] ⊗ a x^α ⊗ ι_α b`.
    pub fn dd(&self, x: &KWord) -> Lin<KWord> {
        let s = sgn(x.w.omega(x.w.len()) + x.a.degree() as i64);
        let wl = Lin::basis(x.w.clone());
        let mut out = Lin::zero();
        for g in self.space.gens() {
            let ib = iota(g, &x.b);
            if ib.is_zero() {
                continue;
            }
            out += &kword_terms(&wl, &x.a.mul(&SymMono::gen(g)), &ib);
        }
        out.scale(&s)
    }

    /// `𝗁𝗁[w] ⊗ a ⊗ b = (−1)^{ω_k} Σ_α (−1)^{|a|(|x^α|+1)} [w] ⊗ ρ⁻¹(∂_α a ⊗ sx^α b)`.
    pub fn hh(&self, x: &KWord) -> Lin<KWord> {
        let rho = x.rho();
        if rho == 0 {
            return Lin::zero();
        }
        let wl = Lin::basis(x.w.clone());
        let mut out = Lin::zero();
        for g in self.space.gens() {
            let da = x.a.partial(g);
            if da.is_zero() {
                continue;
            }
            let s = sgn(x.a.degree() as i64 * (g.deg as i64 + 1));
            out.add_scaled(&kword_terms(&wl, &da, &ExtMono::gen(g).mul(&x.b)), &s);
        }
        let s = sgn(x.w.omega(x.w.len()));
        out.scale(&(s / int(rho as i64)))
    }

    /// `𝖿𝖿𝖿[w] ⊗ a ⊗ b = δ_{k0} ε(a) b`.
    pub fn fff(&self, x: &KWord) -> Lin<ExtMono> {
        if x.w.is_empty() && x.a.is_one() {
            Lin::basis(x.b.clone())
        } else {
            Lin::zero()
        }
    }

    /// `𝗀𝗀𝗀 b = [ ] ⊗ 1 ⊗ b`.
    pub fn ggg(&self, b: &ExtMono) -> Lin<KWord> {
        Lin::basis(KWord::new(BarWord::empty(), SymMono::one(), b.clone()))
    }

    /// `𝖿𝖿[w] ⊗ a ⊗ b = ε(a) ε(b) [w]`.
    pub fn ff(&self, x: &KWord) -> Lin<BWord> {
        if x.a.is_one() && x.b.is_one() {
            Lin::basis(x.w.clone())
        } else {
            Lin::zero()
        }
    }

    /// `𝗀𝗀[w] = [w] ⊗ 1 ⊗ 1`.
    pub fn gg(&self, w: &BWord) -> Lin<KWord> {
        Lin::basis(KWord::new(w.clone(), SymMono::one(), ExtMono::one()))
    }

    /// Basis of `B₊(SV, KV)` up to total weight.
    pub fn basis(&self, max_weight: usize) -> Vec<KWord> {
        let words = bar_plus_basis(&self.space, max_weight);
        let syms = plus(monomials_upto::<Sym>(&self.space, max_weight));
        let exts = plus(monomials_upto::<Ext>(&self.space, max_weight));
        let mut out = Vec::new();
        for w in &words {
            for a in &syms {
                for b in &exts {
                    if w.weight() + a.weight() + b.weight() <= max_weight {
                        out.push(KWord::new(w.clone(), a.clone(), b.clone()));
                    }
                }
            }
        }
        out
    }
}

fn plus<K: crate::monomial::Kind>(mut ms: Vec<crate::monomial::Monomial<K>>) -> Vec<crate::monomial::Monomial<K>> {
    ms.insert(0, crate::monomial::Monomial::one());
    ms
}

/// Basis of `B₊SV` up to weight, the empty word first.
pub fn bar_plus_basis(space: &Space, max_weight: usize) -> Vec<BWord> {
    let mut out = vec![BarWord::empty()];
    out.extend(monomial_words::<Bar, Sym>(space, max_weight));
    out
}

/// Basis of `∧V₊` up to weight, the unit first.
pub fn wedge_plus_basis(space: &Space, max_weight: usize) -> Vec<ExtMono> {
    plus(monomials_upto::<Ext>(space, max_weight))
}

/// Counital extension of `f : BSV → ∧V`.
pub fn f_plus(w: &BWord) -> Lin<ExtMono> {
    if w.is_empty() {
        Lin::basis(ExtMono::one())
    } else {
        dwl::f(w)
    }
}

/// Counital extension of `g : ∧V → BSV`.
pub fn g_plus(m: &ExtMono) -> Lin<BWord> {
    if m.is_one() {
        Lin::basis(BarWord::empty())
    } else {
        dwl::g(m)
    }
}

/// The two elementary contractions, their mutual perturbations and the
/// composite weak contraction `(B₊SV, ∧V₊, f₊, g₊, H)`.
pub struct Appendix {
    pub k: Arc<Koszul>,
    pub ddd: Op<KWord>,
    pub dd: Op<KWord>,
    /// `(B₊(SV,KV), ∧V₊, 𝖿𝖿𝖿, 𝗀𝗀𝗀, 𝗁𝗁𝗁)` with differential `𝖽𝖽𝖽`.
    pub bar_side: Contraction<KWord, ExtMono>,
    /// `(B₊(SV,KV), B₊SV, 𝖿𝖿, 𝗀𝗀, 𝗁𝗁)` with differential `𝖽𝖽`.
    pub koszul_side: Contraction<KWord, BWord>,
    /// `bar_side` perturbed by `𝖽𝖽`.
    pub bar_star: Perturbed<KWord, ExtMono>,
    /// `koszul_side` perturbed by `𝖽𝖽𝖽`.
    pub koszul_star: Perturbed<KWord, BWord>,
    /// `δ` on `B₊SV`.
    pub delta: Op<BWord>,
    /// `d` on `∧V₊`.
    pub d_wedge: Op<ExtMono>,
    /// `f₊ = 𝖿𝖿𝖿* 𝗀𝗀*`, `g₊ = 𝖿𝖿* 𝗀𝗀𝗀*`, `H = 𝖿𝖿* 𝗁𝗁𝗁* 𝗀𝗀*`.
    pub weak: Contraction<BWord, ExtMono>,
}

impl Appendix {
    pub fn new(space: Space) -> Self {
        let k = Arc::new(Koszul::new(space.clone()));
        let op = |deg: i32, f: fn(&Koszul, &KWord) -> Lin<KWord>| {
            let k = k.clone();
            Op::new(deg, X, X, move |x: &KWord| f(&k, x))
        };
        let ddd = op(1, Koszul::ddd).memoized();
        let dd = op(1, Koszul::dd).memoized();
        let hhh = op(-1, Koszul::hhh);
        let hh = op(-1, Koszul::hh);
        let (k1, k2, k3, k4) = (k.clone(), k.clone(), k.clone(), k.clone());
        let d_wedge = {
            let sp = space.clone();
            Op::new(1, WEDGE, WEDGE, move |b: &ExtMono| wedge_d(&sp, b))
        };
        let delta = {
            let alg = SymAlgebra::new(space.clone());
            Op::new(1, BAR, BAR, move |w: &BWord| bar_differential(&alg, w))
        };
        let bar_side = Contraction::new(
            ddd.clone(),
            d_wedge.clone(),
            Op::new(0, X, WEDGE, move |x| k1.fff(x)),
            Op::new(0, WEDGE, X, move |b| k2.ggg(b)),
            hhh,
        );
        let koszul_side = Contraction::new(
            dd.clone(),
            Op::zero(1, BAR, BAR),
            Op::new(0, X, BAR, move |x| k3.ff(x)),
            Op::new(0, BAR, X, move |w| k4.gg(w)),
            hh,
        );
        let bar_star = bar_side.perturb(&dd);
        let koszul_star = koszul_side.perturb(&ddd);
        let f = bar_star.contraction.f.after(&koszul_star.contraction.g).unwrap().memoized();
        let g = koszul_star.contraction.f.after(&bar_star.contraction.g).unwrap().memoized();
        let h = koszul_star
            .contraction
            .f
            .after(&bar_star.contraction.h)
            .unwrap()
            .after(&koszul_star.contraction.g)
            .unwrap()
            .memoized();
        let weak = Contraction::new(delta.clone(), d_wedge.clone(), f, g, h);
        Appendix { k, ddd, dd, bar_side, koszul_side, bar_star, koszul_star, delta, d_wedge, weak }
    }

    pub fn space(&self) -> &Space {
        &self.k.space
    }

    /// `Σ_m 𝖿𝖿 𝗁𝗁𝗁 (𝖽𝖽 𝗁𝗁𝗁)^m (𝗁𝗁 𝖽𝖽𝖽)^m 𝗀𝗀`, the expansion of `H` with the
    /// cross terms of unequal powers removed.
    pub fn h_expanded(&self, w: &BWord) -> Lin<BWord> {
        let k = &*self.k;
        let mut right = k.gg(w);
        let mut out = Lin::zero();
        for m in 0..=w.len() {
            if m > 0 {
                right = right.flat_map(|x| k.ddd(x)).flat_map(|x| k.hh(x));
            }
            if right.is_zero() {
                break;
            }
            let mut left = right.clone();
            for _ in 0..m {
                left = left.flat_map(|x| k.hhh(x)).flat_map(|x| k.dd(x));
            }
            out += &left.flat_map(|x| k.hhh(x)).flat_map(|x| k.ff(x));
        }
        out
    }

    /// `(−𝗁𝗁 𝖽𝖽𝖽)^{k−j} 𝗀𝗀 [a₁|…|a_k]`, applying the operators.
    pub fn tail(&self, w: &BWord, j: usize) -> Lin<KWord> {
        let k = &*self.k;
        let mut x = k.gg(w);
        for _ in j..w.len() {
            x = -x.flat_map(|y| k.ddd(y)).flat_map(|y| k.hh(y));
        }
        x
    }

    /// `(−𝗁𝗁 𝖽𝖽𝖽)^{k−j} 𝗀𝗀 [a₁|…|a_k]` by its product formula
    /// `(−1)^{ω_k−ω_j} Σ_α Π_{j<p≤q≤k} (−1)^{(|x^{α_p}|+1)|∂_{α_q}a_q|} ‖a_q‖⁻¹
    /// [a₁|…|a_j] ⊗ Π_q ∂_{α_q}a_q ⊗ sx^{α_{j+1}}⋯sx^{α_k}`, with `‖a_q‖` read
    /// through `norm`.
    pub fn tail_formula(&self, w: &BWord, j: usize, norm: Norm) -> Lin<KWord> {
        let l = w.letters();
        let k = l.len();
        let gens: Vec<Gen> = self.space().gens().collect();
        let head = Lin::basis(w.slice(0, j));
        let s0 = sgn(w.omega(k) - w.omega(j));
        let mut factor = scalar::one();
        for q in j + 1..=k {
            factor /= norm.value(q - j, &l[q - 1..]);
        }
        let mut out = Lin::zero();
        let n = k - j;
        let mut idx = vec![0usize; n];
        if gens.is_empty() && n > 0 {
            return out;
        }
        loop {
            let alphas: Vec<Gen> = idx.iter().map(|&i| gens[i]).collect();
            let mut prod = Lin::basis(SymMono::one());
            let mut e = 0i64;
            for (t, &g) in alphas.iter().enumerate() {
                let a = &l[j + t];
                prod = crate::monomial::mul(&prod, &a.partial(g));
                let dq = (a.degree() - g.deg) as i64;
                e += alphas[..=t].iter().map(|ap| (ap.deg as i64 + 1) * dq).sum::<i64>();
            }
            if !prod.is_zero() {
                let b = ExtMono::from_raw(&alphas);
                out.add_scaled(&kword_terms(&head, &prod, &b), &(&s0 * &factor * sgn(e)));
            }
            // next tuple
            let mut pos = 0;
            while pos < n {
                idx[pos] += 1;
                if idx[pos] < gens.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
        out
    }

    pub fn checks(&self, max_weight: usize) -> Vec<IdentityCheck> {
        let t = format!("weight ≤ {max_weight}");
        let xs = self.k.basis(max_weight);
        let ws = bar_plus_basis(self.space(), max_weight);
        let bs = wedge_plus_basis(self.space(), max_weight);
        let k = &*self.k;
        let id_k = |x: &KWord| Lin::basis(x.clone());
        let comm = |d: fn(&Koszul, &KWord) -> Lin<KWord>, h: fn(&Koszul, &KWord) -> Lin<KWord>, x: &KWord| {
            h(k, x).flat_map(|y| d(k, y)) + d(k, x).flat_map(|y| h(k, y))
        };
        let mut out = vec![
            IdentityCheck::zero_residual("appendix: 𝖽𝖽𝖽² = 0", t.clone(), &xs, |x| self.ddd.apply(&self.ddd.on(x))),
            IdentityCheck::zero_residual("appendix: 𝖽𝖽² = 0", t.clone(), &xs, |x| self.dd.apply(&self.dd.on(x))),
            IdentityCheck::zero_residual("appendix: 𝖽𝖽𝖽𝖽𝖽 + 𝖽𝖽𝖽𝖽𝖽 = 0", t.clone(), &xs, |x| {
                self.ddd.apply(&self.dd.on(x)) + self.dd.apply(&self.ddd.on(x))
            }),
            IdentityCheck::zero_residual("appendix: 𝖽𝖽𝖽𝗁𝗁𝗁 + 𝗁𝗁𝗁𝖽𝖽𝖽 = 1 − δ_{k0} [ ]⊗ε(a)⊗b", t.clone(), &xs, |x| {
                let mut r = comm(Koszul::ddd, Koszul::hhh, x) - id_k(x);
                if x.w.is_empty() && x.a.is_one() {
                    r += &id_k(x);
                }
                r
            }),
            IdentityCheck::zero_residual("appendix: 𝖽𝖽𝗁𝗁 + 𝗁𝗁𝖽𝖽 = 1 − ε(a)⊗ε(b)", t.clone(), &xs, |x| {
                let mut r = comm(Koszul::dd, Koszul::hh, x) - id_k(x);
                if x.a.is_one() && x.b.is_one() {
                    r += &id_k(x);
                }
                r
            }),
        ];
        let tag = |prefix: &str, cs: Vec<IdentityCheck>| -> Vec<IdentityCheck> {
            cs.into_iter()
                .map(|mut c| {
                    c.id = format!("appendix: {prefix} {}", c.id);
                    c
                })
                .collect()
        };
        out.extend(tag("(𝖽𝖽𝖽, 𝗁𝗁𝗁):", self.bar_side.check(&xs, &bs, &t)));
        out.extend(tag("(𝖽𝖽, 𝗁𝗁):", self.koszul_side.check(&xs, &ws, &t)));
        let bar_star = &self.bar_star.contraction;
        let koszul_star = &self.koszul_star.contraction;
        out.extend(tag("(𝖽𝖽𝖽+𝖽𝖽, 𝗁𝗁𝗁*):", bar_star.check(&xs, &bs, &t)));
        out.extend(tag("(𝖽𝖽+𝖽𝖽𝖽, 𝗁𝗁*):", koszul_star.check(&xs, &ws, &t)));
        out.push(IdentityCheck::equal_ops("appendix: 𝖿𝖿𝖿* = 𝖿𝖿𝖿", t.clone(), &bar_star.f, &self.bar_side.f, &xs));
        out.push(IdentityCheck::equal_ops("appendix: 𝖿𝖿* = 𝖿𝖿", t.clone(), &koszul_star.f, &self.koszul_side.f, &xs));
        out.push(IdentityCheck::equal_ops(
            "appendix: differential on ∧V₊ is unperturbed",
            t.clone(),
            &bar_star.dy,
            &self.d_wedge,
            &bs,
        ));
        out.push(IdentityCheck::equal_ops("appendix: transferred differential on B₊SV is δ", t.clone(), &koszul_star.dy, &self.delta, &ws));
        out.extend(tag("H:", self.weak.check(&ws, &bs, &t)));
        out.push(IdentityCheck::zero_residual("appendix: f₊ = counital f", t.clone(), &ws, |w| self.weak.f.on(w) - f_plus(w)));
        out.push(IdentityCheck::zero_residual("appendix: g₊ = counital g", t.clone(), &bs, |b| self.weak.g.on(b) - g_plus(b)));
        out.push(IdentityCheck::zero_residual("appendix: f₊ = φ ∘ counital f", t.clone(), &ws, |w| {
            self.weak.f.on(w) - f_plus(w).flat_map(phi)
        }));
        out.push(IdentityCheck::zero_residual("appendix: g₊ = counital g ∘ φ", t.clone(), &bs, |b| {
            self.weak.g.on(b) - phi(b).flat_map(g_plus)
        }));
        out.push(IdentityCheck::zero_residual("appendix: H = Σ_m 𝖿𝖿𝗁𝗁𝗁(𝖽𝖽𝗁𝗁𝗁)^m(𝗁𝗁𝖽𝖽𝖽)^m𝗀𝗀", t, &ws, |w| {
            self.weak.h.on(w) - self.h_expanded(w)
        }));
        out
    }

    /// Compares the product formula for `(−𝗁𝗁 𝖽𝖽𝖽)^{k−j} 𝗀𝗀` with the operators
    /// for each reading of `‖a_q‖`.
    pub fn norm_report(&self, max_weight: usize) -> Vec<NormCandidate> {
        let words = bar_plus_basis(self.space(), max_weight);
        Norm::ALL
            .iter()
            .map(|&norm| {
                let check = IdentityCheck::zero_residual(format!("{norm:?}"), format!("weight ≤ {max_weight}"), &words, |w| {
                    let mut r = Lin::zero();
                    for j in 0..=w.len() {
                        r += &(self.tail(w, j) - self.tail_formula(w, j, norm));
                    }
                    r
                });
                NormCandidate { norm, matches: check.holds, counterexample: check.counterexample }
            })
            .collect()
    }

    /// `H` and the homotopy `h` of the non-counital contraction on a word.
    pub fn compare_with_h(&self, w: &BWord) -> HComparison {
        let sp = self.space().clone();
        let render = |x: &Lin<BWord>| -> Vec<Term> {
            x.iter().map(|(v, c)| Term { coeff: scalar::format(c), word: v.render(|a| a.render(&sp)) }).collect()
        };
        let big_h = self.weak.h.on(w);
        let h = dwl::h_explicit(self.space(), w);
        HComparison { input: w.render(|a| a.render(&sp)), composite: render(&big_h), explicit: render(&h), equal: big_h == h }
    }
}

/// Candidate readings of `‖a_q‖` in the closed formula for `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Norm {
    /// `‖a_q‖ = wt(a_q)`, one factor for each pair `p ≤ q`.
    LetterWeight,
    /// `‖a_q‖ = wt(a_q) + … + wt(a_k)`, one factor for each pair `p ≤ q`.
    TailWeight,
    /// `ρ` of the accumulated element, `wt(a_q) + … + wt(a_k)`, once per `q`.
    TailWeightOnce,
}

impl Norm {
    pub const ALL: [Norm; 3] = [Norm::LetterWeight, Norm::TailWeight, Norm::TailWeightOnce];

    /// The factor contributed by `q`, `steps = q − j` pairs `p ≤ q`, given
    /// the letters `a_q, …, a_k`.
    fn value(self, steps: usize, tail: &[SymMono]) -> Scalar {
        let letter = int(tail[0].weight() as i64);
        let total = int(tail.iter().map(Basis::weight).sum::<usize>() as i64);
        let pow = |x: Scalar| (0..steps).fold(scalar::one(), |acc, _| acc * &x);
        match self {
            Norm::LetterWeight => pow(letter),
            Norm::TailWeight => pow(total),
            Norm::TailWeightOnce => total,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormCandidate {
    pub norm: Norm,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HComparison {
    pub input: String,
    pub composite: Vec<Term>,
    pub explicit: Vec<Term>,
    pub equal: bool,
}
