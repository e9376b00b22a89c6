//! The tensor trick: a strict contraction `(A, Z, f, g, h)` induces a
//! contraction `(BA, BZ, 𝖿, 𝗀, 𝗁)` of bar constructions, which is then
//! perturbed by the higher part of a codifferential on `BA` to transfer the
//! `A∞` structure to `Z`.

use crate::contraction::{Contraction, Perturbed};
use crate::error::{Error, Result};
use crate::lin::{tensor_map, Basis, Lin, Tensor};
use crate::operator::Op;
use crate::report::IdentityCheck;
use crate::scalar::{self, Scalar};
use crate::sign::odd;
use crate::word::{assemble, deconcatenate, BarWord};

fn sgn(e: i64) -> Scalar {
    scalar::sign(odd(e))
}

/// `Σ (−1)^{ω_{j−1}} [a₁|…|d a_j|…|a_k]` for an odd letter operator `d`.
pub fn letterwise_odd<L: Basis>(d: &Op<L>, w: &BarWord<L>) -> Lin<BarWord<L>> {
    let om = w.omegas();
    let mut out = Lin::zero();
    for j in 0..w.len() {
        let da = d.on(&w.letters()[j]);
        if !da.is_zero() {
            out.add_scaled(&crate::word::replace_letter(w, j, &da), &sgn(om[j]));
        }
    }
    out
}

/// `[φa₁|…|φa_k]` for a degree-0 letter map.
pub fn letterwise<L1: Basis, L2: Basis>(phi: &Op<L1, L2>, w: &BarWord<L1>) -> Lin<BarWord<L2>> {
    let slots: Vec<Lin<L2>> = w.letters().iter().map(|a| phi.on(a)).collect();
    assemble(&slots)
}

/// `𝗁[a₁|…|a_k] = Σ_j (−1)^{ω_{j−1}} [pa₁|…|pa_{j−1}|ha_j|a_{j+1}|…|a_k]`.
pub fn bar_homotopy<L: Basis>(p: &Op<L>, h: &Op<L>, w: &BarWord<L>) -> Lin<BarWord<L>> {
    let l = w.letters();
    let om = w.omegas();
    let mut out = Lin::zero();
    for j in 0..l.len() {
        let ha = h.on(&l[j]);
        if ha.is_zero() {
            continue;
        }
        let mut slots: Vec<Lin<L>> = l[..j].iter().map(|a| p.on(a)).collect();
        if slots.iter().any(Lin::is_zero) {
            continue;
        }
        slots.push(ha);
        slots.extend(l[j + 1..].iter().map(|a| Lin::basis(a.clone())));
        out.add_scaled(&assemble(&slots), &sgn(om[j]));
    }
    out
}

/// The induced contraction of bar constructions. The input must be strict
/// on the given letters; this is checked.
pub fn tensor_trick<A: Basis, Z: Basis>(
    c: &Contraction<A, Z>,
    xs: &[A],
    ys: &[Z],
) -> Result<Contraction<BarWord<A>, BarWord<Z>>> {
    if let Some(bad) = c.check(xs, ys, "letters").into_iter().find(|r| !r.holds) {
        return Err(Error::InvalidInput(format!(
            "tensor trick needs a strict contraction: {} fails on {}",
            bad.id,
            bad.counterexample.unwrap_or_default()
        )));
    }
    Ok(bar_contraction(c))
}

/// The induced contraction without the strictness check.
pub fn bar_contraction<A: Basis, Z: Basis>(c: &Contraction<A, Z>) -> Contraction<BarWord<A>, BarWord<Z>> {
    let (dx, dy, f, g, h) = (c.dx.clone(), c.dy.clone(), c.f.clone(), c.g.clone(), c.h.clone());
    let p = c.p().memoized();
    let bx = format!("B{}", dx.domain());
    let bz = format!("B{}", dy.domain());
    Contraction::new(
        Op::new(1, bx.clone(), bx.clone(), move |w| letterwise_odd(&dx, w)),
        Op::new(1, bz.clone(), bz.clone(), move |w| letterwise_odd(&dy, w)),
        Op::new(0, bx.clone(), bz.clone(), move |w| letterwise(&f, w)),
        Op::new(0, bz, bx.clone(), move |w| letterwise(&g, w)),
        Op::new(-1, bx.clone(), bx, move |w| bar_homotopy(&p, &h, w)).memoized(),
    )
}

/// `(Δ ⊗ ·)`-compatibility residuals used by the transfer checks.
fn cop<L: Basis>(w: &BarWord<L>) -> Lin<Tensor<BarWord<L>, BarWord<L>>> {
    deconcatenate(w)
}

/// `Δφ(w) − (φ ⊗ φ)Δw` for a degree-0 map.
pub fn coalgebra_morphism_residual<A: Basis, Z: Basis>(phi: &Op<BarWord<A>, BarWord<Z>>, w: &BarWord<A>) -> Lin<Tensor<BarWord<Z>, BarWord<Z>>> {
    let lhs = phi.on(w).flat_map(cop);
    let rhs = tensor_map(&cop(w), |a| phi.on(a), |b| phi.on(b), 0);
    lhs - rhs
}

/// `ΔDw − (D ⊗ 1 + 1 ⊗ D)Δw`.
pub fn coderivation_residual<A: Basis>(d: &Op<BarWord<A>>, w: &BarWord<A>) -> Lin<Tensor<BarWord<A>, BarWord<A>>> {
    let lhs = d.on(w).flat_map(cop);
    let one = |a: &BarWord<A>| Lin::basis(a.clone());
    let r1 = tensor_map(&cop(w), |a| d.on(a), one, 0);
    let r2 = tensor_map(&cop(w), one, |b| d.on(b), d.degree());
    lhs - r1 - r2
}

/// `Δ𝗁w − (𝗁 ⊗ 1 + 𝗉 ⊗ 𝗁)Δw`.
pub fn homotopy_coproduct_residual<A: Basis>(h: &Op<BarWord<A>>, p: &Op<BarWord<A>>, w: &BarWord<A>) -> Lin<Tensor<BarWord<A>, BarWord<A>>> {
    let lhs = h.on(w).flat_map(cop);
    let r1 = tensor_map(&cop(w), |a| h.on(a), |b| Lin::basis(b.clone()), 0);
    let r2 = tensor_map(&cop(w), |a| p.on(a), |b| h.on(b), h.degree());
    lhs - r1 - r2
}

/// The transferred structure: the bar contraction perturbed by `pert`
/// (the part of the codifferential on `BA` beyond the letterwise `δ₁`).
pub struct Transfer<A: Basis, Z: Basis> {
    pub bar: Contraction<BarWord<A>, BarWord<Z>>,
    pub perturbed: Perturbed<BarWord<A>, BarWord<Z>>,
}

impl<A: Basis, Z: Basis> Transfer<A, Z> {
    pub fn new(bar: Contraction<BarWord<A>, BarWord<Z>>, pert: &Op<BarWord<A>>) -> Self {
        let perturbed = bar.perturb(pert);
        Transfer { bar, perturbed }
    }

    /// `∂*` on `BZ`.
    pub fn codifferential(&self) -> &Op<BarWord<Z>> {
        &self.perturbed.contraction.dy
    }

    /// `m_k(z₁,…,z_k)`: the length-one part of `∂*[z₁|…|z_k]`.
    pub fn m(&self, letters: &[Z]) -> Lin<Z> {
        let out = self.codifferential().on(&BarWord::new(letters.to_vec()));
        Lin::from_terms(out.iter().filter(|(w, _)| w.len() == 1).map(|(w, c)| (w.letters()[0].clone(), c.clone())))
    }

    /// Coalgebra and chain-level properties of `𝖿*`, `𝗀*`, `∂*`, `𝗁`.
    pub fn checks(&self, xs: &[BarWord<A>], ys: &[BarWord<Z>], truncation: &str) -> Vec<IdentityCheck> {
        let p = &self.perturbed.contraction;
        let fg = p.f.after(&p.g).unwrap();
        let d = &p.dy;
        let bp = self.bar.p();
        vec![
            IdentityCheck::zero_residual("tensor trick: Δf* = (f*⊗f*)Δ", truncation, xs, |w| coalgebra_morphism_residual(&p.f, w)),
            IdentityCheck::zero_residual("tensor trick: Δg* = (g*⊗g*)Δ", truncation, ys, |w| coalgebra_morphism_residual(&p.g, w)),
            IdentityCheck::zero_residual("tensor trick: d* coderivation", truncation, ys, |w| coderivation_residual(d, w)),
            IdentityCheck::zero_residual("tensor trick: d*^2 = 0", truncation, ys, |w| d.apply(&d.on(w))),
            IdentityCheck::zero_residual("tensor trick: f* g* = 1", truncation, ys, |w| fg.on(w) - Lin::basis(w.clone())),
            IdentityCheck::zero_residual("tensor trick: f g* = 1", truncation, ys, |w| {
                self.bar.f.apply(&p.g.on(w)) - Lin::basis(w.clone())
            }),
            IdentityCheck::zero_residual("tensor trick: Δh = (h⊗1 + p⊗h)Δ", truncation, xs, |w| {
                homotopy_coproduct_residual(&self.bar.h, &bp, w)
            }),
            IdentityCheck::zero_residual("tensor trick: f* chain map", truncation, xs, |w| {
                p.f.apply(&p.dx.on(w)) - d.apply(&p.f.on(w))
            }),
            IdentityCheck::zero_residual("tensor trick: g* chain map", truncation, ys, |w| {
                p.g.apply(&d.on(w)) - p.dx.apply(&p.g.on(w))
            }),
        ]
    }
}
