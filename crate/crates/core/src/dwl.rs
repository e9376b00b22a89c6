//! The contraction of `BSV` onto `∧V`: the operators `ρ, τ, ξ, λ, p` and
//! the homotopy `h = (ρ − λ)⁻¹ ξ`, both through an exact solve and through
//! its closed-form finite sum.

use std::sync::Arc;

use crate::bar::{bar_differential, Cochain, SymAlgebra};
use crate::contraction::Contraction;
use crate::lin::{Basis, Lin};
use crate::monomial::{ExtMono, SymMono};
use crate::operator::{self, Op};
use crate::scalar::{self, int, Scalar};
use crate::sign::odd;
use crate::space::{Gen, Space};
use crate::word::{assemble, shuffle_elems, shuffle_letters, BarWord};

pub type BWord = BarWord<SymMono>;

fn sgn(e: i64) -> Scalar {
    scalar::sign(odd(e))
}

/// Projection of a letter onto `S¹V`.
pub fn tau_letter(a: &SymMono) -> Lin<SymMono> {
    if a.weight() == 1 {
        Lin::basis(a.clone())
    } else {
        Lin::zero()
    }
}

/// `∂_α a − ε(∂_α a)`.
pub fn reduced_partial(a: &SymMono, g: Gen) -> Lin<SymMono> {
    a.partial(g).filter(|m| !m.is_one())
}

/// The one-cochain `∂̄_α`, `(−1)^{|x^α|} ∂̄_α a = ∂_α a − ε(∂_α a)`.
pub fn dbar_cochain(g: Gen) -> Cochain<SymMono> {
    let s = sgn(g.deg as i64);
    Cochain::new(1 - g.deg, [1], move |l: &[SymMono]| reduced_partial(&l[0], g).scale(&s))
}

/// The zero-cochain `x^α`.
pub fn gen_cochain(g: Gen) -> Cochain<SymMono> {
    Cochain::constant(Lin::basis(SymMono::gen(g))).expect("generator is homogeneous")
}

pub fn tau_cochain() -> Cochain<SymMono> {
    Cochain::new(1, [1], |l: &[SymMono]| tau_letter(&l[0]))
}

pub fn rho_cochain() -> Cochain<SymMono> {
    Cochain::new(1, [1], |l: &[SymMono]| Lin::term(l[0].clone(), int(l[0].weight() as i64)))
}

pub fn rho(w: &BWord) -> Lin<BWord> {
    Lin::term(w.clone(), int(w.weight() as i64))
}

/// `τ` as a coderivation: each letter of weight one is kept, so the word
/// is scaled by their number.
pub fn tau(w: &BWord) -> Lin<BWord> {
    let n = w.letters().iter().filter(|a| a.weight() == 1).count();
    Lin::term(w.clone(), int(n as i64))
}

/// `ξ` by its explicit double sum.
pub fn xi(space: &Space, w: &BWord) -> Lin<BWord> {
    let l = w.letters();
    let om = w.omegas();
    let mut out = Lin::zero();
    for j in 1..=l.len() {
        for g in space.gens() {
            let da = reduced_partial(&l[j - 1], g);
            if da.is_zero() {
                continue;
            }
            for i in 0..j {
                let e = om[i] + g.deg as i64 * (om[j - 1] - om[i] + 1);
                let mut slots: Vec<Lin<SymMono>> = l[..i].iter().map(|a| Lin::basis(a.clone())).collect();
                slots.push(Lin::basis(SymMono::gen(g)));
                slots.extend(l[i..j - 1].iter().map(|a| Lin::basis(a.clone())));
                slots.push(da.clone());
                slots.extend(l[j..].iter().map(|a| Lin::basis(a.clone())));
                out.add_scaled(&assemble(&slots), &sgn(e));
            }
        }
    }
    out
}

/// `ξ = Σ_α [x^α | ∂̄_α] •`, through the action of `BG(SV)`.
pub fn xi_by_action(space: &Space, w: &BWord) -> Lin<BWord> {
    let mut out = Lin::zero();
    for g in space.gens() {
        out += &crate::bar::bg_action(&[gen_cochain(g), dbar_cochain(g)], w);
    }
    out
}

fn single(a: &Lin<SymMono>) -> Lin<BWord> {
    a.map_basis(|m| BarWord::single(m.clone()))
}

/// `λ[a₁|…|a_k] = [a₁|…|a_{k−1}] ⧢ [τa_k]`.
pub fn lambda(w: &BWord) -> Lin<BWord> {
    let k = w.len();
    if k == 0 {
        return Lin::zero();
    }
    let t = tau_letter(&w.letters()[k - 1]);
    if t.is_zero() {
        return Lin::zero();
    }
    shuffle_elems(&Lin::basis(w.slice(0, k - 1)), &single(&t))
}

/// `p_k[a₁|…|a_k] = (1/k!) [τa₁] ⧢ … ⧢ [τa_k]`.
pub fn p(w: &BWord) -> Lin<BWord> {
    let taus: Vec<Lin<SymMono>> = w.letters().iter().map(tau_letter).collect();
    if taus.iter().any(Lin::is_zero) {
        return Lin::zero();
    }
    shuffle_letters(&taus).scale(&(scalar::one() / scalar::factorial(w.len() as u32)))
}

/// `f = g⁻¹ p`: `[a₁|…|a_k] ↦ (1/k!) sτa₁ ∧ … ∧ sτa_k`.
pub fn f(w: &BWord) -> Lin<ExtMono> {
    if w.letters().iter().any(|a| a.weight() != 1) {
        return Lin::zero();
    }
    let raw: Vec<Gen> = w.letters().iter().map(|a| a.gens()[0]).collect();
    ExtMono::from_raw(&raw).scale(&(scalar::one() / scalar::factorial(w.len() as u32)))
}

/// `g(sx₁ ∧ … ∧ sx_k) = [x₁] ⧢ … ⧢ [x_k]`.
pub fn g(m: &ExtMono) -> Lin<BWord> {
    let letters: Vec<Lin<SymMono>> = m.gens().iter().map(|&x| Lin::basis(SymMono::gen(x))).collect();
    shuffle_letters(&letters)
}

/// `h_k[a₁|…|a_k] = Σ_j ξ[a₁|…|a_j] / (w(w+1)⋯(w+k−j)) ⧢ [τa_{j+1}] ⧢ … ⧢ [τa_k]`
/// with `w` the weight of `a₁…a_j`.
pub fn h_explicit(space: &Space, w: &BWord) -> Lin<BWord> {
    let k = w.len();
    let l = w.letters();
    let mut out = Lin::zero();
    for j in 1..=k {
        let tail: Vec<Lin<SymMono>> = l[j..].iter().map(tau_letter).collect();
        if tail.iter().any(Lin::is_zero) {
            continue;
        }
        let head = w.slice(0, j);
        let x = xi(space, &head);
        if x.is_zero() {
            continue;
        }
        let wt = head.weight() as i64;
        let denom: Scalar = (0..=(k - j) as i64).map(|i| int(wt + i)).product();
        let t = shuffle_letters(&tail);
        out.add_scaled(&shuffle_elems(&x, &t), &(scalar::one() / denom));
    }
    out
}

fn rho_minus_lambda() -> Op<BWord> {
    Op::new(0, "BSV", "BSV", |w: &BWord| rho(w) - lambda(w))
}

/// `h = (1 − p) y` where `(ρ − λ) y = ξ w`, solved exactly.
pub fn h_spectral(space: &Space, w: &BWord) -> Lin<BWord> {
    let x = xi(space, w);
    let y = operator::solve(&rho_minus_lambda(), &x).expect("ξw lies in the image of ρ − λ");
    &y - &y.flat_map(p)
}

/// The contraction `(BSV, ∧V, f, g, h)`.
pub fn bsv_contraction(space: Space) -> Contraction<BWord, ExtMono> {
    let alg = Arc::new(SymAlgebra::new(space.clone()));
    let sp = space.clone();
    let d_ext = space.clone();
    Contraction::new(
        Op::new(1, "BSV", "BSV", move |w| bar_differential(&*alg, w)),
        Op::new(1, "∧V", "∧V", move |m: &ExtMono| crate::monomial::derivation(m, 1, |x| d_ext.d(x).map_basis(|y| ExtMono::gen(*y)))),
        Op::new(0, "BSV", "∧V", f),
        Op::new(0, "∧V", "BSV", g),
        Op::new(-1, "BSV", "BSV", move |w| h_explicit(&sp, w)).memoized(),
    )
}

/// The named operators as `Op`s on `BSV`.
pub struct BsvOps {
    pub delta: Op<BWord>,
    pub rho: Op<BWord>,
    pub tau: Op<BWord>,
    pub xi: Op<BWord>,
    pub lambda: Op<BWord>,
    pub p: Op<BWord>,
    pub h: Op<BWord>,
}

impl BsvOps {
    pub fn new(space: Space) -> Self {
        let alg = Arc::new(SymAlgebra::new(space.clone()));
        let (s1, s2) = (space.clone(), space);
        BsvOps {
            delta: Op::new(1, "BSV", "BSV", move |w| bar_differential(&*alg, w)),
            rho: Op::new(0, "BSV", "BSV", rho),
            tau: Op::new(0, "BSV", "BSV", tau),
            xi: Op::new(-1, "BSV", "BSV", move |w| xi(&s1, w)).memoized(),
            lambda: Op::new(0, "BSV", "BSV", lambda),
            p: Op::new(0, "BSV", "BSV", p),
            h: Op::new(-1, "BSV", "BSV", move |w| h_explicit(&s2, w)).memoized(),
        }
    }
}
