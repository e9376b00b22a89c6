//! The bar construction of a dg algebra and the Hochschild cochain
//! calculus acting on it: coderivations `δ(D)`, the circle product and
//! Gerstenhaber bracket, braces, the cup product, and the action of
//! `BG(A)` on `BA`.
//!
//! A cochain `D` has degree `|D|` with `|δ(D)| = |D| − 1`, so the product
//! `m₍₂₎` has degree 2, one-cochains such as `τ` have degree 1, and the
//! zero-cochain `x` has degree `|x|`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lin::{Basis, Lin, Tensor};
use crate::monomial::{sym_d, SymMono};
use crate::operator::Op;
use crate::scalar::{self, Scalar};
use crate::sign::odd;
use crate::space::Space;
use crate::word::{assemble, deconcatenate, BarWord, Word};

/// A dg algebra given on basis words.
pub trait DgAlgebra: Send + Sync + 'static {
    type E: Basis;
    fn label(&self) -> String;
    fn d(&self, a: &Self::E) -> Lin<Self::E>;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Lin<Self::E>;
}

/// The non-unital symmetric algebra `SV`.
#[derive(Clone, Debug)]
pub struct SymAlgebra {
    pub space: Space,
}

impl SymAlgebra {
    pub fn new(space: Space) -> Self {
        SymAlgebra { space }
    }
}

impl DgAlgebra for SymAlgebra {
    type E = SymMono;
    fn label(&self) -> String {
        "SV".into()
    }
    fn d(&self, a: &SymMono) -> Lin<SymMono> {
        sym_d(&self.space, a)
    }
    fn mul(&self, a: &SymMono, b: &SymMono) -> Lin<SymMono> {
        a.mul(b)
    }
}

fn sgn(e: i64) -> Scalar {
    scalar::sign(odd(e))
}

/// `δ₁[a₁|…|a_k] = Σ (−1)^{ω_{j−1}} [a₁|…|da_j|…|a_k]`.
pub fn bar_d1<A: DgAlgebra>(alg: &A, w: &BarWord<A::E>) -> Lin<BarWord<A::E>> {
    let om = w.omegas();
    let mut out = Lin::zero();
    for j in 0..w.len() {
        let da = alg.d(&w.letters()[j]);
        if !da.is_zero() {
            out.add_scaled(&crate::word::replace_letter(w, j, &da), &sgn(om[j]));
        }
    }
    out
}

/// `δ₂[a₁|…|a_k] = Σ (−1)^{ω_j+1} [a₁|…|a_j a_{j+1}|…|a_k]`.
pub fn bar_d2<A: DgAlgebra>(alg: &A, w: &BarWord<A::E>) -> Lin<BarWord<A::E>> {
    let om = w.omegas();
    let l = w.letters();
    let mut out = Lin::zero();
    for j in 1..l.len() {
        let prod = alg.mul(&l[j - 1], &l[j]);
        if prod.is_zero() {
            continue;
        }
        let mut slots: Vec<Lin<A::E>> = l[..j - 1].iter().map(|a| Lin::basis(a.clone())).collect();
        slots.push(prod);
        slots.extend(l[j + 1..].iter().map(|a| Lin::basis(a.clone())));
        out.add_scaled(&assemble(&slots), &sgn(om[j] + 1));
    }
    out
}

pub fn bar_differential<A: DgAlgebra>(alg: &A, w: &BarWord<A::E>) -> Lin<BarWord<A::E>> {
    bar_d1(alg, w) + bar_d2(alg, w)
}

pub fn bar_differential_op<A: DgAlgebra>(alg: Arc<A>) -> Op<BarWord<A::E>> {
    let label = format!("B{}", alg.label());
    Op::new(1, label.clone(), label, move |w| bar_differential(&*alg, w))
}

type CochainFn<L> = Arc<dyn Fn(&[L]) -> Lin<L> + Send + Sync>;

/// A Hochschild cochain `D : B₊A → A`, nonzero only on the listed lengths.
#[derive(Clone)]
pub struct Cochain<L: Basis> {
    degree: i32,
    arities: BTreeSet<usize>,
    f: CochainFn<L>,
}

impl<L: Basis> Cochain<L> {
    pub fn new(
        degree: i32,
        arities: impl IntoIterator<Item = usize>,
        f: impl Fn(&[L]) -> Lin<L> + Send + Sync + 'static,
    ) -> Self {
        Cochain { degree, arities: arities.into_iter().collect(), f: Arc::new(f) }
    }

    pub fn zero(degree: i32) -> Self {
        Self::new(degree, [], |_| Lin::zero())
    }

    /// The zero-cochain with value `x`.
    pub fn constant(x: Lin<L>) -> Result<Self> {
        let degree = x.degree().ok_or_else(|| Error::InvalidInput("zero-cochain must be homogeneous and nonzero".into()))?;
        Ok(Self::new(degree, [0], move |_| x.clone()))
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn arities(&self) -> &BTreeSet<usize> {
        &self.arities
    }

    pub fn eval(&self, letters: &[L]) -> Lin<L> {
        if self.arities.contains(&letters.len()) {
            (self.f)(letters)
        } else {
            Lin::zero()
        }
    }

    /// Multilinear evaluation on slots holding linear combinations.
    pub fn eval_slots(&self, slots: &[Lin<L>]) -> Lin<L> {
        if !self.arities.contains(&slots.len()) {
            return Lin::zero();
        }
        assemble::<crate::word::Bar, L>(slots).flat_map(|w| (self.f)(w.letters()))
    }

    pub fn scale(&self, c: Scalar) -> Self {
        let f = self.f.clone();
        Cochain { f: Arc::new(move |a| f(a).scale(&c)), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree && !self.arities.is_empty() && !other.arities.is_empty() {
            return Err(Error::DomainMismatch(format!(
                "sum of cochains of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let degree = if self.arities.is_empty() { other.degree } else { self.degree };
        let (f, g) = (self.clone(), other.clone());
        let arities = self.arities.union(&other.arities).copied().collect::<Vec<_>>();
        Ok(Self::new(degree, arities, move |a| f.eval(a) + g.eval(a)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-scalar::one()))
    }

    /// The coderivation `δ(D)` of degree `|D| − 1`:
    /// `Σ_{0≤i<j≤k} (−1)^{(|D|−1)ω_i} [a₁|…|a_i|D[a_{i+1}|…|a_j]|…|a_k]`.
    pub fn coderivation(&self) -> Result<Op<BarWord<L>>> {
        if self.arities.contains(&0) {
            return Err(Error::InvalidInput("coderivation needs a cochain with D₍₀₎ = 0".into()));
        }
        let d = self.clone();
        Ok(Op::new(self.degree - 1, "BA", "BA", move |w| d.bg_single(w)))
    }

    fn bg_single(&self, w: &BarWord<L>) -> Lin<BarWord<L>> {
        bg_action(std::slice::from_ref(self), w)
    }

    /// `D{E₁,…,E_ℓ}`, including empty insertions of zero-cochains.
    pub fn brace(&self, es: &[Cochain<L>]) -> Cochain<L> {
        let degree = self.degree + es.iter().map(|e| e.degree - 1).sum::<i32>();
        let mut arities = BTreeSet::new();
        for &n in &self.arities {
            if n < es.len() {
                continue;
            }
            let mut sums: BTreeSet<usize> = [n - es.len()].into();
            for e in es {
                sums = sums.iter().flat_map(|s| e.arities.iter().map(move |a| s + a)).collect();
            }
            arities.extend(sums);
        }
        let (d, es) = (self.clone(), es.to_vec());
        Cochain::new(degree, arities, move |letters| {
            let w = BarWord::new(letters.to_vec());
            let mut out = Lin::zero();
            for (sign, slots) in insertions(&es, &w) {
                out.add_scaled(&d.eval_slots(&slots), &sign);
            }
            out
        })
    }

    /// `D ∘ E = D{E}`.
    pub fn circle(&self, e: &Cochain<L>) -> Cochain<L> {
        self.brace(std::slice::from_ref(e))
    }

    /// `[D, E] = D∘E − (−1)^{(|D|−1)(|E|−1)} E∘D`.
    pub fn bracket(&self, e: &Cochain<L>) -> Cochain<L> {
        let s = sgn((self.degree as i64 - 1) * (e.degree as i64 - 1));
        let a = self.circle(e);
        let b = e.circle(self).scale(-s);
        a.add(&b).expect("equal degrees")
    }
}

/// All ways of inserting `D₁, …, D_n` into disjoint consecutive blocks of
/// `w`, in order, with the sign `(−1)^{Σ(|D_ℓ|−1)ω_{i_ℓ}}`. Each result is
/// the list of slots of the resulting word.
fn insertions<L: Basis>(ds: &[Cochain<L>], w: &BarWord<L>) -> Vec<(Scalar, Vec<Lin<L>>)> {
    fn go<L: Basis>(
        ds: &[Cochain<L>],
        w: &BarWord<L>,
        om: &[i64],
        pos: usize,
        exp: i64,
        slots: &mut Vec<Lin<L>>,
        out: &mut Vec<(Scalar, Vec<Lin<L>>)>,
    ) {
        let letters = w.letters();
        let Some((d, rest)) = ds.split_first() else {
            let mut full = slots.clone();
            full.extend(letters[pos..].iter().map(|a| Lin::basis(a.clone())));
            out.push((sgn(exp), full));
            return;
        };
        for i in pos..=letters.len() {
            for &a in d.arities() {
                if i + a > letters.len() {
                    continue;
                }
                let v = d.eval(&letters[i..i + a]);
                if v.is_zero() {
                    continue;
                }
                let mark = slots.len();
                slots.extend(letters[pos..i].iter().map(|a| Lin::basis(a.clone())));
                slots.push(v);
                go(rest, w, om, i + a, exp + (d.degree as i64 - 1) * om[i], slots, out);
                slots.truncate(mark);
            }
        }
    }
    let mut out = Vec::new();
    go(ds, w, &w.omegas(), 0, 0, &mut Vec::new(), &mut out);
    out
}

/// `[D₁|…|D_n] • [a₁|…|a_k]`.
pub fn bg_action<L: Basis>(ds: &[Cochain<L>], w: &BarWord<L>) -> Lin<BarWord<L>> {
    let mut out = Lin::zero();
    for (s, slots) in insertions(ds, w) {
        out.add_scaled(&assemble(&slots), &s);
    }
    out
}

/// The cochain of a dg algebra: `m₍₁₎ = d`, `m₍₂₎(a₁,a₂) = (−1)^{|a₁|} a₁a₂`.
pub fn algebra_cochain<A: DgAlgebra>(alg: Arc<A>) -> Cochain<A::E> {
    Cochain::new(2, [1, 2], move |l| match l {
        [a] => alg.d(a),
        [a, b] => alg.mul(a, b).scale(&sgn(a.degree() as i64)),
        _ => Lin::zero(),
    })
}

/// `m₍₂₎` alone.
pub fn product_cochain<A: DgAlgebra>(alg: Arc<A>) -> Cochain<A::E> {
    Cochain::new(2, [2], move |l| match l {
        [a, b] => alg.mul(a, b).scale(&sgn(a.degree() as i64)),
        _ => Lin::zero(),
    })
}

/// `m₍₁₎ = d` alone.
pub fn differential_cochain<A: DgAlgebra>(alg: Arc<A>) -> Cochain<A::E> {
    Cochain::new(2, [1], move |l| match l {
        [a] => alg.d(a),
        _ => Lin::zero(),
    })
}

/// `D₁ ∪ D₂ = (−1)^{|D₁|} m{D₁, D₂}`.
pub fn cup<A: DgAlgebra>(alg: Arc<A>, d1: &Cochain<A::E>, d2: &Cochain<A::E>) -> Cochain<A::E> {
    product_cochain(alg).brace(&[d1.clone(), d2.clone()]).scale(sgn(d1.degree() as i64))
}

/// Components `φ₍ₖ₎ : B_kA₁ → A₂` of a morphism of bar constructions.
#[derive(Clone)]
pub struct MorphismComponents<L1: Basis, L2: Basis> {
    arities: BTreeSet<usize>,
    f: Arc<dyn Fn(&[L1]) -> Lin<L2> + Send + Sync>,
}

impl<L1: Basis, L2: Basis> MorphismComponents<L1, L2> {
    pub fn new(arities: impl IntoIterator<Item = usize>, f: impl Fn(&[L1]) -> Lin<L2> + Send + Sync + 'static) -> Self {
        MorphismComponents { arities: arities.into_iter().collect(), f: Arc::new(f) }
    }

    /// Reads the components of a map into a bar construction off its
    /// length-one part, on words up to the given length.
    pub fn from_map(max_len: usize, map: impl Fn(&BarWord<L1>) -> Lin<BarWord<L2>> + Send + Sync + 'static) -> Self {
        Self::new(1..=max_len, move |l| {
            Lin::from_terms(
                map(&BarWord::new(l.to_vec()))
                    .iter()
                    .filter(|(w, _)| w.len() == 1)
                    .map(|(w, c)| (w.letters()[0].clone(), c.clone())),
            )
        })
    }

    pub fn eval(&self, letters: &[L1]) -> Lin<L2> {
        if self.arities.contains(&letters.len()) {
            (self.f)(letters)
        } else {
            Lin::zero()
        }
    }

    /// The coalgebra morphism `[a₁|…|a_k] ↦ Σ [φ(a₁…a_{j₁})|φ(…)|…]` over
    /// all decompositions into consecutive nonempty blocks.
    pub fn assemble(&self, w: &BarWord<L1>) -> Lin<BarWord<L2>> {
        let l = w.letters();
        let k = l.len();
        let mut out = Lin::zero();
        if k == 0 {
            return Lin::basis(Word::empty());
        }
        for mask in 0u64..(1 << (k - 1)) {
            let mut cuts = vec![0];
            cuts.extend((1..k).filter(|j| mask >> (j - 1) & 1 == 1));
            cuts.push(k);
            let slots: Vec<Lin<L2>> = cuts.windows(2).map(|c| self.eval(&l[c[0]..c[1]])).collect();
            out += &assemble(&slots);
        }
        out
    }
}

/// The universal twisting cochain `BA → A`, `[a] ↦ a`.
pub fn universal_twisting<L: Basis>(w: &BarWord<L>) -> Lin<L> {
    if w.len() == 1 {
        Lin::basis(w.letters()[0].clone())
    } else {
        Lin::zero()
    }
}

/// Maurer–Cartan residual of `t : C → A` on a basis word `w` of `C`:
/// `t(∂w) − d(t w) + Σ (−1)^{|w′|} t(w′) t(w″)` over the reduced coproduct.
pub fn twisting_residual<C: Basis, A: Basis>(
    w: &C,
    t: &dyn Fn(&C) -> Lin<A>,
    d_c: &dyn Fn(&C) -> Lin<C>,
    cop: &dyn Fn(&C) -> Lin<Tensor<C, C>>,
    d_a: &dyn Fn(&A) -> Lin<A>,
    mul_a: &dyn Fn(&A, &A) -> Lin<A>,
) -> Lin<A> {
    let mut out = d_c(w).flat_map(t);
    out -= &t(w).flat_map(d_a);
    for (Tensor(x, y), c) in cop(w).iter() {
        let s = sgn(x.degree() as i64);
        let (tx, ty) = (t(x), t(y));
        for (a, p) in tx.iter() {
            for (b, q) in ty.iter() {
                out.add_scaled(&mul_a(a, b), &(c * p * q * &s));
            }
        }
    }
    out
}

/// Twisting residual of the universal twisting cochain of a dg algebra.
pub fn universal_residual<A: DgAlgebra>(alg: &A, w: &BarWord<A::E>) -> Lin<A::E> {
    twisting_residual(
        w,
        &universal_twisting,
        &|v| bar_differential(alg, v),
        &|v| deconcatenate(v),
        &|a| alg.d(a),
        &|a, b| alg.mul(a, b),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::monomial_words;
    use crate::fixtures;
    use crate::lin::tensor;
    use crate::monomial::Sym;
    use crate::scalar::int;
    use crate::space::Gen;
    use crate::word::{deconcatenate_counital, shuffle, Bar};

    fn sv(space: &Space) -> Arc<SymAlgebra> {
        Arc::new(SymAlgebra::new(space.clone()))
    }

    fn words(space: &Space, n: usize) -> Vec<BarWord<SymMono>> {
        monomial_words::<Bar, Sym>(space, n)
    }

    fn mono(space: &Space, names: &[&str]) -> SymMono {
        let raw: Vec<Gen> = names.iter().map(|n| space.by_name(n).unwrap()).collect();
        SymMono::normalize(&raw).unwrap().1
    }

    fn word(space: &Space, letters: &[&[&str]]) -> BarWord<SymMono> {
        BarWord::new(letters.iter().map(|l| mono(space, l)).collect())
    }

    /// `τ`: projection onto `S¹V`.
    fn tau() -> Cochain<SymMono> {
        Cochain::new(1, [1], |l: &[SymMono]| if l[0].weight() == 1 { Lin::basis(l[0].clone()) } else { Lin::zero() })
    }

    /// `ρ`: multiplication by weight.
    fn rho() -> Cochain<SymMono> {
        Cochain::new(1, [1], |l: &[SymMono]| Lin::term(l[0].clone(), int(l[0].weight() as i64)))
    }

    #[test]
    fn bar_differential_squares_to_zero() {
        for (_, sp) in fixtures::contraction_spaces() {
            let alg = sv(&sp);
            for w in words(&sp, 4) {
                let dd = bar_differential(&*alg, &w).flat_map(|v| bar_differential(&*alg, v));
                assert!(dd.is_zero(), "{w:?}");
            }
        }
    }

    #[test]
    fn coderivation_examples() {
        let sp = fixtures::v2d();
        let alg = sv(&sp);
        let d = differential_cochain(alg.clone()).coderivation().unwrap();
        let xx = word(&sp, &[&["x"], &["x"]]);
        let expect = Lin::basis(word(&sp, &[&["y"], &["x"]])) - Lin::basis(word(&sp, &[&["x"], &["y"]]));
        assert_eq!(d.on(&xx), expect);
        let m2 = product_cochain(alg.clone()).coderivation().unwrap();
        assert_eq!(m2.on(&xx), Lin::basis(word(&sp, &[&["x", "x"]])));
        let d3 = Cochain::<SymMono>::new(2, [3], |_| panic!("never evaluated on length 2"));
        assert!(d3.coderivation().unwrap().on(&xx).is_zero());
        assert!(Cochain::constant(Lin::basis(mono(&sp, &["x"]))).unwrap().coderivation().is_err());
    }

    #[test]
    fn algebra_cochain_gives_bar_differential() {
        for (_, sp) in fixtures::contraction_spaces() {
            let alg = sv(&sp);
            let m = algebra_cochain(alg.clone());
            let dm = m.coderivation().unwrap();
            let mm = m.circle(&m);
            for w in words(&sp, 4) {
                assert_eq!(dm.on(&w), bar_differential(&*alg, &w));
                assert!(mm.eval(w.letters()).is_zero(), "m∘m on {w:?}");
            }
        }
    }

    #[test]
    fn circle_examples() {
        let sp = fixtures::v2();
        let tt = tau().circle(&tau());
        for w in words(&sp, 3).into_iter().filter(|w| w.len() == 1) {
            assert_eq!(tt.eval(w.letters()), tau().eval(w.letters()));
        }
        let m = algebra_cochain(sv(&sp));
        let mm = m.bracket(&m);
        for w in words(&sp, 4) {
            assert!(mm.eval(w.letters()).is_zero());
        }
    }

    #[test]
    fn coderivation_of_bracket_is_commutator() {
        let sp = fixtures::v2d();
        let alg = sv(&sp);
        let two = Cochain::new(2, [2], |l: &[SymMono]| {
            // a graded-symmetric two-cochain built from τ
            let (a, b) = (&l[0], &l[1]);
            if a.weight() == 1 && b.weight() == 1 {
                a.mul(b)
            } else {
                Lin::zero()
            }
        });
        let cochains = [tau(), rho(), algebra_cochain(alg.clone()), two];
        for d in &cochains {
            for e in &cochains {
                let lhs = d.bracket(e).coderivation().unwrap();
                let rhs = crate::operator::graded_commutator(&d.coderivation().unwrap(), &e.coderivation().unwrap()).unwrap();
                for w in words(&sp, 3) {
                    assert_eq!(lhs.on(&w), rhs.on(&w), "{w:?}");
                }
            }
        }
    }

    #[test]
    fn brace_and_cup() {
        let sp = fixtures::v2();
        let alg = sv(&sp);
        let x = Cochain::constant(Lin::basis(mono(&sp, &["x"]))).unwrap();
        let y = Cochain::constant(Lin::basis(mono(&sp, &["y"]))).unwrap();
        let xx = cup(alg.clone(), &x, &x);
        assert_eq!(xx.eval(&[]), Lin::basis(mono(&sp, &["x", "x"])));
        let xy = cup(alg.clone(), &x, &y);
        assert_eq!(xy.eval(&[]), Lin::basis(mono(&sp, &["x", "y"])));
        let yx = cup(alg.clone(), &y, &x);
        assert_eq!(yx.eval(&[]), Lin::basis(mono(&sp, &["x", "y"])));
        // brace with more insertions than slots
        let m2 = product_cochain(alg);
        let short = m2.brace(&[tau(), tau(), tau()]);
        for w in words(&sp, 3) {
            assert!(short.eval(w.letters()).is_zero());
        }
        assert_eq!(m2.brace(&[tau()]).arities(), m2.circle(&tau()).arities());
    }

    #[test]
    fn bg_action_examples() {
        let sp = fixtures::v1();
        let w = word(&sp, &[&["x"], &["x", "x"]]);
        assert_eq!(bg_action(&[tau()], &w), Lin::basis(word(&sp, &[&["x"], &["x", "x"]])));
        let single = word(&sp, &[&["x"]]);
        assert!(bg_action(&[tau(), tau()], &single).is_zero());
        assert_eq!(bg_action(&[rho()], &w), rho().coderivation().unwrap().on(&w));
    }

    #[test]
    fn bg_action_respects_coproducts() {
        let sp = fixtures::v2();
        let x = Cochain::constant(Lin::basis(mono(&sp, &["x"]))).unwrap();
        let y = Cochain::constant(Lin::basis(mono(&sp, &["y"]))).unwrap();
        let cs = [tau(), rho(), x, y, algebra_cochain(sv(&sp))];
        let mut hs: Vec<Vec<Cochain<SymMono>>> = Vec::new();
        for a in &cs {
            hs.push(vec![a.clone()]);
            for b in &cs {
                hs.push(vec![a.clone(), b.clone()]);
            }
        }
        let hdeg = |h: &[Cochain<SymMono>]| h.iter().map(|d| d.degree() as i64 - 1).sum::<i64>();
        for h in &hs {
            for w in words(&sp, 3) {
                let lhs = bg_action(h, &w).flat_map(deconcatenate_counital);
                let mut rhs = Lin::zero();
                for i in 0..=h.len() {
                    let (h1, h2) = h.split_at(i);
                    for (Tensor(w1, w2), c) in deconcatenate_counital(&w).iter() {
                        let s = sgn(hdeg(h2) * w1.degree() as i64);
                        let t = tensor(&bg_action(h1, w1), &bg_action(h2, w2));
                        rhs.add_scaled(&t, &(c * s));
                    }
                }
                assert_eq!(lhs, rhs, "{w:?}");
            }
        }
    }

    /// Free associative algebra on `u` (degree 0) and `v` (degree 1).
    struct Free;
    impl DgAlgebra for Free {
        type E = BarWord<Gen>;
        fn label(&self) -> String {
            "T".into()
        }
        fn d(&self, _: &Self::E) -> Lin<Self::E> {
            Lin::zero()
        }
        fn mul(&self, a: &Self::E, b: &Self::E) -> Lin<Self::E> {
            Lin::basis(a.concat(b))
        }
    }

    fn derivation_residual<A: DgAlgebra>(alg: &A, u: &BarWord<A::E>, v: &BarWord<A::E>) -> Lin<BarWord<A::E>> {
        let d = |x: &Lin<BarWord<A::E>>| x.flat_map(|w| bar_differential(alg, w));
        let sh = |a: &Lin<BarWord<A::E>>, b: &Lin<BarWord<A::E>>| crate::word::shuffle_elems(a, b);
        let (lu, lv) = (Lin::basis(u.clone()), Lin::basis(v.clone()));
        d(&shuffle(u, v)) - sh(&d(&lu), &lv) - sh(&lu, &d(&lv)).scale(&sgn(u.degree() as i64))
    }

    #[test]
    fn differential_is_a_shuffle_derivation_iff_commutative() {
        let sp = fixtures::v2d();
        let alg = sv(&sp);
        let ws = words(&sp, 3);
        for u in &ws {
            for v in &ws {
                if u.weight() + v.weight() <= 4 {
                    assert!(derivation_residual(&*alg, u, v).is_zero());
                }
            }
        }
        let g = |i: u16| BarWord::new(vec![Gen { id: i, deg: i as i32 }]);
        let (a, b) = (BarWord::single(g(0)), BarWord::single(g(1)));
        assert!(!derivation_residual(&Free, &a, &b).is_zero());
    }

    #[test]
    fn universal_twisting_cochain_is_twisting() {
        for (_, sp) in fixtures::contraction_spaces() {
            let alg = sv(&sp);
            for w in words(&sp, 4) {
                assert!(universal_residual(&*alg, &w).is_zero(), "{w:?}");
            }
        }
    }

    #[test]
    fn zero_map_is_twisting() {
        let sp = fixtures::v2();
        let alg = sv(&sp);
        let zero = |_: &BarWord<SymMono>| Lin::<SymMono>::zero();
        for w in words(&sp, 3) {
            let r = twisting_residual(&w, &zero, &|_| Lin::zero(), &|v| deconcatenate(v), &|a| alg.d(a), &|a, b| alg.mul(a, b));
            assert!(r.is_zero());
        }
    }

    #[test]
    fn assembled_morphisms() {
        let sp = fixtures::v2();
        let id = MorphismComponents::<SymMono, SymMono>::new([1], |l| Lin::basis(l[0].clone()));
        for w in words(&sp, 3) {
            assert_eq!(id.assemble(&w), Lin::basis(w.clone()));
        }
        let two = MorphismComponents::<SymMono, SymMono>::new([1], |l| Lin::term(l[0].clone(), int(2)));
        for w in words(&sp, 3) {
            assert_eq!(two.assemble(&w), Lin::term(w.clone(), int(1 << w.len())));
        }
        // a component of length two; check the coalgebra property
        let alg = sv(&sp);
        let phi = MorphismComponents::<SymMono, SymMono>::new([1, 2], move |l| match l {
            [a] => Lin::basis(a.clone()),
            [a, b] => alg.mul(a, b),
            _ => Lin::zero(),
        });
        let w = word(&sp, &[&["x"], &["y"]]);
        let expect = Lin::basis(word(&sp, &[&["x", "y"]])) + Lin::basis(w.clone());
        assert_eq!(phi.assemble(&w), expect);
        for w in words(&sp, 4).into_iter().filter(|w| w.len() <= 3) {
            let lhs = phi.assemble(&w).flat_map(deconcatenate);
            let rhs = deconcatenate(&w).flat_map(|t| tensor(&phi.assemble(&t.0), &phi.assemble(&t.1)));
            assert_eq!(lhs, rhs);
        }
    }
}
