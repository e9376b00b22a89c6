//! Degree-homogeneous linear operators given by their action on basis words.
//!
//! Operators are cheap to clone and compose lazily. Equality is only
//! decidable on a finite truncation, so comparisons take an explicit list of
//! basis words.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::lin::{Basis, Lin};
use crate::linalg;
use crate::scalar::{self, Scalar};
use crate::sign::odd;

type Action<A, B> = Arc<dyn Fn(&A) -> Lin<B> + Send + Sync>;

/// Iteration cap for Neumann series; a perturbation that is still nonzero
/// after this many applications is treated as non-nilpotent.
pub const NEUMANN_CAP: usize = 256;

#[derive(Clone)]
pub struct Op<A: Basis, B: Basis = A> {
    degree: i32,
    domain: Arc<str>,
    codomain: Arc<str>,
    action: Action<A, B>,
}

impl<A: Basis, B: Basis> Op<A, B> {
    pub fn new(
        degree: i32,
        domain: impl Into<Arc<str>>,
        codomain: impl Into<Arc<str>>,
        f: impl Fn(&A) -> Lin<B> + Send + Sync + 'static,
    ) -> Self {
        Op { degree, domain: domain.into(), codomain: codomain.into(), action: Arc::new(f) }
    }

    pub fn zero(degree: i32, domain: impl Into<Arc<str>>, codomain: impl Into<Arc<str>>) -> Self {
        Self::new(degree, domain, codomain, |_| Lin::zero())
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn domain(&self) -> &str {
        &self.domain
    }

    pub fn codomain(&self) -> &str {
        &self.codomain
    }

    pub fn on(&self, a: &A) -> Lin<B> {
        (self.action)(a)
    }

    pub fn apply(&self, x: &Lin<A>) -> Lin<B> {
        x.flat_map(|a| self.on(a))
    }

    pub fn scale(&self, c: Scalar) -> Self {
        let f = self.action.clone();
        Op { action: Arc::new(move |a| f(a).scale(&c)), ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        self.scale(-scalar::one())
    }

    fn check_parallel(&self, other: &Self, what: &str) -> Result<()> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::DomainMismatch(format!(
                "{what}: {}→{} vs {}→{}",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other, "sum")?;
        let (f, g) = (self.action.clone(), other.action.clone());
        Ok(Op { action: Arc::new(move |a| f(a) + g(a)), ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other, "difference")?;
        let (f, g) = (self.action.clone(), other.action.clone());
        Ok(Op { action: Arc::new(move |a| f(a) - g(a)), ..self.clone() })
    }

    /// `self ∘ b`.
    pub fn after<Z: Basis>(&self, b: &Op<Z, A>) -> Result<Op<Z, B>> {
        if b.codomain != self.domain {
            return Err(Error::DomainMismatch(format!(
                "cannot compose {}→{} after {}→{}",
                self.domain, self.codomain, b.domain, b.codomain
            )));
        }
        let (f, g) = (self.action.clone(), b.action.clone());
        Ok(Op {
            degree: self.degree + b.degree,
            domain: b.domain.clone(),
            codomain: self.codomain.clone(),
            action: Arc::new(move |z| g(z).flat_map(|a| f(a))),
        })
    }

    /// Caches the action on basis words.
    pub fn memoized(&self) -> Self {
        let f = self.action.clone();
        let cache: Arc<Mutex<HashMap<A, Lin<B>>>> = Arc::default();
        Op {
            action: Arc::new(move |a| {
                if let Some(v) = cache.lock().unwrap().get(a) {
                    return v.clone();
                }
                let v = f(a);
                cache.lock().unwrap().insert(a.clone(), v.clone());
                v
            }),
            ..self.clone()
        }
    }

    /// First basis word (from `basis`) on which the two operators differ,
    /// together with the difference.
    pub fn first_difference<'a>(
        &self,
        other: &Self,
        basis: impl IntoIterator<Item = &'a A>,
    ) -> Option<(A, Lin<B>)> {
        basis.into_iter().find_map(|a| {
            let d = self.on(a) - other.on(a);
            (!d.is_zero()).then(|| (a.clone(), d))
        })
    }

    pub fn equal_on<'a>(&self, other: &Self, basis: impl IntoIterator<Item = &'a A>) -> bool {
        self.first_difference(other, basis).is_none()
    }
}

/// `a ∘ b` as a free function.
pub fn compose<X: Basis, Y: Basis, Z: Basis>(a: &Op<Y, Z>, b: &Op<X, Y>) -> Result<Op<X, Z>> {
    a.after(b)
}

impl<A: Basis> Op<A, A> {
    pub fn identity(space: impl Into<Arc<str>>) -> Self {
        let s: Arc<str> = space.into();
        Op::new(0, s.clone(), s, |a: &A| Lin::basis(a.clone()))
    }

    pub fn is_zero_on<'a>(&self, basis: impl IntoIterator<Item = &'a A>) -> bool {
        basis.into_iter().all(|a| self.on(a).is_zero())
    }

    /// `a + c·1`.
    pub fn plus_identity(&self, c: Scalar) -> Self {
        let f = self.action.clone();
        Op {
            action: Arc::new(move |a| {
                let mut v = f(a);
                v.add_term(a.clone(), c.clone());
                v
            }),
            ..self.clone()
        }
    }

    /// Descending factorial `a(a-1)…(a-j+1)`; `j = 0` gives the identity.
    pub fn descending_factorial(&self, j: usize) -> Self {
        let mut out = Op::identity(self.domain.clone());
        for i in 0..j {
            let shifted = self.plus_identity(-scalar::int(i as i64));
            out = shifted.after(&out).expect("same space");
        }
        out
    }
}

/// `[a, b] = a∘b − (−1)^{|a||b|} b∘a`.
pub fn graded_commutator<A: Basis>(a: &Op<A>, b: &Op<A>) -> Result<Op<A>> {
    let ab = a.after(b)?;
    let ba = b.after(a)?;
    let s = scalar::sign(odd(a.degree as i64 * b.degree as i64));
    ab.sub(&ba.scale(s))
}

/// `(1 + n)^{-1} x = Σ_k (−n)^k x`, summed until the terms vanish.
pub fn neumann_apply<A: Basis>(n: &Op<A>, x: &Lin<A>) -> Lin<A> {
    let mut acc = x.clone();
    let mut term = x.clone();
    for _ in 0..NEUMANN_CAP {
        term = -n.apply(&term);
        if term.is_zero() {
            return acc;
        }
        acc += &term;
    }
    panic!("Neumann series for 1+{} did not terminate; perturbation is not nilpotent", n.domain());
}

/// `(1 + n)^{-1}` for an operator `n` that is nilpotent on every truncated
/// piece (it strictly lowers some bounded filtration degree).
pub fn neumann_inverse<A: Basis>(n: &Op<A>) -> Op<A> {
    let n = n.clone();
    Op::new(0, n.domain.clone(), n.codomain.clone(), move |a: &A| neumann_apply(&n, &Lin::basis(a.clone())))
}

/// Smallest set of basis words containing `seed` and closed under the
/// support of `a`.
pub fn closure<A: Basis>(a: &Op<A>, seed: impl IntoIterator<Item = A>) -> Vec<A> {
    let mut seen: BTreeSet<A> = BTreeSet::new();
    let mut stack: Vec<A> = seed.into_iter().collect();
    while let Some(w) = stack.pop() {
        if seen.insert(w.clone()) {
            for b in a.on(&w).support() {
                if !seen.contains(b) {
                    stack.push(b.clone());
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Matrix of `a` restricted to an invariant set of basis words
/// (column `j` = image of `basis[j]`).
pub fn matrix_on<A: Basis>(a: &Op<A>, basis: &[A]) -> linalg::Matrix {
    let index: BTreeMap<&A, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let n = basis.len();
    let mut m = vec![vec![scalar::zero(); n]; n];
    for (j, b) in basis.iter().enumerate() {
        for (w, c) in a.on(b).iter() {
            let i = *index.get(w).expect("basis is not invariant under the operator");
            m[i][j] = c.clone();
        }
    }
    m
}

/// Some `y` with `a y = b`, found by an exact solve on the smallest
/// `a`-invariant span containing `b`. If `a` is injective on the graded
/// piece, this is the unique preimage.
pub fn solve<A: Basis>(a: &Op<A>, b: &Lin<A>) -> Result<Lin<A>> {
    if b.is_zero() {
        return Ok(Lin::zero());
    }
    let basis = closure(a, b.support().cloned());
    let m = matrix_on(a, &basis);
    let rhs: Vec<Scalar> = basis.iter().map(|w| b.coeff(w)).collect();
    let x = linalg::solve(&m, &rhs).ok_or_else(|| Error::Singular {
        piece: describe_piece(&basis),
    })?;
    Ok(Lin::from_terms(basis.into_iter().zip(x)))
}

/// Fitting decomposition `b = b₀ + b₁` with `b₀` in the generalized kernel
/// of `a` and `b₁` in the generalized image, on the smallest `a`-invariant
/// span containing `b`.
pub fn fitting_split<A: Basis>(a: &Op<A>, b: &Lin<A>) -> (Lin<A>, Lin<A>) {
    if b.is_zero() {
        return (Lin::zero(), Lin::zero());
    }
    let basis = closure(a, b.support().cloned());
    let n = basis.len();
    let m = matrix_on(a, &basis);
    let mut power = m.clone();
    let mut k = 1;
    while k < n {
        power = linalg::mul(&power, &power);
        k *= 2;
    }
    let ker = linalg::kernel(&power, n);
    let mut combined: linalg::Matrix = vec![Vec::with_capacity(ker.len() + n); n];
    for (i, row) in combined.iter_mut().enumerate() {
        row.extend(ker.iter().map(|v| v[i].clone()));
        row.extend(power[i].iter().cloned());
    }
    let rhs: Vec<Scalar> = basis.iter().map(|w| b.coeff(w)).collect();
    let c = linalg::solve(&combined, &rhs).expect("generalized kernel and image span the piece");
    let mut b0 = Lin::zero();
    for (v, ci) in ker.iter().zip(&c) {
        for (w, x) in basis.iter().zip(v) {
            b0.add_term(w.clone(), ci * x);
        }
    }
    let b1 = b - &b0;
    (b0, b1)
}

/// The Fitting decomposition of a degree-zero operator `a`, tabulated on
/// the invariant span of a truncation: the projection `P` onto the
/// generalized kernel along the generalized image, and `(1 − P) a⁻¹ (1 − P)`.
/// `a` must preserve degree and weight.
pub struct FittingTable<A: Basis> {
    proj: HashMap<A, Lin<A>>,
    inv: HashMap<A, Lin<A>>,
}

impl<A: Basis> FittingTable<A> {
    pub fn new(a: &Op<A>, truncation: &[A]) -> Self {
        let mut pieces: BTreeMap<(i32, usize), Vec<A>> = BTreeMap::new();
        for w in closure(a, truncation.iter().cloned()) {
            pieces.entry((w.degree(), w.weight())).or_default().push(w);
        }
        let mut table = FittingTable { proj: HashMap::new(), inv: HashMap::new() };
        for basis in pieces.into_values() {
            let basis = closure(a, basis);
            table.add_piece(a, &basis);
        }
        table
    }

    /// In the basis `C = [ker aⁿ | im aⁿ]`, `a` is `diag(N, G)` with `N`
    /// nilpotent and `G` invertible; `P = C diag(1, 0) C⁻¹` and the inverse
    /// off the kernel is `C diag(0, G⁻¹) C⁻¹`.
    fn add_piece(&mut self, a: &Op<A>, basis: &[A]) {
        let n = basis.len();
        let m = matrix_on(a, basis);
        let mut power = m.clone();
        let mut ker = linalg::kernel(&power, n);
        loop {
            let next = linalg::mul(&power, &m);
            let k = linalg::kernel(&next, n);
            if k.len() == ker.len() {
                break;
            }
            power = next;
            ker = k;
        }
        let dk = ker.len();
        let cols = linalg::column_basis(&power, n);
        let c: linalg::Matrix = (0..n)
            .map(|i| ker.iter().map(|v| v[i].clone()).chain(cols.iter().map(|&j| power[i][j].clone())).collect())
            .collect();
        let cinv = linalg::inverse(&c).expect("generalized kernel and image span the piece");
        let block = linalg::mul(&linalg::mul(&cinv, &m), &c);
        let g: linalg::Matrix = block[dk..].iter().map(|r| r[dk..].to_vec()).collect();
        let ginv = linalg::inverse(&g).expect("a is invertible on its generalized image");
        let zero = || vec![vec![scalar::zero(); n]; n];
        let (mut p, mut h) = (zero(), zero());
        for i in 0..n {
            for j in 0..n {
                p[i][j] = (0..dk).map(|l| &c[i][l] * &cinv[l][j]).fold(scalar::zero(), |x, y| x + y);
            }
        }
        if dk < n {
            let cg = linalg::mul(&c.iter().map(|r| r[dk..].to_vec()).collect(), &ginv);
            h = linalg::mul(&cg, &cinv[dk..].to_vec());
        }
        for (j, w) in basis.iter().enumerate() {
            let col = |mat: &linalg::Matrix| Lin::from_terms(basis.iter().enumerate().map(|(i, v)| (v.clone(), mat[i][j].clone())));
            self.proj.insert(w.clone(), col(&p));
            self.inv.insert(w.clone(), col(&h));
        }
    }

    /// `P w`, or `None` outside the tabulated span.
    pub fn projection(&self, w: &A) -> Option<&Lin<A>> {
        self.proj.get(w)
    }

    /// `(1 − P) a⁻¹ (1 − P) w`, or `None` outside the tabulated span.
    pub fn inverse_off_kernel(&self, w: &A) -> Option<&Lin<A>> {
        self.inv.get(w)
    }

    /// `P x`, or `None` if `x` leaves the tabulated span.
    pub fn project(&self, x: &Lin<A>) -> Option<Lin<A>> {
        Self::apply(&self.proj, x)
    }

    /// `(1 − P) a⁻¹ (1 − P) x`, or `None` if `x` leaves the tabulated span.
    pub fn invert_off_kernel(&self, x: &Lin<A>) -> Option<Lin<A>> {
        Self::apply(&self.inv, x)
    }

    fn apply(table: &HashMap<A, Lin<A>>, x: &Lin<A>) -> Option<Lin<A>> {
        let mut out = Lin::zero();
        for (w, c) in x.iter() {
            out.add_scaled(table.get(w)?, c);
        }
        Some(out)
    }
}

fn describe_piece<A: Basis>(basis: &[A]) -> String {
    let degs: BTreeSet<i32> = basis.iter().map(Basis::degree).collect();
    let wts: BTreeSet<usize> = basis.iter().map(Basis::weight).collect();
    format!("degrees {degs:?}, weights {wts:?}, dimension {}", basis.len())
}

/// Exact inverse of `a` on the span of the given truncation, which must be
/// invariant under `a`. The inverse is tabulated per basis word; words
/// outside the truncation are solved on demand.
pub fn operator_inverse<A: Basis>(a: &Op<A>, truncation: &[A]) -> Result<Op<A>> {
    // group into graded pieces (degree, weight) and invert each
    let mut pieces: BTreeMap<(i32, usize), Vec<A>> = BTreeMap::new();
    for w in closure(a, truncation.iter().cloned()) {
        pieces.entry((w.degree(), w.weight())).or_default().push(w);
    }
    let mut table: HashMap<A, Lin<A>> = HashMap::new();
    for ((deg, wt), basis) in pieces {
        let closed = closure(a, basis.iter().cloned());
        let m = matrix_on(a, &closed);
        let inv = linalg::inverse(&m).ok_or_else(|| Error::Singular {
            piece: format!("degree {deg}, weight {wt}: {}", describe_piece(&closed)),
        })?;
        for (j, w) in closed.iter().enumerate() {
            let col = Lin::from_terms(closed.iter().enumerate().map(|(i, v)| (v.clone(), inv[i][j].clone())));
            table.insert(w.clone(), col);
        }
    }
    let a2 = a.clone();
    Ok(Op::new(-a.degree, a.codomain.clone(), a.domain.clone(), move |w: &A| {
        table.get(w).cloned().unwrap_or_else(|| {
            solve(&a2, &Lin::basis(w.clone())).expect("operator singular outside tabulated truncation")
        })
    }))
}
