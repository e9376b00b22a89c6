//! Finite formal linear combinations of basis words.

use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::Zero;

use crate::scalar::{self, Scalar};

/// A homogeneous basis word in some weight-graded space.
pub trait Basis: Clone + Ord + Eq + Hash + Debug + Send + Sync + 'static {
    fn degree(&self) -> i32;
    /// Number of generators of the underlying space occurring in the word.
    fn weight(&self) -> usize;
}

/// Finite ℚ-linear combination of basis words. Zero coefficients are never
/// stored, so structural equality is equality of elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lin<B: Ord> {
    terms: BTreeMap<B, Scalar>,
}

impl<B: Ord> Default for Lin<B> {
    fn default() -> Self {
        Lin { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> Lin<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, scalar::one())
    }

    pub fn term(b: B, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (B, Scalar)>) -> Self {
        let mut out = Self::zero();
        for (b, c) in terms {
            out.add_term(b, c);
        }
        out
    }

    pub fn add_term(&mut self, b: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(b) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Lin<B>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn coeff(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Lin { terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect() }
    }

    /// Extends a map on basis words linearly.
    pub fn flat_map<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> Lin<C>) -> Lin<C> {
        let mut out = Lin::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Relabels basis words; the map must be injective for the result to be
    /// meaningful, colliding words are summed.
    pub fn map_basis<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> C) -> Lin<C> {
        Lin::from_terms(self.terms.iter().map(|(b, c)| (f(b), c.clone())))
    }

    pub fn filter(&self, mut keep: impl FnMut(&B) -> bool) -> Self {
        Lin { terms: self.terms.iter().filter(|(b, _)| keep(b)).map(|(b, c)| (b.clone(), c.clone())).collect() }
    }

    pub fn into_terms(self) -> BTreeMap<B, Scalar> {
        self.terms
    }
}

impl<B: Basis> Lin<B> {
    /// The common degree of all terms, or `None` for zero or mixed elements.
    pub fn degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(Basis::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(Basis::weight).max().unwrap_or(0)
    }
}

impl<B: Ord + Clone> AddAssign<&Lin<B>> for Lin<B> {
    fn add_assign(&mut self, rhs: &Lin<B>) {
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), c.clone());
        }
    }
}

impl<B: Ord + Clone> SubAssign<&Lin<B>> for Lin<B> {
    fn sub_assign(&mut self, rhs: &Lin<B>) {
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), -c.clone());
        }
    }
}

impl<B: Ord + Clone> Add for Lin<B> {
    type Output = Lin<B>;
    fn add(mut self, rhs: Lin<B>) -> Lin<B> {
        self += &rhs;
        self
    }
}

impl<B: Ord + Clone> Add<&Lin<B>> for &Lin<B> {
    type Output = Lin<B>;
    fn add(self, rhs: &Lin<B>) -> Lin<B> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<B: Ord + Clone> Sub for Lin<B> {
    type Output = Lin<B>;
    fn sub(mut self, rhs: Lin<B>) -> Lin<B> {
        self -= &rhs;
        self
    }
}

impl<B: Ord + Clone> Sub<&Lin<B>> for &Lin<B> {
    type Output = Lin<B>;
    fn sub(self, rhs: &Lin<B>) -> Lin<B> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<B: Ord + Clone> Neg for Lin<B> {
    type Output = Lin<B>;
    fn neg(self) -> Lin<B> {
        Lin { terms: self.terms.into_iter().map(|(b, c)| (b, -c)).collect() }
    }
}

impl<B: Ord + Clone> Mul<&Scalar> for Lin<B> {
    type Output = Lin<B>;
    fn mul(self, rhs: &Scalar) -> Lin<B> {
        self.scale(rhs)
    }
}

impl<B: Ord + Debug> Debug for Lin<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}) {:?}", scalar::format(c), b)?;
        }
        Ok(())
    }
}

/// Basis word of a tensor product `A ⊗ B`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Tensor<A, B>(pub A, pub B);

impl<A: Basis, B: Basis> Basis for Tensor<A, B> {
    fn degree(&self) -> i32 {
        self.0.degree() + self.1.degree()
    }
    fn weight(&self) -> usize {
        self.0.weight() + self.1.weight()
    }
}

/// `x ⊗ y` for elements.
pub fn tensor<A: Basis, B: Basis>(x: &Lin<A>, y: &Lin<B>) -> Lin<Tensor<A, B>> {
    let mut out = Lin::zero();
    for (a, c) in x.iter() {
        for (b, d) in y.iter() {
            out.add_term(Tensor(a.clone(), b.clone()), c * d);
        }
    }
    out
}

/// `(F ⊗ G)(x ⊗ y) = (-1)^{|G||x|} F x ⊗ G y`.
pub fn tensor_map<A: Basis, B: Basis, C: Basis, D: Basis>(
    t: &Lin<Tensor<A, B>>,
    f: impl Fn(&A) -> Lin<C>,
    g: impl Fn(&B) -> Lin<D>,
    g_degree: i32,
) -> Lin<Tensor<C, D>> {
    let mut out = Lin::zero();
    for (Tensor(a, b), c) in t.iter() {
        let s = scalar::sign(crate::sign::odd(g_degree as i64 * a.degree() as i64));
        out.add_scaled(&tensor(&f(a), &g(b)), &(c * s));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
    struct W(u8);
    impl Basis for W {
        fn degree(&self) -> i32 {
            self.0 as i32
        }
        fn weight(&self) -> usize {
            1
        }
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut x = Lin::basis(W(1));
        x.add_term(W(1), int(-1));
        assert!(x.is_zero());
        let y = Lin::term(W(2), int(3)) - Lin::term(W(2), int(3));
        assert_eq!(y, Lin::zero());
    }

    #[test]
    fn degree_of_mixed_is_none() {
        let x = Lin::basis(W(1)) + Lin::basis(W(2));
        assert_eq!(x.degree(), None);
        assert_eq!(Lin::basis(W(2)).degree(), Some(2));
    }

    #[test]
    fn tensor_map_sign() {
        let t = tensor(&Lin::basis(W(1)), &Lin::basis(W(0)));
        let out = tensor_map(&t, |a| Lin::basis(a.clone()), |b| Lin::basis(b.clone()), 1);
        assert_eq!(out, Lin::term(Tensor(W(1), W(0)), int(-1)));
    }
}
