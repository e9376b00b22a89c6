//! Counital wrappers, bialgebra compatibility and primitive elements.

use std::collections::BTreeMap;

use crate::lin::{Basis, Lin, Tensor};
use crate::linalg;
use crate::monomial::{Kind, Monomial};
use crate::scalar;
use crate::sign::odd;

/// `C₊ = C ⊕ 𝔽`: a basis word of `C` or the adjoined unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Plus<B> {
    Unit,
    Elem(B),
}

impl<B: Basis> Basis for Plus<B> {
    fn degree(&self) -> i32 {
        match self {
            Plus::Unit => 0,
            Plus::Elem(b) => b.degree(),
        }
    }
    fn weight(&self) -> usize {
        match self {
            Plus::Unit => 0,
            Plus::Elem(b) => b.weight(),
        }
    }
}

pub fn counit<B: Basis>(x: &Lin<Plus<B>>) -> scalar::Scalar {
    x.coeff(&Plus::Unit)
}

/// `Δ₊a = a⊗1 + Δa + 1⊗a − ε(a) 1⊗1` from the reduced coproduct.
pub fn plus_coproduct<B: Basis>(
    w: &Plus<B>,
    reduced: impl Fn(&B) -> Lin<Tensor<B, B>>,
) -> Lin<Tensor<Plus<B>, Plus<B>>> {
    match w {
        Plus::Unit => Lin::basis(Tensor(Plus::Unit, Plus::Unit)),
        Plus::Elem(b) => {
            let mut out = reduced(b).map_basis(|t| Tensor(Plus::Elem(t.0.clone()), Plus::Elem(t.1.clone())));
            out.add_term(Tensor(Plus::Elem(b.clone()), Plus::Unit), scalar::one());
            out.add_term(Tensor(Plus::Unit, Plus::Elem(b.clone())), scalar::one());
            out
        }
    }
}

/// Product on `A₊` with `1` adjoined as a unit.
pub fn plus_product<B: Basis>(x: &Plus<B>, y: &Plus<B>, mul: impl Fn(&B, &B) -> Lin<B>) -> Lin<Plus<B>> {
    match (x, y) {
        (Plus::Unit, b) | (b, Plus::Unit) => Lin::basis(b.clone()),
        (Plus::Elem(a), Plus::Elem(b)) => mul(a, b).map_basis(|m| Plus::Elem(m.clone())),
    }
}

/// Embeds a monomial, identifying the empty monomial with the unit.
pub fn to_plus<K: Kind>(m: &Monomial<K>) -> Plus<Monomial<K>> {
    if m.is_one() {
        Plus::Unit
    } else {
        Plus::Elem(m.clone())
    }
}

/// Product on `H ⊗ H`: `(a⊗b)(c⊗d) = (−1)^{|b||c|} ac ⊗ bd`.
pub fn tensor_product<B: Basis>(
    x: &Lin<Tensor<B, B>>,
    y: &Lin<Tensor<B, B>>,
    mul: impl Fn(&B, &B) -> Lin<B>,
) -> Lin<Tensor<B, B>> {
    let mut out = Lin::zero();
    for (Tensor(a, b), c) in x.iter() {
        for (Tensor(p, q), d) in y.iter() {
            let s = scalar::sign(odd(b.degree() as i64 * p.degree() as i64));
            out.add_scaled(&crate::lin::tensor(&mul(a, p), &mul(b, q)), &(c * d * s));
        }
    }
    out
}

/// `Δ₊(ab) − Δ₊(a)Δ₊(b)` in the counital bialgebra `SV₊` or `∧V₊`.
pub fn bialgebra_compat_residual<K: Kind>(
    a: &Lin<Monomial<K>>,
    b: &Lin<Monomial<K>>,
) -> Lin<Tensor<Monomial<K>, Monomial<K>>> {
    let cop = |x: &Lin<Monomial<K>>| x.flat_map(|m| m.coproduct_counital());
    let prod = crate::monomial::mul(a, b);
    cop(&prod) - tensor_product(&cop(a), &cop(b), |x, y| x.mul(y))
}

/// A basis of the kernel of `cop` on the span of `words`, computed per
/// (degree, weight) piece.
pub fn primitives<B: Basis, T: Basis>(words: &[B], cop: impl Fn(&B) -> Lin<T>) -> Vec<Lin<B>> {
    let mut pieces: BTreeMap<(i32, usize), Vec<B>> = BTreeMap::new();
    for w in words {
        pieces.entry((w.degree(), w.weight())).or_default().push(w.clone());
    }
    let mut out = Vec::new();
    for basis in pieces.values() {
        let images: Vec<Lin<T>> = basis.iter().map(&cop).collect();
        let mut rows: BTreeMap<T, usize> = BTreeMap::new();
        for img in &images {
            for t in img.support() {
                let n = rows.len();
                rows.entry(t.clone()).or_insert(n);
            }
        }
        let mut m = vec![vec![scalar::zero(); basis.len()]; rows.len()];
        for (j, img) in images.iter().enumerate() {
            for (t, c) in img.iter() {
                m[rows[t]][j] = c.clone();
            }
        }
        for v in linalg::kernel(&m, basis.len()) {
            out.push(Lin::from_terms(basis.iter().cloned().zip(v)));
        }
    }
    out
}
