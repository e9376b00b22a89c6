//! Graded-commutative monomials: the symmetric algebra `SV` and the
//! exterior coalgebra `∧V ≅ S(sV)`.

use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::lin::{Basis, Lin, Tensor};
use crate::scalar::{self, Scalar};
use crate::sign::{odd, reorder_parity};
use crate::space::{Gen, GradedSpace};

pub trait Kind: Clone + Copy + PartialEq + Eq + PartialOrd + Ord + Hash + fmt::Debug + Send + Sync + 'static {
    /// Degree shift applied to each generator.
    const SHIFT: i32;
    const PREFIX: &'static str;
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sym;
impl Kind for Sym {
    const SHIFT: i32 = 0;
    const PREFIX: &'static str = "";
}

/// Letters `sx` with `|sx| = |x| − 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Ext;
impl Kind for Ext {
    const SHIFT: i32 = -1;
    const PREFIX: &'static str = "s";
}

/// Sorted product of generators; the empty monomial is the unit of the
/// (co)unital variant and never occurs in reduced constructions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial<K: Kind> {
    gens: Vec<Gen>,
    kind: PhantomData<K>,
}

pub type SymMono = Monomial<Sym>;
pub type ExtMono = Monomial<Ext>;

pub fn eff(g: Gen, shift: i32) -> i32 {
    g.deg + shift
}

impl<K: Kind> Monomial<K> {
    pub fn one() -> Self {
        Monomial { gens: Vec::new(), kind: PhantomData }
    }

    pub fn gen(g: Gen) -> Self {
        Monomial { gens: vec![g], kind: PhantomData }
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn is_one(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn letter_degree(g: Gen) -> i32 {
        g.deg + K::SHIFT
    }

    /// Sorts a raw product into normal form. Returns `None` when an odd
    /// letter repeats.
    pub fn normalize(raw: &[Gen]) -> Option<(Scalar, Self)> {
        let mut idx: Vec<usize> = (0..raw.len()).collect();
        idx.sort_by_key(|&i| raw[i].id);
        let mut target = vec![0; raw.len()];
        for (pos, &i) in idx.iter().enumerate() {
            target[i] = pos;
        }
        let degs: Vec<i32> = raw.iter().map(|&g| Self::letter_degree(g)).collect();
        let sorted: Vec<Gen> = idx.iter().map(|&i| raw[i]).collect();
        if sorted.windows(2).any(|w| w[0] == w[1] && odd(Self::letter_degree(w[0]) as i64)) {
            return None;
        }
        let s = scalar::sign(reorder_parity(&degs, &target));
        Some((s, Monomial { gens: sorted, kind: PhantomData }))
    }

    pub fn from_raw(raw: &[Gen]) -> Lin<Self> {
        match Self::normalize(raw) {
            Some((s, m)) => Lin::term(m, s),
            None => Lin::zero(),
        }
    }

    pub fn mul(&self, other: &Self) -> Lin<Self> {
        let raw: Vec<Gen> = self.gens.iter().chain(&other.gens).copied().collect();
        Self::from_raw(&raw)
    }

    /// Reduced coshuffle coproduct: both factors non-empty.
    pub fn coproduct(&self) -> Lin<Tensor<Self, Self>> {
        self.coproduct_counital().filter(|t| !t.0.is_one() && !t.1.is_one())
    }

    /// Coshuffle coproduct including the unit factors.
    pub fn coproduct_counital(&self) -> Lin<Tensor<Self, Self>> {
        let n = self.gens.len();
        let degs: Vec<i32> = self.gens.iter().map(|&g| Self::letter_degree(g)).collect();
        let mut out = Lin::zero();
        for mask in 0u64..(1 << n) {
            let left: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let right: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
            let mut target = vec![0; n];
            for (pos, &i) in left.iter().chain(&right).enumerate() {
                target[i] = pos;
            }
            let s = scalar::sign(reorder_parity(&degs, &target));
            let l = Monomial { gens: left.iter().map(|&i| self.gens[i]).collect(), kind: PhantomData };
            let r = Monomial { gens: right.iter().map(|&i| self.gens[i]).collect(), kind: PhantomData };
            out.add_term(Tensor(l, r), s);
        }
        out
    }

    /// Graded left derivative `∂/∂g`, of degree `−|g|` in letter degrees.
    pub fn partial(&self, g: Gen) -> Lin<Self> {
        let mut out = Lin::zero();
        let mut before = 0i64;
        for (i, &h) in self.gens.iter().enumerate() {
            if h == g {
                let s = scalar::sign(odd(Self::letter_degree(g) as i64 * before));
                let mut rest = self.gens.clone();
                rest.remove(i);
                out.add_term(Monomial { gens: rest, kind: PhantomData }, s);
            }
            before += Self::letter_degree(h) as i64;
        }
        out
    }

    /// Relabel as another kind, keeping the generator list.
    pub fn recast<K2: Kind>(&self) -> Monomial<K2> {
        Monomial { gens: self.gens.clone(), kind: PhantomData }
    }

    pub fn render(&self, space: &GradedSpace) -> String {
        if self.gens.is_empty() {
            return "1".into();
        }
        let sep = if K::SHIFT == 0 { "·" } else { "∧" };
        self.gens
            .iter()
            .map(|&g| format!("{}{}", K::PREFIX, space.name(g)))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl<K: Kind> Basis for Monomial<K> {
    fn degree(&self) -> i32 {
        self.gens.iter().map(|&g| Self::letter_degree(g)).sum()
    }
    fn weight(&self) -> usize {
        self.gens.len()
    }
}

impl<K: Kind> fmt::Debug for Monomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "1");
        }
        let sep = if K::SHIFT == 0 { "·" } else { "∧" };
        let parts: Vec<String> = self.gens.iter().map(|g| format!("{}{}", K::PREFIX, g.id)).collect();
        write!(f, "{}", parts.join(sep))
    }
}

/// Product of elements.
pub fn mul<K: Kind>(a: &Lin<Monomial<K>>, b: &Lin<Monomial<K>>) -> Lin<Monomial<K>> {
    let mut out = Lin::zero();
    for (x, c) in a.iter() {
        for (y, d) in b.iter() {
            out.add_scaled(&x.mul(y), &(c * d));
        }
    }
    out
}

/// Parses a generator-name sequence into a normal-form monomial with sign.
pub fn sym_normalize(space: &GradedSpace, names: &[&str]) -> Result<Option<(Scalar, SymMono)>> {
    let raw = names.iter().map(|n| space.by_name(n)).collect::<Result<Vec<_>>>()?;
    Ok(SymMono::normalize(&raw))
}

/// Extends a derivation given on generators to monomials:
/// `D(v_1⋯v_n) = Σ (−1)^{|D|(|v_1|+⋯+|v_{j−1}|)} v_1⋯Dv_j⋯v_n`.
pub fn derivation<K: Kind>(m: &Monomial<K>, deg: i32, on_gen: impl Fn(Gen) -> Lin<Monomial<K>>) -> Lin<Monomial<K>> {
    let mut out = Lin::zero();
    let mut before = 0i64;
    for (j, &g) in m.gens.iter().enumerate() {
        let s = scalar::sign(odd(deg as i64 * before));
        let img = on_gen(g);
        if !img.is_zero() {
            let pre = Monomial::<K> { gens: m.gens[..j].to_vec(), kind: PhantomData };
            let post = Monomial::<K> { gens: m.gens[j + 1..].to_vec(), kind: PhantomData };
            let t = mul(&mul(&Lin::basis(pre), &img), &Lin::basis(post));
            out.add_scaled(&t, &s);
        }
        before += Monomial::<K>::letter_degree(g) as i64;
    }
    out
}

/// `d` on `SV`, extended from `V` as a derivation.
pub fn sym_d(space: &GradedSpace, m: &SymMono) -> Lin<SymMono> {
    derivation(m, 1, |g| space.d(g).map_basis(|h| SymMono::gen(*h)))
}

/// Every monomial of the given weight (sorted lists, odd letters without
/// repetition).
pub fn monomials<K: Kind>(space: &GradedSpace, weight: usize) -> Vec<Monomial<K>> {
    fn go<K: Kind>(space: &GradedSpace, start: usize, left: usize, cur: &mut Vec<Gen>, out: &mut Vec<Monomial<K>>) {
        if left == 0 {
            out.push(Monomial { gens: cur.clone(), kind: PhantomData });
            return;
        }
        for i in start..space.dim() {
            let g = space.gen(i);
            let odd_letter = odd(Monomial::<K>::letter_degree(g) as i64);
            if odd_letter && cur.last() == Some(&g) {
                continue;
            }
            cur.push(g);
            let next = if odd_letter { i + 1 } else { i };
            go(space, next, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(space, 0, weight, &mut Vec::new(), &mut out);
    out
}

/// Monomials of weight `1..=max`.
pub fn monomials_upto<K: Kind>(space: &GradedSpace, max: usize) -> Vec<Monomial<K>> {
    (1..=max).flat_map(|w| monomials::<K>(space, w)).collect()
}

pub fn check_same_space(a: &GradedSpace, b: &GradedSpace) -> Result<()> {
    if a != b {
        return Err(Error::DomainMismatch("elements live over different spaces".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn v2() -> GradedSpace {
        GradedSpace::free(&[("x", 0), ("y", 1)])
    }

    #[test]
    fn normal_forms() {
        let v = v2();
        let (x, y) = (v.gen(0), v.gen(1));
        let (s, m) = SymMono::normalize(&[x, x]).unwrap();
        assert_eq!((s, m.gens().to_vec()), (int(1), vec![x, x]));
        assert!(SymMono::normalize(&[y, y]).is_none());
        let (s, m) = SymMono::normalize(&[y, x]).unwrap();
        assert_eq!((s, m.gens().to_vec()), (int(1), vec![x, y]));
        // in ∧V, sx is odd and sy is even
        assert!(ExtMono::normalize(&[x, x]).is_none());
        assert!(ExtMono::normalize(&[y, y]).is_some());
        assert_eq!(sym_normalize(&v, &["y", "x"]).unwrap().unwrap().0, int(1));
        assert!(sym_normalize(&v, &["q"]).is_err());
    }

    #[test]
    fn coproducts() {
        let v = v2();
        let (x, y) = (v.gen(0), v.gen(1));
        assert!(SymMono::gen(x).coproduct().is_zero());
        let xx = SymMono::normalize(&[x, x]).unwrap().1;
        assert_eq!(xx.coproduct(), Lin::term(Tensor(SymMono::gen(x), SymMono::gen(x)), int(2)));
        let xy = SymMono::normalize(&[x, y]).unwrap().1;
        assert_eq!(
            xy.coproduct(),
            Lin::basis(Tensor(SymMono::gen(x), SymMono::gen(y))) + Lin::basis(Tensor(SymMono::gen(y), SymMono::gen(x)))
        );
        // ∧: Δ(sx∧sy) = sx⊗sy + (−1)^{|sx||sy|} sy⊗sx with |sx| = −1, |sy| = 0
        let sxy = ExtMono::normalize(&[x, y]).unwrap().1;
        assert_eq!(
            sxy.coproduct(),
            Lin::basis(Tensor(ExtMono::gen(x), ExtMono::gen(y))) + Lin::basis(Tensor(ExtMono::gen(y), ExtMono::gen(x)))
        );
        let syy = ExtMono::normalize(&[y, y]).unwrap().1;
        assert_eq!(syy.coproduct(), Lin::term(Tensor(ExtMono::gen(y), ExtMono::gen(y)), int(2)));
    }

    #[test]
    fn partials_and_enumeration() {
        let v = v2();
        let (x, y) = (v.gen(0), v.gen(1));
        let xxy = SymMono::normalize(&[x, x, y]).unwrap().1;
        assert_eq!(xxy.partial(x), Lin::term(SymMono::normalize(&[x, y]).unwrap().1, int(2)));
        assert_eq!(xxy.partial(y), Lin::basis(SymMono::normalize(&[x, x]).unwrap().1));
        assert_eq!(monomials::<Sym>(&v, 3).len(), 2);
        assert_eq!(monomials::<Ext>(&v, 3).len(), 2);
    }
}
