//! Words `[a₁|…|a_k]` of the bar construction and `⟨a₁|…|a_k⟩` of the
//! cobar construction, with the shuffle and deconcatenation structures.
//!
//! Signs are written with the prefix degrees `ω_j = |a₁|+…+|a_j| − j`,
//! which have the parity of the degree of the first `j` letters in either
//! construction.

use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;

use crate::lin::{Basis, Lin, Tensor};
use crate::scalar::{self, Scalar};
use crate::sign::{odd, subsets, unshuffle_parity};

pub trait Shift: Clone + Copy + PartialEq + Eq + PartialOrd + Ord + Hash + fmt::Debug + Send + Sync + 'static {
    const SHIFT: i32;
    const OPEN: &'static str;
    const CLOSE: &'static str;
}

/// Suspended letters `sa`, `|sa| = |a| − 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Bar;
impl Shift for Bar {
    const SHIFT: i32 = -1;
    const OPEN: &'static str = "[";
    const CLOSE: &'static str = "]";
}

/// Desuspended letters `s⁻¹a`, `|s⁻¹a| = |a| + 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cobar;
impl Shift for Cobar {
    const SHIFT: i32 = 1;
    const OPEN: &'static str = "⟨";
    const CLOSE: &'static str = "⟩";
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word<S: Shift, L> {
    letters: Vec<L>,
    shift: PhantomData<S>,
}

pub type BarWord<L> = Word<Bar, L>;
pub type CobarWord<L> = Word<Cobar, L>;

impl<S: Shift, L: Basis> Word<S, L> {
    pub fn new(letters: Vec<L>) -> Self {
        Word { letters, shift: PhantomData }
    }

    /// The empty word, present only in counital constructions.
    pub fn empty() -> Self {
        Self::new(Vec::new())
    }

    pub fn single(a: L) -> Self {
        Self::new(vec![a])
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `ω_j`, for `0 ≤ j ≤ k`.
    pub fn omega(&self, j: usize) -> i64 {
        self.letters[..j].iter().map(|a| a.degree() as i64 - 1).sum()
    }

    pub fn omegas(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut acc = 0i64;
        out.push(0);
        for a in &self.letters {
            acc += a.degree() as i64 - 1;
            out.push(acc);
        }
        out
    }

    pub fn slice(&self, from: usize, to: usize) -> Self {
        Self::new(self.letters[from..to].to_vec())
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::new(self.letters.iter().chain(&other.letters).cloned().collect())
    }

    /// Converts to the other kind of word with the same letters.
    pub fn recast<T: Shift>(&self) -> Word<T, L> {
        Word::new(self.letters.clone())
    }

    pub fn render(&self, letter: impl Fn(&L) -> String) -> String {
        let parts: Vec<String> = self.letters.iter().map(letter).collect();
        format!("{}{}{}", S::OPEN, parts.join("|"), S::CLOSE)
    }
}

impl<S: Shift, L: Basis> Basis for Word<S, L> {
    fn degree(&self) -> i32 {
        self.letters.iter().map(|a| a.degree() + S::SHIFT).sum()
    }
    fn weight(&self) -> usize {
        self.letters.iter().map(Basis::weight).sum()
    }
}

impl<S: Shift, L: fmt::Debug> fmt::Debug for Word<S, L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", S::OPEN)?;
        for (i, a) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{a:?}")?;
        }
        write!(f, "{}", S::CLOSE)
    }
}

/// Concatenation extended bilinearly, without signs.
pub fn concat<S: Shift, L: Basis>(a: &Lin<Word<S, L>>, b: &Lin<Word<S, L>>) -> Lin<Word<S, L>> {
    let mut out = Lin::zero();
    for (u, c) in a.iter() {
        for (v, d) in b.iter() {
            out.add_term(u.concat(v), c * d);
        }
    }
    out
}

/// The word `[p₁|…|p_n]` with each slot a linear combination of letters,
/// expanded multilinearly.
pub fn assemble<S: Shift, L: Basis>(slots: &[Lin<L>]) -> Lin<Word<S, L>> {
    let mut out = Lin::basis(Word::empty());
    for s in slots {
        if s.is_zero() {
            return Lin::zero();
        }
        let mut next = Lin::zero();
        for (w, c) in out.iter() {
            for (a, d) in s.iter() {
                let mut letters = w.letters.clone();
                letters.push(a.clone());
                next.add_term(Word::new(letters), c * d);
            }
        }
        out = next;
    }
    out
}

/// Replaces letter `j` by an element.
pub fn replace_letter<S: Shift, L: Basis>(w: &Word<S, L>, j: usize, a: &Lin<L>) -> Lin<Word<S, L>> {
    let mut out = Lin::zero();
    for (x, c) in a.iter() {
        let mut letters = w.letters.clone();
        letters[j] = x.clone();
        out.add_term(Word::new(letters), c.clone());
    }
    out
}

/// Deconcatenation `Σ_{0<j<k} [a₁|…|a_j] ⊗ [a_{j+1}|…|a_k]`.
pub fn deconcatenate<S: Shift, L: Basis>(w: &Word<S, L>) -> Lin<Tensor<Word<S, L>, Word<S, L>>> {
    Lin::from_terms((1..w.len()).map(|j| (Tensor(w.slice(0, j), w.slice(j, w.len())), scalar::one())))
}

/// Counital deconcatenation, `0 ≤ j ≤ k`.
pub fn deconcatenate_counital<S: Shift, L: Basis>(w: &Word<S, L>) -> Lin<Tensor<Word<S, L>, Word<S, L>>> {
    Lin::from_terms((0..=w.len()).map(|j| (Tensor(w.slice(0, j), w.slice(j, w.len())), scalar::one())))
}

/// All `(k, ℓ)`-shuffles as images `σ(1..k+ℓ)` (zero-based).
pub fn shuffles(k: usize, l: usize) -> Vec<Vec<usize>> {
    subsets(k + l, k)
        .into_iter()
        .map(|first| {
            let rest: Vec<usize> = (0..k + l).filter(|i| !first.contains(i)).collect();
            first.into_iter().chain(rest).collect()
        })
        .collect()
}

/// The shuffle sign
/// `(−1)^{Σ_{i≤k} (ω_{k+σ(i)−i} − ω_k)(|a_i|−1)}` evaluated on the
/// concatenated word.
pub fn shuffle_sign<S: Shift, L: Basis>(joined: &Word<S, L>, k: usize, sigma: &[usize]) -> Scalar {
    let om = joined.omegas();
    let mut e = 0i64;
    for i in 0..k {
        let a = joined.letters[i].degree() as i64 - 1;
        e += (om[k + sigma[i] - i] - om[k]) * a;
    }
    scalar::sign(odd(e))
}

/// Shuffle product of two words.
pub fn shuffle<S: Shift, L: Basis>(u: &Word<S, L>, v: &Word<S, L>) -> Lin<Word<S, L>> {
    let joined = u.concat(v);
    let (k, l) = (u.len(), v.len());
    let mut out = Lin::zero();
    for sigma in shuffles(k, l) {
        let mut letters = vec![None; k + l];
        for (i, &s) in sigma.iter().enumerate() {
            letters[s] = Some(joined.letters[i].clone());
        }
        let w = Word::new(letters.into_iter().map(|a| a.expect("bijection")).collect());
        out.add_term(w, shuffle_sign(&joined, k, &sigma));
    }
    out
}

pub fn shuffle_elems<S: Shift, L: Basis>(a: &Lin<Word<S, L>>, b: &Lin<Word<S, L>>) -> Lin<Word<S, L>> {
    let mut out = Lin::zero();
    for (u, c) in a.iter() {
        for (v, d) in b.iter() {
            out.add_scaled(&shuffle(u, v), &(c * d));
        }
    }
    out
}

/// Iterated shuffle of single-letter elements `[x₁] ⧢ … ⧢ [x_n]`.
pub fn shuffle_letters<S: Shift, L: Basis>(letters: &[Lin<L>]) -> Lin<Word<S, L>> {
    let mut out = Lin::basis(Word::empty());
    for x in letters {
        let single = x.map_basis(|a| Word::single(a.clone()));
        out = shuffle_elems(&out, &single);
    }
    out
}

/// Coshuffle coproduct on words: the sum over `(ℓ, k−ℓ)`-unshuffles,
/// `0 < ℓ < k`, with the Koszul sign of moving the chosen letters to the front.
pub fn unshuffle_coproduct<S: Shift, L: Basis>(w: &Word<S, L>) -> Lin<Tensor<Word<S, L>, Word<S, L>>> {
    let k = w.len();
    let degs: Vec<i32> = w.letters.iter().map(|a| a.degree() - 1).collect();
    let mut out = Lin::zero();
    for l in 1..k {
        for chosen in subsets(k, l) {
            let left = Word::new(chosen.iter().map(|&i| w.letters[i].clone()).collect());
            let right = Word::new((0..k).filter(|i| !chosen.contains(i)).map(|i| w.letters[i].clone()).collect());
            out.add_term(Tensor(left, right), scalar::sign(unshuffle_parity(&degs, &chosen)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lin::tensor_map;
    use crate::sign::reorder_parity;
    use proptest::prelude::*;

    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
    struct A(u8, i32);
    impl Basis for A {
        fn degree(&self) -> i32 {
            self.1
        }
        fn weight(&self) -> usize {
            1
        }
    }

    fn bw(v: &[(u8, i32)]) -> BarWord<A> {
        Word::new(v.iter().map(|&(a, d)| A(a, d)).collect())
    }

    #[test]
    fn shuffle_examples() {
        let x = bw(&[(0, 0)]);
        assert!(shuffle(&x, &x).is_zero());
        let y = bw(&[(1, 1)]);
        assert_eq!(shuffle(&x, &y), Lin::basis(bw(&[(0, 0), (1, 1)])) + Lin::basis(bw(&[(1, 1), (0, 0)])));
        let x2 = bw(&[(2, 0)]);
        assert_eq!(shuffle(&x2, &x), Lin::basis(bw(&[(2, 0), (0, 0)])) - Lin::basis(bw(&[(0, 0), (2, 0)])));
    }

    #[test]
    fn deconcatenation_examples() {
        let w = bw(&[(0, 0), (1, 1), (0, 0)]);
        let expect = Lin::basis(Tensor(w.slice(0, 1), w.slice(1, 3))) + Lin::basis(Tensor(w.slice(0, 2), w.slice(2, 3)));
        assert_eq!(deconcatenate(&w), expect);
        assert!(deconcatenate(&w.slice(0, 1)).is_zero());
    }

    fn word_strategy() -> impl Strategy<Value = Vec<(u8, i32)>> {
        prop::collection::vec((0u8..3, -1i32..3), 0..4)
    }

    proptest! {
        #[test]
        fn shuffle_sign_is_koszul(u in word_strategy(), v in word_strategy()) {
            let (u, v) = (bw(&u), bw(&v));
            let joined = u.concat(&v);
            let degs: Vec<i32> = joined.letters().iter().map(|a| a.1 - 1).collect();
            for sigma in shuffles(u.len(), v.len()) {
                let lit = shuffle_sign(&joined, u.len(), &sigma);
                prop_assert_eq!(lit, scalar::sign(reorder_parity(&degs, &sigma)));
            }
        }

        #[test]
        fn shuffle_is_associative_and_commutative(a in word_strategy(), b in word_strategy(), c in word_strategy()) {
            let (a, b, c) = (Lin::basis(bw(&a)), Lin::basis(bw(&b)), Lin::basis(bw(&c)));
            prop_assert_eq!(
                shuffle_elems(&shuffle_elems(&a, &b), &c),
                shuffle_elems(&a, &shuffle_elems(&b, &c))
            );
            let (u, v) = (a.support().next().unwrap(), b.support().next().unwrap());
            let s = scalar::sign(odd(u.degree() as i64 * v.degree() as i64));
            prop_assert_eq!(shuffle(u, v), shuffle(v, u).scale(&s));
        }

        #[test]
        fn unshuffle_is_coassociative(a in word_strategy()) {
            let w: CobarWord<A> = bw(&a).recast();
            let cop = unshuffle_coproduct(&w);
            let id = |x: &CobarWord<A>| Lin::basis(x.clone());
            let left = tensor_map(&cop, unshuffle_coproduct, id, 0);
            let right = tensor_map(&cop, id, unshuffle_coproduct, 0);
            let l2 = left.map_basis(|t| (t.0 .0.clone(), t.0 .1.clone(), t.1.clone()));
            let r2 = right.map_basis(|t| (t.0.clone(), t.1 .0.clone(), t.1 .1.clone()));
            prop_assert_eq!(l2, r2);
        }
    }

    #[test]
    fn unshuffle_two_letters() {
        let w: CobarWord<A> = bw(&[(0, 1), (1, 1)]).recast();
        let (a, b) = (w.slice(0, 1), w.slice(1, 2));
        assert_eq!(unshuffle_coproduct(&w), Lin::basis(Tensor(a.clone(), b.clone())) + Lin::basis(Tensor(b, a)));
    }
}
