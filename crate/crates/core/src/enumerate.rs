//! Exhaustive enumeration of basis words below a weight bound.

use crate::lin::Basis;
use crate::monomial::{monomials, Kind, Monomial};
use crate::space::GradedSpace;
use crate::word::{Shift, Word};

/// All words whose letters are drawn from `letters` (grouped by weight,
/// index `w` holding letters of weight `w`) with total weight in
/// `1..=max_weight`.
pub fn words<S: Shift, L: Basis>(letters: &[Vec<L>], max_weight: usize) -> Vec<Word<S, L>> {
    fn go<S: Shift, L: Basis>(letters: &[Vec<L>], left: usize, cur: &mut Vec<L>, out: &mut Vec<Word<S, L>>) {
        if !cur.is_empty() {
            out.push(Word::new(cur.clone()));
        }
        for w in 1..=left.min(letters.len().saturating_sub(1)) {
            for a in &letters[w] {
                cur.push(a.clone());
                go(letters, left - w, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(letters, max_weight, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| (a.weight(), a.len()).cmp(&(b.weight(), b.len())).then(a.cmp(b)));
    out
}

/// Nonempty monomials grouped by weight, `0..=max_weight` (index 0 empty).
pub fn letters_by_weight<K: Kind>(space: &GradedSpace, max_weight: usize) -> Vec<Vec<Monomial<K>>> {
    (0..=max_weight).map(|w| if w == 0 { Vec::new() } else { monomials::<K>(space, w) }).collect()
}

/// Bar or cobar words on monomial letters up to a total weight.
pub fn monomial_words<S: Shift, K: Kind>(space: &GradedSpace, max_weight: usize) -> Vec<Word<S, Monomial<K>>> {
    words(&letters_by_weight::<K>(space, max_weight), max_weight)
}

/// Words of exactly the given weight.
pub fn monomial_words_of_weight<S: Shift, K: Kind>(space: &GradedSpace, weight: usize) -> Vec<Word<S, Monomial<K>>> {
    monomial_words(space, weight).into_iter().filter(|w| w.weight() == weight).collect()
}
