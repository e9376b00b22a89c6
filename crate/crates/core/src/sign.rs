//! Koszul sign bookkeeping.

use crate::error::{Error, Result};
use crate::scalar::{sign, Scalar};

pub fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// Sign of the permutation `perm` (one-based images, `perm[i] = π(i+1)`)
/// acting on suspended letters `s v_1 ⊗ … ⊗ s v_n`: the exponent sums
/// `(|v_π(i)|+1)(|v_π(j)|+1)` over inversions `i < j`, `π(i) > π(j)`.
pub fn koszul_sign(perm: &[usize], degrees: &[i32]) -> Result<Scalar> {
    let n = perm.len();
    if degrees.len() != n {
        return Err(Error::InvalidInput(format!(
            "permutation of length {n} with {} degrees",
            degrees.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p == 0 || p > n || seen[p - 1] {
            return Err(Error::InvalidInput(format!("{perm:?} is not a bijection of 1..={n}")));
        }
        seen[p - 1] = true;
    }
    let mut exponent = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            if perm[i] > perm[j] {
                let a = degrees[perm[i] - 1] as i64 + 1;
                let b = degrees[perm[j] - 1] as i64 + 1;
                exponent += a * b;
            }
        }
    }
    Ok(sign(odd(exponent)))
}

/// Parity of the Koszul sign picked up when the sequence with the given
/// (effective) degrees is reordered so that element `i` lands at
/// `target[i]` (zero-based, a bijection).
pub fn reorder_parity(degrees: &[i32], target: &[usize]) -> bool {
    let mut p = false;
    for i in 0..degrees.len() {
        for j in i + 1..degrees.len() {
            if target[i] > target[j] && odd(degrees[i] as i64) && odd(degrees[j] as i64) {
                p = !p;
            }
        }
    }
    p
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// All `k`-element subsets of `0..n`, each increasing, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Parity of moving the elements at positions `chosen` (increasing) in
/// front of the remaining ones, with the given effective degrees.
pub fn unshuffle_parity(degrees: &[i32], chosen: &[usize]) -> bool {
    let mut p = false;
    let mut c = 0;
    let mut passed_odd = false;
    // each chosen element crosses every unchosen element before it
    for (i, &d) in degrees.iter().enumerate() {
        if c < chosen.len() && chosen[c] == i {
            if odd(d as i64) && passed_odd {
                p = !p;
            }
            c += 1;
        } else if odd(d as i64) {
            passed_odd = !passed_odd;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn small_cases() {
        assert_eq!(koszul_sign(&[1, 2, 3], &[0, 1, 5]).unwrap(), int(1));
        assert_eq!(koszul_sign(&[2, 1], &[0, 0]).unwrap(), int(-1));
        assert_eq!(koszul_sign(&[2, 1], &[1, 0]).unwrap(), int(1));
        assert!(koszul_sign(&[1, 1], &[0, 0]).is_err());
        assert!(koszul_sign(&[1, 2], &[0]).is_err());
    }

    fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
        // (a∘b)(i) = a(b(i))
        b.iter().map(|&i| a[i - 1]).collect()
    }

    #[test]
    fn multiplicative_on_s3() {
        // action on s v_1 ⊗ … : permuting by π then σ; degrees follow the letters
        let perms: Vec<Vec<usize>> = permutations(3)
            .into_iter()
            .map(|p| p.into_iter().map(|i| i + 1).collect())
            .collect();
        for d0 in 0..2 {
            for d1 in 0..2 {
                for d2 in 0..2 {
                    let degs = [d0, d1, d2];
                    for p in &perms {
                        for q in &perms {
                            // letters after applying p: v_{p(1)}, v_{p(2)}, v_{p(3)}
                            let permuted: Vec<i32> = p.iter().map(|&i| degs[i - 1]).collect();
                            let lhs = koszul_sign(&compose(p, q), &degs).unwrap();
                            let rhs = koszul_sign(p, &degs).unwrap() * koszul_sign(q, &permuted).unwrap();
                            assert_eq!(lhs, rhs, "p={p:?} q={q:?} degs={degs:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unshuffle_parity_matches_reorder() {
        let degs = [1, 0, 1, 1, 0];
        for k in 0..=5 {
            for s in subsets(5, k) {
                let mut target = vec![0; 5];
                let mut front = 0;
                let mut back = k;
                for i in 0..5 {
                    if s.contains(&i) {
                        target[i] = front;
                        front += 1;
                    } else {
                        target[i] = back;
                        back += 1;
                    }
                }
                assert_eq!(unshuffle_parity(&degs, &s), reorder_parity(&degs, &target));
            }
        }
    }
}
