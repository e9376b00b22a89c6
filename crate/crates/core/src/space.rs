//! Finite-dimensional graded vector spaces with a differential.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lin::{Basis, Lin};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

/// A basis vector `x^α` of a graded space, ordered by declaration index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gen {
    pub id: u16,
    pub deg: i32,
}

impl Basis for Gen {
    fn degree(&self) -> i32 {
        self.deg
    }
    fn weight(&self) -> usize {
        1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedSpace {
    names: Vec<String>,
    degrees: Vec<i32>,
    diff: Vec<Lin<Gen>>,
}

impl GradedSpace {
    /// `differential` lists `(from, to, coeff)`: the coefficient of `x^to`
    /// in `d x^from`.
    pub fn new(gens: Vec<(String, i32)>, differential: &[(usize, usize, Scalar)]) -> Result<Self> {
        if gens.len() > u16::MAX as usize {
            return Err(Error::InvalidInput("too many generators".into()));
        }
        for (i, (n, _)) in gens.iter().enumerate() {
            if gens[..i].iter().any(|(m, _)| m == n) {
                return Err(Error::InvalidInput(format!("duplicate generator {n:?}")));
            }
        }
        let degrees: Vec<i32> = gens.iter().map(|g| g.1).collect();
        let names = gens.into_iter().map(|g| g.0).collect();
        let mut diff = vec![Lin::zero(); degrees.len()];
        for (from, to, c) in differential {
            let (from, to) = (*from, *to);
            if from >= degrees.len() || to >= degrees.len() {
                return Err(Error::InvalidInput(format!("differential entry ({from}, {to}) out of range")));
            }
            if degrees[to] != degrees[from] + 1 {
                return Err(Error::InvalidInput(format!(
                    "differential must raise degree by 1, got {} -> {}",
                    degrees[from], degrees[to]
                )));
            }
            diff[from].add_term(Gen { id: to as u16, deg: degrees[to] }, c.clone());
        }
        let space = GradedSpace { names, degrees, diff };
        for g in space.gens() {
            let dd = space.d_vec(&space.d(g));
            if !dd.is_zero() {
                return Err(Error::InvalidInput(format!("d² ≠ 0 on {}", space.name(g))));
            }
        }
        Ok(space)
    }

    /// Generators only, zero differential.
    pub fn free(gens: &[(&str, i32)]) -> Self {
        Self::new(gens.iter().map(|(n, d)| (n.to_string(), *d)).collect(), &[]).expect("valid")
    }

    pub fn zero() -> Self {
        Self::free(&[])
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn gen(&self, i: usize) -> Gen {
        Gen { id: i as u16, deg: self.degrees[i] }
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.dim()).map(|i| self.gen(i))
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g.id as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn by_name(&self, name: &str) -> Result<Gen> {
        self.index_of(name)
            .map(|i| self.gen(i))
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator {name:?}")))
    }

    pub fn d(&self, g: Gen) -> Lin<Gen> {
        self.diff[g.id as usize].clone()
    }

    pub fn d_vec(&self, v: &Lin<Gen>) -> Lin<Gen> {
        v.flat_map(|g| self.d(*g))
    }

    pub fn has_differential(&self) -> bool {
        self.diff.iter().any(|v| !v.is_zero())
    }

    /// `M^α_β`, the coefficient of `x^β` in `d x^α`.
    pub fn differential_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = vec![vec![scalar::zero(); n]; n];
        for (a, row) in m.iter_mut().enumerate() {
            for (g, c) in self.diff[a].iter() {
                row[g.id as usize] = c.clone();
            }
        }
        m
    }

    /// Differential entries as `(from, to, coeff)`.
    pub fn differential_entries(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (a, v) in self.diff.iter().enumerate() {
            for (g, c) in v.iter() {
                out.push((a, g.id as usize, c.clone()));
            }
        }
        out
    }

    /// `V ⊕ εV` with `ε` of degree 1 on the left: generator `n + i` is
    /// `ε x^i`, and `d(εx) = −ε dx`.
    pub fn eps_extension(&self) -> GradedSpace {
        let n = self.dim();
        let mut gens: Vec<(String, i32)> =
            self.names.iter().cloned().zip(self.degrees.iter().copied()).collect();
        for i in 0..n {
            gens.push((format!("ε{}", self.names[i]), self.degrees[i] + 1));
        }
        let mut diff = self.differential_entries();
        for (a, b, c) in self.differential_entries() {
            diff.push((a + n, b + n, -c));
        }
        GradedSpace::new(gens, &diff).expect("ε-extension of a complex is a complex")
    }
}

pub type Space = Arc<GradedSpace>;
