//! Small spaces and Lie-type structures used throughout the test suites.

use std::sync::Arc;

use crate::lin::Lin;
use crate::linf::LInf;
use crate::scalar::{int, one};
use crate::space::{GradedSpace, Space};

fn names(gens: &[(&str, i32)]) -> Vec<(String, i32)> {
    gens.iter().map(|(n, d)| (n.to_string(), *d)).collect()
}

/// `ℚx` with `|x| = 0`.
pub fn v1() -> Space {
    Arc::new(GradedSpace::free(&[("x", 0)]))
}

/// `x` in degree 0 and `y` in degree 1, no differential.
pub fn v2() -> Space {
    Arc::new(GradedSpace::free(&[("x", 0), ("y", 1)]))
}

/// `x` in degree 0 and `y` in degree 1 with `dx = y`.
pub fn v2d() -> Space {
    Arc::new(GradedSpace::new(names(&[("x", 0), ("y", 1)]), &[(0, 1, one())]).expect("valid complex"))
}

pub fn zero_space() -> Space {
    Arc::new(GradedSpace::zero())
}

/// The three contraction fixtures.
pub fn contraction_spaces() -> Vec<(&'static str, Space)> {
    vec![("Qx", v1()), ("V2", v2()), ("V2d", v2d())]
}

fn lie(gens: &[(&str, i32)], rules: &[(&[&str], &[(i64, &str)])]) -> LInf {
    let space = Arc::new(GradedSpace::free(gens));
    let entries = rules
        .iter()
        .map(|(args, out)| {
            let a = args.iter().map(|n| space.by_name(n).expect("fixture generator")).collect();
            let v = Lin::from_terms(out.iter().map(|(c, n)| (space.by_name(n).expect("fixture generator"), int(*c))));
            (a, v)
        })
        .collect();
    LInf::new(space.clone(), entries).expect("valid fixture")
}

/// `sl₂` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
pub fn sl2() -> LInf {
    lie(
        &[("e", 0), ("f", 0), ("h", 0)],
        &[(&["h", "e"], &[(2, "e")]), (&["h", "f"], &[(-2, "f")]), (&["e", "f"], &[(1, "h")])],
    )
}

/// The Heisenberg algebra `[x,y] = z`.
pub fn heisenberg() -> LInf {
    lie(&[("x", 0), ("y", 0), ("z", 0)], &[(&["x", "y"], &[(1, "z")])])
}

/// `a, b, c` in degree 0, `w` in degree −1, with the single bracket
/// `l₃(a,b,c) = w`.
pub fn l3() -> LInf {
    lie(&[("a", 0), ("b", 0), ("c", 0), ("w", -1)], &[(&["a", "b", "c"], &[(1, "w")])])
}

/// A graded Lie algebra with an odd generator squaring to a nonzero bracket:
/// `[y,y] = z`, `[x,y] = y`, `[x,z] = 2z`.
pub fn super_lie() -> LInf {
    lie(
        &[("x", 0), ("y", 1), ("z", 2)],
        &[(&["y", "y"], &[(1, "z")]), (&["x", "y"], &[(1, "y")]), (&["x", "z"], &[(2, "z")])],
    )
}

pub fn abelian(space: Space) -> LInf {
    LInf::abelian(space)
}

/// Names accepted by [`lie_by_name`].
pub const NAMES: [&str; 10] = ["sl2", "heisenberg", "l3", "super", "abelian1", "qx", "abelian2", "v2", "v2d", "zero"];

/// Named fixtures reachable from the command line.
pub fn lie_by_name(name: &str) -> Option<LInf> {
    Some(match name {
        "sl2" => sl2(),
        "heisenberg" => heisenberg(),
        "l3" => l3(),
        "super" => super_lie(),
        "abelian1" | "qx" => abelian(v1()),
        "abelian2" | "v2" => abelian(v2()),
        "v2d" => abelian(v2d()),
        "zero" => abelian(zero_space()),
        _ => return None,
    })
}
