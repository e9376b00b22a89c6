//! L∞-algebras and their Chevalley–Eilenberg codifferential on `∧L`.
//!
//! Brackets are graded antisymmetric in the ordinary sense,
//! `[…, v, w, …] = −(−1)^{|v||w|} […, w, v, …]`, and are stored on
//! nondecreasing generator tuples only.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lin::{Basis, Lin};
use crate::monomial::{derivation, ExtMono};
use crate::scalar::{self, Scalar};
use crate::sign::{koszul_sign, odd, permutations, subsets, unshuffle_parity};
use crate::space::{Gen, GradedSpace, Space};

#[derive(Clone, Debug, PartialEq)]
pub struct LInf {
    space: Space,
    brackets: BTreeMap<Vec<Gen>, Lin<Gen>>,
}

/// Sorts a bracket argument list, returning the antisymmetry sign, or
/// `None` if the sorted tuple repeats an even generator.
fn sort_args(args: &[Gen]) -> Option<(Scalar, Vec<Gen>)> {
    let mut v = args.to_vec();
    let mut parity = false;
    // bubble sort, one adjacent transposition at a time
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j].id > v[j + 1].id {
                parity ^= !odd(v[j].deg as i64 * v[j + 1].deg as i64);
                v.swap(j, j + 1);
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1] && !odd(w[0].deg as i64)) {
        return None;
    }
    Some((scalar::sign(parity), v))
}

impl LInf {
    /// Builds the structure from brackets given on arbitrary orderings.
    pub fn new(space: Space, entries: Vec<(Vec<Gen>, Lin<Gen>)>) -> Result<Self> {
        let mut brackets: BTreeMap<Vec<Gen>, Lin<Gen>> = BTreeMap::new();
        for (args, out) in entries {
            let k = args.len();
            if k < 2 {
                return Err(Error::InvalidInput("bracket arity must be at least 2; use the differential for k = 1".into()));
            }
            for g in &args {
                if g.id as usize >= space.dim() || space.gen(g.id as usize) != *g {
                    return Err(Error::InvalidInput(format!("unknown generator {g:?}")));
                }
            }
            let expected = args.iter().map(|g| g.deg).sum::<i32>() + 2 - k as i32;
            if let Some(bad) = out.support().find(|g| g.deg != expected) {
                return Err(Error::InvalidInput(format!(
                    "bracket of wrong degree: arity {k} bracket of {} must have degree {expected}, output has {}",
                    args.iter().map(|g| space.name(*g)).collect::<Vec<_>>().join(","),
                    bad.deg
                )));
            }
            let Some((s, key)) = sort_args(&args) else {
                if out.is_zero() {
                    continue;
                }
                return Err(Error::InvalidInput(format!(
                    "bracket repeating an even generator must vanish: {}",
                    args.iter().map(|g| space.name(*g)).collect::<Vec<_>>().join(",")
                )));
            };
            let val = out.scale(&s);
            match brackets.get(&key) {
                Some(old) if *old != val => {
                    return Err(Error::InvalidInput(format!(
                        "inconsistent values for bracket {}",
                        key.iter().map(|g| space.name(*g)).collect::<Vec<_>>().join(",")
                    )))
                }
                _ => {
                    if !val.is_zero() {
                        brackets.insert(key, val);
                    }
                }
            }
        }
        Ok(LInf { space, brackets })
    }

    pub fn abelian(space: Space) -> Self {
        LInf { space, brackets: BTreeMap::new() }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn stored(&self) -> impl Iterator<Item = (&Vec<Gen>, &Lin<Gen>)> {
        self.brackets.iter()
    }

    pub fn max_arity(&self) -> usize {
        self.brackets.keys().map(Vec::len).max().unwrap_or(1)
    }

    /// Only unary and binary brackets.
    pub fn is_dg_lie(&self) -> bool {
        self.max_arity() <= 2
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// `[v_1, …, v_k]` on any ordering of generators.
    pub fn bracket(&self, args: &[Gen]) -> Lin<Gen> {
        match sort_args(args) {
            Some((s, key)) => self.brackets.get(&key).map(|v| v.scale(&s)).unwrap_or_default(),
            None => Lin::zero(),
        }
    }

    /// Multilinear extension of the bracket.
    pub fn bracket_elems(&self, args: &[Lin<Gen>]) -> Lin<Gen> {
        fn go(l: &LInf, args: &[Lin<Gen>], cur: &mut Vec<Gen>, c: Scalar, out: &mut Lin<Gen>) {
            if cur.len() == args.len() {
                out.add_scaled(&l.bracket(cur), &c);
                return;
            }
            for (g, d) in args[cur.len()].iter() {
                cur.push(*g);
                go(l, args, cur, &c * d, out);
                cur.pop();
            }
        }
        let mut out = Lin::zero();
        go(self, args, &mut Vec::new(), scalar::one(), &mut out);
        out
    }

    /// The differential part `d` of the CE codifferential.
    pub fn ce_d(&self, m: &ExtMono) -> Lin<ExtMono> {
        derivation(m, 1, |g| self.space.d(g).map_basis(|h| ExtMono::gen(*h)))
    }

    fn prefactor_parity(k: usize, args: &[Gen]) -> bool {
        let e: i64 = args.iter().take(k).enumerate().map(|(i, g)| (k - 1 - i) as i64 * g.deg as i64).sum();
        odd(e)
    }

    fn wedge_front(out: &Lin<Gen>, rest: &[Gen]) -> Lin<ExtMono> {
        let mut res = Lin::zero();
        for (g, c) in out.iter() {
            let mut raw = vec![*g];
            raw.extend_from_slice(rest);
            res.add_scaled(&ExtMono::from_raw(&raw), c);
        }
        res
    }

    /// `δ_k` evaluated literally as the normalized sum over `S_ℓ`.
    pub fn delta_k_literal(&self, k: usize, m: &ExtMono) -> Lin<ExtMono> {
        let v = m.gens();
        let l = v.len();
        if k < 2 || k > l {
            return Lin::zero();
        }
        let degs: Vec<i32> = v.iter().map(|g| g.deg).collect();
        let mut out = Lin::zero();
        for pi in permutations(l) {
            let perm: Vec<usize> = pi.iter().map(|&i| i + 1).collect();
            let s = koszul_sign(&perm, &degs).expect("bijection");
            let args: Vec<Gen> = pi.iter().map(|&i| v[i]).collect();
            let b = self.bracket(&args[..k]);
            if b.is_zero() {
                continue;
            }
            let pre = scalar::sign(Self::prefactor_parity(k, &args));
            out.add_scaled(&Self::wedge_front(&b, &args[k..]), &(s * pre));
        }
        let coeff = binomial(l, k) / scalar::factorial(l as u32);
        out.scale(&coeff)
    }

    /// `δ_k` as a sum over `(k, ℓ−k)`-unshuffles.
    pub fn delta_k(&self, k: usize, m: &ExtMono) -> Lin<ExtMono> {
        let v = m.gens();
        let l = v.len();
        if k < 2 || k > l {
            return Lin::zero();
        }
        let eff: Vec<i32> = v.iter().map(|g| ExtMono::letter_degree(*g)).collect();
        let mut out = Lin::zero();
        for chosen in subsets(l, k) {
            let args: Vec<Gen> = chosen.iter().map(|&i| v[i]).collect();
            let b = self.bracket(&args);
            if b.is_zero() {
                continue;
            }
            let rest: Vec<Gen> = (0..l).filter(|i| !chosen.contains(i)).map(|i| v[i]).collect();
            let parity = unshuffle_parity(&eff, &chosen) ^ Self::prefactor_parity(k, &args);
            out.add_scaled(&Self::wedge_front(&b, &rest), &scalar::sign(parity));
        }
        out
    }

    /// The bracket part `μ = Σ_{k≥2} δ_k`.
    pub fn ce_mu(&self, m: &ExtMono) -> Lin<ExtMono> {
        let mut out = Lin::zero();
        for k in 2..=m.weight().min(self.max_arity()) {
            out += &self.delta_k(k, m);
        }
        out
    }

    /// The full codifferential `δ = d + μ` of `CL`.
    pub fn ce_codifferential(&self, m: &ExtMono) -> Lin<ExtMono> {
        self.ce_d(m) + self.ce_mu(m)
    }

    /// The ε-extension `L ⊗ E`: `[εx, y] = ε[x, y]`, `[x, εy] = (−1)^{|x|} ε[x, y]`,
    /// brackets with two ε-letters vanish. Only binary brackets are extended.
    pub fn eps_extension(&self) -> Result<LInf> {
        if !self.is_dg_lie() {
            return Err(Error::InvalidInput("ε-extension requires a dg Lie algebra".into()));
        }
        let n = self.space.dim() as u16;
        let ext = Arc::new(self.space.eps_extension());
        let lift = |v: &Lin<Gen>| v.map_basis(|g| ext.gen((g.id + n) as usize));
        let mut entries = Vec::new();
        for (key, val) in &self.brackets {
            let (x, y) = (key[0], key[1]);
            entries.push((vec![x, y], val.clone()));
            let ex = ext.gen((x.id + n) as usize);
            let ey = ext.gen((y.id + n) as usize);
            entries.push((vec![ex, y], lift(val)));
            entries.push((vec![x, ey], lift(val).scale(&scalar::sign(odd(x.deg as i64)))));
        }
        LInf::new(ext, entries)
    }

    pub fn to_json(&self) -> LInfJson {
        let sp = &self.space;
        LInfJson {
            generators: sp.gens().map(|g| GenJson { name: sp.name(g).to_string(), degree: g.deg }).collect(),
            differential: sp
                .differential_entries()
                .into_iter()
                .map(|(a, b, c)| DiffJson {
                    from: sp.names()[a].clone(),
                    to: sp.names()[b].clone(),
                    coeff: scalar::format(&c),
                })
                .collect(),
            brackets: self
                .brackets
                .iter()
                .map(|(k, v)| BracketJson {
                    arity: k.len(),
                    inputs: k.iter().map(|g| sp.name(*g).to_string()).collect(),
                    output: v
                        .iter()
                        .map(|(g, c)| TermJson { coeff: scalar::format(c), monomial: vec![sp.name(*g).to_string()] })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &LInfJson) -> Result<Self> {
        let field = |path: String, e: Error| match e {
            Error::Parse(m) | Error::InvalidInput(m) => Error::Parse(format!("{path}: {m}")),
            other => other,
        };
        let gens: Vec<(String, i32)> = j.generators.iter().map(|g| (g.name.clone(), g.degree)).collect();
        let names: Vec<&str> = j.generators.iter().map(|g| g.name.as_str()).collect();
        let idx = |path: String, n: &str| {
            names
                .iter()
                .position(|m| *m == n)
                .ok_or_else(|| Error::Parse(format!("{path}: unknown generator {n:?}")))
        };
        let mut diff = Vec::new();
        for (i, e) in j.differential.iter().enumerate() {
            let p = format!("differential[{i}]");
            let c = scalar::parse(&e.coeff).map_err(|er| field(format!("{p}.coeff"), er))?;
            diff.push((idx(format!("{p}.from"), &e.from)?, idx(format!("{p}.to"), &e.to)?, c));
        }
        let space = Arc::new(GradedSpace::new(gens, &diff).map_err(|e| field("differential".into(), e))?);
        let mut entries = Vec::new();
        for (i, b) in j.brackets.iter().enumerate() {
            let p = format!("brackets[{i}]");
            if b.arity != b.inputs.len() {
                return Err(Error::Parse(format!("{p}: arity {} but {} inputs", b.arity, b.inputs.len())));
            }
            let args = b
                .inputs
                .iter()
                .enumerate()
                .map(|(q, n)| idx(format!("{p}.inputs[{q}]"), n).map(|i| space.gen(i)))
                .collect::<Result<Vec<_>>>()?;
            let mut out = Lin::zero();
            for (q, t) in b.output.iter().enumerate() {
                let tp = format!("{p}.output[{q}]");
                if t.monomial.len() != 1 {
                    return Err(Error::Parse(format!("{tp}.monomial: bracket values must be linear in the generators")));
                }
                let c = scalar::parse(&t.coeff).map_err(|er| field(format!("{tp}.coeff"), er))?;
                out.add_term(space.gen(idx(format!("{tp}.monomial[0]"), &t.monomial[0])?), c);
            }
            entries.push((args, out));
        }
        LInf::new(space, entries).map_err(|e| field("brackets".into(), e))
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let j: LInfJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }
}

fn binomial(n: usize, k: usize) -> Scalar {
    scalar::factorial(n as u32) / (scalar::factorial(k as u32) * scalar::factorial((n - k) as u32))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LInfJson {
    pub generators: Vec<GenJson>,
    #[serde(default)]
    pub differential: Vec<DiffJson>,
    #[serde(default)]
    pub brackets: Vec<BracketJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GenJson {
    pub name: String,
    pub degree: i32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DiffJson {
    pub from: String,
    pub to: String,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub arity: usize,
    pub inputs: Vec<String>,
    pub output: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: String,
    pub monomial: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::monomial::monomials_upto;
    use crate::scalar::int;

    fn all_fixtures() -> Vec<LInf> {
        vec![
            fixtures::sl2(),
            fixtures::heisenberg(),
            fixtures::l3(),
            fixtures::super_lie(),
            fixtures::abelian(fixtures::v2d()),
        ]
    }

    #[test]
    fn fast_path_matches_literal_formula() {
        for l in all_fixtures() {
            for m in monomials_upto::<crate::monomial::Ext>(l.space(), 4) {
                for k in 2..=m.weight() {
                    assert_eq!(l.delta_k(k, &m), l.delta_k_literal(k, &m), "k={k} m={m:?}");
                }
            }
        }
    }

    #[test]
    fn codifferential_squares_to_zero() {
        for l in all_fixtures() {
            for m in monomials_upto::<crate::monomial::Ext>(l.space(), 4) {
                let dd = l.ce_codifferential(&m).flat_map(|w| l.ce_codifferential(w));
                assert!(dd.is_zero(), "{m:?} -> {dd:?}");
            }
        }
    }

    #[test]
    fn codifferential_is_a_coderivation() {
        use crate::lin::tensor_map;
        for l in all_fixtures() {
            for m in monomials_upto::<crate::monomial::Ext>(l.space(), 4) {
                let lhs = l.ce_codifferential(&m).flat_map(|w| w.coproduct());
                let cop = m.coproduct();
                let id = |w: &ExtMono| Lin::basis(w.clone());
                let rhs = tensor_map(&cop, |a| l.ce_codifferential(a), id, 0)
                    + tensor_map(&cop, id, |b| l.ce_codifferential(b), 1);
                assert_eq!(lhs, rhs, "{m:?}");
            }
        }
    }

    #[test]
    fn sl2_binary_component() {
        let l = fixtures::sl2();
        let sp = l.space().clone();
        let g = |n: &str| sp.by_name(n).unwrap();
        let m = ExtMono::from_raw(&[g("e"), g("f")]).into_terms().into_iter().next().unwrap().0;
        assert_eq!(l.delta_k(2, &m), Lin::term(ExtMono::gen(g("h")), int(1)));
        // δ₂(sa∧sb) is s[a,b] for every pair
        for a in sp.gens() {
            for b in sp.gens() {
                let w = ExtMono::from_raw(&[a, b]);
                let lhs = w.flat_map(|m| l.delta_k(2, m));
                let rhs = l.bracket(&[a, b]).map_basis(|g| ExtMono::gen(*g));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn ternary_bracket_component() {
        let l = fixtures::l3();
        let sp = l.space().clone();
        let raw: Vec<Gen> = ["a", "b", "c"].iter().map(|n| sp.by_name(n).unwrap()).collect();
        let m = ExtMono::normalize(&raw).unwrap().1;
        assert_eq!(l.delta_k(3, &m), Lin::term(ExtMono::gen(sp.by_name("w").unwrap()), int(1)));
    }

    #[test]
    fn abelian_is_zero() {
        let l = fixtures::abelian(fixtures::v2());
        for m in monomials_upto::<crate::monomial::Ext>(l.space(), 4) {
            assert!(l.ce_codifferential(&m).is_zero());
        }
    }

    #[test]
    fn antisymmetry_and_validation() {
        let l = fixtures::sl2();
        let sp = l.space().clone();
        let (e, h) = (sp.by_name("e").unwrap(), sp.by_name("h").unwrap());
        assert_eq!(l.bracket(&[e, h]), Lin::term(e, int(-2)));
        assert!(l.bracket(&[e, e]).is_zero());
        let bad = LInf::new(sp.clone(), vec![(vec![e, e], Lin::basis(h))]);
        assert!(bad.is_err());
        let w = Arc::new(GradedSpace::free(&[("a", 0), ("b", 0)]));
        let wrong = LInf::new(w.clone(), vec![(vec![w.gen(0), w.gen(1)], Lin::zero())]);
        assert!(wrong.is_ok());
        let s = fixtures::super_lie();
        let y = s.space().by_name("y").unwrap();
        assert_eq!(s.bracket(&[y, y]), Lin::basis(s.space().by_name("z").unwrap()));
    }

    #[test]
    fn wrong_degree_is_rejected() {
        let sp = Arc::new(GradedSpace::free(&[("a", 0), ("b", 0), ("c", 1)]));
        let r = LInf::new(sp.clone(), vec![(vec![sp.gen(0), sp.gen(1)], Lin::basis(sp.gen(2)))]);
        assert!(matches!(r, Err(Error::InvalidInput(m)) if m.contains("wrong degree")));
    }

    #[test]
    fn json_round_trip() {
        for l in all_fixtures() {
            let text = serde_json::to_string(&l.to_json()).unwrap();
            assert_eq!(LInf::parse_json(&text).unwrap(), l);
        }
    }

    #[test]
    fn json_rejects_decimal_coefficients() {
        let text = r#"{"generators":[{"name":"x","degree":0},{"name":"y","degree":1}],
            "differential":[{"from":"x","to":"y","coeff":"1.5"}]}"#;
        let err = LInf::parse_json(text).unwrap_err().to_string();
        assert!(err.contains("differential[0].coeff"), "{err}");
        let ok = text.replace("1.5", "3/2");
        assert!(LInf::parse_json(&ok).is_ok());
    }

    #[test]
    fn eps_extension_is_dg_lie() {
        for l in [fixtures::sl2(), fixtures::super_lie(), fixtures::abelian(fixtures::v2d())] {
            let le = l.eps_extension().unwrap();
            for m in monomials_upto::<crate::monomial::Ext>(le.space(), 3) {
                let dd = le.ce_codifferential(&m).flat_map(|w| le.ce_codifferential(w));
                assert!(dd.is_zero(), "{m:?}");
            }
        }
    }
}
