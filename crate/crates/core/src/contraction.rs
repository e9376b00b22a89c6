//! Contractions `(X, Y, f, g, h)`, their normalization, the perturbation
//! lemma and the curved cone packaging.

use crate::error::Result;
use crate::lin::{Basis, Lin};
use crate::operator::{self, graded_commutator, Op, NEUMANN_CAP};
use crate::report::IdentityCheck;
use crate::scalar::{self, int};

/// `(X, Y, f, g, h)` with differentials `δ` on `X` and `∂` on `Y`.
#[derive(Clone)]
pub struct Contraction<X: Basis, Y: Basis> {
    pub dx: Op<X>,
    pub dy: Op<Y>,
    pub f: Op<X, Y>,
    pub g: Op<Y, X>,
    pub h: Op<X>,
}

/// `(1 + n)^{-1} x`: the Neumann series when it terminates, an exact solve
/// on the invariant span otherwise.
pub fn one_plus_inverse_apply<A: Basis>(n: &Op<A>, x: &Lin<A>) -> Result<Lin<A>> {
    let mut acc = x.clone();
    let mut term = x.clone();
    for _ in 0..NEUMANN_CAP {
        term = -n.apply(&term);
        if term.is_zero() {
            return Ok(acc);
        }
        acc += &term;
    }
    operator::solve(&n.plus_identity(scalar::one()), x)
}

/// `(1 + n)^{-1}` as an operator, memoized. Panics on evaluation if
/// `1 + n` is singular on the relevant piece.
pub fn one_plus_inverse<A: Basis>(n: &Op<A>) -> Op<A> {
    let n2 = n.clone();
    Op::new(0, n.domain().to_string(), n.codomain().to_string(), move |a: &A| {
        one_plus_inverse_apply(&n2, &Lin::basis(a.clone())).unwrap_or_else(|e| panic!("1+{}: {e}", n2.domain()))
    })
    .memoized()
}

/// Output of the perturbation lemma together with the two inverses used.
pub struct Perturbed<X: Basis, Y: Basis> {
    pub contraction: Contraction<X, Y>,
    /// `(1 + μh)^{-1}`
    pub inv_mu_h: Op<X>,
    /// `(1 + hμ)^{-1}`
    pub inv_h_mu: Op<X>,
}

impl<X: Basis, Y: Basis> Contraction<X, Y> {
    pub fn new(dx: Op<X>, dy: Op<Y>, f: Op<X, Y>, g: Op<Y, X>, h: Op<X>) -> Self {
        Contraction { dx, dy, f, g, h }
    }

    /// `p = gf`.
    pub fn p(&self) -> Op<X> {
        self.g.after(&self.f).expect("g ∘ f")
    }

    /// `fg = 1`, `gf = 1 − [δ, h]` and the chain map conditions.
    pub fn check_weak(&self, xs: &[X], ys: &[Y], truncation: &str) -> Vec<IdentityCheck> {
        let fg = self.f.after(&self.g).expect("f ∘ g");
        let dh = graded_commutator(&self.dx, &self.h).expect("[δ, h]");
        let p = self.p();
        vec![
            IdentityCheck::zero_residual("fg = 1", truncation, ys, |y| fg.on(y) - Lin::basis(y.clone())),
            IdentityCheck::zero_residual("gf = 1 - [d,h]", truncation, xs, |x| {
                p.on(x) - Lin::basis(x.clone()) + dh.on(x)
            }),
            IdentityCheck::zero_residual("f d = d f", truncation, xs, |x| {
                self.f.apply(&self.dx.on(x)) - self.dy.apply(&self.f.on(x))
            }),
            IdentityCheck::zero_residual("g d = d g", truncation, ys, |y| {
                self.g.apply(&self.dy.on(y)) - self.dx.apply(&self.g.on(y))
            }),
        ]
    }

    /// `fh = 0`, `hg = 0`, `h² = 0`.
    pub fn check_side(&self, xs: &[X], ys: &[Y], truncation: &str) -> Vec<IdentityCheck> {
        vec![
            IdentityCheck::zero_residual("fh = 0", truncation, xs, |x| self.f.apply(&self.h.on(x))),
            IdentityCheck::zero_residual("hg = 0", truncation, ys, |y| self.h.apply(&self.g.on(y))),
            IdentityCheck::zero_residual("h^2 = 0", truncation, xs, |x| self.h.apply(&self.h.on(x))),
        ]
    }

    pub fn check(&self, xs: &[X], ys: &[Y], truncation: &str) -> Vec<IdentityCheck> {
        let mut out = self.check_weak(xs, ys, truncation);
        out.extend(self.check_side(xs, ys, truncation));
        out
    }

    pub fn is_strict_on(&self, xs: &[X], ys: &[Y]) -> bool {
        self.check(xs, ys, "").iter().all(|c| c.holds)
    }

    /// `ĥ = h̃ δ h̃` with `h̃ = (1 − p) h (1 − p)`, which satisfies all side
    /// conditions whenever the weak identities hold.
    pub fn normalized(&self) -> Self {
        let p = self.p();
        let q = p.neg().plus_identity(scalar::one());
        let ht = q.after(&self.h).unwrap().after(&q).unwrap().memoized();
        let hh = ht.after(&self.dx).unwrap().after(&ht).unwrap().memoized();
        Contraction { h: hh, ..self.clone() }
    }

    /// The perturbation lemma for a perturbation `μ` of `δ`:
    /// `f* = f(1+μh)⁻¹`, `g* = (1+hμ)⁻¹g`, `h* = h(1+μh)⁻¹`,
    /// `∂* = ∂ + f(1+μh)⁻¹μg`.
    pub fn perturb(&self, mu: &Op<X>) -> Perturbed<X, Y> {
        let inv_mu_h = one_plus_inverse(&mu.after(&self.h).unwrap());
        let inv_h_mu = one_plus_inverse(&self.h.after(mu).unwrap());
        let f = self.f.after(&inv_mu_h).unwrap().memoized();
        let g = inv_h_mu.after(&self.g).unwrap().memoized();
        let h = self.h.after(&inv_mu_h).unwrap().memoized();
        let corr = f.after(mu).unwrap().after(&self.g).unwrap();
        let dy = self.dy.add(&corr).unwrap().memoized();
        let dx = self.dx.add(mu).unwrap();
        Perturbed { contraction: Contraction { dx, dy, f, g, h }, inv_mu_h, inv_h_mu }
    }
}

/// `(1+hμ)⁻¹ = 1 − h(1+μh)⁻¹μ`, `(1+μh)⁻¹ = 1 − μ(1+hμ)⁻¹h` and
/// `(1+hμ+μh)⁻¹ = (1+hμ)⁻¹(1+μh)⁻¹`.
pub fn inverse_identities<X: Basis>(h: &Op<X>, mu: &Op<X>, xs: &[X], truncation: &str) -> Vec<IdentityCheck> {
    let inv_mh = one_plus_inverse(&mu.after(h).unwrap());
    let inv_hm = one_plus_inverse(&h.after(mu).unwrap());
    let both = one_plus_inverse(&h.after(mu).unwrap().add(&mu.after(h).unwrap()).unwrap());
    let r1 = h.after(&inv_mh).unwrap().after(mu).unwrap().neg().plus_identity(int(1));
    let r2 = mu.after(&inv_hm).unwrap().after(h).unwrap().neg().plus_identity(int(1));
    let r3 = inv_hm.after(&inv_mh).unwrap();
    vec![
        IdentityCheck::equal_ops("(1+hm)^-1 = 1 - h(1+mh)^-1 m", truncation, &inv_hm, &r1, xs),
        IdentityCheck::equal_ops("(1+mh)^-1 = 1 - m(1+hm)^-1 h", truncation, &inv_mh, &r2, xs),
        IdentityCheck::equal_ops("(1+hm+mh)^-1 = (1+hm)^-1 (1+mh)^-1", truncation, &both, &r3, xs),
    ]
}

/// Basis word of `Cone(f)[u]`: `u^n x` or `u^n y`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ConeWord<X, Y> {
    X(u32, X),
    Y(u32, Y),
}

impl<X: Basis, Y: Basis> Basis for ConeWord<X, Y> {
    fn degree(&self) -> i32 {
        match self {
            ConeWord::X(n, x) => x.degree() + 2 * *n as i32,
            ConeWord::Y(n, y) => y.degree() + 2 * *n as i32,
        }
    }
    fn weight(&self) -> usize {
        match self {
            ConeWord::X(_, x) => x.weight(),
            ConeWord::Y(_, y) => y.weight(),
        }
    }
}

/// Block operator `[[xx, yx], [xy, yy]]` on the cone, each block carrying
/// a power of `u`.
#[derive(Clone)]
pub struct Block<X: Basis, Y: Basis> {
    pub xx: Option<(u32, Op<X>)>,
    pub yx: Option<(u32, Op<Y, X>)>,
    pub xy: Option<(u32, Op<X, Y>)>,
    pub yy: Option<(u32, Op<Y>)>,
}

impl<X: Basis, Y: Basis> Block<X, Y> {
    /// The action truncated at `u^k`.
    pub fn apply(&self, w: &ConeWord<X, Y>, k: u32) -> Lin<ConeWord<X, Y>> {
        let mut out = Lin::zero();
        match w {
            ConeWord::X(n, x) => {
                if let Some((e, a)) = &self.xx {
                    if n + e <= k {
                        out += &a.on(x).map_basis(|b| ConeWord::X(n + e, b.clone()));
                    }
                }
                if let Some((e, a)) = &self.xy {
                    if n + e <= k {
                        out += &a.on(x).map_basis(|b| ConeWord::Y(n + e, b.clone()));
                    }
                }
            }
            ConeWord::Y(n, y) => {
                if let Some((e, a)) = &self.yx {
                    if n + e <= k {
                        out += &a.on(y).map_basis(|b| ConeWord::X(n + e, b.clone()));
                    }
                }
                if let Some((e, a)) = &self.yy {
                    if n + e <= k {
                        out += &a.on(y).map_basis(|b| ConeWord::Y(n + e, b.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn op(&self, k: u32) -> Op<ConeWord<X, Y>> {
        let b = self.clone();
        Op::new(1, "Cone", "Cone", move |w| b.apply(w, k))
    }
}

/// `𝒟 = diag(δ, −∂)` and `𝒜 = [[uh, ug], [f, 0]]` on `Cone(f)[u]`, and
/// the perturbed `𝒜* = 𝒜(1 + N)⁻¹` with `N = [[μh, μg], [0, 0]]`.
pub struct ConePackage<X: Basis, Y: Basis> {
    pub d: Block<X, Y>,
    pub a: Block<X, Y>,
    pub u_trunc: u32,
}

impl<X: Basis, Y: Basis> ConePackage<X, Y> {
    pub fn new(c: &Contraction<X, Y>, u_trunc: u32) -> Self {
        ConePackage {
            d: Block { xx: Some((0, c.dx.clone())), yx: None, xy: None, yy: Some((0, c.dy.neg())) },
            a: Block { xx: Some((1, c.h.clone())), yx: Some((1, c.g.clone())), xy: Some((0, c.f.clone())), yy: None },
            u_trunc,
        }
    }

    /// `(𝒟 + 𝒜)² w − u w`, truncated.
    pub fn curvature_residual(&self, w: &ConeWord<X, Y>) -> Lin<ConeWord<X, Y>> {
        let k = self.u_trunc;
        let step = |v: &Lin<ConeWord<X, Y>>| v.flat_map(|b| self.d.apply(b, k) + self.a.apply(b, k));
        let mut r = step(&step(&Lin::basis(w.clone())));
        let uw = match w {
            ConeWord::X(n, x) => ConeWord::X(n + 1, x.clone()),
            ConeWord::Y(n, y) => ConeWord::Y(n + 1, y.clone()),
        };
        let n = match w {
            ConeWord::X(n, _) | ConeWord::Y(n, _) => *n,
        };
        if n < k {
            r.add_term(uw, -scalar::one());
        }
        r
    }

    /// The perturbed package for `δ ↦ δ + μ`: `𝒟` gains `diag(μ, 0)` and
    /// `𝒜` becomes `𝒜(1 + N)⁻¹`, whose blocks are
    /// `[[u h*, u g*], [f*, −(∂* − ∂)]]`.
    pub fn perturbed(&self, c: &Contraction<X, Y>, mu: &Op<X>) -> ConePackage<X, Y> {
        let inv = one_plus_inverse(&mu.after(&c.h).unwrap());
        // (1+N)^{-1} = [[inv, −inv μ g], [0, 1]]
        let xx = c.h.after(&inv).unwrap().memoized();
        let corr = inv.after(mu).unwrap().after(&c.g).unwrap();
        let yx = c.g.sub(&c.h.after(&corr).unwrap()).unwrap().memoized();
        let xy = c.f.after(&inv).unwrap().memoized();
        let yy = c.f.after(&corr).unwrap().neg().memoized();
        ConePackage {
            d: Block {
                xx: Some((0, c.dx.add(mu).unwrap())),
                yx: None,
                xy: None,
                yy: Some((0, c.dy.neg())),
            },
            a: Block { xx: Some((1, xx)), yx: Some((1, yx)), xy: Some((0, xy)), yy: Some((0, yy)) },
            u_trunc: self.u_trunc,
        }
    }

    /// Compares the blocks of this (perturbed) package with a contraction
    /// from the perturbation lemma, where `dy0` is the unperturbed `∂`.
    pub fn matches(&self, p: &Contraction<X, Y>, dy0: &Op<Y>, xs: &[X], ys: &[Y], truncation: &str) -> Vec<IdentityCheck> {
        let (_, xx) = self.a.xx.clone().expect("xx block");
        let (_, yx) = self.a.yx.clone().expect("yx block");
        let (_, xy) = self.a.xy.clone().expect("xy block");
        let yy = self.a.yy.clone().map(|b| b.1).unwrap_or_else(|| Op::zero(1, "Y", "Y"));
        let dstar = p.dy.sub(dy0).unwrap().neg();
        vec![
            IdentityCheck::equal_ops("cone: A*_xx = u h*", truncation, &xx, &p.h, xs),
            IdentityCheck::equal_ops("cone: A*_yx = u g*", truncation, &yx, &p.g, ys),
            IdentityCheck::equal_ops("cone: A*_xy = f*", truncation, &xy, &p.f, xs),
            IdentityCheck::zero_residual("cone: A*_yy = -(d* - d)", truncation, ys, |y| yy.on(y) - dstar.on(y)),
        ]
    }

    pub fn cone_basis(&self, xs: &[X], ys: &[Y]) -> Vec<ConeWord<X, Y>> {
        let mut out = Vec::new();
        for n in 0..=self.u_trunc {
            out.extend(xs.iter().map(|x| ConeWord::X(n, x.clone())));
            out.extend(ys.iter().map(|y| ConeWord::Y(n, y.clone())));
        }
        out
    }

    pub fn check_curvature(&self, xs: &[X], ys: &[Y], truncation: &str) -> IdentityCheck {
        let basis = self.cone_basis(xs, ys);
        IdentityCheck::zero_residual("cone: (D+A)^2 = u", truncation, &basis, |w| self.curvature_residual(w))
    }
}
