//! The `ε`-extension `L_ε = L ⊗ 𝔽[ε]/ε²`, the `u`-deformed cobar algebra
//! `Ω_uCL_ε` with differential `δ_Ω + δ₁ + μ + ν`, its contraction onto
//! `SL`, and the twisting cochain `BS∗L → Ω_uCL_ε` obtained from the
//! tensor trick. Powers of `u` above the truncation are dropped.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bar::{bar_d2, twisting_residual, universal_twisting, DgAlgebra};
use crate::contraction::Contraction;
use crate::envelope::{BSWord, Envelope};
use crate::error::{Error, Result};
use crate::lin::{Basis, Lin};
use crate::linf::LInf;
use crate::monomial::{derivation, sym_d, Ext, ExtMono, SymMono};
use crate::omega::{self, cobar_letterwise, cobar_split, OWord};
use crate::operator::{self, FittingTable, Op};
use crate::report::IdentityCheck;
use crate::scalar::{self, int, Scalar};
use crate::sign::odd;
use crate::space::Gen;
use crate::tensor_trick::{bar_contraction, letterwise_odd, Transfer};
use crate::word::{deconcatenate, BarWord, Cobar};

fn sgn(e: i64) -> Scalar {
    scalar::sign(odd(e))
}

/// `u^k ⟨a₁|…|a_m⟩`, a basis element of `Ω_uCL_ε`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UWord {
    pub u: u32,
    pub w: OWord,
}

impl UWord {
    pub fn new(u: u32, w: OWord) -> Self {
        UWord { u, w }
    }
}

impl Basis for UWord {
    fn degree(&self) -> i32 {
        2 * self.u as i32 + self.w.degree()
    }
    fn weight(&self) -> usize {
        self.w.weight()
    }
}

impl fmt::Debug for UWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.u {
            0 => write!(f, "{:?}", self.w),
            1 => write!(f, "u{:?}", self.w),
            k => write!(f, "u^{k}{:?}", self.w),
        }
    }
}

pub type BUWord = BarWord<UWord>;

/// The dg algebra `Ω_uCL_ε`, truncated above `u^trunc`.
#[derive(Clone, Debug)]
pub struct GmAlgebra {
    pub l: LInf,
    pub le: LInf,
    n: u16,
    pub trunc: u32,
}

impl GmAlgebra {
    pub fn new(l: LInf, trunc: u32) -> Result<Self> {
        let le = l.eps_extension()?;
        let n = l.space().dim() as u16;
        Ok(GmAlgebra { l, le, n, trunc })
    }

    fn is_eps(&self, g: Gen) -> bool {
        g.id >= self.n
    }

    /// Number of `ε`-letters.
    pub fn eps_count(&self, w: &OWord) -> usize {
        w.letters().iter().flat_map(|a| a.gens()).filter(|g| self.is_eps(**g)).count()
    }

    /// `ε` on `CL_ε`, as a coderivation of degree 1.
    pub fn eps_letter(&self, a: &ExtMono) -> Lin<ExtMono> {
        let sp = self.le.space();
        derivation(a, 1, |g| {
            if self.is_eps(g) {
                Lin::zero()
            } else {
                Lin::basis(ExtMono::gen(sp.gen((g.id + self.n) as usize)))
            }
        })
    }

    /// `∂_ε` on `CL_ε`, as a coderivation of degree −1.
    pub fn deps_letter(&self, a: &ExtMono) -> Lin<ExtMono> {
        let sp = self.le.space();
        derivation(a, -1, |g| {
            if self.is_eps(g) {
                Lin::basis(ExtMono::gen(sp.gen((g.id - self.n) as usize)))
            } else {
                Lin::zero()
            }
        })
    }

    /// `ε⟨a₁|…|a_k⟩ = Σ (−1)^{ω_{j−1}} ⟨…|εa_j|…⟩`, the sign rule of `ν₁ = u∂_ε`.
    pub fn eps(&self, w: &OWord) -> Lin<OWord> {
        cobar_letterwise(|a| self.eps_letter(a), w)
    }

    /// The displayed sign `(−1)^{ω_{j−1}+1}` for `ε` on `ΩCL_ε`.
    pub fn eps_displayed(&self, w: &OWord) -> Lin<OWord> {
        -self.eps(w)
    }

    /// `∂_ε` on `ΩCL_ε`, so that `ν₁ = u∂_ε`.
    pub fn deps(&self, w: &OWord) -> Lin<OWord> {
        cobar_letterwise(|a| self.deps_letter(a), w)
    }

    /// Iterated reduced coproduct `a ↦ a⁽¹⁾ ⊗ ⋯ ⊗ a⁽ˡ⁾`.
    fn iterated_coproduct(a: &ExtMono, l: usize) -> Vec<(Vec<ExtMono>, Scalar)> {
        if l == 1 {
            return vec![(vec![a.clone()], scalar::one())];
        }
        let mut out = Vec::new();
        for (t, c) in a.coproduct().iter() {
            for (mut rest, d) in Self::iterated_coproduct(&t.1, l - 1) {
                rest.insert(0, t.0.clone());
                out.push((rest, c * d));
            }
        }
        out
    }

    /// `ν_ℓ / u`: `Σ_j (−1)^{ω_{j−1}} ⟨…|∂_ε a_j⁽¹⁾|…|∂_ε a_j⁽ˡ⁾|…⟩`.
    pub fn nu(&self, l: usize, w: &OWord) -> Lin<OWord> {
        let om = w.omegas();
        let letters = w.letters();
        let mut out = Lin::zero();
        for j in 0..letters.len() {
            for (parts, c) in Self::iterated_coproduct(&letters[j], l) {
                let slots: Vec<Lin<ExtMono>> = parts.iter().map(|p| self.deps_letter(p)).collect();
                if slots.iter().any(Lin::is_zero) {
                    continue;
                }
                let mut all: Vec<Lin<ExtMono>> = letters[..j].iter().map(|a| Lin::basis(a.clone())).collect();
                all.extend(slots);
                all.extend(letters[j + 1..].iter().map(|a| Lin::basis(a.clone())));
                out.add_scaled(&crate::word::assemble::<Cobar, ExtMono>(&all), &(c * sgn(om[j])));
            }
        }
        out
    }

    /// `ν₊ / u = Σ_{ℓ≥2} ν_ℓ / u`.
    pub fn nu_plus(&self, w: &OWord) -> Lin<OWord> {
        let mut out = Lin::zero();
        for l in 2..=w.weight() {
            out += &self.nu(l, w);
        }
        out
    }

    /// `u^k x`, dropping everything above the truncation.
    pub fn at(&self, k: u32, x: &Lin<OWord>) -> Lin<UWord> {
        if k > self.trunc {
            return Lin::zero();
        }
        x.map_basis(|w| UWord::new(k, w.clone()))
    }

    /// `δ_Ω + δ₁ + ν₁`, the differential the contraction is built for.
    pub fn d_small(&self, x: &UWord) -> Lin<UWord> {
        let w = &x.w;
        let base = cobar_split(w) + cobar_letterwise(|a| self.le.ce_d(a), w);
        self.at(x.u, &base) + self.at(x.u + 1, &self.nu(1, w))
    }

    /// `μ + ν₊`.
    pub fn perturbation(&self, x: &UWord) -> Lin<UWord> {
        let mu = cobar_letterwise(|a| self.le.ce_mu(a), &x.w);
        self.at(x.u, &mu) + self.at(x.u + 1, &self.nu_plus(&x.w))
    }

    pub fn d_total(&self, x: &UWord) -> Lin<UWord> {
        self.d_small(x) + self.perturbation(x)
    }

    /// `ξ_ε = ξ + ε∂_u`.
    pub fn xi_eps(&self, x: &UWord) -> Lin<UWord> {
        let mut out = self.at(x.u, &omega::xi(&x.w));
        if x.u > 0 {
            out.add_scaled(&self.at(x.u - 1, &self.eps(&x.w)), &int(x.u as i64));
        }
        out
    }

    pub fn lambda(&self, x: &UWord) -> Lin<UWord> {
        self.at(x.u, &omega::lambda(&x.w))
    }

    /// `ρ(u∂_u + 1) + ε∂_ε`, with `ε∂_ε` the composite on `ΩCL_ε`.
    pub fn a_op(&self, x: &UWord) -> Lin<UWord> {
        let r = (x.w.weight() as i64) * (x.u as i64 + 1);
        Lin::term(x.clone(), int(r)) + self.e_op(x)
    }

    /// `ρ(u∂_u + 1) + ε∂_ε − λ`.
    pub fn theta(&self, x: &UWord) -> Lin<UWord> {
        self.a_op(x) - self.lambda(x)
    }

    pub fn f_eps(&self, x: &UWord) -> Lin<SymMono> {
        if x.u > 0 || self.eps_count(&x.w) > 0 {
            return Lin::zero();
        }
        omega::f(&x.w)
    }

    pub fn g_eps(&self, m: &SymMono) -> Lin<UWord> {
        self.at(0, &omega::g(m))
    }

    pub fn p_eps(&self, x: &UWord) -> Lin<UWord> {
        self.f_eps(x).flat_map(|m| self.g_eps(m))
    }

    /// `E = ε∂_ε` on `ΩCL_ε`. Since `E² = ρE`, `A = ρ(u∂_u+1) + E` acts on a
    /// piece of weight `W` as `r` on `ker E` and `r + W` on `im E`.
    fn e_op(&self, x: &UWord) -> Lin<UWord> {
        self.at(x.u, &self.deps(&x.w).flat_map(|v| self.eps(v)))
    }

    /// `f(A) y` for a function of `A`, through the two eigenprojections.
    fn a_function(&self, y: &Lin<UWord>, f: impl Fn(i64) -> Option<Scalar>) -> Result<Lin<UWord>> {
        let mut pieces: BTreeMap<(u32, usize), Lin<UWord>> = BTreeMap::new();
        for (t, c) in y.iter() {
            pieces.entry((t.u, t.w.weight())).or_default().add_term(t.clone(), c.clone());
        }
        let mut out = Lin::zero();
        for ((u, w), z) in pieces {
            let (w, r) = (w as i64, w as i64 * (u as i64 + 1));
            let z1 = z.flat_map(|t| self.e_op(t)).scale(&(scalar::one() / int(w)));
            let z0 = &z - &z1;
            for (part, a) in [(z0, r), (z1, r + w)] {
                if part.is_zero() {
                    continue;
                }
                let c = f(a).ok_or_else(|| Error::Singular { piece: format!("u^{u}, weight {w}, A = {a}") })?;
                out.add_scaled(&part, &c);
            }
        }
        Ok(out)
    }

    /// `Σ_j (A)_{j+1}⁻¹ (λ)_j y` for `A = ρ(u∂_u+1) + ε∂_ε`.
    fn factorial_series(&self, y: &Lin<UWord>) -> Result<Lin<UWord>> {
        let mut out = Lin::zero();
        let mut cur = y.clone();
        let mut j = 0i64;
        while !cur.is_zero() {
            let z = self.a_function(&cur, |a| {
                let fall: i64 = (0..=j).map(|i| a - i).product();
                (fall != 0).then(|| scalar::one() / int(fall))
            })?;
            out += &z;
            let next = cur.flat_map(|t| self.lambda(t));
            cur = &next - &cur.scale(&int(j));
            j += 1;
        }
        Ok(out)
    }

    /// `h_ε = Σ_j (ρ(u∂_u+1)+ε∂_ε)_{j+1}⁻¹ (λ)_j ξ_ε`.
    pub fn h_explicit(&self, x: &UWord) -> Result<Lin<UWord>> {
        self.factorial_series(&self.xi_eps(x))
    }

    fn theta_op(&self) -> Op<UWord> {
        let me = self.clone();
        Op::new(0, "Ω_uCL_ε", "Ω_uCL_ε", move |t: &UWord| me.theta(t))
    }

    /// `(1 − p_ε) Θ⁻¹ ξ_ε`, by exact solve.
    pub fn h_spectral(&self, x: &UWord) -> Result<Lin<UWord>> {
        let y = operator::solve(&self.theta_op(), &self.xi_eps(x))?;
        Ok(&y - &y.flat_map(|t| self.p_eps(t)))
    }

    /// Projection `P` onto the generalized kernel of `Θ` along its
    /// generalized image.
    pub fn kernel_projection(&self, x: &UWord) -> Lin<UWord> {
        operator::fitting_split(&self.theta_op(), &Lin::basis(x.clone())).0
    }

    /// `(1 − P) Θ⁻¹ (1 − P) ξ_ε`, a homotopy with `[D, h] = 1 − P`.
    pub fn h_fitting(&self, x: &UWord) -> Result<Lin<UWord>> {
        let theta = self.theta_op();
        let (_, y) = operator::fitting_split(&theta, &self.xi_eps(x));
        let z = operator::solve(&theta, &y)?;
        Ok(operator::fitting_split(&theta, &z).1)
    }

    /// Basis of `Ω_uCL_ε` up to a weight and `u`-degree.
    pub fn basis(&self, max_weight: usize, max_u: u32) -> Vec<UWord> {
        let ws = crate::enumerate::monomial_words::<Cobar, Ext>(self.le.space(), max_weight);
        (0..=max_u).flat_map(|k| ws.iter().map(move |w| UWord::new(k, w.clone()))).collect()
    }
}

impl DgAlgebra for GmAlgebra {
    type E = UWord;
    fn label(&self) -> String {
        "Ω_uCL_ε".into()
    }
    fn d(&self, a: &UWord) -> Lin<UWord> {
        self.d_total(a)
    }
    fn mul(&self, a: &UWord, b: &UWord) -> Lin<UWord> {
        let k = a.u + b.u;
        if k > self.trunc {
            return Lin::zero();
        }
        Lin::basis(UWord::new(k, a.w.concat(&b.w)))
    }
}

/// The contraction `(Ω_uCL_ε, SL, f_ε, g_ε, h_ε)` for `δ_Ω + δ₁ + ν₁`.
pub fn gm_contraction(alg: &Arc<GmAlgebra>) -> Contraction<UWord, SymMono> {
    let (a1, a2, a3, a4) = (alg.clone(), alg.clone(), alg.clone(), alg.clone());
    let sp = alg.l.space().clone();
    Contraction::new(
        Op::new(1, "Ω_uCL_ε", "Ω_uCL_ε", move |x| a1.d_small(x)),
        Op::new(1, "SL", "SL", move |m| sym_d(&sp, m)),
        Op::new(0, "Ω_uCL_ε", "SL", move |x| a2.f_eps(x)),
        Op::new(0, "SL", "Ω_uCL_ε", move |m| a3.g_eps(m)),
        Op::new(-1, "Ω_uCL_ε", "Ω_uCL_ε", move |x| a4.h_explicit(x).expect("nonsingular off the image of p_ε")).memoized(),
    )
}

/// The full pipeline: contraction, tensor trick over `𝔽`, and the
/// twisting cochain `t = π ∘ 𝗀* : BS∗L → Ω_uCL_ε`.
pub struct GaussManin {
    pub alg: Arc<GmAlgebra>,
    pub contraction: Contraction<UWord, SymMono>,
    pub transfer: Transfer<UWord, SymMono>,
    /// The requested truncation; `alg` carries one more power of `u`.
    pub u_trunc: u32,
}

impl GaussManin {
    pub fn new(l: LInf, u_trunc: u32) -> Result<Self> {
        let alg = Arc::new(GmAlgebra::new(l, u_trunc + 1)?);
        let contraction = gm_contraction(&alg);
        let bar = bar_contraction(&contraction);
        let dom = bar.dx.domain().to_string();
        let (a1, a2) = (alg.clone(), alg.clone());
        let pert_letters = Op::new(1, "Ω_uCL_ε", "Ω_uCL_ε", move |x: &UWord| a1.perturbation(x));
        let pert = Op::new(1, dom.as_str(), dom.as_str(), move |w: &BUWord| {
            bar_d2(&*a2, w) + letterwise_odd(&pert_letters, w)
        });
        let transfer = Transfer::new(bar, &pert);
        Ok(GaussManin { alg, contraction, transfer, u_trunc })
    }

    fn keep(&self, x: Lin<UWord>) -> Lin<UWord> {
        let k = self.u_trunc;
        x.filter(|t| t.u <= k)
    }

    /// `t[z₁|…|z_k]`.
    pub fn twisting(&self, w: &BSWord) -> Lin<UWord> {
        self.keep(self.transfer.perturbed.contraction.g.on(w).flat_map(universal_twisting))
    }

    pub fn codifferential(&self) -> &Op<BSWord> {
        self.transfer.codifferential()
    }

    pub fn checks(&self, max_weight: usize) -> Vec<IdentityCheck> {
        let alg = &*self.alg;
        let k = self.u_trunc;
        let trunc = format!("weight ≤ {max_weight}, u^≤{k}");
        let xs = alg.basis(max_weight, k);
        let letters = crate::monomial::monomials_upto::<Ext>(alg.le.space(), max_weight);
        let contraction = &self.contraction;
        let d = &contraction.dx;
        let h = &contraction.h;
        let rho_residual = |x: &UWord| {
            let r = alg.eps(&x.w).flat_map(|v| alg.deps(v)) + alg.deps(&x.w).flat_map(|v| alg.eps(v));
            r - Lin::term(x.w.clone(), int(x.w.weight() as i64))
        };
        let comm_dh = |x: &UWord| self.keep(h.apply(&d.on(x)) + d.apply(&h.on(x)));
        let fit = FittingTable::new(&alg.theta_op(), &alg.basis(max_weight, alg.trunc));
        let proj = |x: &UWord| fit.project(&Lin::basis(x.clone())).unwrap_or_else(|| alg.kernel_projection(x));
        let hf = |y: &UWord| {
            fit.invert_off_kernel(&alg.xi_eps(y))
                .map_or_else(|| alg.h_fitting(y), Ok)
                .expect("Θ invertible off its generalized kernel")
        };
        let mut out = vec![
            IdentityCheck::zero_residual("gm: ε∂_ε + ∂_ε ε = ρ on CL_ε", trunc.clone(), &letters, |a| {
                alg.eps_letter(a).flat_map(|b| alg.deps_letter(b)) + alg.deps_letter(a).flat_map(|b| alg.eps_letter(b))
                    - Lin::term(a.clone(), int(a.weight() as i64))
            }),
            IdentityCheck::zero_residual("gm: ε∂_ε + ∂_ε ε = ρ on ΩCL_ε", trunc.clone(), &xs, rho_residual),
            IdentityCheck::zero_residual("gm: δ² = 0 on Ω_uCL_ε", trunc.clone(), &xs, |x| {
                self.keep(alg.d_total(x).flat_map(|y| alg.d_total(y)))
            }),
            IdentityCheck::zero_residual("gm: (δ_Ω+δ₁+ν₁)² = 0", trunc.clone(), &xs, |x| self.keep(d.apply(&d.on(x)))),
            IdentityCheck::zero_residual("gm: [δ_Ω+δ₁+ν₁, ξ_ε] = ρ(u∂_u+1) + ε∂_ε − λ", trunc.clone(), &xs, |x| {
                let c = alg.xi_eps(x).flat_map(|y| d.on(y)) + d.on(x).flat_map(|y| alg.xi_eps(y));
                self.keep(c - alg.theta(x))
            }),
            IdentityCheck::zero_residual("gm: h_ε explicit = spectral", trunc.clone(), &xs, |x| {
                self.keep(h.on(x) - alg.h_spectral(x).expect("solvable"))
            }),
            IdentityCheck::zero_residual("gm: [δ_Ω+δ₁+ν₁, h_ε] = 1 − p_ε", trunc.clone(), &xs, |x| {
                comm_dh(x) - Lin::basis(x.clone()) + alg.p_eps(x)
            }),
            IdentityCheck::zero_residual("gm: [δ_Ω+δ₁+ν₁, h_ε] = p_ε (as displayed)", trunc.clone(), &xs, |x| {
                comm_dh(x) - alg.p_eps(x)
            }),
            IdentityCheck::zero_residual("gm: generalized ker Θ = im p_ε", trunc.clone(), &xs, |x| {
                proj(x) - alg.p_eps(x)
            }),
            IdentityCheck::zero_residual("gm: [δ_Ω+δ₁+ν₁, (1−P)Θ⁻¹ξ_ε] = 1 − P", trunc.clone(), &xs, |x| {
                let c = hf(x).flat_map(|y| d.on(y)) + d.on(x).flat_map(hf);
                self.keep(c - Lin::basis(x.clone()) + proj(x))
            }),
            IdentityCheck::zero_residual("gm: f_ε h_ε = 0", trunc.clone(), &xs, |x| contraction.f.apply(&h.on(x))),
            IdentityCheck::zero_residual("gm: h_ε² = 0", trunc.clone(), &xs, |x| self.keep(h.apply(&h.on(x)))),
        ];
        let ys = crate::monomial::monomials_upto::<crate::monomial::Sym>(alg.l.space(), max_weight);
        out.push(IdentityCheck::zero_residual("gm: h_ε g_ε = 0", trunc.clone(), &ys, |m| h.apply(&contraction.g.on(m))));
        out.push(IdentityCheck::zero_residual("gm: (μ + ν) g_ε = 0", trunc, &ys, |m| {
            contraction.g.on(m).flat_map(|x| alg.perturbation(x))
        }));
        out
    }

    /// Checks on `BS∗L`: the codifferential agrees with the envelope's,
    /// the Maurer–Cartan equation holds, and `t` is the envelope cochain
    /// placed in `u`-degree 0.
    pub fn cochain_checks(&self, env: &Envelope, max_weight: usize) -> Vec<IdentityCheck> {
        let k = self.u_trunc;
        let trunc = format!("weight ≤ {max_weight}, u^≤{k}");
        let ws = env.bsl_words(max_weight);
        let alg = &*self.alg;
        let d_star = self.codifferential();
        let env_t = |w: &BSWord| env.transfer.perturbed.contraction.g.on(w).flat_map(universal_twisting);
        vec![
            IdentityCheck::zero_residual("gm: ∂* = δ₁ + f(1+μh)⁻¹δ_B g", trunc.clone(), &ws, |w| {
                d_star.on(w) - env.codifferential().on(w)
            }),
            IdentityCheck::zero_residual("gm: Maurer–Cartan residual of t", trunc.clone(), &ws, |w| {
                let r = twisting_residual(
                    w,
                    &|v: &BSWord| self.twisting(v),
                    &|v: &BSWord| d_star.on(v),
                    &|v: &BSWord| deconcatenate(v),
                    &|x: &UWord| alg.d_total(x),
                    &|a: &UWord, b: &UWord| alg.mul(a, b),
                );
                self.keep(r)
            }),
            IdentityCheck::zero_residual("gm: u⁰ part of t is the envelope cochain", trunc.clone(), &ws, |w| {
                let t = self.twisting(w);
                t.filter(|x| x.u == 0) - alg.at(0, &env_t(w))
            }),
            IdentityCheck::zero_residual("gm: t has no u-corrections", trunc, &ws, |w| self.twisting(w).filter(|x| x.u > 0)),
        ]
    }

    /// The cochain on bar words up to a weight, grouped by `u`-degree.
    pub fn cochain_table(&self, env: &Envelope, max_weight: usize) -> Vec<CochainEntry> {
        let sp = self.alg.le.space().clone();
        let lsp = self.alg.l.space().clone();
        let mut out = Vec::new();
        for w in env.bsl_words(max_weight) {
            let t = self.twisting(&w);
            if t.is_zero() {
                continue;
            }
            let mut by_u: BTreeMap<u32, Vec<crate::envelope::Term>> = BTreeMap::new();
            for (x, c) in t.iter() {
                let word = x.w.render(|a| a.render(&sp));
                by_u.entry(x.u).or_default().push(crate::envelope::Term { coeff: scalar::format(c), word });
            }
            out.push(CochainEntry {
                input: w.render(|m| m.render(&lsp)),
                by_u: by_u.into_iter().map(|(u, terms)| UComponent { u, terms }).collect(),
            });
        }
        out
    }
}

/// The envelope's twisting cochain `BS∗L → ΩCL` in the layout of
/// [`GaussManin::cochain_table`], everything in `u`-degree 0.
pub fn envelope_cochain_table(env: &Envelope, max_weight: usize) -> Vec<CochainEntry> {
    let sp = env.l.space().clone();
    let mut out = Vec::new();
    for w in env.bsl_words(max_weight) {
        let t = env.transfer.perturbed.contraction.g.on(&w).flat_map(universal_twisting);
        if t.is_zero() {
            continue;
        }
        let terms = t
            .iter()
            .map(|(x, c)| crate::envelope::Term { coeff: scalar::format(c), word: x.render(|a| a.render(&sp)) })
            .collect();
        out.push(CochainEntry { input: w.render(|m| m.render(&sp)), by_u: vec![UComponent { u: 0, terms }] });
    }
    out
}

/// Which of the candidate homotopy identities holds on `Ω_uCL_ε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalization {
    /// `[D, h_ε] = 1 − p_ε`.
    pub one_minus_p_eps: bool,
    /// `[D, h_ε] = p_ε`.
    pub p_eps: bool,
    /// The generalized kernel of `Θ` is exactly `g_ε(SL)`.
    pub kernel_is_sl: bool,
    /// `[D, (1−P)Θ⁻¹ξ_ε] = 1 − P`.
    pub fitting: bool,
    pub verdict: String,
}

impl Normalization {
    pub fn from_checks(checks: &[IdentityCheck]) -> Self {
        let holds = |prefix: &str| checks.iter().any(|c| c.id.starts_with(prefix) && c.holds);
        let one_minus_p_eps = holds("gm: [δ_Ω+δ₁+ν₁, h_ε] = 1 − p_ε");
        let p_eps = holds("gm: [δ_Ω+δ₁+ν₁, h_ε] = p_ε");
        let kernel_is_sl = holds("gm: generalized ker Θ = im p_ε");
        let fitting = holds("gm: [δ_Ω+δ₁+ν₁, (1−P)Θ⁻¹ξ_ε] = 1 − P");
        let verdict = match (one_minus_p_eps, p_eps, kernel_is_sl) {
            (true, false, true) => "[D, h_ε] = 1 − p_ε; the sign p_ε is a misprint".to_string(),
            (_, true, _) => "[D, h_ε] = p_ε".to_string(),
            (false, false, false) => format!(
                "neither: ker Θ is larger than SL, 1 − p_ε fails on the extra kernel; \
                 with P the projection onto generalized ker Θ, [D, h] = 1 − P {}",
                if fitting { "holds" } else { "fails" }
            ),
            _ => "neither identity holds".to_string(),
        };
        Normalization { one_minus_p_eps, p_eps, kernel_is_sl, fitting, verdict }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UComponent {
    pub u: u32,
    pub terms: Vec<crate::envelope::Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CochainEntry {
    pub input: String,
    pub by_u: Vec<UComponent>,
}
