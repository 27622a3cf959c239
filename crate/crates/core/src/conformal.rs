//! Conformal changes of G2- and SU(3)-structures, the phase/modulus gauge
//! normalizing `σ0+ + iσ0−`, and a discrete check that `dφ + φα = 0`
//! along a sampled loop forces `φ` to keep its sign.
//!
//! Conformal data is pointwise: the value of `e^f` and of `df` at one point.
//! All laws are linear in `df`, so pointwise verification is exact.
//! Transformed forms are kept in the original coframe `e^i`; torsion of a
//! transformed structure is computed in the rescaled orthonormal coframe
//! `ẽ^i = e^f e^i` and reported back in the original one.

use crate::error::{Error, Result};
use crate::forms::Form;
use crate::g2::{G2Structure, TorsionG2};
use crate::scalar::Scalar;
use crate::su3::{SU3Structure, TorsionSU3};

/// `e^f` and `df` at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointwiseConformalData<S: Scalar> {
    /// `e^f`, strictly positive. Stored instead of `f` so that the exact
    /// backend can represent rational scale factors.
    pub scale: S,
    pub df: Form<S>,
}

impl<S: Scalar> PointwiseConformalData<S> {
    pub fn new(scale: S, df: Form<S>) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::Refused(format!("conformal scale e^f must be positive, got {scale}")));
        }
        if df.degree() != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: df.degree(),
            });
        }
        Ok(PointwiseConformalData { scale, df })
    }

    /// Data with `f` given directly; exact backends only accept `f = 0`.
    pub fn from_potential(f: &S, df: Form<S>) -> Result<Self> {
        let scale = f
            .try_exp()
            .ok_or_else(|| Error::Refused(format!("e^{f} is not representable in this backend")))?;
        Self::new(scale, df)
    }

    pub fn identity(dim: usize) -> Self {
        PointwiseConformalData {
            scale: S::one(),
            df: Form::zero(dim, 1),
        }
    }

    /// `f1 + f2` as conformal data.
    pub fn compose(&self, other: &Self) -> Self {
        PointwiseConformalData {
            scale: self.scale.clone() * other.scale.clone(),
            df: &self.df + &other.df,
        }
    }
}

/// Rescales a form from the original coframe to `ẽ = s e`.
fn to_rescaled<S: Scalar>(a: &Form<S>, s: &S) -> Form<S> {
    a.scale(&(S::one() / s.pow_i32(a.degree() as i32)))
}

/// Inverse of [`to_rescaled`].
fn from_rescaled<S: Scalar>(a: &Form<S>, s: &S) -> Form<S> {
    a.scale(&s.pow_i32(a.degree() as i32))
}

/// A conformally changed G2-structure, written in the original coframe.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalG2<S: Scalar> {
    /// Accumulated `e^f`.
    pub scale: S,
    pub phi: Form<S>,
    pub star_phi: Form<S>,
    pub dphi: Form<S>,
    pub dstar_phi: Form<S>,
}

/// `φ̃ = e^{3f} φ`, `*̃φ̃ = e^{4f} *φ`, `dφ̃ = e^{3f}(dφ + 3df∧φ)`,
/// `d*̃φ̃ = e^{4f}(d*φ + 4df∧*φ)`.
pub fn conformal_transform_g2<S: Scalar>(
    g: &G2Structure<S>,
    dphi: &Form<S>,
    dstar_phi: &Form<S>,
    c: &PointwiseConformalData<S>,
) -> ConformalG2<S> {
    ConformalG2 {
        scale: S::one(),
        phi: g.phi().clone(),
        star_phi: g.star_phi().clone(),
        dphi: dphi.clone(),
        dstar_phi: dstar_phi.clone(),
    }
    .transform(c)
}

impl<S: Scalar> ConformalG2<S> {
    pub fn transform(&self, c: &PointwiseConformalData<S>) -> Self {
        let s3 = c.scale.pow_i32(3);
        let s4 = c.scale.pow_i32(4);
        ConformalG2 {
            scale: self.scale.clone() * c.scale.clone(),
            phi: self.phi.scale(&s3),
            star_phi: self.star_phi.scale(&s4),
            dphi: (&self.dphi + &(&c.df ^ &self.phi).scale(&S::from_i64(3))).scale(&s3),
            dstar_phi: (&self.dstar_phi + &(&c.df ^ &self.star_phi).scale(&S::from_i64(4))).scale(&s4),
        }
    }

    /// Torsion of the transformed structure; forms are expressed in the
    /// original coframe. `base` must be the untransformed structure.
    pub fn extract_torsion(&self, base: &G2Structure<S>) -> Result<TorsionG2<S>> {
        let s = &self.scale;
        if !(&to_rescaled(&self.phi, s) - base.phi()).is_negligible(base.tol()) {
            return Err(Error::Refused("transformed form does not match the base structure".into()));
        }
        let t = base.extract_torsion(&to_rescaled(&self.dphi, s), &to_rescaled(&self.dstar_phi, s))?;
        Ok(TorsionG2 {
            tau0: t.tau0,
            tau1: from_rescaled(&t.tau1, s),
            tau2: from_rescaled(&t.tau2, s),
            tau3: from_rescaled(&t.tau3, s),
        })
    }
}

/// A conformally changed SU(3)-structure, written in the original coframe.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalSU3<S: Scalar> {
    pub scale: S,
    pub omega: Form<S>,
    pub psi_plus: Form<S>,
    pub psi_minus: Form<S>,
    pub domega: Form<S>,
    pub dpsi_plus: Form<S>,
    pub dpsi_minus: Form<S>,
}

/// `ω̃ = e^{2f} ω`, `ψ̃± = e^{3f} ψ±`, differentials by the Leibniz rule.
pub fn conformal_transform_su3<S: Scalar>(
    s: &SU3Structure<S>,
    differentials: (&Form<S>, &Form<S>, &Form<S>),
    c: &PointwiseConformalData<S>,
) -> ConformalSU3<S> {
    let (domega, dplus, dminus) = differentials;
    ConformalSU3 {
        scale: S::one(),
        omega: s.omega().clone(),
        psi_plus: s.psi_plus().clone(),
        psi_minus: s.psi_minus().clone(),
        domega: domega.clone(),
        dpsi_plus: dplus.clone(),
        dpsi_minus: dminus.clone(),
    }
    .transform(c)
}

impl<S: Scalar> ConformalSU3<S> {
    pub fn transform(&self, c: &PointwiseConformalData<S>) -> Self {
        let s2 = c.scale.pow_i32(2);
        let s3 = c.scale.pow_i32(3);
        let three = S::from_i64(3);
        ConformalSU3 {
            scale: self.scale.clone() * c.scale.clone(),
            omega: self.omega.scale(&s2),
            psi_plus: self.psi_plus.scale(&s3),
            psi_minus: self.psi_minus.scale(&s3),
            domega: (&self.domega + &(&c.df ^ &self.omega).scale(&S::from_i64(2))).scale(&s2),
            dpsi_plus: (&self.dpsi_plus + &(&c.df ^ &self.psi_plus).scale(&three)).scale(&s3),
            dpsi_minus: (&self.dpsi_minus + &(&c.df ^ &self.psi_minus).scale(&three)).scale(&s3),
        }
    }

    pub fn extract_torsion(&self, base: &SU3Structure<S>) -> Result<TorsionSU3<S>> {
        let s = &self.scale;
        if !(&to_rescaled(&self.omega, s) - base.omega()).is_negligible(base.tol()) {
            return Err(Error::Refused("transformed form does not match the base structure".into()));
        }
        let t = base.extract_torsion(
            &to_rescaled(&self.domega, s),
            &to_rescaled(&self.dpsi_plus, s),
            &to_rescaled(&self.dpsi_minus, s),
        )?;
        Ok(TorsionSU3 {
            sigma0_plus: t.sigma0_plus,
            sigma0_minus: t.sigma0_minus,
            sigma1_plus: from_rescaled(&t.sigma1_plus, s),
            sigma1_minus: from_rescaled(&t.sigma1_minus, s),
            sigma2_plus: from_rescaled(&t.sigma2_plus, s),
            sigma2_minus: from_rescaled(&t.sigma2_minus, s),
            sigma3: from_rescaled(&t.sigma3, s),
        })
    }
}

/// Pointwise data of `λ = σ0+ + iσ0−`: its modulus `Λ` and the
/// differentials of `Λ` and of `arg λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalGauge<S: Scalar> {
    pub sigma0_plus: S,
    pub sigma0_minus: S,
    pub lambda: S,
    pub d_lambda: Form<S>,
    pub d_arg: Form<S>,
}

impl<S: Scalar> ConformalGauge<S> {
    pub fn new(sigma0_plus: S, sigma0_minus: S, d_lambda: Form<S>, d_arg: Form<S>) -> Result<Self> {
        let sq = sigma0_plus.clone() * sigma0_plus.clone() + sigma0_minus.clone() * sigma0_minus.clone();
        if sq.is_zero() {
            return Err(Error::GaugeUndefined);
        }
        let lambda = sq.sqrt_exact().ok_or_else(|| Error::InexactRoot(sq.to_string()))?;
        Ok(ConformalGauge {
            sigma0_plus,
            sigma0_minus,
            lambda,
            d_lambda,
            d_arg,
        })
    }

    /// Gauge with constant `λ` read from extracted torsion.
    pub fn constant(t: &TorsionSU3<S>) -> Result<Self> {
        Self::new(
            t.sigma0_plus.clone(),
            t.sigma0_minus.clone(),
            Form::zero(6, 1),
            Form::zero(6, 1),
        )
    }
}

/// The gauge-normalized triple with its differentials and torsion, in the
/// original coframe. Its torsion has `σ̃0+ = 1`, `σ̃0− = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeNormalized<S: Scalar> {
    pub lambda: S,
    pub omega: Form<S>,
    pub psi_plus: Form<S>,
    pub psi_minus: Form<S>,
    pub domega: Form<S>,
    pub dpsi_plus: Form<S>,
    pub dpsi_minus: Form<S>,
    pub torsion: TorsionSU3<S>,
}

/// `ω̃ = Λ²ω`, `ψ̃+ = Λ²(σ0+ψ+ − σ0−ψ−)`, `ψ̃− = Λ²(σ0−ψ+ + σ0+ψ−)`.
///
/// The tilde torsion is `σ̃1+ = σ1+ + dΛ/Λ`, `σ̃1− = σ1− + d(arg λ)`,
/// `σ̃2+ = σ0+σ2+ − σ0−σ2−`, `σ̃2− = σ0−σ2+ + σ0+σ2−`, `σ̃3 = Λ²σ3`.
/// The differentials are built by the Leibniz rule from
/// `dσ0+ = (σ0+/Λ) dΛ − σ0− d(arg λ)` and
/// `dσ0− = (σ0−/Λ) dΛ + σ0+ d(arg λ)`.
pub fn gauge_normalize<S: Scalar>(
    s: &SU3Structure<S>,
    differentials: (&Form<S>, &Form<S>, &Form<S>),
    t: &TorsionSU3<S>,
    g: &ConformalGauge<S>,
) -> GaugeNormalized<S> {
    let (domega, dplus, dminus) = differentials;
    let (p, m, l) = (&g.sigma0_plus, &g.sigma0_minus, &g.lambda);
    let l2 = l.clone() * l.clone();
    let two = S::from_i64(2);
    let (omega, psi_plus, psi_minus) = (s.omega(), s.psi_plus(), s.psi_minus());

    let dp = g.d_lambda.scale(&(p.clone() / l.clone())) - g.d_arg.scale(m);
    let dm = g.d_lambda.scale(&(m.clone() / l.clone())) + g.d_arg.scale(p);
    // d(Λ² σ0±) = 2Λ σ0± dΛ + Λ² dσ0±
    let d_l2p = g.d_lambda.scale(&(two.clone() * l.clone() * p.clone())) + dp.scale(&l2);
    let d_l2m = g.d_lambda.scale(&(two.clone() * l.clone() * m.clone())) + dm.scale(&l2);

    let tw_omega = omega.scale(&l2);
    let tw_plus = (psi_plus.scale(p) - psi_minus.scale(m)).scale(&l2);
    let tw_minus = (psi_plus.scale(m) + psi_minus.scale(p)).scale(&l2);

    let tw_domega = domega.scale(&l2) + (&g.d_lambda ^ omega).scale(&(two * l.clone()));
    let tw_dplus = (&d_l2p ^ psi_plus) + dplus.scale(&(l2.clone() * p.clone()))
        - (&d_l2m ^ psi_minus)
        - dminus.scale(&(l2.clone() * m.clone()));
    let tw_dminus = (&d_l2m ^ psi_plus) + dplus.scale(&(l2.clone() * m.clone()))
        + (&d_l2p ^ psi_minus)
        + dminus.scale(&(l2.clone() * p.clone()));

    let torsion = TorsionSU3 {
        sigma0_plus: S::one(),
        sigma0_minus: S::zero(),
        sigma1_plus: &t.sigma1_plus + &g.d_lambda.scale(&(S::one() / l.clone())),
        sigma1_minus: &t.sigma1_minus + &g.d_arg,
        sigma2_plus: t.sigma2_plus.scale(p) - t.sigma2_minus.scale(m),
        sigma2_minus: t.sigma2_plus.scale(m) + t.sigma2_minus.scale(p),
        sigma3: t.sigma3.scale(&l2),
    };
    GaugeNormalized {
        lambda: l.clone(),
        omega: tw_omega,
        psi_plus: tw_plus,
        psi_minus: tw_minus,
        domega: tw_domega,
        dpsi_plus: tw_dplus,
        dpsi_minus: tw_dminus,
        torsion,
    }
}

/// Residuals certifying a gauge-normalized structure.
#[derive(Clone, Debug)]
pub struct GaugeCheck<S: Scalar> {
    /// Largest coefficient of `dω̃ − (3ψ̃+ + 2σ̃1+∧ω̃ + σ̃3)` and the two
    /// analogous expressions for `dψ̃±`.
    pub structure_equation_residual: S,
    /// Normalization residuals of the tilde triple in the rescaled frame.
    pub normalization_residuals: Vec<(&'static str, S)>,
    /// Largest difference between the formula torsion and the torsion
    /// extracted from the tilde differentials.
    pub extraction_residual: S,
}

impl<S: Scalar> GaugeCheck<S> {
    pub fn passes(&self, tol: f64) -> bool {
        self.structure_equation_residual.is_negligible(tol)
            && self.extraction_residual.is_negligible(tol)
            && self.normalization_residuals.iter().all(|(_, r)| r.is_negligible(tol))
    }
}

impl<S: Scalar> GaugeNormalized<S> {
    pub fn check(&self, tol: f64) -> Result<GaugeCheck<S>> {
        let t = &self.torsion;
        let (two, three) = (S::from_i64(2), S::from_i64(3));
        let omega2 = self.omega.wedge(&self.omega)?;
        let e1 = &self.domega
            - &(self.psi_plus.scale(&three) + (&t.sigma1_plus ^ &self.omega).scale(&two) + t.sigma3.clone());
        let e2 = &self.dpsi_plus
            - &((&t.sigma1_plus ^ &self.psi_plus).scale(&three) - (&t.sigma1_minus ^ &self.psi_minus)
                + (&t.sigma2_plus ^ &self.omega));
        let e3 = &self.dpsi_minus
            - &(omega2.scale(&-two) + (&t.sigma1_plus ^ &self.psi_minus).scale(&three)
                + (&t.sigma1_minus ^ &self.psi_plus)
                + (&t.sigma2_minus ^ &self.omega));
        let structure_equation_residual = [e1, e2, e3]
            .iter()
            .fold(S::zero(), |m, f| S::max_abs(m, &f.max_abs()));

        let l = &self.lambda;
        let rescaled = SU3Structure::new(
            to_rescaled(&self.omega, l),
            to_rescaled(&self.psi_plus, l),
            to_rescaled(&self.psi_minus, l),
            tol,
        );
        let (normalization_residuals, extraction_residual) = {
            let s = rescaled?;
            let extracted = s.extract_torsion(
                &to_rescaled(&self.domega, l),
                &to_rescaled(&self.dpsi_plus, l),
                &to_rescaled(&self.dpsi_minus, l),
            )?;
            let back = |f: &Form<S>| from_rescaled(f, l);
            let diffs = [
                (extracted.sigma0_plus.clone() - t.sigma0_plus.clone()).abs(),
                (extracted.sigma0_minus.clone() - t.sigma0_minus.clone()).abs(),
                (&back(&extracted.sigma1_plus) - &t.sigma1_plus).max_abs(),
                (&back(&extracted.sigma1_minus) - &t.sigma1_minus).max_abs(),
                (&back(&extracted.sigma2_plus) - &t.sigma2_plus).max_abs(),
                (&back(&extracted.sigma2_minus) - &t.sigma2_minus).max_abs(),
                (&back(&extracted.sigma3) - &t.sigma3).max_abs(),
            ];
            (
                s.normalization_residuals(),
                diffs.into_iter().fold(S::zero(), |m, d| S::max_abs(m, &d)),
            )
        };
        Ok(GaugeCheck {
            structure_equation_residual,
            normalization_residuals,
            extraction_residual,
        })
    }
}

/// One sample of a closed loop: `α` at the point, the increment to the
/// next point, and the value of `φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopSample {
    pub alpha: Vec<f64>,
    pub increment: Vec<f64>,
    pub phi: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoopReport {
    pub samples: usize,
    /// `max |φ_k e^{F_k} − φ_0| / |φ_0|`.
    pub product_spread: f64,
    pub sign_constant: bool,
    /// `max_k |⟨α, Δ⟩_k + log|φ_{k+1}| − log|φ_k||`.
    pub max_step_error: f64,
    /// `|Σ_k ⟨α, Δ⟩_k|`, which vanishes for closed `α`.
    pub closure: f64,
}

/// Checks that `φ e^{F}` is constant along the loop, where `F` is the
/// running integral of `α` by the midpoint rule, and that `φ` never
/// changes sign. The first and last samples must describe the same point.
pub fn verify_loop(samples: &[LoopSample], tol: f64) -> Result<LoopReport> {
    let k = samples.len();
    if k < 3 {
        return Err(Error::MalformedLoop("a loop needs at least three samples".into()));
    }
    let dim = samples[0].alpha.len();
    if samples.iter().any(|s| s.alpha.len() != dim || s.increment.len() != dim) {
        return Err(Error::MalformedLoop("inconsistent vector lengths".into()));
    }
    let (first, last) = (&samples[0], &samples[k - 1]);
    let same_point = (first.phi - last.phi).abs() <= tol * first.phi.abs().max(1.0)
        && first.alpha.iter().zip(&last.alpha).all(|(a, b)| (a - b).abs() <= tol);
    if !same_point {
        return Err(Error::MalformedLoop("first and last samples differ".into()));
    }
    let displacement: f64 = (0..dim)
        .map(|i| samples[..k - 1].iter().map(|s| s.increment[i]).sum::<f64>().powi(2))
        .sum::<f64>()
        .sqrt();
    if displacement > tol {
        return Err(Error::MalformedLoop(format!("increments do not close up (gap {displacement:e})")));
    }

    let phi0 = first.phi;
    let mut running = 0.0;
    let mut product_spread: f64 = 0.0;
    let mut max_step_error: f64 = 0.0;
    let mut sign_constant = phi0 != 0.0;
    for w in samples.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let pairing: f64 = (0..dim)
            .map(|i| 0.5 * (a.alpha[i] + b.alpha[i]) * a.increment[i])
            .sum();
        running += pairing;
        if b.phi == 0.0 || b.phi.signum() != phi0.signum() {
            sign_constant = false;
        }
        let step = pairing + b.phi.abs().ln() - a.phi.abs().ln();
        max_step_error = max_step_error.max(if step.is_finite() { step.abs() } else { f64::INFINITY });
        let spread = (b.phi * running.exp() - phi0).abs() / phi0.abs().max(f64::MIN_POSITIVE);
        product_spread = product_spread.max(spread);
    }
    let report = LoopReport {
        samples: k,
        product_spread,
        sign_constant,
        max_step_error,
        closure: running.abs(),
    };
    if !(product_spread <= tol && max_step_error <= tol) {
        return Err(Error::LoopEquationViolated(format!(
            "φ·exp(F) varies by {product_spread:e}, worst step error {max_step_error:e}"
        )));
    }
    if !sign_constant {
        // A sign change cannot coexist with a constant nonzero product.
        return Err(Error::LoopEquationViolated("φ changes sign".into()));
    }
    Ok(report)
}

/// `φ = exp(y)` on the unit circle sampled at `k` points (plus the closing
/// sample), with `α = −d log φ` obtained by central differences.
pub fn exponential_loop(k: usize) -> Vec<LoopSample> {
    let h = 1e-6;
    let potential = |_x: f64, y: f64| y;
    let point = |j: usize| {
        let t = std::f64::consts::TAU * (j % k) as f64 / k as f64;
        (t.cos(), t.sin())
    };
    (0..=k)
        .map(|j| {
            let (x, y) = point(j);
            let (nx, ny) = point(j + 1);
            let gx = (potential(x + h, y) - potential(x - h, y)) / (2.0 * h);
            let gy = (potential(x, y + h) - potential(x, y - h)) / (2.0 * h);
            let last = j == k;
            LoopSample {
                alpha: vec![-gx, -gy],
                increment: if last { vec![0.0, 0.0] } else { vec![nx - x, ny - y] },
                phi: potential(x, y).exp(),
            }
        })
        .collect()
}

/// A loop on which `φ = y` crosses zero while `α = 0`; it violates
/// `dφ + φα = 0`.
pub fn sign_changing_loop(k: usize) -> Vec<LoopSample> {
    let point = |j: usize| {
        let t = std::f64::consts::TAU * (j % k) as f64 / k as f64;
        (t.cos(), t.sin())
    };
    (0..=k)
        .map(|j| {
            let (x, y) = point(j);
            let (nx, ny) = point(j + 1);
            let last = j == k;
            LoopSample {
                alpha: vec![0.0, 0.0],
                increment: if last { vec![0.0, 0.0] } else { vec![nx - x, ny - y] },
                phi: y + if j == 0 || last { 0.5 } else { 0.0 },
            }
        })
        .collect()
}
