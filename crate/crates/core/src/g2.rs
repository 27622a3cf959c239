//! G2-structures in dimension 7.
//!
//! The fixed model form is
//! `φ = e123 + e145 + e167 + e246 − e257 − e347 − e356`,
//! which satisfies `i_Xφ ∧ i_Yφ ∧ φ = 6 g(X,Y) vol` for the identity metric.
//! Intrinsic torsion is read off from
//!
//! ```text
//! dφ  = τ0 *φ + 3 τ1 ∧ φ + *τ3
//! d*φ = 4 τ1 ∧ *φ + τ2 ∧ φ
//! ```
//!
//! with `τ2 ∈ Λ²₁₄` and `τ3 ∈ Λ³₂₇`.

use std::fmt;

use crate::error::{Error, Result};
use crate::forms::{Form, FrameContext, MultiIndex};
use crate::lie::StructureConstants;
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::span::{operator_matrix, FormSpan};
use crate::status::{is_nonzero_sq, IdentityStatus};

const N: usize = 7;

pub fn standard_phi_form<S: Scalar>() -> Form<S> {
    Form::from_i64_terms(
        N,
        3,
        &[
            (1, &[1, 2, 3]),
            (1, &[1, 4, 5]),
            (1, &[1, 6, 7]),
            (1, &[2, 4, 6]),
            (-1, &[2, 5, 7]),
            (-1, &[3, 4, 7]),
            (-1, &[3, 5, 6]),
        ],
    )
}

/// `B_{ij}` defined by `i_{e_i}φ ∧ i_{e_j}φ ∧ φ = 6 B_{ij} e^{1…7}`.
pub fn nondegeneracy_matrix<S: Scalar>(phi: &Form<S>) -> Matrix<S> {
    let contractions: Vec<Form<S>> = (1..=N).map(|i| phi.contract_basis(i)).collect();
    let ctx = FrameContext::new(N);
    let six = S::from_i64(6);
    Matrix::from_fn(N, N, |i, j| {
        let top = &(&contractions[i] ^ &contractions[j]) ^ phi;
        ctx.top_coefficient(&top).expect("top degree") / six.clone()
    })
}

/// Metric induced by a 3-form.
#[derive(Clone, Debug)]
pub struct InducedMetric<S: Scalar> {
    /// Sign-corrected `B` (positive definite).
    pub b: Matrix<S>,
    /// `g = B / det(B)^{1/9}`.
    pub metric: Matrix<f64>,
    /// `det(B)^{-1/9}`, the factor turning `B` into `g`.
    pub conformal_factor: f64,
    /// `+1` when `φ` induces the reference orientation, `−1` otherwise.
    pub orientation: i32,
}

/// Recovers the metric of a 3-form in dimension 7.
pub fn metric_from_phi<S: Scalar>(phi: &Form<S>) -> Result<InducedMetric<S>> {
    if phi.dim() != N || phi.degree() != 3 {
        return Err(Error::NotG2Form("expected a 3-form in dimension 7".into()));
    }
    let mut b = nondegeneracy_matrix(phi);
    let det = b.determinant();
    if det.is_zero() {
        return Err(Error::Degenerate3Form);
    }
    let mut orientation = 1;
    if !b[(0, 0)].is_positive() {
        b = b.scale(&-S::one());
        orientation = -1;
    }
    if !leading_minors_positive(&b) {
        return Err(Error::NotG2Form("the induced bilinear form is indefinite".into()));
    }
    let det = b.determinant().to_f64();
    let factor = det.powf(-1.0 / 9.0);
    let metric = b.map(|v| v.to_f64() * factor);
    Ok(InducedMetric {
        b,
        metric,
        conformal_factor: factor,
        orientation,
    })
}

fn leading_minors_positive<S: Scalar>(m: &Matrix<S>) -> bool {
    (1..=m.rows()).all(|k| Matrix::from_fn(k, k, |i, j| m[(i, j)].clone()).determinant().is_positive())
}

/// A 3-form satisfying `i_Xφ ∧ i_Yφ ∧ φ = 6 δ_{XY} vol` in the working
/// frame, together with cached data for projections and torsion solves.
#[derive(Clone, Debug)]
pub struct G2Structure<S: Scalar> {
    phi: Form<S>,
    star_phi: Form<S>,
    tol: f64,
    // Λ⁴₇ = span{e^i ∧ φ}.
    four_seven: FormSpan<S>,
    // Λ³₇ = span{*(e^i ∧ φ)}.
    three_seven: FormSpan<S>,
    // Inverse of β ↦ β ∧ φ on Λ² → Λ⁵.
    wedge_phi_inverse: Matrix<S>,
}

impl<S: Scalar> G2Structure<S> {
    pub fn new(phi: Form<S>, tol: f64) -> Result<Self> {
        let residual = Self::nondegeneracy_residual(&phi)?;
        if !residual.is_negligible(tol) {
            let b = nondegeneracy_matrix(&phi);
            if b.determinant().is_negligible(tol) {
                return Err(Error::Degenerate3Form);
            }
            return Err(Error::NotG2Form(format!(
                "i_Xφ∧i_Yφ∧φ differs from 6⟨X,Y⟩vol by {residual}"
            )));
        }
        let star_phi = phi.hodge();
        let four_seven = FormSpan::new(
            N,
            4,
            &(1..=N).map(|i| Form::e(N, i) ^ &phi).collect::<Vec<_>>(),
            tol,
        )?;
        let three_seven = FormSpan::new(
            N,
            3,
            &(1..=N).map(|i| (Form::e(N, i) ^ &phi).hodge()).collect::<Vec<_>>(),
            tol,
        )?;
        let wedge_phi_inverse = operator_matrix(N, 2, 5, |b| b ^ &phi).inverse(tol)?;
        Ok(G2Structure {
            phi,
            star_phi,
            tol,
            four_seven,
            three_seven,
            wedge_phi_inverse,
        })
    }

    pub fn standard() -> Self {
        Self::new(standard_phi_form(), 0.0).expect("the model form is a G2 form")
    }

    /// Largest entry of `B − Id`, where `6 B_{ij} vol = i_{e_i}φ ∧ i_{e_j}φ ∧ φ`.
    pub fn nondegeneracy_residual(phi: &Form<S>) -> Result<S> {
        if phi.dim() != N || phi.degree() != 3 {
            return Err(Error::NotG2Form("expected a 3-form in dimension 7".into()));
        }
        Ok(nondegeneracy_matrix(phi).sub(&Matrix::identity(N)).max_abs())
    }

    pub fn phi(&self) -> &Form<S> {
        &self.phi
    }

    pub fn star_phi(&self) -> &Form<S> {
        &self.star_phi
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Splits a 2-form into its `Λ²₇` and `Λ²₁₄` parts using
    /// `*(φ ∧ a) = 2a` on `Λ²₇` and `−a` on `Λ²₁₄`.
    pub fn project_2form(&self, a: &Form<S>) -> (Form<S>, Form<S>) {
        let t = (&self.phi ^ a).hodge();
        let third = S::one() / S::from_i64(3);
        let p7 = (a + &t).scale(&third);
        let p14 = (a.scale(&S::from_i64(2)) - t).scale(&third);
        (p7, p14)
    }

    /// Splits a 3-form into its `Λ³₁`, `Λ³₇` and `Λ³₂₇` parts.
    pub fn project_3form(&self, a: &Form<S>) -> (Form<S>, Form<S>, Form<S>) {
        let c = a.inner(&self.phi).expect("3-form") / S::from_i64(7);
        let p1 = self.phi.scale(&c);
        let p7 = self.three_seven.project(a);
        let p27 = &(a - &p1) - &p7;
        (p1, p7, p27)
    }

    /// `(dφ, d*φ)` built from a torsion tuple.
    pub fn assemble(&self, t: &TorsionG2<S>) -> (Form<S>, Form<S>) {
        let dphi = self.star_phi.scale(&t.tau0)
            + (&t.tau1 ^ &self.phi).scale(&S::from_i64(3))
            + t.tau3.hodge();
        let dstar = (&t.tau1 ^ &self.star_phi).scale(&S::from_i64(4)) + (&t.tau2 ^ &self.phi);
        (dphi, dstar)
    }

    /// Solves the structure equations for `(τ0, τ1, τ2, τ3)`.
    pub fn extract_torsion(&self, dphi: &Form<S>, dstar_phi: &Form<S>) -> Result<TorsionG2<S>> {
        check_shape(dphi, 4)?;
        check_shape(dstar_phi, 5)?;
        let tau0 = dphi.inner(&self.star_phi)? / S::from_i64(7);
        let c = self.four_seven.coefficients(dphi);
        let third = S::one() / S::from_i64(3);
        let tau1 = Form::from_dense(N, 1, &c.iter().map(|v| v.clone() * third.clone()).collect::<Vec<_>>());
        let rest4 = &(dphi - &self.star_phi.scale(&tau0)) - &(&tau1 ^ &self.phi).scale(&S::from_i64(3));
        let tau3 = rest4.hodge();
        let rest5 = dstar_phi - &(&tau1 ^ &self.star_phi).scale(&S::from_i64(4));
        let beta = Form::from_dense(N, 2, &self.wedge_phi_inverse.mul_vec(&rest5.to_dense()));
        let (_, tau2) = self.project_2form(&beta);
        let (_, _, tau3) = self.project_3form(&tau3);
        let t = TorsionG2 {
            tau0,
            tau1,
            tau2,
            tau3,
        };
        let (a, b) = self.assemble(&t);
        let residual = S::max_abs((&a - dphi).max_abs(), &(&b - dstar_phi).max_abs());
        if !residual.is_negligible(self.tol) {
            return Err(Error::NotG2StructureEquations {
                residual: residual.to_f64(),
            });
        }
        Ok(t.chop(self.tol))
    }
}

fn check_shape<S: Scalar>(f: &Form<S>, degree: usize) -> Result<()> {
    if f.dim() != N {
        return Err(Error::IncompatibleDimension {
            left: N,
            right: f.dim(),
        });
    }
    if f.degree() != degree {
        return Err(Error::DegreeMismatch {
            expected: degree,
            found: f.degree(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorsionG2<S: Scalar> {
    pub tau0: S,
    pub tau1: Form<S>,
    pub tau2: Form<S>,
    pub tau3: Form<S>,
}

impl<S: Scalar> TorsionG2<S> {
    pub fn zero() -> Self {
        TorsionG2 {
            tau0: S::zero(),
            tau1: Form::zero(N, 1),
            tau2: Form::zero(N, 2),
            tau3: Form::zero(N, 3),
        }
    }

    fn chop(self, tol: f64) -> Self {
        let tau0 = if self.tau0.is_negligible(tol) && !S::EXACT {
            S::zero()
        } else {
            self.tau0
        };
        TorsionG2 {
            tau0,
            tau1: self.tau1.chop(tol),
            tau2: self.tau2.chop(tol),
            tau3: self.tau3.chop(tol),
        }
    }

    /// Squared norms of `(τ0, τ1, τ2, τ3)`.
    pub fn norms_sq(&self) -> [S; 4] {
        [
            self.tau0.clone() * self.tau0.clone(),
            self.tau1.norm_sq(),
            self.tau2.norm_sq(),
            self.tau3.norm_sq(),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum G2Class {
    X1,
    X2,
    X3,
    X4,
}

impl fmt::Display for G2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            G2Class::X1 => "X1",
            G2Class::X2 => "X2",
            G2Class::X3 => "X3",
            G2Class::X4 => "X4",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FernandezGrayClass {
    pub members: Vec<G2Class>,
    /// Every listed component is nonzero. Membership is itself decided by
    /// nonzeroness, so this only fails for hand-built class values.
    pub strict: bool,
}

impl FernandezGrayClass {
    pub fn label(&self) -> String {
        match self.members.as_slice() {
            [] => "parallel".into(),
            [G2Class::X1] => "nearly parallel".into(),
            [G2Class::X4] => "locally conformally parallel".into(),
            m => m.iter().map(G2Class::to_string).collect::<Vec<_>>().join("+"),
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.members.iter().map(G2Class::to_string).collect()
    }
}

/// `τ0 ↔ X1, τ2 ↔ X2, τ3 ↔ X3, τ1 ↔ X4`.
pub fn classify_g2<S: Scalar>(t: &TorsionG2<S>, tol: f64) -> FernandezGrayClass {
    let [n0, n1, n2, n3] = t.norms_sq();
    let mut members = Vec::new();
    for (norm, class) in [(n0, G2Class::X1), (n2, G2Class::X2), (n3, G2Class::X3), (n1, G2Class::X4)] {
        if is_nonzero_sq(&norm, tol) {
            members.push(class);
        }
    }
    FernandezGrayClass {
        members,
        strict: true,
    }
}

/// Outcome of checking `dτ1 = 0` and `dτ0 + τ0 τ1 = 0` for torsion in
/// `X1 + X4` on an invariant frame.
#[derive(Clone, Debug)]
pub struct X1X4Report<S: Scalar> {
    pub torsion: TorsionG2<S>,
    pub class: FernandezGrayClass,
    pub d_tau1: Form<S>,
    /// `dτ0 + τ0 τ1`, with `dτ0 = 0` for constant `τ0`.
    pub lee_combination: Form<S>,
    pub lee_closed: bool,
    pub combination_vanishes: bool,
    /// `d(dφ) − [(dτ0 + τ0τ1) ∧ *φ + 3 dτ1 ∧ φ]`, largest coefficient.
    pub second_derivative_residual: S,
    /// Largest coefficient of `d(dφ)` itself.
    pub d_squared_phi: S,
    pub status: IdentityStatus,
}

pub fn verify_x1x4_identities<S: Scalar>(
    g: &G2Structure<S>,
    dphi: &Form<S>,
    dstar_phi: &Form<S>,
    sc: &StructureConstants<S>,
) -> Result<X1X4Report<S>> {
    let tol = g.tol();
    let torsion = g.extract_torsion(dphi, dstar_phi)?;
    let class = classify_g2(&torsion, tol);
    if class.members.iter().any(|c| matches!(c, G2Class::X2 | G2Class::X3)) {
        return Err(Error::Refused(format!(
            "torsion of class {} is not in X1+X4",
            class.label()
        )));
    }
    let d_tau1 = sc.d(&torsion.tau1)?;
    let lee_combination = torsion.tau1.scale(&torsion.tau0);
    let rhs = (&lee_combination ^ g.star_phi()) + (&d_tau1 ^ g.phi()).scale(&S::from_i64(3));
    let ddphi = sc.d(dphi)?;
    let second_derivative_residual = (&ddphi - &rhs).max_abs();
    let lee_closed = d_tau1.is_negligible(tol);
    let combination_vanishes = lee_combination.is_negligible(tol);
    let status = IdentityStatus::from_flag(lee_closed && combination_vanishes);
    Ok(X1X4Report {
        torsion,
        class,
        d_tau1,
        lee_combination,
        lee_closed,
        combination_vanishes,
        second_derivative_residual,
        d_squared_phi: ddphi.max_abs(),
        status,
    })
}

/// The 21 basis 2-forms, for rank computations.
pub fn basis_2forms<S: Scalar>() -> Vec<Form<S>> {
    MultiIndex::all(N, 2)
        .into_iter()
        .map(|k| Form::basis(N, &k.indices()))
        .collect()
}
