//! SU(3)-structures in dimension 6.
//!
//! Model forms: `ω = e12 + e34 + e56` and
//! `ψ+ + iψ− = (e1 + ie2) ∧ (e3 + ie4) ∧ (e5 + ie6)`, with the block rotation
//! `J e1 = e2`. Torsion is read off from
//!
//! ```text
//! dω  = 3(σ0+ ψ+ − σ0− ψ−) + 2 σ1+ ∧ ω + σ3
//! dψ+ = −2 σ0− ω² + 3 σ1+ ∧ ψ+ − σ1− ∧ ψ− + σ2+ ∧ ω
//! dψ− = −2 σ0+ ω² + 3 σ1+ ∧ ψ− + σ1− ∧ ψ+ + σ2− ∧ ω
//! ```
//!
//! where `σ2±` are primitive (1,1)-forms and `σ3` is primitive of type
//! (2,1)+(1,2). Since `3 ψ+ ∧ ψ− = 12 vol` we have `|ψ±|² = 4`, so
//! `⟨dω, ψ+⟩ = 12 σ0+` and `⟨dω, ψ−⟩ = −12 σ0−`.

use std::fmt;

use crate::error::{Error, Result};
use crate::forms::{AlmostComplexStructure, Form, FrameContext};
use crate::lie::{nijenhuis, NijenhuisTensor, StructureConstants};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::span::{operator_matrix, FormSpan};
use crate::status::{is_nonzero_sq, IdentityStatus};

const N: usize = 6;

pub fn standard_omega<S: Scalar>() -> Form<S> {
    Form::from_i64_terms(N, 2, &[(1, &[1, 2]), (1, &[3, 4]), (1, &[5, 6])])
}

pub fn standard_psi_plus<S: Scalar>() -> Form<S> {
    Form::from_i64_terms(N, 3, &[(1, &[1, 3, 5]), (-1, &[1, 4, 6]), (-1, &[2, 3, 6]), (-1, &[2, 4, 5])])
}

pub fn standard_psi_minus<S: Scalar>() -> Form<S> {
    Form::from_i64_terms(N, 3, &[(1, &[1, 3, 6]), (1, &[1, 4, 5]), (1, &[2, 3, 5]), (-1, &[2, 4, 6])])
}

/// Residuals of the defining normalizations of an SU(3)-structure, in the
/// order `ω∧ψ+`, `ω∧ψ−`, `3ψ+∧ψ− − 12vol`, `2ω³ − 12vol`, `*ω − ½ω²`,
/// `*ψ+ − ψ−`, `Jψ+ + ψ−`.
pub fn normalization_residuals<S: Scalar>(
    omega: &Form<S>,
    psi_plus: &Form<S>,
    psi_minus: &Form<S>,
    j: &AlmostComplexStructure<S>,
) -> Vec<(&'static str, S)> {
    let vol12 = FrameContext::new(N).volume::<S>().scale(&S::from_i64(12));
    let omega2 = omega.wedge(omega).expect("ω and itself share a dimension");
    let half = S::one() / S::from_i64(2);
    vec![
        ("omega^psi+", (omega ^ psi_plus).max_abs()),
        ("omega^psi-", (omega ^ psi_minus).max_abs()),
        ("3psi+^psi- = 12vol", (&(psi_plus ^ psi_minus).scale(&S::from_i64(3)) - &vol12).max_abs()),
        ("2omega^3 = 12vol", (&(&omega2 ^ omega).scale(&S::from_i64(2)) - &vol12).max_abs()),
        ("*omega = omega^2/2", (&omega.hodge() - &omega2.scale(&half)).max_abs()),
        ("*psi+ = psi-", (&psi_plus.hodge() - psi_minus).max_abs()),
        ("J psi+ = -psi-", (&j.act_full(psi_plus) + psi_minus).max_abs()),
    ]
}

#[derive(Clone, Debug)]
pub struct SU3Structure<S: Scalar> {
    omega: Form<S>,
    psi_plus: Form<S>,
    psi_minus: Form<S>,
    j: AlmostComplexStructure<S>,
    tol: f64,
    omega2: Form<S>,
    // span{e^i ∧ ω} ⊂ Λ³
    lee_three: FormSpan<S>,
    // span{e^i ∧ ψ−} ⊂ Λ⁴
    psi_minus_four: FormSpan<S>,
    // Inverse of β ↦ β ∧ ω on Λ² → Λ⁴.
    wedge_omega_inverse: Matrix<S>,
}

impl<S: Scalar> SU3Structure<S> {
    /// Validates the triple; `J` is recovered from `ω` through
    /// `ω(X, JY) = g(X, Y)`.
    pub fn new(omega: Form<S>, psi_plus: Form<S>, psi_minus: Form<S>, tol: f64) -> Result<Self> {
        for (name, f, p) in [("ω", &omega, 2), ("ψ+", &psi_plus, 3), ("ψ−", &psi_minus, 3)] {
            if f.dim() != N || f.degree() != p {
                return Err(Error::NotSu3Structure(format!(
                    "{name} must be a {p}-form in dimension 6"
                )));
            }
        }
        let j = AlmostComplexStructure::from_omega(&omega, tol)
            .map_err(|e| Error::NotSu3Structure(format!("ω does not define an orthogonal J ({e})")))?;
        for (name, r) in normalization_residuals(&omega, &psi_plus, &psi_minus, &j) {
            if !r.is_negligible(tol) {
                return Err(Error::NotSu3Structure(format!("{name} fails by {r}")));
            }
        }
        let omega2 = omega.wedge(&omega)?;
        let lee_three = FormSpan::new(
            N,
            3,
            &(1..=N).map(|i| Form::e(N, i) ^ &omega).collect::<Vec<_>>(),
            tol,
        )?;
        let psi_minus_four = FormSpan::new(
            N,
            4,
            &(1..=N).map(|i| Form::e(N, i) ^ &psi_minus).collect::<Vec<_>>(),
            tol,
        )?;
        let wedge_omega_inverse = operator_matrix(N, 2, 4, |b| b ^ &omega).inverse(tol)?;
        Ok(SU3Structure {
            omega,
            psi_plus,
            psi_minus,
            j,
            tol,
            omega2,
            lee_three,
            psi_minus_four,
            wedge_omega_inverse,
        })
    }

    pub fn standard() -> Self {
        Self::new(standard_omega(), standard_psi_plus(), standard_psi_minus(), 0.0)
            .expect("the model triple is an SU(3)-structure")
    }

    pub fn omega(&self) -> &Form<S> {
        &self.omega
    }

    pub fn psi_plus(&self) -> &Form<S> {
        &self.psi_plus
    }

    pub fn psi_minus(&self) -> &Form<S> {
        &self.psi_minus
    }

    pub fn j(&self) -> &AlmostComplexStructure<S> {
        &self.j
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn normalization_residuals(&self) -> Vec<(&'static str, S)> {
        normalization_residuals(&self.omega, &self.psi_plus, &self.psi_minus, &self.j)
    }

    /// Type decomposition of a 2-form under `J`.
    pub fn type_decompose_2form(&self, a: &Form<S>) -> TypeDecomposition<S> {
        let half = S::one() / S::from_i64(2);
        let ja = self.j.act_full(a);
        let part11 = (a + &ja).scale(&half);
        let part20 = (a - &ja).scale(&half);
        let trace = part11.inner(&self.omega).expect("2-form") / S::from_i64(3);
        let part11_0 = &part11 - &self.omega.scale(&trace);
        TypeDecomposition {
            part11,
            part20,
            part11_0,
            trace,
        }
    }

    /// The (3,0)+(0,3) part of a 3-form: its projection onto `span{ψ+, ψ−}`.
    pub fn three_zero_part(&self, a: &Form<S>) -> Form<S> {
        let quarter = S::one() / S::from_i64(4);
        let cp = a.inner(&self.psi_plus).expect("3-form") * quarter.clone();
        let cm = a.inner(&self.psi_minus).expect("3-form") * quarter;
        self.psi_plus.scale(&cp) + self.psi_minus.scale(&cm)
    }

    /// `(dω, dψ+, dψ−)` built from a torsion tuple.
    pub fn assemble(&self, t: &TorsionSU3<S>) -> (Form<S>, Form<S>, Form<S>) {
        let (two, three) = (S::from_i64(2), S::from_i64(3));
        let domega = (self.psi_plus.scale(&t.sigma0_plus) - self.psi_minus.scale(&t.sigma0_minus)).scale(&three)
            + (&t.sigma1_plus ^ &self.omega).scale(&two)
            + t.sigma3.clone();
        let dplus = self.omega2.scale(&(-two.clone() * t.sigma0_minus.clone()))
            + (&t.sigma1_plus ^ &self.psi_plus).scale(&three)
            - (&t.sigma1_minus ^ &self.psi_minus)
            + (&t.sigma2_plus ^ &self.omega);
        let dminus = self.omega2.scale(&(-two * t.sigma0_plus.clone()))
            + (&t.sigma1_plus ^ &self.psi_minus).scale(&three)
            + (&t.sigma1_minus ^ &self.psi_plus)
            + (&t.sigma2_minus ^ &self.omega);
        (domega, dplus, dminus)
    }

    fn solve_wedge_omega(&self, rest: &Form<S>) -> Form<S> {
        let beta = Form::from_dense(N, 2, &self.wedge_omega_inverse.mul_vec(&rest.to_dense()));
        self.type_decompose_2form(&beta).part11_0
    }

    /// Solves the structure equations for the eight torsion components.
    pub fn extract_torsion(
        &self,
        domega: &Form<S>,
        dpsi_plus: &Form<S>,
        dpsi_minus: &Form<S>,
    ) -> Result<TorsionSU3<S>> {
        check_shape(domega, 3)?;
        check_shape(dpsi_plus, 4)?;
        check_shape(dpsi_minus, 4)?;
        let (two, three, twelve) = (S::from_i64(2), S::from_i64(3), S::from_i64(12));
        let sigma0_plus = domega.inner(&self.psi_plus)? / twelve.clone();
        let sigma0_minus = -(domega.inner(&self.psi_minus)? / twelve);
        let half = S::one() / two.clone();
        let c = self.lee_three.coefficients(domega);
        let sigma1_plus = Form::from_dense(N, 1, &c.iter().map(|v| v.clone() * half.clone()).collect::<Vec<_>>());
        let sigma3 = domega
            - &((self.psi_plus.scale(&sigma0_plus) - self.psi_minus.scale(&sigma0_minus)).scale(&three)
                + (&sigma1_plus ^ &self.omega).scale(&two));

        let rest_plus = dpsi_plus + &self.omega2.scale(&(two.clone() * sigma0_minus.clone()))
            - (&sigma1_plus ^ &self.psi_plus).scale(&three);
        let c = self.psi_minus_four.coefficients(&rest_plus);
        let sigma1_minus = -Form::from_dense(N, 1, &c);
        let sigma2_plus = self.solve_wedge_omega(&(rest_plus + (&sigma1_minus ^ &self.psi_minus)));

        let rest_minus = dpsi_minus + &self.omega2.scale(&(two * sigma0_plus.clone()))
            - (&sigma1_plus ^ &self.psi_minus).scale(&three)
            - (&sigma1_minus ^ &self.psi_plus);
        let sigma2_minus = self.solve_wedge_omega(&rest_minus);

        let t = TorsionSU3 {
            sigma0_plus,
            sigma0_minus,
            sigma1_plus,
            sigma1_minus,
            sigma2_plus,
            sigma2_minus,
            sigma3,
        };
        let (a, b, c) = self.assemble(&t);
        let residual = [(&a - domega).max_abs(), (&b - dpsi_plus).max_abs(), (&c - dpsi_minus).max_abs()]
            .into_iter()
            .fold(S::zero(), |m, r| S::max_abs(m, &r));
        let sigma3_violation = S::max_abs((&t.sigma3 ^ &self.omega).max_abs(), &self.three_zero_part(&t.sigma3).max_abs());
        let residual = S::max_abs(residual, &sigma3_violation);
        if !residual.is_negligible(self.tol) {
            return Err(Error::NotSu3StructureEquations {
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
pub struct TypeDecomposition<S: Scalar> {
    /// `½(a + Ja)`.
    pub part11: Form<S>,
    /// `½(a − Ja)`, the real (2,0)+(0,2) part.
    pub part20: Form<S>,
    /// Primitive (1,1) part, `part11 − trace·ω`.
    pub part11_0: Form<S>,
    /// `⟨a, ω⟩ / |ω|²`.
    pub trace: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorsionSU3<S: Scalar> {
    pub sigma0_plus: S,
    pub sigma0_minus: S,
    pub sigma1_plus: Form<S>,
    pub sigma1_minus: Form<S>,
    pub sigma2_plus: Form<S>,
    pub sigma2_minus: Form<S>,
    pub sigma3: Form<S>,
}

impl<S: Scalar> TorsionSU3<S> {
    pub fn zero() -> Self {
        TorsionSU3 {
            sigma0_plus: S::zero(),
            sigma0_minus: S::zero(),
            sigma1_plus: Form::zero(N, 1),
            sigma1_minus: Form::zero(N, 1),
            sigma2_plus: Form::zero(N, 2),
            sigma2_minus: Form::zero(N, 2),
            sigma3: Form::zero(N, 3),
        }
    }

    fn chop(self, tol: f64) -> Self {
        let z = |v: S| if !S::EXACT && v.is_negligible(tol) { S::zero() } else { v };
        TorsionSU3 {
            sigma0_plus: z(self.sigma0_plus),
            sigma0_minus: z(self.sigma0_minus),
            sigma1_plus: self.sigma1_plus.chop(tol),
            sigma1_minus: self.sigma1_minus.chop(tol),
            sigma2_plus: self.sigma2_plus.chop(tol),
            sigma2_minus: self.sigma2_minus.chop(tol),
            sigma3: self.sigma3.chop(tol),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum U3Class {
    W1,
    W2,
    W3,
    W4,
}

impl fmt::Display for U3Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            U3Class::W1 => "W1",
            U3Class::W2 => "W2",
            U3Class::W3 => "W3",
            U3Class::W4 => "W4",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayHervellaClass {
    pub members: Vec<U3Class>,
    pub strict: bool,
    /// Which of `σ0+`, `σ0−` carry the W1 component: `"W1+"`, `"W1-"` or
    /// `"W1+-"`. Membership itself uses the pair jointly, since the two mix
    /// under rotations of `ψ+ + iψ−`.
    pub w1_refinement: Option<&'static str>,
    /// `σ1−` is nonzero. Reported separately; it is not one of W1..W4.
    pub sigma1_minus_nonzero: bool,
}

impl GrayHervellaClass {
    pub fn label(&self) -> String {
        match self.members.as_slice() {
            [] => "Kähler".into(),
            [U3Class::W1] => "nearly Kähler".into(),
            [U3Class::W4] => "locally conformally Kähler".into(),
            m => m.iter().map(U3Class::to_string).collect::<Vec<_>>().join("+"),
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.members.iter().map(U3Class::to_string).collect()
    }
}

/// Classifies torsion; W2 is read from `N^V` when the Nijenhuis tensor is
/// available, otherwise from `σ2±`. With a Nijenhuis tensor the
/// (3,0)+(0,3) part of `dω` is cross-checked against `3 N^{3,0}(X, Y, JZ)`.
pub fn classify_su3<S: Scalar>(
    s: &SU3Structure<S>,
    t: &TorsionSU3<S>,
    n: Option<&NijenhuisTensor<S>>,
    tol: f64,
) -> Result<GrayHervellaClass> {
    let sq = |v: &S| v.clone() * v.clone();
    let w1p = is_nonzero_sq(&sq(&t.sigma0_plus), tol);
    let w1m = is_nonzero_sq(&sq(&t.sigma0_minus), tol);
    let w2 = match n {
        Some(n) => {
            let (skew, rest) = n.split();
            let three_zero = (s.psi_plus.scale(&t.sigma0_plus) - s.psi_minus.scale(&t.sigma0_minus))
                .scale(&S::from_i64(3));
            let residual = three_zero_mismatch(s, &three_zero, &skew);
            if !residual.is_negligible(tol) {
                return Err(Error::FrameInconsistent(format!(
                    "σ0± disagree with the skew Nijenhuis part (residual {residual})"
                )));
            }
            is_nonzero_sq(&rest.norm_sq(), tol)
        }
        None => is_nonzero_sq(&(t.sigma2_plus.norm_sq() + t.sigma2_minus.norm_sq()), tol),
    };
    let w3 = is_nonzero_sq(&t.sigma3.norm_sq(), tol);
    let w4 = is_nonzero_sq(&t.sigma1_plus.norm_sq(), tol);
    let mut members = Vec::new();
    for (flag, c) in [(w1p || w1m, U3Class::W1), (w2, U3Class::W2), (w3, U3Class::W3), (w4, U3Class::W4)] {
        if flag {
            members.push(c);
        }
    }
    let w1_refinement = match (w1p, w1m) {
        (true, true) => Some("W1+-"),
        (true, false) => Some("W1+"),
        (false, true) => Some("W1-"),
        (false, false) => None,
    };
    Ok(GrayHervellaClass {
        members,
        strict: true,
        w1_refinement,
        sigma1_minus_nonzero: is_nonzero_sq(&t.sigma1_minus.norm_sq(), tol),
    })
}

/// Largest `|(dω)^{3,0}(X,Y,Z) − 3 N^{3,0}(X,Y,JZ)|` over frame triples.
fn three_zero_mismatch<S: Scalar>(s: &SU3Structure<S>, three_zero: &Form<S>, skew: &Form<S>) -> S {
    let m = s.j.matrix();
    let three = S::from_i64(3);
    let mut max = S::zero();
    for a in 1..=N {
        for b in a + 1..=N {
            for c in 1..=N {
                let rhs = (1..=N).fold(S::zero(), |acc, r| {
                    let w = m[(r - 1, c - 1)].clone();
                    if w.is_zero() {
                        acc
                    } else {
                        acc + w * skew.component(&[a, b, r])
                    }
                });
                let lhs = three_zero.component(&[a, b, c]);
                max = S::max_abs(max, &(lhs - three.clone() * rhs));
            }
        }
    }
    max
}

#[derive(Clone, Debug)]
pub struct SkewNijenhuisReport<S: Scalar> {
    /// `(dω)^{3,0}`.
    pub lhs: Form<S>,
    /// `N^{3,0}` as a 3-form.
    pub nijenhuis_skew: Form<S>,
    pub nijenhuis_rest_norm_sq: S,
    pub residual: S,
}

/// Compares `(dω)^{3,0}(X,Y,Z)` with `3 g(N^{3,0}(X,Y), JZ)` on all frame
/// triples of an invariant frame.
pub fn check_three_zero_nijenhuis<S: Scalar>(
    s: &SU3Structure<S>,
    sc: &StructureConstants<S>,
) -> Result<SkewNijenhuisReport<S>> {
    let n = nijenhuis(sc, s.j())?;
    let (skew, rest) = n.split();
    let lhs = s.three_zero_part(&sc.d(s.omega())?);
    let residual = three_zero_mismatch(s, &lhs, &skew);
    Ok(SkewNijenhuisReport {
        lhs,
        nijenhuis_skew: skew,
        nijenhuis_rest_norm_sq: rest.norm_sq(),
        residual,
    })
}

#[derive(Clone, Debug)]
pub struct TwoZeroReport<S: Scalar> {
    pub theta: Form<S>,
    /// `Jθ`.
    pub theta_prime: Form<S>,
    /// `(dθ)^{2,0} + J_(1)(dθ')^{2,0}`.
    pub lhs: Form<S>,
    /// `⅔ θ' ⌟ (dω)^{3,0}`.
    pub rhs: Form<S>,
    pub residual: S,
}

/// Checks `(dθ)^{2,0} + J_(1)(dθ')^{2,0} = ⅔ θ' ⌟ (dω)^{3,0}` with
/// `θ' = Jθ`, for frames whose Nijenhuis tensor is totally skew.
pub fn check_two_zero_identity<S: Scalar>(
    s: &SU3Structure<S>,
    sc: &StructureConstants<S>,
    theta: &Form<S>,
) -> Result<TwoZeroReport<S>> {
    if theta.dim() != N || theta.degree() != 1 {
        return Err(Error::Refused("θ must be a 1-form in dimension 6".into()));
    }
    let n = nijenhuis(sc, s.j())?;
    let (_, rest) = n.split();
    if !rest.is_negligible(s.tol) {
        return Err(Error::Refused(
            "the Nijenhuis tensor is not totally skew (frame has a W2 component)".into(),
        ));
    }
    let theta_prime = s.j.act_full(theta);
    let d1 = s.type_decompose_2form(&sc.d(theta)?).part20;
    let d2 = s.type_decompose_2form(&sc.d(&theta_prime)?).part20;
    let lhs = d1 + s.j.act_first_slot(&d2);
    let three_zero = s.three_zero_part(&sc.d(s.omega())?);
    let rhs = Form::interior(&theta_prime, &three_zero)?.scale(&(S::from_i64(2) / S::from_i64(3)));
    let residual = (&lhs - &rhs).max_abs();
    Ok(TwoZeroReport {
        theta: theta.clone(),
        theta_prime,
        lhs,
        rhs,
        residual,
    })
}

/// Residuals of the second-derivative identities for torsion in W1+W4.
#[derive(Clone, Debug)]
pub struct W1W4Report<S: Scalar> {
    pub torsion: TorsionSU3<S>,
    pub class: GrayHervellaClass,
    /// `A = dσ0+ + σ0+σ1+ − σ0−σ1−`.
    pub a: Form<S>,
    /// `B = dσ0− + σ0−σ1+ + σ0+σ1−`.
    pub b: Form<S>,
    /// `A − J B`.
    pub lee_pair_residual: S,
    /// `dσ1+ − 3 B ⌟ ψ+`.
    pub d_sigma1_plus_residual: S,
    /// `(dσ1−)^{2,0} − 7 B ⌟ ψ−`.
    pub d_sigma1_minus_residual: S,
    /// The three 4- and 5-form identities coming from `d² = 0` on
    /// `(ω, ψ+, ψ−)`, expressed in torsion.
    pub source_residuals: [S; 3],
    /// Largest coefficient of `d(dω)`, `d(dψ+)`, `d(dψ−)` computed from the
    /// frame.
    pub d_squared: S,
    pub status: IdentityStatus,
}

pub fn check_w1w4_consequences<S: Scalar>(
    s: &SU3Structure<S>,
    differentials: (&Form<S>, &Form<S>, &Form<S>),
    sc: &StructureConstants<S>,
) -> Result<W1W4Report<S>> {
    let tol = s.tol;
    let (domega, dplus, dminus) = differentials;
    let torsion = s.extract_torsion(domega, dplus, dminus)?;
    let class = classify_su3(s, &torsion, None, tol)?;
    if class.members.iter().any(|c| matches!(c, U3Class::W2 | U3Class::W3)) {
        return Err(Error::Refused(format!(
            "torsion of class {} is not in W1+W4",
            class.label()
        )));
    }
    let t = &torsion;
    // σ0± are constants on an invariant frame, so dσ0± = 0.
    let a = t.sigma1_plus.scale(&t.sigma0_plus) - t.sigma1_minus.scale(&t.sigma0_minus);
    let b = t.sigma1_plus.scale(&t.sigma0_minus) + t.sigma1_minus.scale(&t.sigma0_plus);
    let d1p = sc.d(&t.sigma1_plus)?;
    let d1m = sc.d(&t.sigma1_minus)?;
    let (two, three) = (S::from_i64(2), S::from_i64(3));

    let lee_pair_residual = (&a - &s.j.act_full(&b)).max_abs();
    let d_sigma1_plus_residual = (&d1p - &Form::interior(&b, &s.psi_plus)?.scale(&three)).max_abs();
    let d_sigma1_minus_residual = (&s.type_decompose_2form(&d1m).part20
        - &Form::interior(&b, &s.psi_minus)?.scale(&S::from_i64(7)))
        .max_abs();

    let src1 = (&a ^ &s.psi_plus).scale(&three) - (&b ^ &s.psi_minus).scale(&three)
        + (&d1p ^ &s.omega).scale(&two);
    let src2 = (&b ^ &s.omega2).scale(&-two.clone()) + (&d1p ^ &s.psi_plus).scale(&three) - (&d1m ^ &s.psi_minus);
    let src3 = (&a ^ &s.omega2).scale(&-two) + (&d1p ^ &s.psi_minus).scale(&three) + (&d1m ^ &s.psi_plus);
    let source_residuals = [src1.max_abs(), src2.max_abs(), src3.max_abs()];

    let d_squared = [sc.d(domega)?, sc.d(dplus)?, sc.d(dminus)?]
        .iter()
        .fold(S::zero(), |m, f| S::max_abs(m, &f.max_abs()));
    let holds = [&lee_pair_residual, &d_sigma1_plus_residual, &d_sigma1_minus_residual]
        .iter()
        .all(|r| r.is_negligible(tol));
    Ok(W1W4Report {
        class,
        a,
        b,
        lee_pair_residual,
        d_sigma1_plus_residual,
        d_sigma1_minus_residual,
        source_residuals,
        d_squared,
        status: IdentityStatus::from_flag(holds),
        torsion,
    })
}

/// The 15 basis 2-forms in dimension 6.
pub fn basis_2forms<S: Scalar>() -> Vec<Form<S>> {
    crate::forms::MultiIndex::all(N, 2)
        .into_iter()
        .map(|k| Form::basis(N, &k.indices()))
        .collect()
}
