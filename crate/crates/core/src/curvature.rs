//! Levi-Civita connection and curvature of left-invariant metrics in an
//! orthonormal frame, Einstein checks, and the splitting of the curvature
//! operator into a scalar part and a Ricci-free remainder.

use crate::error::Result;
use crate::forms::{Form, MultiIndex};
use crate::g2::G2Structure;
use crate::lie::StructureConstants;
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::su3::SU3Structure;

/// `∇_{e_i} e_j = Σ_k Γ^k_{ij} e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionCoefficients<S> {
    dim: usize,
    gamma: Vec<S>,
}

impl<S: Scalar> ConnectionCoefficients<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Γ^k_{ij}` with 1-based labels.
    pub fn get(&self, i: usize, j: usize, k: usize) -> S {
        let n = self.dim;
        self.gamma[((i - 1) * n + (j - 1)) * n + (k - 1)].clone()
    }

    /// Matrix of `∇_{e_i}` acting on frame vectors: entry `(k, j)` is `Γ^k_{ij}`.
    pub fn matrix(&self, i: usize) -> Matrix<S> {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.get(i, j + 1, k + 1))
    }

    /// `max |Γ^k_{ij} + Γ^j_{ik}|`.
    pub fn compatibility_residual(&self) -> S {
        let n = self.dim;
        let mut worst = S::zero();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    worst = S::max_abs(worst, &(self.get(i, j, k) + self.get(i, k, j)));
                }
            }
        }
        worst
    }

    /// `max |Γ^k_{ij} − Γ^k_{ji} − c^k_{ij}|`.
    pub fn torsion_residual(&self, sc: &StructureConstants<S>) -> S {
        let n = self.dim;
        let mut worst = S::zero();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    let r = self.get(i, j, k) - self.get(j, i, k) - sc.get(i, j, k);
                    worst = S::max_abs(worst, &r);
                }
            }
        }
        worst
    }
}

/// Koszul formula in an orthonormal frame:
/// `Γ^k_{ij} = ½(c^k_{ij} − c^i_{jk} + c^j_{ki})`.
pub fn levi_civita<S: Scalar>(sc: &StructureConstants<S>, tol: f64) -> Result<ConnectionCoefficients<S>> {
    sc.require_jacobi(tol)?;
    let n = sc.dim();
    let half = S::one() / S::from_i64(2);
    let mut gamma = Vec::with_capacity(n * n * n);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                gamma.push((sc.get(i, j, k) - sc.get(j, k, i) + sc.get(k, i, j)) * half.clone());
            }
        }
    }
    Ok(ConnectionCoefficients { dim: n, gamma })
}

/// Riemann tensor, curvature operator, Ricci tensor and scalar curvature.
///
/// The tensor is `R(i,j,k,l) = g(R(e_i,e_j)e_k, e_l)` with
/// `R(X,Y) = ∇_X∇_Y − ∇_Y∇_X − ∇_{[X,Y]}`. The operator on `Λ²` has entries
/// `R(i,j,l,k)` in the basis `e^{ij}`, `i < j`, so that its diagonal holds
/// sectional curvatures and the unit sphere gives the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureData<S: Scalar> {
    dim: usize,
    tensor: Vec<S>,
    pub operator: Matrix<S>,
    pub ricci: Matrix<S>,
    pub scalar: S,
}

impl<S: Scalar> CurvatureData<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `R(i,j,k,l)` with 1-based labels.
    pub fn tensor(&self, i: usize, j: usize, k: usize, l: usize) -> S {
        let n = self.dim;
        self.tensor[(((i - 1) * n + (j - 1)) * n + (k - 1)) * n + (l - 1)].clone()
    }

    /// `max |R(i,j,k,l) + R(j,k,i,l) + R(k,i,j,l)|`.
    pub fn bianchi_residual(&self) -> S {
        let n = self.dim;
        let mut worst = S::zero();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        let r = self.tensor(i, j, k, l) + self.tensor(j, k, i, l) + self.tensor(k, i, j, l);
                        worst = S::max_abs(worst, &r);
                    }
                }
            }
        }
        worst
    }

    /// `max |R − Rᵀ|` of the curvature operator.
    pub fn symmetry_residual(&self) -> S {
        self.operator.sub(&self.operator.transpose()).max_abs()
    }
}

pub fn riemann<S: Scalar>(gamma: &ConnectionCoefficients<S>, sc: &StructureConstants<S>) -> CurvatureData<S> {
    let n = gamma.dim();
    let mats: Vec<Matrix<S>> = (1..=n).map(|i| gamma.matrix(i)).collect();
    let mut tensor = vec![S::zero(); n * n * n * n];
    for i in 1..=n {
        for j in 1..=n {
            let mut m = mats[i - 1].matmul(&mats[j - 1]).sub(&mats[j - 1].matmul(&mats[i - 1]));
            for (mi, gm) in mats.iter().enumerate() {
                let c = sc.get(i, j, mi + 1);
                if !c.is_zero() {
                    m = m.sub(&gm.scale(&c));
                }
            }
            for k in 0..n {
                for l in 0..n {
                    tensor[(((i - 1) * n + (j - 1)) * n + k) * n + l] = m[(l, k)].clone();
                }
            }
        }
    }
    let at = |i: usize, j: usize, k: usize, l: usize| tensor[((i * n + j) * n + k) * n + l].clone();
    let pairs = MultiIndex::all(n, 2);
    let idx: Vec<(usize, usize)> = pairs
        .iter()
        .map(|p| {
            let v = p.indices();
            (v[0] - 1, v[1] - 1)
        })
        .collect();
    let operator = Matrix::from_fn(idx.len(), idx.len(), |a, b| {
        let ((i, j), (k, l)) = (idx[a], idx[b]);
        at(i, j, l, k)
    });
    let ricci = Matrix::from_fn(n, n, |j, k| (0..n).fold(S::zero(), |acc, i| acc + at(i, j, k, i)));
    let scalar = ricci.trace();
    CurvatureData {
        dim: n,
        tensor,
        operator,
        ricci,
        scalar,
    }
}

/// Levi-Civita curvature of the left-invariant metric making the frame
/// orthonormal.
pub fn curvature_of<S: Scalar>(sc: &StructureConstants<S>, tol: f64) -> Result<CurvatureData<S>> {
    let gamma = levi_civita(sc, tol)?;
    Ok(riemann(&gamma, sc))
}

/// Ricci contraction `c(A)_{jk} = Σ_i A(e^{ij}, e^{ik})` of an operator on
/// `Λ²`, with `A(e^{ji}, ·) = −A(e^{ij}, ·)`.
pub fn ricci_contraction<S: Scalar>(a: &Matrix<S>, n: usize) -> Matrix<S> {
    let pairs = MultiIndex::all(n, 2);
    let position = |i: usize, j: usize| -> Option<(usize, bool)> {
        if i == j {
            return None;
        }
        let key = MultiIndex::new(&[i.min(j), i.max(j)], n).expect("valid pair");
        let p = pairs.iter().position(|q| *q == key).expect("pair present");
        Some((p, i > j))
    };
    Matrix::from_fn(n, n, |j, k| {
        let mut acc = S::zero();
        for i in 0..n {
            if let (Some((p, sp)), Some((q, sq))) = (position(i + 1, j + 1), position(i + 1, k + 1)) {
                let v = a[(p, q)].clone();
                acc = if sp == sq { acc + v } else { acc - v };
            }
        }
        acc
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarSign {
    Positive,
    Zero,
    Negative,
}

impl ScalarSign {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarSign::Positive => "positive",
            ScalarSign::Zero => "zero",
            ScalarSign::Negative => "negative",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EinsteinReport<S> {
    pub scalar: S,
    /// `s/n`.
    pub einstein_constant: S,
    /// `max |Ric − (s/n) g|`.
    pub residual: S,
    pub sign: ScalarSign,
    pub is_einstein: bool,
}

pub fn einstein_check<S: Scalar>(c: &CurvatureData<S>, tol: f64) -> EinsteinReport<S> {
    let n = c.dim();
    let k = c.scalar.clone() / S::from_i64(n as i64);
    let residual = c.ricci.sub(&Matrix::identity(n).scale(&k)).max_abs();
    let sign = if c.scalar.is_negligible(tol) {
        ScalarSign::Zero
    } else if c.scalar.is_positive() {
        ScalarSign::Positive
    } else {
        ScalarSign::Negative
    };
    EinsteinReport {
        scalar: c.scalar.clone(),
        einstein_constant: k,
        is_einstein: residual.is_negligible(tol),
        residual,
        sign,
    }
}

/// Holonomy algebra whose image in `Λ²` the Ricci-free part is tested against.
#[derive(Clone, Copy, Debug)]
pub enum HolonomyModel<'a, S: Scalar> {
    None,
    Su3(&'a SU3Structure<S>),
    G2(&'a G2Structure<S>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureSplit<S: Scalar> {
    /// Coefficient of the identity, `s / (n(n−1))` in operator units.
    pub scalar_coefficient: S,
    /// `R − s/(n(n−1)) Id`, halved to the `so(n)` normalization in which
    /// the scalar part reads `s/(2n(n−1)) Id`.
    pub ricci_free_part: Matrix<S>,
    /// `max` entry of the Ricci contraction of `ricci_free_part`.
    pub ricci_contraction_residual: S,
    /// Largest component of the image of `ricci_free_part` outside the
    /// named subalgebra of `Λ²`.
    pub holonomy_residuals: Vec<(&'static str, S)>,
}

/// Splits `R = R^𝔤 + s/(2n(n−1)) Id` with `R` viewed in the `so(n)`
/// normalization (half the operator of [`CurvatureData`]).
pub fn curvature_split<S: Scalar>(c: &CurvatureData<S>, holonomy: HolonomyModel<'_, S>) -> CurvatureSplit<S> {
    let n = c.dim();
    let half = S::one() / S::from_i64(2);
    let m = c.operator.rows();
    let weight = c.scalar.clone() / S::from_i64((2 * n * (n - 1)) as i64);
    let rg = c.operator.scale(&half).sub(&Matrix::identity(m).scale(&weight));
    let ricci_contraction_residual = ricci_contraction(&rg, n).max_abs();

    let image_residual = |project: &dyn Fn(&Form<S>) -> Form<S>| -> S {
        (0..m).fold(S::zero(), |worst, col| {
            let image = Form::from_dense(n, 2, &rg.column(col));
            S::max_abs(worst, &(&image - &project(&image)).max_abs())
        })
    };
    let holonomy_residuals = match holonomy {
        HolonomyModel::None => Vec::new(),
        HolonomyModel::Su3(s) if n == 6 => vec![
            ("su3", image_residual(&|a| s.type_decompose_2form(a).part11_0)),
            ("u3", image_residual(&|a| s.type_decompose_2form(a).part11)),
        ],
        HolonomyModel::G2(g) if n == 7 => vec![("g2", image_residual(&|a| g.project_2form(a).1))],
        _ => Vec::new(),
    };
    CurvatureSplit {
        scalar_coefficient: weight.clone() * S::from_i64(2),
        ricci_free_part: rg,
        ricci_contraction_residual,
        holonomy_residuals,
    }
}
