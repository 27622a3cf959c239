//! Orthogonal projection onto spans of forms, and matrices of linear maps
//! between spaces of forms.

use crate::error::Result;
use crate::forms::{Form, MultiIndex};
use crate::linalg::{dot, Matrix};
use crate::scalar::Scalar;

/// Span of a family of forms of one degree, with a precomputed inverse Gram
/// matrix for orthogonal projection.
#[derive(Clone, Debug)]
pub struct FormSpan<S: Scalar> {
    dim: usize,
    degree: usize,
    basis: Vec<Form<S>>,
    gram_inv: Matrix<S>,
}

impl<S: Scalar> FormSpan<S> {
    /// Keeps a maximal linearly independent subfamily of `forms` (in order).
    pub fn new(dim: usize, degree: usize, forms: &[Form<S>], tol: f64) -> Result<Self> {
        let mut basis: Vec<Form<S>> = Vec::new();
        let mut rows: Vec<Vec<S>> = Vec::new();
        for f in forms {
            let mut trial = rows.clone();
            trial.push(f.to_dense());
            if Matrix::from_rows(trial.clone()).rank(tol) == trial.len() {
                rows = trial;
                basis.push(f.clone());
            }
        }
        let k = basis.len();
        let gram = Matrix::from_fn(k, k, |i, j| dot(&rows[i], &rows[j]));
        let gram_inv = if k == 0 { gram } else { gram.inverse(tol)? };
        Ok(FormSpan {
            dim,
            degree,
            basis,
            gram_inv,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Form<S>] {
        &self.basis
    }

    /// Coefficients `c` of the projection `Σ c_i b_i` of `a`.
    pub fn coefficients(&self, a: &Form<S>) -> Vec<S> {
        assert_eq!((a.dim(), a.degree()), (self.dim, self.degree), "form outside the span's space");
        let rhs: Vec<S> = self
            .basis
            .iter()
            .map(|b| b.inner(a).expect("same space"))
            .collect();
        if rhs.is_empty() {
            return rhs;
        }
        self.gram_inv.mul_vec(&rhs)
    }

    pub fn combine(&self, coeffs: &[S]) -> Form<S> {
        let mut out = Form::zero(self.dim, self.degree);
        for (b, c) in self.basis.iter().zip(coeffs) {
            if !c.is_zero() {
                out = out + b.scale(c);
            }
        }
        out
    }

    pub fn project(&self, a: &Form<S>) -> Form<S> {
        self.combine(&self.coefficients(a))
    }
}

/// Matrix of a linear map `Λ^p → Λ^q` in the lexicographic monomial bases
/// (column `j` is the image of the `j`-th basis form).
pub fn operator_matrix<S: Scalar>(
    dim: usize,
    p: usize,
    q: usize,
    f: impl Fn(&Form<S>) -> Form<S>,
) -> Matrix<S> {
    let inputs = MultiIndex::all(dim, p);
    let rows = MultiIndex::all(dim, q).len();
    let mut m = Matrix::zeros(rows, inputs.len());
    for (j, key) in inputs.iter().enumerate() {
        let image = f(&Form::basis(dim, &key.indices()));
        assert_eq!(image.degree(), q, "operator changed degree unexpectedly");
        for (i, v) in image.to_dense().into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    m
}
