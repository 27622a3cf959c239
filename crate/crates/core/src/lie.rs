//! Left-invariant frames on Lie groups.
//!
//! A Lie algebra is given by structure constants `[e_i, e_j] = Σ_k c^k_{ij} e_k`
//! in an orthonormal frame. The dual coframe satisfies the Maurer–Cartan
//! equations `de^k = −Σ_{i<j} c^k_{ij} e^{ij}`, and `d` extends to all
//! constant-coefficient forms as a graded derivation.

use crate::error::{Error, Result};
use crate::forms::{AlmostComplexStructure, Form, MultiIndex};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants<S: Scalar> {
    dim: usize,
    // c[(k * n + i) * n + j] = c^k_{ij}, 0-based.
    c: Vec<S>,
}

impl<S: Scalar> StructureConstants<S> {
    pub fn abelian(dim: usize) -> Self {
        StructureConstants {
            dim,
            c: vec![S::zero(); dim * dim * dim],
        }
    }

    /// Builds from `(i, j, k, c^k_{ij})` entries (1-based, `i ≠ j`). The
    /// entry for `(j, i)` is filled in by antisymmetry; repeated entries for
    /// the same slot are summed.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, usize, S)]) -> Result<Self> {
        let mut sc = Self::abelian(dim);
        for (i, j, k, v) in entries {
            let (i, j, k) = (*i, *j, *k);
            if [i, j, k].iter().any(|&x| x == 0 || x > dim) {
                return Err(Error::InvalidIndex {
                    indices: vec![i, j, k],
                    dimension: dim,
                    reason: "bracket index out of range",
                });
            }
            if i == j {
                if v.is_zero() {
                    continue;
                }
                return Err(Error::InvalidIndex {
                    indices: vec![i, j, k],
                    dimension: dim,
                    reason: "[e_i, e_i] must vanish",
                });
            }
            let cur = sc.get(i, j, k);
            sc.set(i, j, k, cur + v.clone());
        }
        Ok(sc)
    }

    pub fn from_i64_brackets(dim: usize, entries: &[(usize, usize, usize, i64)]) -> Self {
        let entries: Vec<_> = entries
            .iter()
            .map(|&(i, j, k, v)| (i, j, k, S::from_i64(v)))
            .collect();
        Self::from_brackets(dim, &entries).expect("valid bracket table")
    }

    fn slot(&self, i: usize, j: usize, k: usize) -> usize {
        ((k - 1) * self.dim + (i - 1)) * self.dim + (j - 1)
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: S) {
        let a = self.slot(i, j, k);
        let b = self.slot(j, i, k);
        self.c[b] = -v.clone();
        self.c[a] = v;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^k_{ij}`, 1-based.
    pub fn get(&self, i: usize, j: usize, k: usize) -> S {
        self.c[self.slot(i, j, k)].clone()
    }

    /// Nonzero `(i, j, k, c^k_{ij})` with `i < j`, in lexicographic order.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, S)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in 1..=n {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    pub fn scale(&self, s: &S) -> Self {
        StructureConstants {
            dim: self.dim,
            c: self.c.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StructureConstants<T> {
        StructureConstants {
            dim: self.dim,
            c: self.c.iter().map(f).collect(),
        }
    }

    /// Direct sum; the second algebra's labels are shifted by `self.dim()`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim + other.dim;
        let mut out = Self::abelian(n);
        for (i, j, k, v) in self.nonzero_entries() {
            out.set(i, j, k, v);
        }
        let s = self.dim;
        for (i, j, k, v) in other.nonzero_entries() {
            out.set(i + s, j + s, k + s, v);
        }
        out
    }

    /// `[X, Y]` for vectors written as 1-forms.
    pub fn bracket(&self, x: &Form<S>, y: &Form<S>) -> Form<S> {
        let n = self.dim;
        let xd = x.to_dense();
        let yd = y.to_dense();
        let mut out = vec![S::zero(); n];
        for (i, xi) in xd.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in yd.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi.clone() * yj.clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.c[(k * n + i) * n + j];
                    if !c.is_zero() {
                        *o = o.clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        Form::from_dense(n, 1, &out)
    }

    /// `de^k` for the 1-based coframe element `e^k`.
    pub fn d_coframe(&self, k: usize) -> Form<S> {
        let n = self.dim;
        let mut f = Form::zero(n, 2);
        for i in 1..=n {
            for j in i + 1..=n {
                let c = self.get(i, j, k);
                if !c.is_zero() {
                    f = f - Form::monomial(n, &[i, j], c);
                }
            }
        }
        f
    }

    /// Exterior derivative of a constant-coefficient form.
    ///
    /// Uses `d(e^I) = Σ_r (−1)^r de^{i_r} ∧ e^{I∖i_r}`, where `r` is the
    /// 0-based position of `i_r` in `I`.
    pub fn d(&self, a: &Form<S>) -> Result<Form<S>> {
        if a.dim() != self.dim {
            return Err(Error::IncompatibleDimension {
                left: self.dim,
                right: a.dim(),
            });
        }
        let n = self.dim;
        if a.degree() == n {
            return Ok(Form::zero(n, n));
        }
        let dframe: Vec<Form<S>> = (1..=n).map(|k| self.d_coframe(k)).collect();
        let mut out = Form::zero(n, a.degree() + 1);
        for (key, c) in a.terms() {
            for (r, i) in key.indices().into_iter().enumerate() {
                let rest = MultiIndex::from_mask(key.mask() & !(1 << (i - 1)));
                let tail = Form::monomial(n, &rest.indices(), c.clone());
                let term = &dframe[i - 1] ^ &tail;
                out = if r % 2 == 0 { out + term } else { out - term };
            }
        }
        Ok(out)
    }

    /// Checks `d(de^k) = 0` for every `k`, which is equivalent to the
    /// Jacobi identity.
    pub fn jacobi_check(&self, tol: f64) -> JacobiReport<S> {
        let mut violations = Vec::new();
        let mut max = S::zero();
        for k in 1..=self.dim {
            let dd = self.d(&self.d_coframe(k)).expect("same dimension");
            max = S::max_abs(max, &dd.max_abs());
            if !dd.is_negligible(tol) {
                violations.push((k, dd));
            }
        }
        JacobiReport {
            holds: violations.is_empty(),
            max_residual: max,
            violations,
        }
    }

    /// Errors unless the Jacobi identity holds.
    pub fn require_jacobi(&self, tol: f64) -> Result<()> {
        let report = self.jacobi_check(tol);
        if report.holds {
            Ok(())
        } else {
            Err(Error::JacobiViolation {
                residual: report.max_residual.to_f64(),
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiReport<S: Scalar> {
    pub holds: bool,
    pub max_residual: S,
    /// `(k, d(de^k))` for every coframe element where `d² ≠ 0`.
    pub violations: Vec<(usize, Form<S>)>,
}

/// `N(e_i, e_j; e_k) = g(N(e_i, e_j), e_k)` in dimension 6, antisymmetric in
/// the first two slots.
#[derive(Clone, Debug, PartialEq)]
pub struct NijenhuisTensor<S: Scalar> {
    n: Vec<S>,
}

impl<S: Scalar> NijenhuisTensor<S> {
    pub fn zero() -> Self {
        NijenhuisTensor {
            n: vec![S::zero(); 216],
        }
    }

    /// Builds from a coefficient function (1-based). Only `i < j` is
    /// sampled; the rest follows from antisymmetry.
    pub fn from_fn(f: impl Fn(usize, usize, usize) -> S) -> Self {
        let mut t = Self::zero();
        for i in 1..=6 {
            for j in i + 1..=6 {
                for k in 1..=6 {
                    let v = f(i, j, k);
                    t.n[Self::slot(j, i, k)] = -v.clone();
                    t.n[Self::slot(i, j, k)] = v;
                }
            }
        }
        t
    }

    fn slot(i: usize, j: usize, k: usize) -> usize {
        ((i - 1) * 6 + (j - 1)) * 6 + (k - 1)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> S {
        self.n[Self::slot(i, j, k)].clone()
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.n.iter().all(|v| v.is_negligible(tol))
    }

    pub fn max_abs(&self) -> S {
        self.n.iter().fold(S::zero(), S::max_abs)
    }

    /// `Σ_{ijk} A_{ijk} B_{ijk}` over all ordered triples.
    pub fn inner(&self, other: &Self) -> S {
        self.n
            .iter()
            .zip(&other.n)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn norm_sq(&self) -> S {
        self.inner(self)
    }

    pub fn sub(&self, other: &Self) -> Self {
        NijenhuisTensor {
            n: self
                .n
                .iter()
                .zip(&other.n)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    /// Full antisymmetrization `(N_{ijk} + N_{jki} + N_{kij}) / 3` as a 3-form.
    pub fn skew_part(&self) -> Form<S> {
        let third = S::one() / S::from_i64(3);
        let mut terms = Vec::new();
        for key in MultiIndex::all(6, 3) {
            let ix = key.indices();
            let (i, j, k) = (ix[0], ix[1], ix[2]);
            let v = (self.get(i, j, k) + self.get(j, k, i) + self.get(k, i, j)) * third.clone();
            terms.push((ix, v));
        }
        Form::from_terms(6, 3, terms).expect("valid 3-form")
    }

    /// A 3-form viewed as a tensor antisymmetric in its first two slots.
    pub fn from_three_form(f: &Form<S>) -> Self {
        assert_eq!((f.dim(), f.degree()), (6, 3), "expected a 3-form in dimension 6");
        Self::from_fn(|i, j, k| f.component(&[i, j, k]))
    }

    /// Splits `N = N^{3,0} + N^V` into the totally skew part and its
    /// orthogonal complement.
    pub fn split(&self) -> (Form<S>, NijenhuisTensor<S>) {
        let skew = self.skew_part();
        let rest = self.sub(&Self::from_three_form(&skew));
        (skew, rest)
    }

    /// Largest violation of `N(JX,Y;Z) = N(X,JY;Z) = N(X,Y;JZ)`.
    pub fn type_identity_residual(&self, j: &AlmostComplexStructure<S>) -> S {
        let m = j.matrix();
        let apply = |slot: usize, a: usize, b: usize, c: usize| -> S {
            (1..=6).fold(S::zero(), |acc, r| {
                let w = m[(r - 1, [a, b, c][slot] - 1)].clone();
                if w.is_zero() {
                    return acc;
                }
                let v = match slot {
                    0 => self.get(r, b, c),
                    1 => self.get(a, r, c),
                    _ => self.get(a, b, r),
                };
                acc + w * v
            })
        };
        let mut max = S::zero();
        for a in 1..=6 {
            for b in 1..=6 {
                for c in 1..=6 {
                    let x = apply(0, a, b, c);
                    let y = apply(1, a, b, c);
                    let z = apply(2, a, b, c);
                    max = S::max_abs(max, &(x.clone() - y));
                    max = S::max_abs(max, &(x - z));
                }
            }
        }
        max
    }
}

/// `N(X,Y) = ¼([X,Y] − [JX,JY] + J[JX,Y] + J[X,JY])` on frame vectors.
pub fn nijenhuis<S: Scalar>(
    sc: &StructureConstants<S>,
    j: &AlmostComplexStructure<S>,
) -> Result<NijenhuisTensor<S>> {
    if sc.dim() != 6 {
        return Err(Error::UnsupportedDimension {
            found: sc.dim(),
            expected: 6,
            context: "the Nijenhuis tensor",
        });
    }
    let quarter = S::one() / S::from_i64(4);
    let e: Vec<Form<S>> = (1..=6).map(|i| Form::e(6, i)).collect();
    let je: Vec<Form<S>> = (1..=6).map(|i| j.image_of_basis(i)).collect();
    let mut values = vec![vec![Form::zero(6, 1); 6]; 6];
    for a in 0..6 {
        for b in a + 1..6 {
            let v = sc.bracket(&e[a], &e[b]) - sc.bracket(&je[a], &je[b])
                + j.apply_vector(&sc.bracket(&je[a], &e[b]))
                + j.apply_vector(&sc.bracket(&e[a], &je[b]));
            values[a][b] = v.scale(&quarter);
        }
    }
    Ok(NijenhuisTensor::from_fn(|a, b, c| {
        values[a - 1][b - 1].coeff(MultiIndex::from_mask(1 << (c - 1)))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::Zero;

    type F = Form<Rational>;

    fn su2(lambda: i64) -> StructureConstants<Rational> {
        StructureConstants::from_i64_brackets(3, &[(1, 2, 3, lambda), (2, 3, 1, lambda), (3, 1, 2, lambda)])
    }

    #[test]
    fn abelian_d_vanishes() {
        let sc = StructureConstants::<Rational>::abelian(6);
        let a = F::from_i64_terms(6, 2, &[(1, &[1, 2]), (3, &[4, 5])]);
        assert!(sc.d(&a).unwrap().is_zero());
        assert!(sc.jacobi_check(0.0).holds);
    }

    #[test]
    fn maurer_cartan_on_su2() {
        let sc = su2(2);
        assert_eq!(sc.d(&F::e(3, 1)).unwrap(), F::basis(3, &[2, 3]).scale(&Rational::from_i64(-2)));
        assert!(sc.jacobi_check(0.0).holds);
        assert!(sc.d(&F::constant(3, Rational::from_i64(5))).unwrap().is_zero());
    }

    #[test]
    fn leibniz_on_two_forms() {
        let sc = su2(1).direct_sum(&su2(3));
        let (a, b) = (F::e(6, 1), F::e(6, 5));
        let lhs = sc.d(&(&a ^ &b)).unwrap();
        let rhs = (sc.d(&a).unwrap() ^ &b) - (&a ^ &sc.d(&b).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn broken_jacobi_is_reported() {
        let base = su2(1).direct_sum(&su2(1));
        let mut entries = base.nonzero_entries();
        entries.push((1, 4, 5, Rational::from_i64(1)));
        let sc = StructureConstants::from_brackets(6, &entries).unwrap();
        let report = sc.jacobi_check(0.0);
        assert!(!report.holds);
        assert!(!report.max_residual.is_zero());
        assert!(report.violations.iter().all(|(_, f)| !f.is_zero()));
        assert!(sc.require_jacobi(0.0).is_err());
    }

    #[test]
    fn nijenhuis_rejects_wrong_dimension() {
        let j = AlmostComplexStructure::standard();
        assert!(nijenhuis(&su2(1), &j).is_err());
    }

    #[test]
    fn nijenhuis_of_torus_vanishes() {
        let j = AlmostComplexStructure::standard();
        let n = nijenhuis(&StructureConstants::<Rational>::abelian(6), &j).unwrap();
        assert!(n.is_negligible(0.0));
        let (skew, rest) = n.split();
        assert!(skew.is_zero() && rest.is_negligible(0.0));
    }

    #[test]
    fn skew_tensor_splits_to_itself() {
        let f = F::from_i64_terms(6, 3, &[(1, &[1, 3, 5]), (-1, &[1, 4, 6]), (-1, &[2, 3, 6])]);
        let n = NijenhuisTensor::from_three_form(&f);
        let (skew, rest) = n.split();
        assert_eq!(skew, f);
        assert!(rest.is_negligible(0.0));
    }
}
