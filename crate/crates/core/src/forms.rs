//! Constant-coefficient exterior forms over an orthonormal coframe.
//!
//! A [`Form`] of degree `p` in dimension `n` is a sparse map from strictly
//! increasing index sets to coefficients. Labels are 1-based in the public
//! API (`e^1 .. e^n`), matching the usual notation `e^{12} = e^1 ∧ e^2`.
//! Vectors are identified with 1-forms via the identity metric.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, BitXor, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 16;

/// Strictly increasing index set, stored as a bitmask (bit `i-1` is `e^i`).
///
/// Ordering is lexicographic on the sorted index list, so `12 < 13 < 23`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex(u16);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    /// Validates a 1-based index list against dimension `n`.
    pub fn new(indices: &[usize], n: usize) -> Result<Self> {
        let bad = |reason| Error::InvalidIndex {
            indices: indices.to_vec(),
            dimension: n,
            reason,
        };
        let mut mask = 0u16;
        let mut last = 0;
        for &i in indices {
            if i == 0 || i > n || i > MAX_DIM {
                return Err(bad("index out of range"));
            }
            if i <= last {
                return Err(bad("indices must be strictly increasing"));
            }
            last = i;
            mask |= 1 << (i - 1);
        }
        Ok(MultiIndex(mask))
    }

    pub fn from_mask(mask: u16) -> Self {
        MultiIndex(mask)
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && self.0 & (1 << (i - 1)) != 0
    }

    /// 1-based sorted indices.
    pub fn indices(self) -> Vec<usize> {
        (0..16).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    /// Every index set of size `p` in dimension `n`, in lexicographic order.
    pub fn all(n: usize, p: usize) -> Vec<MultiIndex> {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        let mut out: Vec<MultiIndex> = (0u32..(1u32 << n))
            .filter(|m| m.count_ones() as usize == p)
            .map(|m| MultiIndex(m as u16))
            .collect();
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

/// Sign of `e^A ∧ e^B` relative to `e^{A∪B}` (zero when they overlap).
pub fn wedge_sign(a: u16, b: u16) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        inversions += (a >> bit).count_ones();
        rest &= rest - 1;
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of the interior product `i_{e_i} e^I` (zero when `i ∉ I`).
fn interior_sign(i: usize, mask: u16) -> i32 {
    let bit = 1u16 << (i - 1);
    if mask & bit == 0 {
        return 0;
    }
    if (mask & (bit - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn signed<S: Scalar>(s: i32, v: &S) -> S {
    if s > 0 {
        v.clone()
    } else {
        -v.clone()
    }
}

#[derive(Clone, PartialEq)]
pub struct Form<S> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> Form<S> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        assert!(degree <= dim, "degree {degree} exceeds dimension {dim}");
        Form {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The constant function `c` as a 0-form.
    pub fn constant(dim: usize, c: S) -> Self {
        let mut f = Self::zero(dim, 0);
        f.insert(MultiIndex::EMPTY, c);
        f
    }

    /// The coframe element `e^i` (1-based).
    pub fn e(dim: usize, i: usize) -> Self {
        Self::basis(dim, &[i])
    }

    /// The monomial `e^{i1 i2 ...}`. Indices need not be sorted; the sign of
    /// the sorting permutation is applied. Repeated indices give zero.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        Self::monomial(dim, indices, S::one())
    }

    pub fn monomial(dim: usize, indices: &[usize], c: S) -> Self {
        let mut sorted = indices.to_vec();
        let sign = sort_sign(&mut sorted);
        let mut f = Self::zero(dim, indices.len());
        if sign != 0 {
            let key = MultiIndex::new(&sorted, dim).expect("valid basis indices");
            f.insert(key, signed(sign, &c));
        }
        f
    }

    /// Builds from `(indices, coefficient)` pairs with sorted indices.
    /// Duplicate keys are summed.
    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, S)>,
    {
        if dim > MAX_DIM || degree > dim {
            return Err(Error::DegreeMismatch {
                expected: dim.min(MAX_DIM),
                found: degree,
            });
        }
        let mut f = Self::zero(dim, degree);
        for (idx, c) in terms {
            let key = MultiIndex::new(&idx, dim)?;
            if key.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: key.degree(),
                });
            }
            f.accumulate(key, c);
        }
        Ok(f)
    }

    /// Convenience for tests and catalogs: `(sign-or-weight, indices)` pairs.
    pub fn from_i64_terms(dim: usize, degree: usize, terms: &[(i64, &[usize])]) -> Self {
        let mut f = Self::zero(dim, degree);
        for (c, idx) in terms {
            f = f + Self::monomial(dim, idx, S::from_i64(*c));
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &S)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, key: MultiIndex) -> S {
        self.terms.get(&key).cloned().unwrap_or_else(S::zero)
    }

    /// Alternating component `a(e_{i1}, ..., e_{ip})`, 1-based, any order.
    pub fn component(&self, indices: &[usize]) -> S {
        assert_eq!(indices.len(), self.degree, "wrong number of slots");
        let mut sorted = indices.to_vec();
        let sign = sort_sign(&mut sorted);
        if sign == 0 {
            return S::zero();
        }
        let key = MultiIndex::new(&sorted, self.dim).expect("slot out of range");
        signed(sign, &self.coeff(key))
    }

    /// Value of the 0-form (zero for the empty form).
    pub fn scalar_part(&self) -> S {
        assert_eq!(self.degree, 0, "scalar_part of a {}-form", self.degree);
        self.coeff(MultiIndex::EMPTY)
    }

    fn insert(&mut self, key: MultiIndex, c: S) {
        if c.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, c);
        }
    }

    fn accumulate(&mut self, key: MultiIndex, c: S) {
        if c.is_zero() {
            return;
        }
        let v = self.coeff(key) + c;
        self.insert(key, v);
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::IncompatibleDimension {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.accumulate(*k, v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.insert(*k, v.clone() * c.clone());
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::IncompatibleDimension {
                left: self.dim,
                right: other.dim,
            });
        }
        let degree = self.degree + other.degree;
        if degree > self.dim {
            // No form of that degree exists; return the zero top-degree
            // form so callers can keep chaining.
            return Ok(Self::zero(self.dim, self.dim));
        }
        let mut out = Self::zero(self.dim, degree);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let s = wedge_sign(ka.0, kb.0);
                if s != 0 {
                    out.accumulate(MultiIndex(ka.0 | kb.0), signed(s, &(va.clone() * vb.clone())));
                }
            }
        }
        Ok(out)
    }

    /// Hodge star for the identity metric and orientation `e^1 ∧ ... ∧ e^n`:
    /// `*e^I = sign(I, I^c) e^{I^c}`, so that `a ∧ *b = <a, b> vol`.
    pub fn hodge(&self) -> Self {
        let full: u16 = ((1u32 << self.dim) - 1) as u16;
        let mut out = Self::zero(self.dim, self.dim - self.degree);
        for (k, v) in &self.terms {
            let comp = full & !k.0;
            out.insert(MultiIndex(comp), signed(wedge_sign(k.0, comp), v));
        }
        out
    }

    /// Contraction `i_v a` with the vector metrically dual to the 1-form `v`.
    pub fn interior(v: &Self, a: &Self) -> Result<Self> {
        if v.dim != a.dim {
            return Err(Error::IncompatibleDimension {
                left: v.dim,
                right: a.dim,
            });
        }
        if v.degree != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: v.degree,
            });
        }
        if a.degree == 0 {
            return Ok(Self::zero(a.dim, 0));
        }
        let mut out = Self::zero(a.dim, a.degree - 1);
        for (kv, cv) in &v.terms {
            let i = kv.0.trailing_zeros() as usize + 1;
            for (ka, ca) in &a.terms {
                let s = interior_sign(i, ka.0);
                if s != 0 {
                    out.accumulate(MultiIndex(ka.0 & !kv.0), signed(s, &(cv.clone() * ca.clone())));
                }
            }
        }
        Ok(out)
    }

    /// `i_{e_i} a` for the 1-based frame vector `e_i`.
    pub fn contract_basis(&self, i: usize) -> Self {
        assert!(i >= 1 && i <= self.dim, "frame index out of range");
        if self.degree == 0 {
            return Self::zero(self.dim, 0);
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (k, c) in &self.terms {
            let s = interior_sign(i, k.0);
            if s != 0 {
                out.insert(MultiIndex(k.0 & !(1 << (i - 1))), signed(s, c));
            }
        }
        out
    }

    /// Pointwise inner product; basis monomials are orthonormal.
    pub fn inner(&self, other: &Self) -> Result<S> {
        self.check_same(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        Ok(small.terms.iter().fold(S::zero(), |acc, (k, v)| match large.terms.get(k) {
            Some(w) => acc + v.clone() * w.clone(),
            None => acc,
        }))
    }

    pub fn norm_sq(&self) -> S {
        self.terms
            .values()
            .fold(S::zero(), |acc, v| acc + v.clone() * v.clone())
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> S {
        self.terms.values().fold(S::zero(), S::max_abs)
    }

    /// Exact zero in the rational backend, all `|coeff| <= tol` otherwise.
    pub fn is_negligible(&self, tol: f64) -> bool {
        self.terms.values().all(|v| v.is_negligible(tol))
    }

    /// Pullback along the linear map `M`: `M^* e^k = Σ_j M[k][j] e^j`.
    pub fn pullback(&self, m: &Matrix<S>) -> Self {
        assert_eq!((m.rows(), m.cols()), (self.dim, self.dim), "shape mismatch");
        let images: Vec<Self> = (0..self.dim)
            .map(|k| {
                let mut f = Self::zero(self.dim, 1);
                for j in 0..self.dim {
                    f.insert(MultiIndex(1 << j), m[(k, j)].clone());
                }
                f
            })
            .collect();
        let mut out = Self::zero(self.dim, self.degree);
        for (key, c) in &self.terms {
            let mut acc = Self::constant(self.dim, c.clone());
            for i in key.indices() {
                acc = acc ^ &images[i - 1];
            }
            out = out + acc;
        }
        out
    }

    /// Dense coefficient vector in the lexicographic basis of
    /// [`MultiIndex::all`].
    pub fn to_dense(&self) -> Vec<S> {
        MultiIndex::all(self.dim, self.degree)
            .into_iter()
            .map(|k| self.coeff(k))
            .collect()
    }

    pub fn from_dense(dim: usize, degree: usize, values: &[S]) -> Self {
        let basis = MultiIndex::all(dim, degree);
        assert_eq!(basis.len(), values.len(), "dense length mismatch");
        let mut f = Self::zero(dim, degree);
        for (k, v) in basis.into_iter().zip(values) {
            f.insert(k, v.clone());
        }
        f
    }

    /// Drops coefficients below `tol` (no-op in the exact backend).
    pub fn chop(&self, tol: f64) -> Self {
        if S::EXACT {
            return self.clone();
        }
        let mut out = self.clone();
        out.terms.retain(|_, v| !v.is_negligible(tol));
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Form<T> {
        let mut out = Form::zero(self.dim, self.degree);
        for (k, v) in &self.terms {
            out.insert(*k, f(v));
        }
        out
    }
}

/// Sorts in place and returns the permutation sign, or 0 on repeats.
fn sort_sign(v: &mut [usize]) -> i32 {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sign
    }
}

impl<S: Scalar> Add for Form<S> {
    type Output = Form<S>;

    /// # Panics
    /// On dimension or degree mismatch; use [`Form::try_add`] to handle it.
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<S: Scalar> Add for &Form<S> {
    type Output = Form<S>;

    fn add(self, rhs: Self) -> Form<S> {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<S: Scalar> Sub for Form<S> {
    type Output = Form<S>;

    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<S: Scalar> Sub for &Form<S> {
    type Output = Form<S>;

    fn sub(self, rhs: Self) -> Form<S> {
        self.try_add(&-rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<S: Scalar> Neg for Form<S> {
    type Output = Form<S>;

    fn neg(self) -> Self {
        -&self
    }
}

impl<S: Scalar> Neg for &Form<S> {
    type Output = Form<S>;

    fn neg(self) -> Form<S> {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -v.clone();
        }
        out
    }
}

/// `a ^ b` is the wedge product. Panics on dimension mismatch.
impl<S: Scalar> BitXor<&Form<S>> for &Form<S> {
    type Output = Form<S>;

    fn bitxor(self, rhs: &Form<S>) -> Form<S> {
        self.wedge(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<S: Scalar> BitXor<&Form<S>> for Form<S> {
    type Output = Form<S>;

    fn bitxor(self, rhs: &Form<S>) -> Form<S> {
        &self ^ rhs
    }
}

impl<S: Scalar> BitXor for Form<S> {
    type Output = Form<S>;

    fn bitxor(self, rhs: Form<S>) -> Form<S> {
        &self ^ &rhs
    }
}

impl<S: Scalar> fmt::Display for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, v)) in self.terms.iter().enumerate() {
            let idx: Vec<String> = k.indices().iter().map(usize::to_string).collect();
            let label = if self.dim > 9 { idx.join(",") } else { idx.concat() };
            let text = v.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, text),
            };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if k.degree() == 0 {
                f.write_str(&mag)?;
            } else if mag == "1" {
                write!(f, "e{label}")?;
            } else {
                write!(f, "{mag}·e{label}")?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form(n={}, p={}: {})", self.dim, self.degree, self)
    }
}

/// Orthonormal, positively oriented coframe of a given dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameContext {
    dim: usize,
}

impl FrameContext {
    pub fn new(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        FrameContext { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn volume<S: Scalar>(&self) -> Form<S> {
        Form::basis(self.dim, &(1..=self.dim).collect::<Vec<_>>())
    }

    fn check<S: Scalar>(&self, a: &Form<S>) -> Result<()> {
        if a.dim != self.dim {
            return Err(Error::IncompatibleDimension {
                left: self.dim,
                right: a.dim,
            });
        }
        Ok(())
    }

    pub fn hodge<S: Scalar>(&self, a: &Form<S>) -> Result<Form<S>> {
        self.check(a)?;
        Ok(a.hodge())
    }

    pub fn inner<S: Scalar>(&self, a: &Form<S>, b: &Form<S>) -> Result<S> {
        self.check(a)?;
        a.inner(b)
    }

    /// Coefficient of a top-degree form against the volume form.
    pub fn top_coefficient<S: Scalar>(&self, a: &Form<S>) -> Result<S> {
        self.check(a)?;
        if a.degree != self.dim {
            return Err(Error::DegreeMismatch {
                expected: self.dim,
                found: a.degree,
            });
        }
        Ok(a.coeff(MultiIndex(((1u32 << self.dim) - 1) as u16)))
    }
}

/// Orthogonal almost complex structure on a 6-dimensional frame, acting on
/// vectors by `J e_j = Σ_i J[i][j] e_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostComplexStructure<S: Scalar> {
    matrix: Matrix<S>,
}

impl<S: Scalar> AlmostComplexStructure<S> {
    pub fn new(matrix: Matrix<S>, tol: f64) -> Result<Self> {
        if matrix.rows() != 6 || matrix.cols() != 6 {
            return Err(Error::UnsupportedDimension {
                found: matrix.rows(),
                expected: 6,
                context: "an almost complex structure",
            });
        }
        let id = Matrix::<S>::identity(6);
        if !(&matrix * &matrix).add(&id).is_negligible(tol) {
            return Err(Error::NotAlmostComplex("J² ≠ −1".into()));
        }
        if !(&matrix.transpose() * &matrix).sub(&id).is_negligible(tol) {
            return Err(Error::NotAlmostComplex("J is not orthogonal".into()));
        }
        Ok(AlmostComplexStructure { matrix })
    }

    /// Block rotation `J e_1 = e_2, J e_3 = e_4, J e_5 = e_6`.
    pub fn standard() -> Self {
        let mut m = Matrix::zeros(6, 6);
        for b in 0..3 {
            m[(2 * b + 1, 2 * b)] = S::one();
            m[(2 * b, 2 * b + 1)] = -S::one();
        }
        AlmostComplexStructure { matrix: m }
    }

    /// Recovers `J` from a Kähler form via `ω(X, JY) = g(X, Y)`.
    pub fn from_omega(omega: &Form<S>, tol: f64) -> Result<Self> {
        if omega.dim() != 6 || omega.degree() != 2 {
            return Err(Error::NotSu3Structure("ω must be a 2-form in dimension 6".into()));
        }
        let m = Matrix::from_fn(6, 6, |i, j| omega.component(&[j + 1, i + 1]));
        Self::new(m, tol)
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    /// `J v` for a vector written as a 1-form.
    pub fn apply_vector(&self, v: &Form<S>) -> Form<S> {
        let dense = v.to_dense();
        Form::from_dense(6, 1, &self.matrix.mul_vec(&dense))
    }

    /// `J e_j` as a 1-form (1-based `j`).
    pub fn image_of_basis(&self, j: usize) -> Form<S> {
        Form::from_dense(6, 1, &self.matrix.column(j - 1))
    }

    /// `(Jα)(X_1, ..., X_p) = (−1)^p α(JX_1, ..., JX_p)`.
    pub fn act_full(&self, a: &Form<S>) -> Form<S> {
        let pulled = a.pullback(&self.matrix);
        if a.degree() % 2 == 1 {
            -pulled
        } else {
            pulled
        }
    }

    /// `(J_(1) α)(X, Y, ...) = −α(JX, Y, ...)`, antisymmetrized over all
    /// slots so the result is again a p-form.
    pub fn act_first_slot(&self, a: &Form<S>) -> Form<S> {
        let p = a.degree();
        if p == 0 {
            return Form::zero(6, 0);
        }
        let mut out = Form::zero(6, p);
        for j in 1..=6 {
            let contracted = Form::interior(&self.image_of_basis(j), a).expect("dimension 6");
            out = out - (Form::e(6, j) ^ &contracted);
        }
        out.scale(&(S::one() / S::from_i64(p as i64)))
    }
}
