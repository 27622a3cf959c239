//! Scalar backends.
//!
//! Every algorithm in the crate is generic over [`Scalar`]. Two backends are
//! provided: exact rationals ([`Rational`], the default) and `f64`. A session
//! picks one backend and never mixes them. In the exact backend equality is
//! literal; in the real backend "zero" means `|x| <= tol`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational scalar.
pub type Rational = BigRational;

/// Default tolerance of the real backend.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Which arithmetic a session runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Rational,
    Real,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Real => "real",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(Backend::Rational),
            "real" => Ok(Backend::Real),
            other => Err(format!("unknown backend `{other}` (expected rational|real)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse `{input}` as a scalar: {reason}")]
pub struct ScalarParseError {
    pub input: String,
    pub reason: &'static str,
}

/// Serializable view of a scalar value.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarRepr {
    Rational { num: BigInt, den: BigInt },
    Real(f64),
}

/// Field operations plus the handful of backend-specific hooks the
/// geometry code needs.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Exact backends compare literally and ignore tolerances.
    const EXACT: bool;
    const BACKEND: Backend;

    fn from_i64(v: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_bigints(num: &BigInt, den: &BigInt) -> Self;

    /// Parses `-3`, `1.25`, `2.5e-3` or `3/4`. Decimal input is exact in
    /// the rational backend.
    fn parse_decimal(s: &str) -> Result<Self, ScalarParseError>;

    fn to_f64(&self) -> f64;

    fn to_repr(&self) -> ScalarRepr;

    /// Exact backend: `self == 0`. Real backend: `|self| <= tol`.
    fn is_negligible(&self, tol: f64) -> bool;

    fn abs(&self) -> Self;

    /// Square root when it exists in the backend (perfect squares only for
    /// rationals).
    fn sqrt_exact(&self) -> Option<Self>;

    /// `exp(self)` when representable (only `exp(0)` for rationals).
    fn try_exp(&self) -> Option<Self>;

    /// Strictly greater than zero (exact comparison in both backends).
    fn is_positive(&self) -> bool;

    fn pow_i32(&self, e: i32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * self.clone();
        }
        if e < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }

    fn gt(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_positive()
    }

    /// Larger of `a` and `|b|`.
    fn max_abs(a: Self, b: &Self) -> Self {
        let b = b.abs();
        if b.gt(&a) {
            b
        } else {
            a
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, ScalarParseError> {
    let err = |reason| ScalarParseError {
        input: s.to_string(),
        reason,
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty string"));
    }
    if let Some((n, d)) = t.split_once('/') {
        let num = BigInt::from_str(n.trim()).map_err(|_| err("bad numerator"))?;
        let den = BigInt::from_str(d.trim()).map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e = i32::from_str(&t[pos + 1..]).map_err(|_| err("bad exponent"))?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err("invalid digit"));
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| err("invalid digits"))?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    const BACKEND: Backend = Backend::Rational;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_bigints(num: &BigInt, den: &BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        BigRational::new(num.clone(), den.clone())
    }

    fn parse_decimal(s: &str) -> Result<Self, ScalarParseError> {
        parse_rational(s)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_repr(&self) -> ScalarRepr {
        ScalarRepr::Rational {
            num: self.numer().clone(),
            den: self.denom().clone(),
        }
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if self.numer().sign() == Sign::Minus {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }

    fn try_exp(&self) -> Option<Self> {
        self.is_zero().then(Self::one)
    }

    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const BACKEND: Backend = Backend::Real;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn from_bigints(num: &BigInt, den: &BigInt) -> Self {
        ToPrimitive::to_f64(&BigRational::new(num.clone(), den.clone())).unwrap_or(f64::NAN)
    }

    fn parse_decimal(s: &str) -> Result<Self, ScalarParseError> {
        if s.contains('/') {
            return parse_rational(s).map(|r| Scalar::to_f64(&r));
        }
        f64::from_str(s.trim()).map_err(|_| ScalarParseError {
            input: s.to_string(),
            reason: "not a decimal number",
        })
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_repr(&self) -> ScalarRepr {
        ScalarRepr::Real(*self)
    }

    fn is_negligible(&self, tol: f64) -> bool {
        f64::abs(*self) <= tol
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt_exact(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    fn try_exp(&self) -> Option<Self> {
        Some(self.exp())
    }

    fn is_positive(&self) -> bool {
        *self > 0.0
    }
}

/// Converts between backends through the exact representation.
pub fn convert<A: Scalar, B: Scalar>(a: &A) -> B {
    match a.to_repr() {
        ScalarRepr::Rational { num, den } => B::from_bigints(&num, &den),
        ScalarRepr::Real(v) => {
            if B::EXACT {
                let r = BigRational::from_float(v).expect("finite value");
                B::from_bigints(r.numer(), r.denom())
            } else {
                B::parse_decimal(&format!("{v:?}")).expect("f64 debug output parses")
            }
        }
    }
}
