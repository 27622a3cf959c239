/// Result of an identity check on an invariant frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityStatus {
    /// Every identity holds.
    Hold,
    /// At least one identity fails. For invariant frames this is the
    /// expected outcome that rules out a strict mixed class.
    DichotomyExhibited,
}

impl IdentityStatus {
    pub fn from_flag(all_hold: bool) -> Self {
        if all_hold {
            IdentityStatus::Hold
        } else {
            IdentityStatus::DichotomyExhibited
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityStatus::Hold => "identities-hold",
            IdentityStatus::DichotomyExhibited => "dichotomy-exhibited",
        }
    }
}

/// Nonzero test on a squared norm: exact in the rational backend,
/// `norm > tol` in the real one.
pub(crate) fn is_nonzero_sq<S: crate::Scalar>(norm_sq: &S, tol: f64) -> bool {
    if S::EXACT {
        !norm_sq.is_zero()
    } else {
        norm_sq.to_f64() > tol * tol
    }
}
