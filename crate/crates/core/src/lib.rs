//! Intrinsic torsion of G2- and SU(3)-structures on invariant frames.
//!
//! Forms are sparse and generic over [`Scalar`], with exact rationals and
//! `f64` as the two backends. Structures are given by their fundamental
//! forms and either a Lie algebra (for `d`) or explicit differentials.

pub mod catalog;
pub mod conformal;
pub mod curvature;
pub mod error;
pub mod forms;
pub mod frames;
pub mod g2;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod span;
pub mod status;
pub mod su3;

pub use error::{Error, Result};
pub use forms::{AlmostComplexStructure, Form, FrameContext, MultiIndex};
pub use linalg::Matrix;
pub use scalar::{Backend, Rational, Scalar, DEFAULT_TOL};
