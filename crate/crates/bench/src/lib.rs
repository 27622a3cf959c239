//! Deterministic inputs for the benchmarks.

use torsionlab::forms::MultiIndex;
use torsionlab::g2::{G2Structure, TorsionG2};
use torsionlab::su3::{SU3Structure, TorsionSU3};
use torsionlab::{Form, Scalar};

/// Dense form whose coefficients cycle through small integers in `-5..=5`.
pub fn dense_form<S: Scalar>(dim: usize, degree: usize, seed: i64) -> Form<S> {
    let mut f = Form::zero(dim, degree);
    for (i, k) in MultiIndex::all(dim, degree).into_iter().enumerate() {
        let c = (seed + 7 * i as i64) % 11 - 5;
        if c != 0 {
            f = f + Form::monomial(dim, &k.indices(), S::from_i64(c));
        }
    }
    f
}

/// `(dφ, d*φ)` of the standard G2 form with every torsion class switched on.
pub fn g2_differentials<S: Scalar>() -> (G2Structure<S>, Form<S>, Form<S>) {
    let g = G2Structure::standard();
    let tau2 = g.project_2form(&dense_form(7, 2, 1)).1;
    let tau3 = g.project_3form(&dense_form(7, 3, 2)).2;
    let t = TorsionG2 {
        tau0: S::from_i64(2),
        tau1: dense_form(7, 1, 3),
        tau2,
        tau3,
    };
    let (dphi, dstar) = g.assemble(&t);
    (g, dphi, dstar)
}

/// `(dω, dψ+, dψ−)` of the standard SU(3)-structure with torsion in every
/// class but the primitive (2,1) one.
pub fn su3_differentials<S: Scalar>() -> (SU3Structure<S>, Form<S>, Form<S>, Form<S>) {
    let s = SU3Structure::standard();
    let mut t = TorsionSU3::zero();
    t.sigma0_plus = S::from_i64(1);
    t.sigma0_minus = S::from_i64(-2);
    t.sigma1_plus = dense_form(6, 1, 4);
    t.sigma1_minus = dense_form(6, 1, 5);
    t.sigma2_plus = s.type_decompose_2form(&dense_form(6, 2, 6)).part11_0;
    t.sigma2_minus = s.type_decompose_2form(&dense_form(6, 2, 7)).part11_0;
    let (dw, dp, dm) = s.assemble(&t);
    (s, dw, dp, dm)
}
