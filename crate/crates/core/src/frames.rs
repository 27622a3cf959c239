//! Built-in Lie algebras with orthonormal frames.

use crate::forms::Form;
use crate::lie::StructureConstants;
use crate::scalar::Scalar;

/// Abelian algebra (flat torus).
pub fn torus<S: Scalar>(n: usize) -> StructureConstants<S> {
    StructureConstants::abelian(n)
}

/// `su(2)` with `[e_i, e_j] = λ ε_{ijk} e_k`. For `λ = 1` the metric is the
/// round one with sectional curvature ¼.
pub fn su2<S: Scalar>(lambda: S) -> StructureConstants<S> {
    StructureConstants::from_brackets(
        3,
        &[(1, 2, 3, lambda.clone()), (2, 3, 1, lambda.clone()), (3, 1, 2, lambda)],
    )
    .expect("valid su(2) table")
}

/// A rational orthonormal frame on `su(2) ⊕ su(2)` in which the standard
/// SU(3) triple satisfies `dω = 3ψ+`, `dψ+ = 0`, `dψ− = −2ω²`.
pub fn nearly_kahler<S: Scalar>() -> StructureConstants<S> {
    StructureConstants::from_i64_brackets(
        6,
        &[
            (1, 3, 6, 3),
            (1, 4, 5, 1),
            (1, 5, 4, -3),
            (1, 6, 3, -1),
            (2, 3, 5, -3),
            (2, 4, 6, -3),
            (2, 5, 3, 3),
            (2, 6, 4, 3),
            (3, 5, 2, -3),
            (3, 6, 1, 3),
            (4, 5, 1, 3),
            (4, 6, 2, -1),
        ],
    )
}

/// Semidirect product `R ⋉ R^{n−1}` with `de^i = a e^1 ∧ e^i` for `i ≥ 2`.
/// Every standard fundamental form picks up `d = k a e^1 ∧ (·)`, giving a
/// pure Lee-form structure (W4 in dimension 6, X4 in dimension 7).
pub fn conformally_flat_solvable<S: Scalar>(n: usize, a: S) -> StructureConstants<S> {
    let entries: Vec<_> = (2..=n).map(|i| (1, i, i, -a.clone())).collect();
    StructureConstants::from_brackets(n, &entries).expect("valid solvable table")
}

/// The nearly Kähler frame rescaled so that `σ0+ + iσ0− = a + ib`:
/// brackets multiplied by `Λ = |a + ib|` and `(ψ+, ψ−)` rotated by the phase.
/// Returns `None` when `Λ` is not exact in the backend or vanishes.
pub fn scaled_nearly_kahler<S: Scalar>(a: S, b: S) -> Option<(StructureConstants<S>, Form<S>, Form<S>)> {
    let lambda = (a.clone() * a.clone() + b.clone() * b.clone()).sqrt_exact()?;
    if lambda.is_zero() {
        return None;
    }
    let sc = nearly_kahler::<S>().scale(&lambda);
    let pp = crate::su3::standard_psi_plus::<S>();
    let pm = crate::su3::standard_psi_minus::<S>();
    let inv = S::one() / lambda;
    let psi_plus = (pp.scale(&a) + pm.scale(&b)).scale(&inv);
    let psi_minus = (pm.scale(&a) - pp.scale(&b)).scale(&inv);
    Some((sc, psi_plus, psi_minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su3::{check_three_zero_nijenhuis, check_two_zero_identity, classify_su3, SU3Structure, U3Class};
    use crate::{lie::nijenhuis, Rational};
    use num_traits::{One, Zero};

    type Q = Rational;

    #[test]
    fn nearly_kahler_structure_equations() {
        let sc = nearly_kahler::<Q>();
        assert!(sc.jacobi_check(0.0).holds);
        let s = SU3Structure::<Q>::standard();
        assert_eq!(sc.d(s.omega()).unwrap(), s.psi_plus().scale(&Q::from_i64(3)));
        assert!(sc.d(s.psi_plus()).unwrap().is_zero());
        assert_eq!(sc.d(s.psi_minus()).unwrap(), (s.omega() ^ s.omega()).scale(&Q::from_i64(-2)));
    }

    #[test]
    fn nearly_kahler_nijenhuis_is_skew() {
        let sc = nearly_kahler::<Q>();
        let s = SU3Structure::<Q>::standard();
        let n = nijenhuis(&sc, s.j()).unwrap();
        assert!(n.type_identity_residual(s.j()).is_zero());
        let (skew, rest) = n.split();
        assert!(rest.is_negligible(0.0));
        assert!(!skew.is_zero());
        let r = check_three_zero_nijenhuis(&s, &sc).unwrap();
        assert!(r.residual.is_zero());
        let t = s
            .extract_torsion(&sc.d(s.omega()).unwrap(), &sc.d(s.psi_plus()).unwrap(), &sc.d(s.psi_minus()).unwrap())
            .unwrap();
        let class = classify_su3(&s, &t, Some(&n), 0.0).unwrap();
        assert_eq!(class.members, vec![U3Class::W1]);
        assert_eq!(t.sigma0_plus, Q::one());
    }

    #[test]
    fn two_zero_identity_on_nearly_kahler() {
        let sc = nearly_kahler::<Q>();
        let s = SU3Structure::<Q>::standard();
        let r = check_two_zero_identity(&s, &sc, &Form::e(6, 1)).unwrap();
        assert!(r.residual.is_zero());
        assert!(!r.lhs.is_zero());
    }

    #[test]
    fn solvable_frames_are_lie_algebras() {
        let sc = conformally_flat_solvable::<Q>(6, Q::from_i64(2));
        assert!(sc.jacobi_check(0.0).holds);
        let s = SU3Structure::<Q>::standard();
        let e1 = Form::e(6, 1);
        assert_eq!(sc.d(s.omega()).unwrap(), (&e1 ^ s.omega()).scale(&Q::from_i64(4)));
        assert_eq!(sc.d(s.psi_plus()).unwrap(), (&e1 ^ s.psi_plus()).scale(&Q::from_i64(6)));
    }

    #[test]
    fn scaled_frames_need_exact_modulus() {
        assert!(scaled_nearly_kahler(Q::from_i64(1), Q::from_i64(1)).is_none());
        assert!(scaled_nearly_kahler(Q::zero(), Q::zero()).is_none());
        let (sc, pp, pm) = scaled_nearly_kahler(Q::from_i64(3), Q::from_i64(4)).unwrap();
        let s = SU3Structure::new(crate::su3::standard_omega(), pp, pm, 0.0).unwrap();
        let t = s
            .extract_torsion(&sc.d(s.omega()).unwrap(), &sc.d(s.psi_plus()).unwrap(), &sc.d(s.psi_minus()).unwrap())
            .unwrap();
        assert_eq!((t.sigma0_plus, t.sigma0_minus), (Q::from_i64(3), Q::from_i64(4)));
    }
}
