mod common;

use common::*;
use proptest::prelude::*;
use torsionlab::conformal::{
    conformal_transform_g2, conformal_transform_su3, exponential_loop, gauge_normalize, sign_changing_loop,
    verify_loop, ConformalGauge, PointwiseConformalData,
};
use torsionlab::g2::G2Structure;
use torsionlab::su3::SU3Structure;
use torsionlab::{Error, Form, Scalar};

fn conformal_data(seed: u64, n: usize) -> PointwiseConformalData<Q> {
    let mut r = rng(seed ^ 0x5eed);
    let s = random_nonzero(&mut r);
    let s = if s.is_positive() { s } else { -s };
    PointwiseConformalData::new(s, random_form(&mut r, n, 1, 0.7)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn g2_torsion_transforms_covariantly(seed: u64) {
        let g = G2Structure::<Q>::standard();
        let t = random_g2_torsion(&mut rng(seed), &g);
        let (dphi, dstar) = g2_structure_equations(&g, &t);
        let c = conformal_data(seed, 7);
        let got = conformal_transform_g2(&g, &dphi, &dstar, &c).extract_torsion(&g).unwrap();
        let s = c.scale.clone();
        prop_assert_eq!(&got.tau0, &(t.tau0.clone() / s.clone()));
        prop_assert_eq!(&got.tau1, &(&t.tau1 + &c.df));
        prop_assert_eq!(&got.tau2, &t.tau2.scale(&s));
        prop_assert_eq!(&got.tau3, &t.tau3.scale(&(s.clone() * s)));
    }

    #[test]
    fn su3_torsion_transforms_covariantly(seed: u64) {
        let s3 = SU3Structure::<Q>::standard();
        let t = random_su3_torsion(&mut rng(seed), &s3);
        let (dw, dp, dm) = su3_structure_equations(&s3, &t);
        let c = conformal_data(seed, 6);
        let got = conformal_transform_su3(&s3, (&dw, &dp, &dm), &c).extract_torsion(&s3).unwrap();
        let s = c.scale.clone();
        prop_assert_eq!(&got.sigma0_plus, &(t.sigma0_plus.clone() / s.clone()));
        prop_assert_eq!(&got.sigma0_minus, &(t.sigma0_minus.clone() / s.clone()));
        prop_assert_eq!(&got.sigma1_plus, &(&t.sigma1_plus + &c.df));
        prop_assert_eq!(&got.sigma1_minus, &t.sigma1_minus);
        prop_assert_eq!(&got.sigma2_plus, &t.sigma2_plus.scale(&s));
        prop_assert_eq!(&got.sigma2_minus, &t.sigma2_minus.scale(&s));
        prop_assert_eq!(&got.sigma3, &t.sigma3.scale(&(s.clone() * s)));
    }

    #[test]
    fn successive_changes_compose(seed: u64) {
        let g = G2Structure::<Q>::standard();
        let t = random_g2_torsion(&mut rng(seed), &g);
        let (dphi, dstar) = g2_structure_equations(&g, &t);
        let (a, b) = (conformal_data(seed, 7), conformal_data(seed.wrapping_add(1), 7));
        let twice = conformal_transform_g2(&g, &dphi, &dstar, &a).transform(&b);
        let once = conformal_transform_g2(&g, &dphi, &dstar, &a.compose(&b));
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn gauge_normalization_is_exact(seed: u64, k in 0usize..4) {
        let s3 = SU3Structure::<Q>::standard();
        let mut t = random_su3_torsion(&mut rng(seed), &s3);
        let (a, b) = [(3, 4), (5, 12), (0, 2), (-8, 15)][k];
        t.sigma0_plus = Q::from_i64(a);
        t.sigma0_minus = Q::from_i64(b);
        let (dw, dp, dm) = su3_structure_equations(&s3, &t);
        let mut r = rng(seed.wrapping_mul(3));
        let g = ConformalGauge::new(
            t.sigma0_plus.clone(),
            t.sigma0_minus.clone(),
            random_form(&mut r, 6, 1, 0.5),
            random_form(&mut r, 6, 1, 0.5),
        )
        .unwrap();
        let n = gauge_normalize(&s3, (&dw, &dp, &dm), &t, &g);
        prop_assert_eq!(n.torsion.sigma0_plus.clone(), Q::from_i64(1));
        let check = n.check(0.0).unwrap();
        prop_assert!(check.passes(0.0), "{:?}", check);
    }
}

#[test]
fn gauge_needs_nonzero_exact_modulus() {
    let z = Form::<Q>::zero(6, 1);
    assert!(matches!(
        ConformalGauge::new(q(0, 1), q(0, 1), z.clone(), z.clone()),
        Err(Error::GaugeUndefined)
    ));
    assert!(matches!(
        ConformalGauge::new(q(1, 1), q(1, 1), z.clone(), z),
        Err(Error::InexactRoot(_))
    ));
}

#[test]
fn scale_must_be_positive() {
    assert!(PointwiseConformalData::<Q>::new(q(-1, 2), Form::zero(7, 1)).is_err());
    assert!(PointwiseConformalData::<Q>::from_potential(&q(1, 1), Form::zero(7, 1)).is_err());
    let c = PointwiseConformalData::<f64>::from_potential(&1.0, Form::zero(7, 1)).unwrap();
    assert!((c.scale - std::f64::consts::E).abs() < 1e-15);
}

#[test]
fn loop_sign_is_constant_only_without_zeros() {
    for k in [16, 64, 256] {
        let rep = verify_loop(&exponential_loop(k), 1e-2).unwrap();
        assert!(rep.sign_constant);
    }
    let fine = verify_loop(&exponential_loop(256), 1e-6).unwrap();
    assert!(fine.product_spread < 1e-9);
    assert!(verify_loop(&sign_changing_loop(256), 1e-6).is_err());
    assert!(verify_loop(&[], 1e-6).is_err());
}
