mod common;

use common::*;
use proptest::prelude::*;
use torsionlab::g2::{classify_g2, metric_from_phi, standard_phi_form, G2Class, G2Structure, TorsionG2};
use torsionlab::su3::{classify_su3, SU3Structure, TorsionSU3};
use torsionlab::{Error, Form, Matrix, Scalar, DEFAULT_TOL};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn g2_torsion_round_trips(seed: u64) {
        let g = G2Structure::<Q>::standard();
        let t = random_g2_torsion(&mut rng(seed), &g);
        let (dphi, dstar) = g2_structure_equations(&g, &t);
        prop_assert_eq!(g.extract_torsion(&dphi, &dstar).unwrap(), t);
    }

    #[test]
    fn g2_projections_are_complementary_idempotents(seed: u64) {
        let g = G2Structure::<Q>::standard();
        let mut r = rng(seed);
        let a = random_form(&mut r, 7, 2, 0.5);
        let (p7, p14) = g.project_2form(&a);
        prop_assert_eq!(&p7 + &p14, a.clone());
        prop_assert_eq!(g.project_2form(&p7).0, p7.clone());
        prop_assert_eq!(&p14, &fourteen_part(&g, &a));
        prop_assert!(wedge_oracle(&p14, g.star_phi()).is_zero());
        let b = random_form(&mut r, 7, 3, 0.4);
        let (b1, b7, b27) = g.project_3form(&b);
        prop_assert_eq!(&(&b1 + &b7) + &b27, b.clone());
        prop_assert_eq!(&b27, &twenty_seven_part(&g, &b));
    }

    #[test]
    fn su3_torsion_round_trips(seed: u64) {
        let s = SU3Structure::<Q>::standard();
        let t = random_su3_torsion(&mut rng(seed), &s);
        let (dw, dp, dm) = su3_structure_equations(&s, &t);
        prop_assert_eq!(s.extract_torsion(&dw, &dp, &dm).unwrap(), t);
    }

    #[test]
    fn metric_scales_with_the_form(k in 1i64..5) {
        let c = Q::from_i64(k);
        let phi = standard_phi_form::<Q>().scale(&(c.clone() * c.clone() * c.clone()));
        let m = metric_from_phi(&phi).unwrap();
        let want = Matrix::<f64>::identity(7).scale(&((k * k) as f64));
        prop_assert!(m.metric.sub(&want).max_abs() < 1e-12);
        prop_assert_eq!(m.orientation, 1);
    }
}

#[test]
fn single_component_torsion_gets_a_single_class() {
    let g = G2Structure::<Q>::standard();
    let mut r = rng(7);
    let full = random_g2_torsion(&mut r, &g);
    let cases = [
        (TorsionG2 { tau0: full.tau0.clone(), ..TorsionG2::zero() }, G2Class::X1),
        (TorsionG2 { tau2: full.tau2.clone(), ..TorsionG2::zero() }, G2Class::X2),
        (TorsionG2 { tau3: full.tau3.clone(), ..TorsionG2::zero() }, G2Class::X3),
        (TorsionG2 { tau1: full.tau1.clone(), ..TorsionG2::zero() }, G2Class::X4),
    ];
    for (t, class) in cases {
        let (dphi, dstar) = g2_structure_equations(&g, &t);
        let got = classify_g2(&g.extract_torsion(&dphi, &dstar).unwrap(), DEFAULT_TOL);
        assert_eq!(got.members, vec![class]);
    }
}

#[test]
fn torsion_free_su3_data_classify_as_kahler_flat() {
    let s = SU3Structure::<Q>::standard();
    let zero3 = Form::zero(6, 3);
    let zero4 = Form::zero(6, 4);
    let t = s.extract_torsion(&zero3, &zero4, &zero4).unwrap();
    assert_eq!(t, TorsionSU3::zero());
    assert!(classify_su3(&s, &t, None, DEFAULT_TOL).unwrap().members.is_empty());
}

#[test]
fn non_structure_equation_input_is_rejected() {
    let g = G2Structure::<Q>::standard();
    // d*φ = 4τ1∧*φ + τ2∧φ, and τ1 is already fixed to zero by dφ = 0.
    let dstar = wedge_oracle(&Form::e(7, 1), g.star_phi());
    let dphi = Form::zero(7, 4);
    assert!(matches!(
        g.extract_torsion(&dphi, &dstar),
        Err(Error::NotG2StructureEquations { .. })
    ));
}

#[test]
fn degenerate_three_forms_are_not_g2() {
    assert!(G2Structure::<Q>::new(Form::basis(7, &[1, 2, 3]), DEFAULT_TOL).is_err());
    assert!(G2Structure::<Q>::new(Form::zero(7, 3), DEFAULT_TOL).is_err());
}

#[test]
fn first_slot_j_rotates_contractions_of_psi() {
    // With Jψ+ = −ψ−, the first-slot action sends σ⌟ψ+ to σ⌟ψ− and σ⌟ψ− to −σ⌟ψ+.
    let s = SU3Structure::<Q>::standard();
    let mut r = rng(11);
    for _ in 0..20 {
        let sigma = random_form(&mut r, 6, 1, 0.7);
        let plus = Form::interior(&sigma, s.psi_plus()).unwrap();
        let minus = Form::interior(&sigma, s.psi_minus()).unwrap();
        assert_eq!(s.j().act_first_slot(&plus), minus);
        assert_eq!(s.j().act_first_slot(&minus), -plus);
    }
}
