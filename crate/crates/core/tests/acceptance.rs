//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use num_traits::{One, Zero};
use torsionlab::catalog;
use torsionlab::conformal::{
    conformal_transform_g2, conformal_transform_su3, exponential_loop, gauge_normalize, sign_changing_loop,
    verify_loop, ConformalGauge, PointwiseConformalData,
};
use torsionlab::curvature::{curvature_of, curvature_split, einstein_check, HolonomyModel, ScalarSign};
use torsionlab::forms::MultiIndex;
use torsionlab::frames;
use torsionlab::g2::{metric_from_phi, G2Structure};
use torsionlab::lie::StructureConstants;
use torsionlab::report::{self, Check, Command, Settings};
use torsionlab::span::{operator_matrix, FormSpan};
use torsionlab::su3::{check_three_zero_nijenhuis, check_two_zero_identity, SU3Structure};
use torsionlab::{Error, Form, Matrix, Scalar};

type Verdict = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Verdict>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn sign(p: usize) -> Q {
    if p.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

fn monomial_wedge_oracle(n: usize, a: &[usize], b: &[usize]) -> Form<Q> {
    if a.iter().any(|x| b.contains(x)) {
        return Form::zero(n, (a.len() + b.len()).min(n));
    }
    let seq: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut sorted = seq.clone();
    sorted.sort();
    let perm: Vec<usize> = seq.iter().map(|x| sorted.iter().position(|y| y == x).unwrap()).collect();
    Form::basis(n, &sorted).scale(&Q::from_i64(permutation_sign(&perm)))
}

/// `D(a∧b) = Da∧b ± a∧Db`. Terms of a degree that does not exist (below 0
/// or above the dimension) are zero and are dropped.
fn antiderivation_holds(d: &dyn Fn(&Form<Q>) -> Form<Q>, a: &Form<Q>, b: &Form<Q>) -> bool {
    let lhs = d(&(a ^ b));
    let first = &d(a) ^ b;
    let second = (a ^ &d(b)).scale(&sign(a.degree()));
    let rhs = [first, second]
        .into_iter()
        .filter(|t| !t.is_zero())
        .try_fold(None::<Form<Q>>, |acc, t| match acc {
            None => Some(Some(t)),
            Some(x) => x.try_add(&t).ok().map(Some),
        });
    match rhs {
        None => false,
        Some(None) => lhs.is_zero(),
        Some(Some(r)) => r == lhs || (r.is_zero() && lhs.is_zero()),
    }
}

fn exterior_kernel() -> Verdict {
    let start = Instant::now();
    let mut checked = 0usize;
    for n in [6usize, 7] {
        let frame: StructureConstants<Q> = if n == 6 {
            frames::nearly_kahler()
        } else {
            frames::conformally_flat_solvable(7, Q::from_i64(2))
        };
        let d = |f: &Form<Q>| frame.d(f).unwrap();
        let vol = volume(n);
        let monomials: Vec<(Vec<usize>, Form<Q>)> = (0..=n)
            .flat_map(|p| MultiIndex::all(n, p))
            .map(|k| (k.indices(), Form::basis(n, &k.indices())))
            .collect();
        for (ia, a) in &monomials {
            let p = ia.len();
            ensure!(a.hodge().hodge() == a.scale(&sign(p * (n - p))), "** ≠ ±1 on e{ia:?}");
            for k in 1..=n {
                ensure!(Form::interior(&Form::e(n, k), a).unwrap() == interior_oracle(k, a), "interior e{k} on e{ia:?}");
            }
            for (ib, b) in &monomials {
                let q = ib.len();
                if p == q {
                    let expected = if ia == ib { vol.clone() } else { Form::zero(n, n) };
                    ensure!(wedge_oracle(a, &b.hodge()) == expected, "e{ia:?} ∧ *e{ib:?} ≠ ⟨,⟩vol");
                }
                let ab = a ^ b;
                ensure!(ab == monomial_wedge_oracle(n, ia, ib), "e{ia:?} ∧ e{ib:?} disagrees with shuffle sign");
                ensure!(ab == (b ^ a).scale(&sign(p * q)), "graded commutativity fails for e{ia:?}, e{ib:?}");
                for k in 1..=n {
                    let v = Form::e(n, k);
                    let ik = |f: &Form<Q>| Form::interior(&v, f).unwrap();
                    ensure!(antiderivation_holds(&ik, a, b), "interior antiderivation on e{ia:?}, e{ib:?}");
                }
                ensure!(antiderivation_holds(&d, a, b), "d antiderivation on e{ia:?}, e{ib:?}");
                checked += 1;
            }
            ensure!(d(&d(a)).is_zero(), "d² ≠ 0 on e{ia:?}");
        }
    }
    let mut r = rng(1);
    use rand::Rng;
    for case in 0..1000 {
        let n = if case % 2 == 0 { 6 } else { 7 };
        let frame: StructureConstants<Q> = if n == 6 {
            frames::nearly_kahler()
        } else {
            frames::conformally_flat_solvable(7, Q::from_i64(-1))
        };
        let (p, q, s) = (r.gen_range(0..=n), r.gen_range(0..=n), r.gen_range(0..=3));
        let a = random_form(&mut r, n, p, 0.3);
        let b = random_form(&mut r, n, q, 0.3);
        let c = random_form(&mut r, n, s, 0.3);
        ensure!((&a ^ &b) == wedge_oracle(&a, &b), "random case {case}: wedge disagrees with the shuffle sum");
        ensure!((&a ^ &b) == (&b ^ &a).scale(&sign(p * q)), "random case {case}: graded commutativity");
        ensure!(((&a ^ &b) ^ &c) == (&a ^ &(&b ^ &c)), "random case {case}: associativity");
        ensure!(a.hodge().hodge() == a.scale(&sign(p * (n - p))), "random case {case}: hodge involution");
        if p == q {
            ensure!(
                wedge_oracle(&a, &b.hodge()) == volume(n).scale(&a.inner(&b).unwrap()),
                "random case {case}: α∧*β ≠ ⟨α,β⟩vol"
            );
        }
        let k = r.gen_range(1..=n);
        let v = Form::e(n, k);
        let ik = |f: &Form<Q>| Form::interior(&v, f).unwrap();
        ensure!(ik(&a) == interior_oracle(k, &a), "random case {case}: interior");
        ensure!(antiderivation_holds(&ik, &a, &b), "random case {case}: interior antiderivation");
        let d = |f: &Form<Q>| frame.d(f).unwrap();
        ensure!(antiderivation_holds(&d, &a, &b), "random case {case}: d antiderivation");
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 10.0, "took {secs:.1} s (limit 10 s)");
    Ok(format!("{checked} monomial pairs + 1000 random cases exact in {secs:.2} s"))
}

fn g2_nondegeneracy() -> Verdict {
    let g = G2Structure::<Q>::standard();
    let phi = g.phi();
    let vol = volume(7);
    for i in 1..=7 {
        for j in 1..=7 {
            let lhs = wedge_oracle(&wedge_oracle(&interior_oracle(i, phi), &interior_oracle(j, phi)), phi);
            let rhs = if i == j { vol.scale(&Q::from_i64(6)) } else { Form::zero(7, 7) };
            ensure!(lhs == rhs, "pair ({i}, {j}) fails");
        }
    }
    let m = metric_from_phi(phi).map_err(|e| e.to_string())?;
    ensure!(m.metric == Matrix::identity(7), "metric of the model form is not the identity");
    let scale = 2f64.ln().exp();
    let scaled = phi.map(|c| c.to_f64() * scale.powi(3));
    let m2 = metric_from_phi(&scaled).map_err(|e| e.to_string())?;
    let err = m2.metric.sub(&Matrix::identity(7).scale(&(scale * scale))).max_abs();
    ensure!(err <= 1e-12, "metric of e^(3f)φ off by {err:e}");
    Ok(format!("49 pairs exact; scaled metric error {err:.1e}"))
}

fn g2_projections() -> Verdict {
    let g = G2Structure::<Q>::standard();
    let p7 = |a: &Form<Q>| g.project_2form(a).0;
    let p14 = |a: &Form<Q>| g.project_2form(a).1;
    let seven: Vec<_> = (1..=7).map(|i| interior_oracle(i, g.phi())).collect();
    let oracle7 = FormSpan::new(7, 2, &seven, 0.0).unwrap();
    let basis2: Vec<Form<Q>> = MultiIndex::all(7, 2).iter().map(|k| Form::basis(7, &k.indices())).collect();
    for a in &basis2 {
        ensure!(p7(&p7(a)) == p7(a) && p14(&p14(a)) == p14(a), "2-form projector not idempotent on {a}");
        ensure!(p7(&p14(a)).is_zero() && p14(&p7(a)).is_zero(), "2-form projectors not complementary on {a}");
        ensure!(&p7(a) + &p14(a) == *a, "2-form projectors incomplete on {a}");
        ensure!(p7(a) == oracle7.project(a), "eigen formula disagrees with the span projector on {a}");
        for b in &basis2 {
            ensure!(p7(a).inner(&p14(b)).unwrap().is_zero(), "Λ²₇ not orthogonal to Λ²₁₄");
        }
    }
    let r7 = operator_matrix(7, 2, 2, p7).rank(0.0);
    let r14 = operator_matrix(7, 2, 2, p14).rank(0.0);
    ensure!((r7, r14) == (7, 14), "2-form ranks ({r7}, {r14})");

    let parts = |a: &Form<Q>| g.project_3form(a);
    let basis3: Vec<Form<Q>> = MultiIndex::all(7, 3).iter().map(|k| Form::basis(7, &k.indices())).collect();
    for a in &basis3 {
        let (a1, a7, a27) = parts(a);
        ensure!(&(&a1 + &a7) + &a27 == *a, "3-form projectors incomplete on {a}");
        ensure!(a27 == twenty_seven_part(&g, a), "Λ³₂₇ disagrees with the span oracle on {a}");
        for (i, x) in [&a1, &a7, &a27].into_iter().enumerate() {
            let again = parts(x);
            let pieces = [again.0, again.1, again.2];
            for (j, y) in pieces.iter().enumerate() {
                ensure!(if i == j { y == x } else { y.is_zero() }, "3-form projector {i}/{j} on {a}");
            }
        }
        for b in &basis3 {
            let (_, b7, b27) = parts(b);
            ensure!(
                a1.inner(&b7).unwrap().is_zero() && a1.inner(&b27).unwrap().is_zero() && a7.inner(&b27).unwrap().is_zero(),
                "3-form components not orthogonal"
            );
        }
    }
    let ranks = (
        operator_matrix(7, 3, 3, |a| parts(a).0).rank(0.0),
        operator_matrix(7, 3, 3, |a| parts(a).1).rank(0.0),
        operator_matrix(7, 3, 3, |a| parts(a).2).rank(0.0),
    );
    ensure!(ranks == (1, 7, 27), "3-form ranks {ranks:?}");
    Ok("ranks (7, 14) and (1, 7, 27); 21 basis 2-forms match the span projector".into())
}

fn g2_round_trip() -> Verdict {
    let g = G2Structure::<Q>::standard();
    let mut r = rng(4);
    for case in 0..200 {
        let t = random_g2_torsion(&mut r, &g);
        let (dphi, dstar) = g2_structure_equations(&g, &t);
        ensure!(g.assemble(&t) == (dphi.clone(), dstar.clone()), "case {case}: assemble disagrees");
        let back = g.extract_torsion(&dphi, &dstar).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(back == t, "case {case}: torsion not recovered");
    }
    Ok("200 random tuples recovered exactly".into())
}

fn j_on_3form(s: &SU3Structure<Q>, a: &Form<Q>) -> Form<Q> {
    let m = s.j().matrix();
    let mut out = Form::zero(6, 3);
    for key in MultiIndex::all(6, 3) {
        let idx = key.indices();
        let mut c = Q::zero();
        for u in 1..=6 {
            for v in 1..=6 {
                for w in 1..=6 {
                    let f = m[(u - 1, idx[0] - 1)].clone() * m[(v - 1, idx[1] - 1)].clone() * m[(w - 1, idx[2] - 1)].clone();
                    if !f.is_zero() {
                        c += f * a.component(&[u, v, w]);
                    }
                }
            }
        }
        out = out + Form::basis(6, &idx).scale(&-c);
    }
    out
}

fn su3_normalization() -> Verdict {
    let s = SU3Structure::<Q>::standard();
    let (w, p, m) = (s.omega(), s.psi_plus(), s.psi_minus());
    let jm = s.j().matrix();
    for i in 1..=6 {
        for j in 1..=6 {
            let v: Q = (1..=6).fold(Q::zero(), |acc, k| acc + jm[(k - 1, j - 1)].clone() * w.component(&[i, k]));
            ensure!(v == if i == j { Q::one() } else { Q::zero() }, "ω(e{i}, Je{j}) ≠ δ");
        }
    }
    ensure!(wedge_oracle(w, p).is_zero() && wedge_oracle(w, m).is_zero(), "ω∧ψ± ≠ 0");
    let vol12 = volume(6).scale(&Q::from_i64(12));
    ensure!(wedge_oracle(p, m).scale(&Q::from_i64(3)) == vol12, "3ψ+∧ψ− ≠ 12 vol");
    ensure!(wedge_oracle(&wedge_oracle(w, w), w).scale(&Q::from_i64(2)) == vol12, "2ω³ ≠ 12 vol");
    ensure!(w.hodge() == wedge_oracle(w, w).scale(&q(1, 2)), "*ω ≠ ω²/2");
    ensure!(p.hodge() == *m, "*ψ+ ≠ ψ−");
    ensure!(j_on_3form(&s, p) == -m.clone(), "Jψ+ ≠ −ψ−");
    ensure!(s.normalization_residuals().iter().all(|(_, r)| r.is_zero()), "library residuals nonzero");
    let mut r = rng(5);
    for case in 0..200 {
        let t = random_su3_torsion(&mut r, &s);
        let (dw, dp, dm) = su3_structure_equations(&s, &t);
        ensure!(s.assemble(&t) == (dw.clone(), dp.clone(), dm.clone()), "case {case}: assemble disagrees");
        let back = s.extract_torsion(&dw, &dp, &dm).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(back == t, "case {case}: torsion not recovered");
    }
    Ok("six identities exact; 200 random tuples recovered exactly".into())
}

fn nijenhuis_identities() -> Verdict {
    let s = SU3Structure::<Q>::standard();
    let mut r = rng(6);
    for (name, sc) in [("nearly Kähler", frames::nearly_kahler::<Q>()), ("torus", frames::torus(6))] {
        let rep = check_three_zero_nijenhuis(&s, &sc).map_err(|e| e.to_string())?;
        ensure!(rep.residual.is_zero(), "{name}: (3,0) residual {}", rep.residual);
        let mut thetas: Vec<Form<Q>> = (1..=6).map(|i| Form::e(6, i)).collect();
        thetas.extend((0..50).map(|_| random_form(&mut r, 6, 1, 0.7)));
        for theta in &thetas {
            let rep = check_two_zero_identity(&s, &sc, theta).map_err(|e| e.to_string())?;
            ensure!(rep.residual.is_zero(), "{name}: (2,0) residual {} at θ = {theta}", rep.residual);
        }
    }
    Ok("residuals 0 on both frames; (2,0) identity on 56 θ per frame".into())
}

fn conformal_covariance() -> Verdict {
    let g = G2Structure::<Q>::standard();
    let s = SU3Structure::<Q>::standard();
    let mut r = rng(7);
    for case in 0..100 {
        let scale = q(rand::Rng::gen_range(&mut r, 1..=5), rand::Rng::gen_range(&mut r, 1..=4));
        let df7 = random_form(&mut r, 7, 1, 0.6);
        let df6 = random_form(&mut r, 6, 1, 0.6);

        let mut t = random_g2_torsion(&mut r, &g);
        if case % 3 == 0 {
            t.tau2 = Form::zero(7, 2);
        }
        if case % 5 == 0 {
            t.tau3 = Form::zero(7, 3);
        }
        let (dphi, dstar) = g2_structure_equations(&g, &t);
        let c = PointwiseConformalData::new(scale.clone(), df7.clone()).unwrap();
        let tt = conformal_transform_g2(&g, &dphi, &dstar, &c)
            .extract_torsion(&g)
            .map_err(|e| format!("case {case}: {e}"))?;
        ensure!(tt.tau1 == &t.tau1 + &df7, "case {case}: τ1 did not shift by df");
        ensure!(tt.tau0 == t.tau0.clone() / scale.clone(), "case {case}: τ0 did not scale");
        ensure!(
            (tt.tau2.is_zero(), tt.tau3.is_zero()) == (t.tau2.is_zero(), t.tau3.is_zero()),
            "case {case}: X2/X3 pattern changed"
        );

        let mut u = random_su3_torsion(&mut r, &s);
        if case % 3 == 0 {
            u.sigma2_plus = Form::zero(6, 2);
            u.sigma2_minus = Form::zero(6, 2);
        }
        if case % 5 == 0 {
            u.sigma3 = Form::zero(6, 3);
        }
        let (dw, dp, dm) = su3_structure_equations(&s, &u);
        let c = PointwiseConformalData::new(scale, df6.clone()).unwrap();
        let uu = conformal_transform_su3(&s, (&dw, &dp, &dm), &c)
            .extract_torsion(&s)
            .map_err(|e| format!("case {case}: {e}"))?;
        ensure!(uu.sigma1_plus == &u.sigma1_plus + &df6, "case {case}: σ1+ did not shift by df");
        ensure!(uu.sigma1_minus == u.sigma1_minus, "case {case}: σ1− changed");
        let w2 = |x: &torsionlab::su3::TorsionSU3<Q>| x.sigma2_plus.is_zero() && x.sigma2_minus.is_zero();
        ensure!(
            (w2(&uu), uu.sigma3.is_zero()) == (w2(&u), u.sigma3.is_zero()),
            "case {case}: W2/W3 pattern changed"
        );
    }
    Ok("100 G2 and 100 SU(3) datasets exact".into())
}

fn gauge_normalization() -> Verdict {
    let mut lambdas = Vec::new();
    for (a, b) in [(2, 0), (0, 1), (3, 4)] {
        let (sc, pp, pm) = frames::scaled_nearly_kahler(Q::from_i64(a), Q::from_i64(b)).ok_or("modulus not exact")?;
        let s = SU3Structure::new(torsionlab::su3::standard_omega(), pp, pm, 0.0).map_err(|e| e.to_string())?;
        let d = (
            sc.d(s.omega()).unwrap(),
            sc.d(s.psi_plus()).unwrap(),
            sc.d(s.psi_minus()).unwrap(),
        );
        let t = s.extract_torsion(&d.0, &d.1, &d.2).map_err(|e| e.to_string())?;
        ensure!(
            (t.sigma0_plus.clone(), t.sigma0_minus.clone()) == (Q::from_i64(a), Q::from_i64(b)),
            "({a}, {b}): frame has σ0 = ({}, {})",
            t.sigma0_plus,
            t.sigma0_minus
        );
        let gauge = ConformalGauge::constant(&t).map_err(|e| e.to_string())?;
        let n = gauge_normalize(&s, (&d.0, &d.1, &d.2), &t, &gauge);
        let check = n.check(0.0).map_err(|e| format!("({a}, {b}): {e}"))?;
        ensure!(check.passes(0.0), "({a}, {b}): {check:?}");
        ensure!(
            n.torsion.sigma0_plus == Q::one() && n.torsion.sigma0_minus.is_zero(),
            "({a}, {b}): σ̃0 ≠ (1, 0)"
        );
        lambdas.push(gauge.lambda.to_string());
    }
    Ok(format!("structure equations and invariants exact; Λ = {}", lambdas.join(", ")))
}

fn dichotomy() -> Verdict {
    let cases = [
        ("synthetic-x1x4", Check::LeeIdentitiesG2, "combination_vanishes"),
        ("synthetic-w1w4", Check::LeeIdentitiesSu3, "lee_pair_residual"),
    ];
    for (name, check, key) in cases {
        let doc = catalog::find(name).map_err(|e| e.to_string())?;
        let a = report::run(&doc, Command::Verify(check), &Settings::default());
        let b = report::run(&doc, Command::Verify(check), &Settings::default());
        ensure!(a.report == b.report, "{name}: report not deterministic");
        ensure!(a.exit_code == 0, "{name}: exit {}", a.exit_code);
        ensure!(a.report["status"] == "dichotomy-exhibited", "{name}: status {}", a.report["status"]);
        let failed = match key {
            "combination_vanishes" => a.report[key] == false,
            _ => a.report[key]["num"] != 0,
        };
        ensure!(failed, "{name}: expected failure of {key} not shown");
    }
    Ok("X1+X4 and W1+W4 frames exhibit the expected identity failures".into())
}

fn loop_sign() -> Verdict {
    let rep = verify_loop(&exponential_loop(256), 1e-6).map_err(|e| e.to_string())?;
    ensure!(rep.product_spread <= 1e-6 && rep.sign_constant, "{rep:?}");
    match verify_loop(&sign_changing_loop(256), 1e-6) {
        Err(Error::LoopEquationViolated(_)) => {}
        other => return Err(format!("counterexample not rejected: {other:?}")),
    }
    Ok(format!("spread {:.1e}; counterexample rejected", rep.product_spread))
}

fn curvature(suite_start: Instant) -> Verdict {
    let round = curvature_of(&frames::su2(Q::one()), 0.0).map_err(|e| e.to_string())?;
    let e = einstein_check(&round, 0.0);
    ensure!(e.is_einstein && e.sign == ScalarSign::Positive, "round su(2): {e:?}");
    ensure!(round.bianchi_residual().is_zero(), "round su(2): Bianchi");

    let nk_exact = curvature_of(&frames::nearly_kahler::<Q>(), 0.0).map_err(|e| e.to_string())?;
    ensure!(nk_exact.bianchi_residual().is_zero(), "nearly Kähler: Bianchi residual {}", nk_exact.bianchi_residual());
    let sc = frames::nearly_kahler::<Q>().map(|v| v.to_f64());
    let nk = curvature_of(&sc, 1e-9).map_err(|e| e.to_string())?;
    let e = einstein_check(&nk, 1e-9);
    ensure!(e.residual <= 1e-9 && e.sign == ScalarSign::Positive, "nearly Kähler: {e:?}");
    let s = SU3Structure::<f64>::standard();
    let split = curvature_split(&nk, HolonomyModel::Su3(&s));
    ensure!(split.ricci_contraction_residual <= 1e-9, "Ricci contraction {:e}", split.ricci_contraction_residual);

    let mut r = rng(11);
    for _ in 0..10 {
        let diag: Vec<Q> = (0..5).map(|_| random_rational(&mut r)).collect();
        let entries: Vec<_> = diag.iter().enumerate().map(|(i, a)| (1, i + 2, i + 2, a.clone())).collect();
        let sc = StructureConstants::from_brackets(6, &entries).unwrap();
        let c = curvature_of(&sc, 0.0).map_err(|e| e.to_string())?;
        ensure!(c.bianchi_residual().is_zero(), "solvable frame: Bianchi residual {}", c.bianchi_residual());
    }
    let secs = suite_start.elapsed().as_secs_f64();
    ensure!(secs < 60.0, "suite took {secs:.1} s (limit 60 s)");
    Ok(format!(
        "s(su2) = {}, s(nearly Kähler) = {}, Einstein residual {:.1e}, Ricci contraction {:.1e}; suite {secs:.1} s",
        round.scalar, nk.scalar, e.residual, split.ricci_contraction_residual
    ))
}

fn main() {
    let suite_start = Instant::now();
    let criteria: Vec<Criterion> = vec![
        ("exterior kernel identities", Box::new(exterior_kernel)),
        ("G2 nondegeneracy and induced metric", Box::new(g2_nondegeneracy)),
        ("G2 projections", Box::new(g2_projections)),
        ("G2 torsion round trip", Box::new(g2_round_trip)),
        ("SU(3) normalization and torsion round trip", Box::new(su3_normalization)),
        ("Nijenhuis (3,0) and (2,0) identities", Box::new(nijenhuis_identities)),
        ("conformal covariance", Box::new(conformal_covariance)),
        ("phase and modulus gauge", Box::new(gauge_normalization)),
        ("invariant-frame dichotomy", Box::new(dichotomy)),
        ("discrete loop sign", Box::new(loop_sign)),
        ("curvature", Box::new(move || curvature(suite_start))),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let verdict = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
