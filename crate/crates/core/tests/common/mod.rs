//! Random data and independent reference implementations shared by the
//! integration tests.
#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use torsionlab::forms::MultiIndex;
use torsionlab::g2::{G2Structure, TorsionG2};
use torsionlab::span::FormSpan;
use torsionlab::su3::{SU3Structure, TorsionSU3};
use torsionlab::{Form, Rational, Scalar};

pub type Q = Rational;

pub fn q(n: i64, d: i64) -> Q {
    Q::from_ratio(n, d)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(r: &mut ChaCha8Rng) -> Q {
    q(r.gen_range(-6..=6), r.gen_range(1..=4))
}

pub fn random_nonzero(r: &mut ChaCha8Rng) -> Q {
    loop {
        let v = random_rational(r);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Sparse random form: each monomial is present with probability `density`.
pub fn random_form(r: &mut ChaCha8Rng, dim: usize, degree: usize, density: f64) -> Form<Q> {
    let mut f = Form::zero(dim, degree);
    for k in MultiIndex::all(dim, degree) {
        if r.gen_bool(density) {
            f = f + Form::basis(dim, &k.indices()).scale(&random_rational(r));
        }
    }
    f
}

/// Parity of a permutation of `0..n` by cycle decomposition.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Sign of the permutation sorting the concatenation `a ++ b`.
fn shuffle_sign(a: &[usize], b: &[usize]) -> i64 {
    let seq: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut sorted = seq.clone();
    sorted.sort();
    let perm: Vec<usize> = seq.iter().map(|x| sorted.iter().position(|y| y == x).unwrap()).collect();
    permutation_sign(&perm)
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(&items[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0]);
            s
        })
        .collect();
    with.extend(subsets(&items[1..], k));
    with
}

/// Wedge product by summing over shuffles, component by component.
pub fn wedge_oracle(a: &Form<Q>, b: &Form<Q>) -> Form<Q> {
    let (n, p, r) = (a.dim(), a.degree(), b.degree());
    let mut out = Form::zero(n, (p + r).min(n));
    if p + r > n {
        return out;
    }
    for k in MultiIndex::all(n, p + r) {
        let idx = k.indices();
        let mut c = Q::zero();
        for i in subsets(&idx, p) {
            let rest: Vec<usize> = idx.iter().copied().filter(|x| !i.contains(x)).collect();
            let s = shuffle_sign(&i, &rest);
            c += Q::from_i64(s) * a.component(&i) * b.component(&rest);
        }
        out = out + Form::basis(n, &idx).scale(&c);
    }
    out
}

/// Interior product `e_k ⌟ α` from `(e_k ⌟ α)(v…) = α(e_k, v…)`.
pub fn interior_oracle(k: usize, a: &Form<Q>) -> Form<Q> {
    let (n, p) = (a.dim(), a.degree());
    let mut out = Form::zero(n, p.saturating_sub(1));
    if p == 0 {
        return out;
    }
    for key in MultiIndex::all(n, p - 1) {
        let idx = key.indices();
        if idx.contains(&k) {
            continue;
        }
        let mut full = vec![k];
        full.extend(&idx);
        out = out + Form::basis(n, &idx).scale(&a.component(&full));
    }
    out
}

pub fn volume(n: usize) -> Form<Q> {
    Form::basis(n, &(1..=n).collect::<Vec<_>>())
}

/// Λ²₁₄ part of a 2-form: remove the projection onto `span{e_i ⌟ φ}`.
pub fn fourteen_part(g: &G2Structure<Q>, a: &Form<Q>) -> Form<Q> {
    let seven: Vec<_> = (1..=7).map(|i| interior_oracle(i, g.phi())).collect();
    let span = FormSpan::new(7, 2, &seven, 0.0).unwrap();
    a - &span.project(a)
}

/// Λ³₂₇ part of a 3-form: remove the projections onto `φ` and
/// `span{e_i ⌟ *φ}`.
pub fn twenty_seven_part(g: &G2Structure<Q>, a: &Form<Q>) -> Form<Q> {
    let mut gens: Vec<_> = (1..=7).map(|i| interior_oracle(i, g.star_phi())).collect();
    gens.push(g.phi().clone());
    let span = FormSpan::new(7, 3, &gens, 0.0).unwrap();
    a - &span.project(a)
}

pub fn random_g2_torsion(r: &mut ChaCha8Rng, g: &G2Structure<Q>) -> TorsionG2<Q> {
    TorsionG2 {
        tau0: random_rational(r),
        tau1: random_form(r, 7, 1, 0.6),
        tau2: fourteen_part(g, &random_form(r, 7, 2, 0.4)),
        tau3: twenty_seven_part(g, &random_form(r, 7, 3, 0.3)),
    }
}

/// `(dφ, d*φ)` from torsion, written out independently of the library.
pub fn g2_structure_equations(g: &G2Structure<Q>, t: &TorsionG2<Q>) -> (Form<Q>, Form<Q>) {
    let dphi = g.star_phi().scale(&t.tau0)
        + wedge_oracle(&t.tau1, g.phi()).scale(&Q::from_i64(3))
        + t.tau3.hodge();
    let dstar = wedge_oracle(&t.tau1, g.star_phi()).scale(&Q::from_i64(4)) + wedge_oracle(&t.tau2, g.phi());
    (dphi, dstar)
}

/// `J` acting on a 2-form as `(Ja)(X, Y) = a(JX, JY)` via the matrix of `J`.
pub fn j_on_2form(s: &SU3Structure<Q>, a: &Form<Q>) -> Form<Q> {
    let m = s.j().matrix();
    let mut out = Form::zero(6, 2);
    for key in MultiIndex::all(6, 2) {
        let idx = key.indices();
        let (x, y) = (idx[0], idx[1]);
        let mut c = Q::zero();
        for u in 1..=6 {
            for v in 1..=6 {
                let w = m[(u - 1, x - 1)].clone() * m[(v - 1, y - 1)].clone();
                if !w.is_zero() {
                    c += w * a.component(&[u, v]);
                }
            }
        }
        out = out + Form::basis(6, &idx).scale(&c);
    }
    out
}

/// Primitive (1,1) part of a 2-form.
pub fn primitive_11(s: &SU3Structure<Q>, a: &Form<Q>) -> Form<Q> {
    let half = q(1, 2);
    let p11 = (a + &j_on_2form(s, a)).scale(&half);
    let tr = p11.inner(s.omega()).unwrap() / Q::from_i64(3);
    &p11 - &s.omega().scale(&tr)
}

/// Part of a 3-form orthogonal to `Λ¹ ∧ ω` and `span{ψ+, ψ−}`.
pub fn primitive_21(s: &SU3Structure<Q>, a: &Form<Q>) -> Form<Q> {
    let mut gens: Vec<_> = (1..=6).map(|i| wedge_oracle(&Form::e(6, i), s.omega())).collect();
    gens.push(s.psi_plus().clone());
    gens.push(s.psi_minus().clone());
    let span = FormSpan::new(6, 3, &gens, 0.0).unwrap();
    a - &span.project(a)
}

pub fn random_su3_torsion(r: &mut ChaCha8Rng, s: &SU3Structure<Q>) -> TorsionSU3<Q> {
    TorsionSU3 {
        sigma0_plus: random_rational(r),
        sigma0_minus: random_rational(r),
        sigma1_plus: random_form(r, 6, 1, 0.6),
        sigma1_minus: random_form(r, 6, 1, 0.6),
        sigma2_plus: primitive_11(s, &random_form(r, 6, 2, 0.4)),
        sigma2_minus: primitive_11(s, &random_form(r, 6, 2, 0.4)),
        sigma3: primitive_21(s, &random_form(r, 6, 3, 0.3)),
    }
}

/// `(dω, dψ+, dψ−)` from torsion, written out independently of the library.
pub fn su3_structure_equations(s: &SU3Structure<Q>, t: &TorsionSU3<Q>) -> (Form<Q>, Form<Q>, Form<Q>) {
    let (w, p, m) = (s.omega(), s.psi_plus(), s.psi_minus());
    let w2 = wedge_oracle(w, w);
    let (two, three) = (Q::from_i64(2), Q::from_i64(3));
    let dw = (p.scale(&t.sigma0_plus) - m.scale(&t.sigma0_minus)).scale(&three)
        + wedge_oracle(&t.sigma1_plus, w).scale(&two)
        + t.sigma3.clone();
    let dp = w2.scale(&(-two.clone() * t.sigma0_minus.clone()))
        + wedge_oracle(&t.sigma1_plus, p).scale(&three)
        - wedge_oracle(&t.sigma1_minus, m)
        + wedge_oracle(&t.sigma2_plus, w);
    let dm = w2.scale(&(-two * t.sigma0_plus.clone()))
        + wedge_oracle(&t.sigma1_plus, m).scale(&three)
        + wedge_oracle(&t.sigma1_minus, p)
        + wedge_oracle(&t.sigma2_minus, w);
    (dw, dp, dm)
}

