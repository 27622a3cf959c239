//! Validation, classification and identity checks on input documents,
//! producing deterministic JSON reports.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::conformal::{
    conformal_transform_g2, conformal_transform_su3, gauge_normalize, verify_loop, ConformalGauge, LoopSample,
};
use crate::curvature::{curvature_of, curvature_split, einstein_check, HolonomyModel};
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::g2::{classify_g2, metric_from_phi, standard_phi_form, verify_x1x4_identities, G2Structure, TorsionG2};
use crate::io::{form_json, scalar_json, Document, FormDoc, Kind, FORMAT_VERSION};
use crate::lie::{nijenhuis, StructureConstants};
use crate::scalar::{Backend, Rational, Scalar, DEFAULT_TOL};
use crate::su3::{
    check_three_zero_nijenhuis, check_two_zero_identity, check_w1w4_consequences, classify_su3, standard_omega,
    standard_psi_minus, standard_psi_plus, GrayHervellaClass, SU3Structure, TorsionSU3,
};

/// Default tolerance of the loop check, whose data are sampled reals.
pub const LOOP_TOL: f64 = 1e-6;

/// Identity checks selectable with `verify --check`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// `dτ1 = 0` and `dτ0 + τ0τ1 = 0` for G2 torsion in X1+X4.
    LeeIdentitiesG2,
    /// `(dω)^{3,0}` against the skew part of the Nijenhuis tensor.
    SkewNijenhuis,
    /// `(dθ)^{2,0} + J_(1)(dθ')^{2,0} = ⅔ θ' ⌟ (dω)^{3,0}`.
    TwoZeroIdentity,
    /// Second-derivative consequences for SU(3) torsion in W1+W4.
    LeeIdentitiesSu3,
    /// Einstein check and the scalar/Ricci-free curvature split.
    CurvatureSplit,
    /// `dφ + φα = 0` along a sampled loop.
    LoopSign,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::LeeIdentitiesG2,
        Check::SkewNijenhuis,
        Check::TwoZeroIdentity,
        Check::LeeIdentitiesSu3,
        Check::CurvatureSplit,
        Check::LoopSign,
    ];

    /// Name accepted on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Check::LeeIdentitiesG2 => "eq18",
            Check::SkewNijenhuis => "eq23",
            Check::TwoZeroIdentity => "lemma2",
            Check::LeeIdentitiesSu3 => "w1w4",
            Check::CurvatureSplit => "eq22",
            Check::LoopSign => "lemma1",
        }
    }

    pub fn alias(self) -> &'static str {
        match self {
            Check::LeeIdentitiesG2 => "x1x4",
            Check::SkewNijenhuis => "skew-nijenhuis",
            Check::TwoZeroIdentity => "two-zero",
            Check::LeeIdentitiesSu3 => "lee-su3",
            Check::CurvatureSplit => "curvature",
            Check::LoopSign => "loop",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s || c.alias() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Check::ALL.iter().map(|c| c.name()).collect();
                format!("unknown check `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Classify,
    Verify(Check),
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Classify => "classify",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    pub backend: Backend,
    /// Overrides the default tolerance of the command.
    pub tol: Option<f64>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            backend: Backend::Rational,
            tol: None,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_EXTRACTION: i32 = 2;
pub const EXIT_SCHEMA: i32 = 3;

/// Exit status associated with an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Schema(_) => EXIT_SCHEMA,
        Error::NotG2StructureEquations { .. } | Error::NotSu3StructureEquations { .. } | Error::FrameInconsistent(_) => {
            EXIT_EXTRACTION
        }
        _ => EXIT_VALIDATION,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::IncompatibleDimension { .. } => "incompatible-dimension",
        Error::DegreeMismatch { .. } => "degree-mismatch",
        Error::InvalidIndex { .. } => "invalid-index",
        Error::UnsupportedDimension { .. } => "unsupported-dimension",
        Error::NotAlmostComplex(_) => "not-almost-complex",
        Error::Degenerate3Form => "degenerate-3-form",
        Error::NotG2Form(_) => "not-g2-form",
        Error::NotSu3Structure(_) => "not-su3-structure",
        Error::NotG2StructureEquations { .. } => "not-g2-structure-equations",
        Error::NotSu3StructureEquations { .. } => "not-su3-structure-equations",
        Error::JacobiViolation { .. } => "jacobi-violation",
        Error::FrameInconsistent(_) => "frame-inconsistent",
        Error::GaugeUndefined => "gauge-undefined",
        Error::InexactRoot(_) => "inexact-root",
        Error::Refused(_) => "refused",
        Error::LoopEquationViolated(_) => "loop-equation-violated",
        Error::MalformedLoop(_) => "malformed-loop",
        Error::Singular => "singular",
        Error::Schema(_) => "schema",
    }
}

/// A finished report and the process exit status it implies.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

fn header(doc: Option<&Document>, command: Command, settings: &Settings, tol: f64) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("format".into(), json!(FORMAT_VERSION));
    m.insert("command".into(), json!(command.name()));
    if let Command::Verify(c) = command {
        m.insert("check".into(), json!(c.name()));
    }
    m.insert("backend".into(), json!(settings.backend.to_string()));
    m.insert("tolerance".into(), json!(crate::io::format_real(tol)));
    if let Some(d) = doc {
        m.insert(
            "input".into(),
            json!({
                "name": d.name,
                "kind": d.kind.as_str(),
            }),
        );
    }
    m
}

fn default_tol(doc: &Document, settings: &Settings) -> f64 {
    settings.tol.unwrap_or(if doc.kind == Kind::Loop { LOOP_TOL } else { DEFAULT_TOL })
}

/// Report for a document that could not be read.
pub fn schema_failure(command: Command, settings: &Settings, e: &Error) -> Outcome {
    let mut m = header(None, command, settings, settings.tol.unwrap_or(DEFAULT_TOL));
    finish_error(&mut m, e);
    Outcome {
        exit_code: exit_code(e),
        report: Value::Object(m),
    }
}

fn finish_error(m: &mut Map<String, Value>, e: &Error) {
    m.insert("status".into(), json!("error"));
    m.insert("error".into(), json!({"kind": error_kind(e), "message": e.to_string()}));
    m.insert("exit_code".into(), json!(exit_code(e)));
}

/// Runs a command on a document.
pub fn run(doc: &Document, command: Command, settings: &Settings) -> Outcome {
    let tol = default_tol(doc, settings);
    let mut m = header(Some(doc), command, settings, tol);
    let body = match settings.backend {
        Backend::Rational => run_with::<Rational>(doc, command, tol),
        Backend::Real => run_with::<f64>(doc, command, tol),
    };
    let exit = match body {
        Ok((fields, code)) => {
            m.extend(fields);
            if !m.contains_key("status") {
                m.insert("status".into(), json!(if code == EXIT_OK { "ok" } else { "failed" }));
            }
            m.insert("exit_code".into(), json!(code));
            code
        }
        Err(e) => {
            finish_error(&mut m, &e);
            exit_code(&e)
        }
    };
    Outcome {
        report: Value::Object(m),
        exit_code: exit,
    }
}

type Body = Result<(Map<String, Value>, i32)>;

fn run_with<S: Scalar>(doc: &Document, command: Command, tol: f64) -> Body {
    match command {
        Command::Validate => validate::<S>(doc, tol),
        Command::Classify => classify::<S>(&load::<S>(doc, tol)?, doc, tol),
        Command::Verify(check) => verify::<S>(&load::<S>(doc, tol)?, doc, check, tol),
    }
}

/// Parsed and validated input.
pub enum Model<S: Scalar> {
    G2 {
        structure: G2Structure<S>,
        frame: Option<StructureConstants<S>>,
        dphi: Form<S>,
        dstar_phi: Form<S>,
    },
    Su3 {
        structure: SU3Structure<S>,
        frame: Option<StructureConstants<S>>,
        differentials: [Form<S>; 3],
    },
    LieAlgebra {
        frame: StructureConstants<S>,
    },
    Loop {
        samples: Vec<LoopSample>,
    },
}

fn frame_of<S: Scalar>(doc: &Document, tol: f64) -> Result<Option<StructureConstants<S>>> {
    match &doc.lie_algebra {
        None => Ok(None),
        Some(la) => {
            let sc = la.to_structure_constants::<S>()?;
            sc.require_jacobi(tol)?;
            Ok(Some(sc))
        }
    }
}

fn form_or<S: Scalar>(doc: Option<&FormDoc>, dim: usize, degree: usize, default: impl FnOnce() -> Form<S>) -> Result<Form<S>> {
    let f = match doc {
        Some(d) => d.to_form()?,
        None => default(),
    };
    if f.dim() != dim || f.degree() != degree {
        return Err(Error::Schema(format!(
            "expected a {degree}-form in dimension {dim}, found a {}-form in dimension {}",
            f.degree(),
            f.dim()
        )));
    }
    Ok(f)
}

fn require_dim<S: Scalar>(frame: &Option<StructureConstants<S>>, dim: usize) -> Result<()> {
    match frame {
        Some(sc) if sc.dim() != dim => Err(Error::Schema(format!(
            "frame has dimension {}, the structure needs {dim}",
            sc.dim()
        ))),
        _ => Ok(()),
    }
}

/// Differentials from the frame, from the document, or both (cross-checked).
fn differential<S: Scalar>(
    name: &str,
    frame: &Option<StructureConstants<S>>,
    given: Option<&FormDoc>,
    base: &Form<S>,
    tol: f64,
) -> Result<Form<S>> {
    let degree = base.degree() + 1;
    let given = given.map(|d| form_or(Some(d), base.dim(), degree, || Form::zero(0, 0))).transpose()?;
    match (frame, given) {
        (Some(sc), None) => sc.d(base),
        (Some(sc), Some(g)) => {
            let computed = sc.d(base)?;
            let diff = (&computed - &g).max_abs();
            if diff.is_negligible(tol) {
                Ok(computed)
            } else {
                Err(Error::FrameInconsistent(format!(
                    "{name} given in the document differs from the frame value by {diff}"
                )))
            }
        }
        (None, Some(g)) => Ok(g),
        (None, None) => Err(Error::Schema(format!("{name} is required when no lie_algebra is given"))),
    }
}

pub fn load<S: Scalar>(doc: &Document, tol: f64) -> Result<Model<S>> {
    let forms = doc.forms.clone().unwrap_or_default();
    let diffs = doc.differentials.clone().unwrap_or_default();
    match doc.kind {
        Kind::G2 => {
            let frame = frame_of::<S>(doc, tol)?;
            require_dim(&frame, 7)?;
            let phi = form_or(forms.phi.as_ref(), 7, 3, standard_phi_form)?;
            let structure = G2Structure::new(phi, tol)?;
            let dphi = differential("dphi", &frame, diffs.dphi.as_ref(), structure.phi(), tol)?;
            let dstar_phi = differential("dstar_phi", &frame, diffs.dstar_phi.as_ref(), structure.star_phi(), tol)?;
            Ok(Model::G2 {
                structure,
                frame,
                dphi,
                dstar_phi,
            })
        }
        Kind::Su3 => {
            let frame = frame_of::<S>(doc, tol)?;
            require_dim(&frame, 6)?;
            let omega = form_or(forms.omega.as_ref(), 6, 2, standard_omega)?;
            let plus = form_or(forms.psi_plus.as_ref(), 6, 3, standard_psi_plus)?;
            let minus = form_or(forms.psi_minus.as_ref(), 6, 3, standard_psi_minus)?;
            let structure = SU3Structure::new(omega, plus, minus, tol)?;
            let differentials = [
                differential("domega", &frame, diffs.domega.as_ref(), structure.omega(), tol)?,
                differential("dpsi_plus", &frame, diffs.dpsi_plus.as_ref(), structure.psi_plus(), tol)?,
                differential("dpsi_minus", &frame, diffs.dpsi_minus.as_ref(), structure.psi_minus(), tol)?,
            ];
            Ok(Model::Su3 {
                structure,
                frame,
                differentials,
            })
        }
        Kind::LieAlgebra => match frame_of::<S>(doc, tol)? {
            Some(frame) => Ok(Model::LieAlgebra { frame }),
            None => Err(Error::Schema("a lie_algebra document needs a lie_algebra field".into())),
        },
        Kind::Loop => match &doc.loop_data {
            Some(l) => Ok(Model::Loop {
                samples: l.to_samples()?,
            }),
            None => Err(Error::Schema("a loop document needs a loop field".into())),
        },
    }
}

fn jacobi_json<S: Scalar>(sc: &StructureConstants<S>, tol: f64) -> (Value, bool) {
    let r = sc.jacobi_check(tol);
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|(k, f)| json!({"coframe": k, "d_d_e": form_json(f)}))
        .collect();
    (
        json!({
            "holds": r.holds,
            "max_residual": scalar_json(&r.max_residual),
            "violations": violations,
        }),
        r.holds,
    )
}

fn validate<S: Scalar>(doc: &Document, tol: f64) -> Body {
    let mut m = Map::new();
    if let Some(la) = &doc.lie_algebra {
        let sc = la.to_structure_constants::<S>()?;
        let (v, holds) = jacobi_json(&sc, tol);
        m.insert("jacobi".into(), v);
        if !holds {
            let e = Error::JacobiViolation {
                residual: sc.jacobi_check(tol).max_residual.to_f64(),
            };
            finish_error(&mut m, &e);
            return Ok((m, EXIT_VALIDATION));
        }
    }
    match load::<S>(doc, tol)? {
        Model::G2 { structure, frame, .. } => {
            let metric = metric_from_phi(structure.phi())?;
            m.insert(
                "g2".into(),
                json!({
                    "nondegeneracy_residual": scalar_json(&G2Structure::nondegeneracy_residual(structure.phi())?),
                    "orientation": metric.orientation,
                    "conformal_factor": crate::io::format_real(metric.conformal_factor),
                }),
            );
            m.insert("differentials_from".into(), json!(source(&frame)));
        }
        Model::Su3 { structure, frame, .. } => {
            let residuals: Map<String, Value> = structure
                .normalization_residuals()
                .into_iter()
                .map(|(k, v)| (k.to_string(), scalar_json(&v)))
                .collect();
            m.insert("su3".into(), json!({ "normalization_residuals": residuals }));
            m.insert("differentials_from".into(), json!(source(&frame)));
        }
        Model::LieAlgebra { frame } => {
            m.insert("dimension".into(), json!(frame.dim()));
        }
        Model::Loop { samples } => {
            m.insert("samples".into(), json!(samples.len()));
        }
    }
    m.insert("valid".into(), json!(true));
    Ok((m, EXIT_OK))
}

fn source<S: Scalar>(frame: &Option<StructureConstants<S>>) -> &'static str {
    if frame.is_some() {
        "lie_algebra"
    } else {
        "document"
    }
}

fn torsion_g2_json<S: Scalar>(t: &TorsionG2<S>) -> Value {
    let [n0, n1, n2, n3] = t.norms_sq();
    json!({
        "tau0": scalar_json(&t.tau0),
        "tau1": form_json(&t.tau1),
        "tau2": form_json(&t.tau2),
        "tau3": form_json(&t.tau3),
        "norms_sq": {
            "tau0": scalar_json(&n0),
            "tau1": scalar_json(&n1),
            "tau2": scalar_json(&n2),
            "tau3": scalar_json(&n3),
        },
    })
}

fn torsion_su3_json<S: Scalar>(t: &TorsionSU3<S>) -> Value {
    let sq = |v: &S| scalar_json(&(v.clone() * v.clone()));
    json!({
        "sigma0_plus": scalar_json(&t.sigma0_plus),
        "sigma0_minus": scalar_json(&t.sigma0_minus),
        "sigma1_plus": form_json(&t.sigma1_plus),
        "sigma1_minus": form_json(&t.sigma1_minus),
        "sigma2_plus": form_json(&t.sigma2_plus),
        "sigma2_minus": form_json(&t.sigma2_minus),
        "sigma3": form_json(&t.sigma3),
        "norms_sq": {
            "sigma0_plus": sq(&t.sigma0_plus),
            "sigma0_minus": sq(&t.sigma0_minus),
            "sigma1_plus": scalar_json(&t.sigma1_plus.norm_sq()),
            "sigma1_minus": scalar_json(&t.sigma1_minus.norm_sq()),
            "sigma2_plus": scalar_json(&t.sigma2_plus.norm_sq()),
            "sigma2_minus": scalar_json(&t.sigma2_minus.norm_sq()),
            "sigma3": scalar_json(&t.sigma3.norm_sq()),
        },
    })
}

fn su3_class_json(c: &GrayHervellaClass) -> Value {
    json!({
        "members": c.names(),
        "label": c.label(),
        "strict": c.strict,
        "w1_refinement": c.w1_refinement,
        "sigma1_minus_nonzero": c.sigma1_minus_nonzero,
    })
}

fn expected_json(doc: &Document, found: &[String]) -> Option<Value> {
    doc.expected_class.as_ref().map(|e| {
        let mut want = e.clone();
        want.sort();
        let mut got = found.to_vec();
        got.sort();
        json!({"members": e, "matches": want == got})
    })
}

fn max_of<S: Scalar>(forms: &[&Form<S>]) -> S {
    forms.iter().fold(S::zero(), |m, f| S::max_abs(m, &f.max_abs()))
}

fn curvature_summary<S: Scalar>(sc: &StructureConstants<S>, tol: f64) -> Result<Value> {
    let c = curvature_of(sc, tol)?;
    let e = einstein_check(&c, tol);
    Ok(json!({
        "scalar": scalar_json(&c.scalar),
        "sign": e.sign.as_str(),
        "einstein": e.is_einstein,
        "einstein_residual": scalar_json(&e.residual),
        "bianchi_residual": scalar_json(&c.bianchi_residual()),
    }))
}

fn classify<S: Scalar>(model: &Model<S>, doc: &Document, tol: f64) -> Body {
    let mut m = Map::new();
    match model {
        Model::G2 {
            structure,
            frame,
            dphi,
            dstar_phi,
        } => {
            let t = structure.extract_torsion(dphi, dstar_phi)?;
            let (rphi, rstar) = structure.assemble(&t);
            let class = classify_g2(&t, tol);
            m.insert("torsion".into(), torsion_g2_json(&t));
            m.insert(
                "class".into(),
                json!({"members": class.names(), "label": class.label(), "strict": class.strict}),
            );
            m.insert(
                "reconstruction_residual".into(),
                scalar_json(&max_of(&[&(&rphi - dphi), &(&rstar - dstar_phi)])),
            );
            if let Some(e) = expected_json(doc, &class.names()) {
                m.insert("expected_class".into(), e);
            }
            if let Some(c) = &doc.conformal {
                let data = c.to_data::<S>()?;
                let moved = conformal_transform_g2(structure, dphi, dstar_phi, &data);
                let tt = moved.extract_torsion(structure)?;
                let cc = classify_g2(&tt, tol);
                m.insert(
                    "conformal".into(),
                    json!({
                        "torsion": torsion_g2_json(&tt),
                        "class": {"members": cc.names(), "label": cc.label(), "strict": cc.strict},
                    }),
                );
            }
            if let Some(sc) = frame {
                m.insert("curvature".into(), curvature_summary(sc, tol)?);
            }
        }
        Model::Su3 {
            structure,
            frame,
            differentials: [dw, dp, dm],
        } => {
            let t = structure.extract_torsion(dw, dp, dm)?;
            let (rw, rp, rm) = structure.assemble(&t);
            let n = match frame {
                Some(sc) => Some(nijenhuis(sc, structure.j())?),
                None => None,
            };
            let class = classify_su3(structure, &t, n.as_ref(), tol)?;
            m.insert("torsion".into(), torsion_su3_json(&t));
            m.insert("class".into(), su3_class_json(&class));
            m.insert(
                "reconstruction_residual".into(),
                scalar_json(&max_of(&[&(&rw - dw), &(&rp - dp), &(&rm - dm)])),
            );
            if let Some(e) = expected_json(doc, &class.names()) {
                m.insert("expected_class".into(), e);
            }
            if let Some(c) = &doc.conformal {
                let data = c.to_data::<S>()?;
                let moved = conformal_transform_su3(structure, (dw, dp, dm), &data);
                let tt = moved.extract_torsion(structure)?;
                let cc = classify_su3(structure, &tt, None, tol)?;
                m.insert(
                    "conformal".into(),
                    json!({"torsion": torsion_su3_json(&tt), "class": su3_class_json(&cc)}),
                );
            }
            if let Some(sc) = frame {
                m.insert("curvature".into(), curvature_summary(sc, tol)?);
                if !t.sigma0_plus.is_negligible(tol) || !t.sigma0_minus.is_negligible(tol) {
                    m.insert("gauge".into(), gauge_json(structure, (dw, dp, dm), &t, tol));
                }
            }
        }
        Model::LieAlgebra { frame } => {
            m.insert("curvature".into(), curvature_summary(frame, tol)?);
        }
        Model::Loop { .. } => {
            return Err(Error::Refused("classification needs a g2 or su3 document".into()));
        }
    }
    Ok((m, EXIT_OK))
}

/// Gauge normalization of an invariant frame (`σ0±` constant).
fn gauge_json<S: Scalar>(
    s: &SU3Structure<S>,
    d: (&Form<S>, &Form<S>, &Form<S>),
    t: &TorsionSU3<S>,
    tol: f64,
) -> Value {
    let result = ConformalGauge::constant(t).and_then(|g| {
        let normalized = gauge_normalize(s, d, t, &g);
        let check = normalized.check(tol)?;
        Ok((g, normalized, check))
    });
    match result {
        Ok((g, n, check)) => json!({
            "lambda": scalar_json(&g.lambda),
            "torsion": torsion_su3_json(&n.torsion),
            "structure_equation_residual": scalar_json(&check.structure_equation_residual),
            "extraction_residual": scalar_json(&check.extraction_residual),
            "passes": check.passes(tol),
        }),
        Err(e) => json!({"unavailable": e.to_string()}),
    }
}

fn frame_or_constant<S: Scalar>(frame: &Option<StructureConstants<S>>, dim: usize) -> (StructureConstants<S>, &'static str) {
    match frame {
        Some(sc) => (sc.clone(), "lie_algebra"),
        None => (StructureConstants::abelian(dim), "constant-coefficient"),
    }
}

fn require_frame<S: Scalar>(frame: &Option<StructureConstants<S>>, check: Check) -> Result<&StructureConstants<S>> {
    frame
        .as_ref()
        .ok_or_else(|| Error::Refused(format!("check {check} needs a lie_algebra frame")))
}

fn pass_fail(ok: bool) -> (Value, i32) {
    if ok {
        (json!("pass"), EXIT_OK)
    } else {
        (json!("fail"), EXIT_EXTRACTION)
    }
}

fn verify<S: Scalar>(model: &Model<S>, doc: &Document, check: Check, tol: f64) -> Body {
    let mut m = Map::new();
    let wrong_kind = || Err(Error::Refused(format!("check {check} does not apply to a {} document", doc.kind.as_str())));
    let code = match (check, model) {
        (
            Check::LeeIdentitiesG2,
            Model::G2 {
                structure,
                frame,
                dphi,
                dstar_phi,
            },
        ) => {
            let (sc, from) = frame_or_constant(frame, 7);
            let r = verify_x1x4_identities(structure, dphi, dstar_phi, &sc)?;
            m.insert("frame".into(), json!(from));
            m.insert("torsion".into(), torsion_g2_json(&r.torsion));
            m.insert("class".into(), json!({"members": r.class.names(), "label": r.class.label()}));
            m.insert("d_tau1".into(), form_json(&r.d_tau1));
            m.insert("lee_combination".into(), form_json(&r.lee_combination));
            m.insert("lee_closed".into(), json!(r.lee_closed));
            m.insert("combination_vanishes".into(), json!(r.combination_vanishes));
            m.insert("second_derivative_residual".into(), scalar_json(&r.second_derivative_residual));
            m.insert("d_squared_phi".into(), scalar_json(&r.d_squared_phi));
            m.insert("status".into(), json!(r.status.as_str()));
            EXIT_OK
        }
        (Check::SkewNijenhuis, Model::Su3 { structure, frame, .. }) => {
            let sc = require_frame(frame, check)?;
            let r = check_three_zero_nijenhuis(structure, sc)?;
            m.insert("lhs".into(), form_json(&r.lhs));
            m.insert("nijenhuis_skew".into(), form_json(&r.nijenhuis_skew));
            m.insert("nijenhuis_rest_norm_sq".into(), scalar_json(&r.nijenhuis_rest_norm_sq));
            m.insert("residual".into(), scalar_json(&r.residual));
            let (status, code) = pass_fail(r.residual.is_negligible(tol));
            m.insert("status".into(), status);
            code
        }
        (Check::TwoZeroIdentity, Model::Su3 { structure, frame, .. }) => {
            let sc = require_frame(frame, check)?;
            let thetas: Vec<Form<S>> = match &doc.theta {
                Some(t) => vec![t.to_form()?],
                None => (1..=6).map(|i| Form::e(6, i)).collect(),
            };
            let mut cases = Vec::new();
            let mut worst = S::zero();
            for theta in &thetas {
                let r = check_two_zero_identity(structure, sc, theta)?;
                worst = S::max_abs(worst, &r.residual);
                cases.push(json!({
                    "theta": form_json(&r.theta),
                    "lhs": form_json(&r.lhs),
                    "rhs": form_json(&r.rhs),
                    "residual": scalar_json(&r.residual),
                }));
            }
            m.insert("cases".into(), Value::Array(cases));
            m.insert("residual".into(), scalar_json(&worst));
            let (status, code) = pass_fail(worst.is_negligible(tol));
            m.insert("status".into(), status);
            code
        }
        (
            Check::LeeIdentitiesSu3,
            Model::Su3 {
                structure,
                frame,
                differentials: [dw, dp, dm],
            },
        ) => {
            let (sc, from) = frame_or_constant(frame, 6);
            let r = check_w1w4_consequences(structure, (dw, dp, dm), &sc)?;
            m.insert("frame".into(), json!(from));
            m.insert("torsion".into(), torsion_su3_json(&r.torsion));
            m.insert("class".into(), su3_class_json(&r.class));
            m.insert("a".into(), form_json(&r.a));
            m.insert("b".into(), form_json(&r.b));
            m.insert("lee_pair_residual".into(), scalar_json(&r.lee_pair_residual));
            m.insert("d_sigma1_plus_residual".into(), scalar_json(&r.d_sigma1_plus_residual));
            m.insert("d_sigma1_minus_residual".into(), scalar_json(&r.d_sigma1_minus_residual));
            m.insert(
                "source_residuals".into(),
                Value::Array(r.source_residuals.iter().map(scalar_json).collect()),
            );
            m.insert("d_squared".into(), scalar_json(&r.d_squared));
            m.insert("status".into(), json!(r.status.as_str()));
            EXIT_OK
        }
        (Check::CurvatureSplit, Model::G2 { structure, frame, .. }) => {
            curvature_check(&mut m, require_frame(frame, check)?, HolonomyModel::G2(structure), tol)?
        }
        (Check::CurvatureSplit, Model::Su3 { structure, frame, .. }) => {
            curvature_check(&mut m, require_frame(frame, check)?, HolonomyModel::Su3(structure), tol)?
        }
        (Check::CurvatureSplit, Model::LieAlgebra { frame }) => {
            curvature_check(&mut m, frame, HolonomyModel::None, tol)?
        }
        (Check::LoopSign, Model::Loop { samples }) => {
            let r = verify_loop(samples, tol)?;
            m.insert("samples".into(), json!(r.samples));
            m.insert("product_spread".into(), json!(crate::io::format_real(r.product_spread)));
            m.insert("max_step_error".into(), json!(crate::io::format_real(r.max_step_error)));
            m.insert("closure".into(), json!(crate::io::format_real(r.closure)));
            m.insert("sign_constant".into(), json!(r.sign_constant));
            m.insert("status".into(), json!("pass"));
            EXIT_OK
        }
        _ => return wrong_kind(),
    };
    Ok((m, code))
}

fn curvature_check<S: Scalar>(
    m: &mut Map<String, Value>,
    sc: &StructureConstants<S>,
    holonomy: HolonomyModel<'_, S>,
    tol: f64,
) -> Result<i32> {
    let c = curvature_of(sc, tol)?;
    let e = einstein_check(&c, tol);
    let split = curvature_split(&c, holonomy);
    let bianchi = c.bianchi_residual();
    let holonomy: Map<String, Value> = split
        .holonomy_residuals
        .iter()
        .map(|(k, v)| (k.to_string(), scalar_json(v)))
        .collect();
    m.insert("ricci".into(), matrix_json(&c.ricci));
    m.insert("scalar".into(), scalar_json(&c.scalar));
    m.insert("sign".into(), json!(e.sign.as_str()));
    m.insert("einstein".into(), json!(e.is_einstein));
    m.insert("einstein_residual".into(), scalar_json(&e.residual));
    m.insert("bianchi_residual".into(), scalar_json(&bianchi));
    m.insert(
        "ricci_contraction_residual".into(),
        scalar_json(&split.ricci_contraction_residual),
    );
    m.insert("holonomy_residuals".into(), Value::Object(holonomy));
    let ok = bianchi.is_negligible(tol);
    let (status, code) = pass_fail(ok);
    m.insert("status".into(), status);
    Ok(code)
}

fn matrix_json<S: Scalar>(a: &crate::linalg::Matrix<S>) -> Value {
    Value::Array(
        (0..a.rows())
            .map(|i| Value::Array(a.row(i).iter().map(scalar_json).collect()))
            .collect(),
    )
}

/// Plain-text rendering: one `path: value` line per leaf, with scalars and
/// forms written inline.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, "", v);
    out
}

fn scalar_text(v: &Value) -> Option<String> {
    let o = v.as_object()?;
    if let Some(Value::String(s)) = o.get("value") {
        if o.len() == 1 {
            return Some(s.clone());
        }
    }
    let num = o.get("num")?;
    let den = o.get("den")?;
    if o.len() != 2 {
        return None;
    }
    let strip = |x: &Value| match x {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let (n, d) = (strip(num), strip(den));
    Some(if d == "1" { n } else { format!("{n}/{d}") })
}

fn form_text(v: &Value) -> Option<String> {
    let o = v.as_object()?;
    if o.len() != 3 || !o.contains_key("dimension") || !o.contains_key("degree") {
        return None;
    }
    let terms = o.get("terms")?.as_array()?;
    if terms.is_empty() {
        return Some("0".into());
    }
    let mut s = String::new();
    for (n, t) in terms.iter().enumerate() {
        let t = t.as_object()?;
        let idx: String = t
            .get("indices")?
            .as_array()?
            .iter()
            .map(|i| {
                let i = i.as_u64().unwrap_or(0);
                if i < 10 {
                    i.to_string()
                } else {
                    format!("({i})")
                }
            })
            .collect();
        let mut c = t.clone();
        c.remove("indices");
        let coeff = scalar_text(&Value::Object(c))?;
        let (neg, mag) = match coeff.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, coeff),
        };
        let label = if idx.is_empty() { String::new() } else { format!("e{idx}") };
        let body = match (mag.as_str(), label.is_empty()) {
            ("1", false) => label,
            (_, true) => mag,
            _ => format!("{mag}·{label}"),
        };
        match (n, neg) {
            (0, true) => s.push_str(&format!("-{body}")),
            (0, false) => s.push_str(&body),
            (_, true) => s.push_str(&format!(" - {body}")),
            (_, false) => s.push_str(&format!(" + {body}")),
        }
    }
    Some(s)
}

fn render_into(out: &mut String, path: &str, v: &Value) {
    let line = |out: &mut String, text: &str| {
        out.push_str(path);
        out.push_str(": ");
        out.push_str(text);
        out.push('\n');
    };
    if let Some(s) = scalar_text(v).or_else(|| form_text(v)) {
        return line(out, &s);
    }
    match v {
        Value::Object(o) => {
            for (k, child) in o {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                render_into(out, &p, child);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(plain).collect();
            line(out, &format!("[{}]", items.join(", ")));
        }
        Value::Array(a) => {
            let inline: Option<Vec<String>> = a.iter().map(scalar_text).collect();
            match inline {
                Some(items) if !a.is_empty() => line(out, &format!("[{}]", items.join(", "))),
                _ => {
                    for (i, child) in a.iter().enumerate() {
                        render_into(out, &format!("{path}[{i}]"), child);
                    }
                }
            }
        }
        other => line(out, &plain(other)),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
