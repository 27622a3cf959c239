//! Built-in example documents and user catalogs.
//!
//! Entries are plain [`Document`]s with exact coefficients, so they can be
//! printed, edited and fed back to the tool. A directory named by
//! `TORSIONLAB_CATALOG_DIR` adds further `*.json` documents.

use std::path::Path;

use crate::conformal::{exponential_loop, sign_changing_loop};
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::frames;
use crate::g2::{standard_phi_form, G2Structure, TorsionG2};
use crate::io::{DifferentialsDoc, Document, FormDoc, FormsDoc, Kind, LieAlgebraDoc, LoopDoc};
use crate::lie::StructureConstants;
use crate::scalar::Rational;
use crate::su3::{standard_omega, standard_psi_minus, standard_psi_plus, SU3Structure, TorsionSU3};

pub const CATALOG_DIR_VAR: &str = "TORSIONLAB_CATALOG_DIR";

/// Prefix selecting a catalog entry instead of a file path.
pub const CATALOG_PREFIX: &str = "catalog:";

/// Number of samples in the built-in loops.
pub const LOOP_SAMPLES: usize = 256;

type Q = Rational;

fn q(v: i64) -> Q {
    <Q as crate::Scalar>::from_i64(v)
}

fn su3_frame(name: &str, sc: &StructureConstants<Q>, expected: &[&str], notes: &str) -> Document {
    let mut d = Document::new(Kind::Su3, name);
    d.lie_algebra = Some(LieAlgebraDoc::from_structure_constants(sc));
    d.forms = Some(FormsDoc {
        omega: Some(FormDoc::from_form(&standard_omega::<Q>())),
        psi_plus: Some(FormDoc::from_form(&standard_psi_plus::<Q>())),
        psi_minus: Some(FormDoc::from_form(&standard_psi_minus::<Q>())),
        ..FormsDoc::default()
    });
    d.expected_class = Some(expected.iter().map(|s| s.to_string()).collect());
    d.notes = Some(notes.into());
    d
}

fn g2_frame(name: &str, sc: &StructureConstants<Q>, expected: &[&str], notes: &str) -> Document {
    let mut d = Document::new(Kind::G2, name);
    d.lie_algebra = Some(LieAlgebraDoc::from_structure_constants(sc));
    d.forms = Some(FormsDoc {
        phi: Some(FormDoc::from_form(&standard_phi_form::<Q>())),
        ..FormsDoc::default()
    });
    d.expected_class = Some(expected.iter().map(|s| s.to_string()).collect());
    d.notes = Some(notes.into());
    d
}

fn g2_pointwise(name: &str, t: &TorsionG2<Q>, expected: &[&str], notes: &str) -> Document {
    let (dphi, dstar) = G2Structure::<Q>::standard().assemble(t);
    let mut d = g2_frame(name, &StructureConstants::abelian(7), expected, notes);
    d.lie_algebra = None;
    d.differentials = Some(DifferentialsDoc {
        dphi: Some(FormDoc::from_form(&dphi)),
        dstar_phi: Some(FormDoc::from_form(&dstar)),
        ..DifferentialsDoc::default()
    });
    d
}

fn su3_pointwise(name: &str, t: &TorsionSU3<Q>, expected: &[&str], notes: &str) -> Document {
    let (dw, dp, dm) = SU3Structure::<Q>::standard().assemble(t);
    let mut d = su3_frame(name, &StructureConstants::abelian(6), expected, notes);
    d.lie_algebra = None;
    d.differentials = Some(DifferentialsDoc {
        domega: Some(FormDoc::from_form(&dw)),
        dpsi_plus: Some(FormDoc::from_form(&dp)),
        dpsi_minus: Some(FormDoc::from_form(&dm)),
        ..DifferentialsDoc::default()
    });
    d
}

fn lie_algebra(name: &str, sc: &StructureConstants<Q>, notes: &str) -> Document {
    let mut d = Document::new(Kind::LieAlgebra, name);
    d.lie_algebra = Some(LieAlgebraDoc::from_structure_constants(sc));
    d.notes = Some(notes.into());
    d
}

fn loop_doc(name: &str, samples: &[crate::conformal::LoopSample], notes: &str) -> Document {
    let mut d = Document::new(Kind::Loop, name);
    d.loop_data = Some(LoopDoc::from_samples(samples));
    d.notes = Some(notes.into());
    d
}

/// The built-in entries, in listing order.
pub fn builtin() -> Vec<Document> {
    let scaled = frames::scaled_nearly_kahler(q(3), q(4)).expect("|3 + 4i| = 5");
    let mut scaled_nk = su3_frame(
        "nearly-kahler-scaled",
        &scaled.0,
        &["W1"],
        "nearly Kähler frame scaled so that σ0+ + iσ0− = 3 + 4i",
    );
    if let Some(f) = scaled_nk.forms.as_mut() {
        f.psi_plus = Some(FormDoc::from_form(&scaled.1));
        f.psi_minus = Some(FormDoc::from_form(&scaled.2));
    }
    vec![
        su3_frame("torus-t6", &frames::torus(6), &[], "flat 6-torus; torsion-free"),
        g2_frame("torus-t7", &frames::torus(7), &[], "flat 7-torus; torsion-free"),
        lie_algebra("su2-round", &frames::su2(q(1)), "round 3-sphere, sectional curvature 1/4"),
        su3_frame(
            "nearly-kahler-s3xs3",
            &frames::nearly_kahler(),
            &["W1"],
            "homogeneous nearly Kähler structure on S3 x S3 with dω = 3ψ+",
        ),
        scaled_nk,
        su3_frame(
            "lck-w4",
            &frames::conformally_flat_solvable(6, q(1)),
            &["W4"],
            "solvable frame with de^i = e^1 ∧ e^i; Lee form e^1",
        ),
        g2_frame(
            "lcp-x4",
            &frames::conformally_flat_solvable(7, q(1)),
            &["X4"],
            "solvable frame with de^i = e^1 ∧ e^i; Lee form e^1",
        ),
        g2_pointwise(
            "synthetic-x1",
            &TorsionG2 {
                tau0: q(2),
                ..TorsionG2::zero()
            },
            &["X1"],
            "pointwise data with τ0 = 2",
        ),
        g2_pointwise(
            "synthetic-x1x4",
            &TorsionG2 {
                tau0: q(1),
                tau1: Form::e(7, 1),
                ..TorsionG2::zero()
            },
            &["X1", "X4"],
            "constant-coefficient data with τ0 = 1, τ1 = e^1; no invariant frame carries it",
        ),
        su3_pointwise(
            "synthetic-w1w4",
            &TorsionSU3 {
                sigma0_plus: q(1),
                sigma1_plus: Form::e(6, 1),
                ..TorsionSU3::zero()
            },
            &["W1", "W4"],
            "constant-coefficient data with σ0+ = 1, σ1+ = e^1; no invariant frame carries it",
        ),
        loop_doc(
            "loop-exponential",
            &exponential_loop(LOOP_SAMPLES),
            "φ = exp(y) on the unit circle, α = −d log φ",
        ),
        loop_doc(
            "loop-sign-change",
            &sign_changing_loop(LOOP_SAMPLES),
            "φ = y crosses zero while α = 0",
        ),
    ]
}

fn entry_name(d: &Document) -> &str {
    d.name.as_deref().unwrap_or("")
}

/// Documents found in `dir`, sorted by file name. Entries without a name
/// take the file stem.
pub fn load_dir(dir: &Path) -> Result<Vec<Document>> {
    let read = std::fs::read_dir(dir).map_err(|e| Error::Schema(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = read
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).map_err(|e| Error::Schema(format!("{}: {e}", p.display())))?;
            let mut d = Document::from_json(&text).map_err(|e| Error::Schema(format!("{}: {e}", p.display())))?;
            if d.name.is_none() {
                d.name = p.file_stem().map(|s| s.to_string_lossy().into_owned());
            }
            Ok(d)
        })
        .collect()
}

/// Built-in entries followed by those of the user catalog, if configured.
/// User entries shadow built-in ones of the same name.
pub fn all() -> Result<Vec<Document>> {
    let mut out = builtin();
    if let Some(dir) = std::env::var_os(CATALOG_DIR_VAR) {
        for d in load_dir(Path::new(&dir))? {
            match out.iter_mut().find(|e| entry_name(e) == entry_name(&d)) {
                Some(slot) => *slot = d,
                None => out.push(d),
            }
        }
    }
    Ok(out)
}

pub fn find(name: &str) -> Result<Document> {
    all()?
        .into_iter()
        .find(|d| entry_name(d) == name)
        .ok_or_else(|| Error::Schema(format!("no catalog entry named `{name}`")))
}

/// Reads `catalog:NAME` or a file path.
pub fn resolve(reference: &str) -> Result<Document> {
    match reference.strip_prefix(CATALOG_PREFIX) {
        Some(name) => find(name),
        None => {
            let text = std::fs::read_to_string(reference).map_err(|e| Error::Schema(format!("{reference}: {e}")))?;
            Document::from_json(&text)
        }
    }
}
