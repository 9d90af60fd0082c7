//! Closed-form generators for nodal arrangements and the checks comparing
//! them with the Gröbner engine.

mod omega;
mod predict;
mod relations;
mod surface;
mod verify;

use serde::Serialize;
use thiserror::Error;

use crate::arrangement::ArrangementError;
use crate::diffforms::FormError;
use crate::groebner::GroebnerError;

pub use omega::{build_omega_basis, triple_coordinates, OmegaBasis};
pub use predict::{generator_count, predict, predict_from_degrees, Case, CasePrediction};
pub use relations::{build_relations, relations_generate, roster, Relations, Roster};
pub use surface::{
    count_identity, surface_experiment, surface_family, surface_formula, surface_run,
    SurfaceOptions, SurfaceReport,
};
pub use verify::{
    betti_difference, verify_arrangement, BettiPair, Frame, GeneratorEntry, Mode, OracleChoice,
    Outcome, VerificationReport, VerifyOptions,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosedFormError {
    #[error("unsupported variable count {0} for this mode")]
    VariableCount(usize),
    #[error("theorem not applicable: {}", .0.join("; "))]
    NotApplicable(Vec<String>),
    #[error("omega_{0}: exact division failed")]
    DivisionFailed(usize),
    #[error("lines are not the coordinate axes; normalize first")]
    NotNormalized,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// One named pass/fail item of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, witness: Option<String>) -> Check {
        Check {
            name: name.into(),
            pass,
            witness,
        }
    }
}
