//! GIT stability of del Pezzo surfaces, binary forms and torus points.

pub mod classify;
pub mod lp;
pub mod torus;

use std::fmt;

use crate::polyalg::AlgebraError;
use crate::singular::SingularError;

pub use classify::{
    binary_form_stability, cubic_stability, exceptional_e_from_forms, exceptional_e_stability, pencil_stability,
    plane_quartic_stability, sextic_dp1_stability, EXCEPTIONAL_E_WEIGHTS,
};
pub use classify::pencil_stability as quartic_dp_stability;
pub use torus::{torus_stability, TorusPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StabilityClass {
    Stable,
    PolystableNotStable,
    SemistableNotPolystable,
    Unstable,
}

impl StabilityClass {
    pub fn is_semistable(&self) -> bool {
        *self != StabilityClass::Unstable
    }

    pub fn is_polystable(&self) -> bool {
        matches!(self, StabilityClass::Stable | StabilityClass::PolystableNotStable)
    }

    pub fn parse(s: &str) -> Option<StabilityClass> {
        [
            StabilityClass::Stable,
            StabilityClass::PolystableNotStable,
            StabilityClass::SemistableNotPolystable,
            StabilityClass::Unstable,
        ]
        .into_iter()
        .find(|c| c.to_string() == s)
    }
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityClass::Stable => "Stable",
            StabilityClass::PolystableNotStable => "PolystableNotStable",
            StabilityClass::SemistableNotPolystable => "SemistableNotPolystable",
            StabilityClass::Unstable => "Unstable",
        })
    }
}

/// A one-parameter subgroup `one_ps` pairing strictly positively with every
/// weight in `support_weights`, read in the coordinate frame `frame`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub one_ps: Vec<i64>,
    pub support_weights: Vec<Vec<i64>>,
    pub frame: Option<String>,
}

impl Certificate {
    pub fn verify(&self) -> bool {
        !self.support_weights.is_empty()
            && self.support_weights.iter().all(|w| {
                w.len() == self.one_ps.len() && w.iter().zip(&self.one_ps).map(|(a, b)| a * b).sum::<i64>() > 0
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub class: StabilityClass,
    pub certificate: Option<Certificate>,
    pub flags: Vec<String>,
}

impl Verdict {
    pub fn of(class: StabilityClass) -> Verdict {
        Verdict {
            class,
            certificate: None,
            flags: vec![],
        }
    }

    pub fn flag(mut self, f: impl Into<String>) -> Verdict {
        self.flags.push(f.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GitError {
    #[error("empty support: the zero vector has no stability class")]
    EmptySupport,
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Precondition(String),
}
