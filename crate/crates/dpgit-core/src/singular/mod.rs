//! Singular loci of cubic surfaces, quartic del Pezzo pencils, weighted
//! double covers and plane curves, with the local type at each point.

pub mod cover;
pub mod cubic;
pub mod pencil;
pub mod solver;

use std::collections::BTreeMap;
use std::fmt;

use crate::germ::{GermError, SingularityType};
use crate::polyalg::{AlgebraError, FieldElement};

pub use cover::{profile_double_cover, profile_plane_curve, Base};
pub use cubic::profile_cubic;
pub use pencil::{profile_pencil, QuadricPencil};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SingularError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error("degenerate pencil: the two quadrics are proportional or every member is singular")]
    DegeneratePencil,
    #[error("excluded by classification: {0}")]
    Excluded(String),
    #[error("{0}")]
    Precondition(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    CubicSurface,
    QuarticDelPezzo,
    DoubleCover(Base),
    PlaneCurve,
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::CubicSurface => f.write_str("cubic surface in P^3"),
            Ambient::QuarticDelPezzo => f.write_str("intersection of two quadrics in P^4"),
            Ambient::DoubleCover(b) => write!(f, "double cover of {b}"),
            Ambient::PlaneCurve => f.write_str("plane curve in P^2"),
        }
    }
}

/// One singular point, or one Galois orbit of `cluster_size` conjugate points
/// represented by `coords` over a single number field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub coords: Vec<FieldElement>,
    pub field: Option<String>,
    pub cluster_size: usize,
    pub ty: SingularityType,
    pub note: Option<String>,
}

impl SingularPoint {
    pub fn coords_text(&self) -> String {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_text()).collect();
        format!("[{}]", c.join(" : "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceProfile {
    pub ambient: Ambient,
    pub points: Vec<SingularPoint>,
    pub is_normal: bool,
    /// Anticanonical degree of the surface; `None` for plane curves.
    pub degree: Option<u32>,
}

impl SurfaceProfile {
    pub fn non_normal(ambient: Ambient, degree: Option<u32>) -> SurfaceProfile {
        SurfaceProfile {
            ambient,
            points: vec![],
            is_normal: false,
            degree,
        }
    }

    /// Types with Galois clusters expanded, sorted.
    pub fn types(&self) -> Vec<SingularityType> {
        let mut out = Vec::new();
        for p in &self.points {
            for _ in 0..p.cluster_size {
                out.push(p.ty.clone());
            }
        }
        out.sort();
        out
    }

    /// Counts per type.
    pub fn counts(&self) -> BTreeMap<SingularityType, usize> {
        let mut m = BTreeMap::new();
        for t in self.types() {
            *m.entry(t).or_insert(0) += 1;
        }
        m
    }

    pub fn is_smooth(&self) -> bool {
        self.is_normal && self.points.is_empty()
    }

    /// Compact text such as `2A3+2x1/4(1,1)`; `smooth` or `non-normal` otherwise.
    pub fn summary(&self) -> String {
        if !self.is_normal {
            return "non-normal".into();
        }
        if self.points.is_empty() {
            return "smooth".into();
        }
        let parts: Vec<String> = self
            .counts()
            .iter()
            .map(|(t, &k)| match (k, t) {
                (1, t) => t.to_string(),
                (k, SingularityType::CyclicQuotient { .. }) => format!("{k}x{t}"),
                (k, t) => format!("{k}{t}"),
            })
            .collect();
        parts.join("+")
    }

    pub fn only(&self, pred: impl Fn(&SingularityType) -> bool) -> bool {
        self.points.iter().all(|p| pred(&p.ty))
    }
}

/// Scale so that the first nonzero coordinate is one.
pub fn normalize_projective(v: &[FieldElement]) -> Vec<FieldElement> {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(p) => {
            let inv = p.inv();
            v.iter().map(|x| x * &inv).collect()
        }
    }
}

pub(crate) fn field_of(v: &[FieldElement]) -> Option<String> {
    v.iter().find_map(|c| c.field().map(|f| f.describe()))
}
