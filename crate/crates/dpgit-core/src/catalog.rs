//! Named surfaces with their expected singularity profiles and GIT classes.
//! Each fixture is a document in the CLI input format under `data/fixtures`.

use crate::analysis::{profile_document, stability_document};
use crate::config::TruncationPolicy;
use crate::enumer::order_bound_filter;
use crate::gitstab::StabilityClass;
use crate::input::{parse, Document};
use crate::par::{self, Exec};
use crate::polyalg::{MultiPoly, Ring};

/// A monomial map `z -> images` from a source space onto the surface `target`.
#[derive(Clone, Copy, Debug)]
pub struct Parametrization {
    pub target: &'static str,
    pub source_vars: &'static [&'static str],
    pub images: &'static [&'static str],
}

#[derive(Clone, Copy, Debug)]
pub struct SurfaceFixture {
    pub name: &'static str,
    pub source: &'static str,
    /// Profile summary as printed by `SurfaceProfile::summary`.
    pub expected_profile: &'static str,
    pub expected_class: StabilityClass,
    pub classifier: &'static str,
    pub degree: Option<u32>,
    pub parametrization: Option<Parametrization>,
}

impl SurfaceFixture {
    pub fn document(&self) -> Document {
        parse(self.source).unwrap_or_else(|e| panic!("fixture {}: {e}", self.name))
    }
}

pub const FIXTURES: &[SurfaceFixture] = &[
    SurfaceFixture {
        name: "X4T",
        source: include_str!("../data/fixtures/x4t.dp"),
        expected_profile: "4A1",
        expected_class: StabilityClass::PolystableNotStable,
        classifier: "quartic_dp_stability",
        degree: Some(4),
        parametrization: Some(Parametrization {
            target: "ring P^4 vars x0 x1 x2 x3 x4; poly x0*x1 - x2^2; poly x2^2 - x3*x4",
            source_vars: &["z1", "z2", "w1", "w2"],
            images: &["z1^2*w1^2", "z2^2*w2^2", "z1*z2*w1*w2", "z1^2*w2^2", "z2^2*w1^2"],
        }),
    },
    SurfaceFixture {
        name: "X3T",
        source: include_str!("../data/fixtures/x3t.dp"),
        expected_profile: "3A2",
        expected_class: StabilityClass::PolystableNotStable,
        classifier: "cubic_stability",
        degree: Some(3),
        parametrization: Some(Parametrization {
            target: "ring P^3 vars x0 x1 x2 x3; poly x1*x2*x3 - x0^3",
            source_vars: &["z1", "z2", "z3"],
            images: &["z1*z2*z3", "z1^3", "z2^3", "z3^3"],
        }),
    },
    SurfaceFixture {
        name: "X3c",
        source: include_str!("../data/fixtures/x3c.dp"),
        expected_profile: "4A1",
        expected_class: StabilityClass::Stable,
        classifier: "cubic_stability",
        degree: Some(3),
        parametrization: None,
    },
    SurfaceFixture {
        name: "Fermat",
        source: include_str!("../data/fixtures/fermat.dp"),
        expected_profile: "smooth",
        expected_class: StabilityClass::Stable,
        classifier: "cubic_stability",
        degree: Some(3),
        parametrization: None,
    },
    SurfaceFixture {
        name: "X2T",
        source: include_str!("../data/fixtures/x2t.dp"),
        expected_profile: "2A3+2x1/4(1,1)",
        expected_class: StabilityClass::PolystableNotStable,
        classifier: "binary_form_stability (octic)",
        degree: Some(2),
        parametrization: Some(Parametrization {
            target: "ring P(1,1,4,4) vars x1 x2 x3 x4; poly x1^4*x2^4 - x3*x4",
            source_vars: &["z1", "z2", "w1", "w2"],
            images: &["z1*w1", "z2*w2", "z1^4*w2^4", "z2^4*w1^4"],
        }),
    },
    SurfaceFixture {
        name: "X2_cateye",
        source: include_str!("../data/fixtures/x2_cateye.dp"),
        expected_profile: "2A3",
        expected_class: StabilityClass::PolystableNotStable,
        classifier: "plane_quartic_stability",
        degree: Some(2),
        parametrization: None,
    },
    SurfaceFixture {
        name: "X2_ox",
        source: include_str!("../data/fixtures/x2_ox.dp"),
        expected_profile: "A1+2A3",
        expected_class: StabilityClass::PolystableNotStable,
        classifier: "plane_quartic_stability",
        degree: Some(2),
        parametrization: None,
    },
    SurfaceFixture {
        name: "X2_generic",
        source: include_str!("../data/fixtures/x2_generic.dp"),
        expected_profile: "2A3",
        expected_class: StabilityClass::PolystableNotStable,
        classifier: "plane_quartic_stability",
        degree: Some(2),
        parametrization: None,
    },
    SurfaceFixture {
        name: "X2inf",
        source: include_str!("../data/fixtures/x2_inf.dp"),
        expected_profile: "A1+2A3",
        expected_class: StabilityClass::PolystableNotStable,
        classifier: "plane_quartic_stability",
        degree: Some(2),
        parametrization: Some(Parametrization {
            target: "ring P(1,1,1,2) vars x y z w; poly w^2 - x*y*(z^2 - 4*x*y)",
            source_vars: &["z1", "z2", "w1", "w2"],
            images: &["z1^2*w1^2", "z2^2*w2^2", "z1^2*w2^2 + z2^2*w1^2", "z1*z2*w1*w2*(z1^2*w2^2 - z2^2*w1^2)"],
        }),
    },
    SurfaceFixture {
        name: "X1T",
        source: include_str!("../data/fixtures/x1t.dp"),
        expected_profile: "A8+2x1/9(1,2)",
        expected_class: StabilityClass::PolystableNotStable,
        classifier: "def_polystability (X1T)",
        degree: Some(1),
        parametrization: Some(Parametrization {
            target: "ring P(1,2,9,9) vars x1 x2 x3 x4; poly x3*x4 - x2^9",
            source_vars: &["z1", "z2", "z3"],
            images: &["z1", "z2*z3", "z2^9", "z3^9"],
        }),
    },
    SurfaceFixture {
        name: "X1e",
        source: include_str!("../data/fixtures/x1e.dp"),
        expected_profile: "A7+1/8(1,3)",
        expected_class: StabilityClass::PolystableNotStable,
        classifier: "def_polystability (X1e)",
        degree: Some(1),
        parametrization: None,
    },
    SurfaceFixture {
        name: "X1inf",
        source: include_str!("../data/fixtures/x1_inf.dp"),
        expected_profile: "2D4+1/4(1,1)",
        expected_class: StabilityClass::PolystableNotStable,
        classifier: "exceptional_e_stability",
        degree: Some(1),
        parametrization: None,
    },
    SurfaceFixture {
        name: "p0",
        source: include_str!("../data/fixtures/p0.dp"),
        expected_profile: "non-normal",
        expected_class: StabilityClass::PolystableNotStable,
        classifier: "sextic_dp1_stability",
        degree: Some(1),
        parametrization: None,
    },
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown fixture '{0}'")]
    Unknown(String),
    #[error("fixture '{0}' has no parametrization")]
    NoParametrization(String),
    #[error("parametrization of '{0}' is malformed: {1}")]
    Malformed(String, String),
}

pub fn fixture(name: &str) -> Result<&'static SurfaceFixture, CatalogError> {
    FIXTURES
        .iter()
        .find(|f| f.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| CatalogError::Unknown(name.to_string()))
}

/// Substitute the map into every defining equation of the target.
pub fn verify_parametrization(name: &str) -> Result<bool, CatalogError> {
    let f = fixture(name)?;
    let p = f.parametrization.ok_or_else(|| CatalogError::NoParametrization(f.name.into()))?;
    let bad = |m: String| CatalogError::Malformed(f.name.into(), m);
    let target = parse(p.target).map_err(|e| bad(e.to_string()))?;
    let source = Ring::new(p.source_vars);
    let decl = format!("ring A^{} vars {}", p.source_vars.len(), p.source_vars.join(" "));
    let images = p
        .images
        .iter()
        .map(|s| {
            let d = parse(&format!("{decl}; poly {s}")).map_err(|e| bad(e.to_string()))?;
            Ok(d.polys()[0].embed(&source, &(0..p.source_vars.len()).collect::<Vec<_>>()))
        })
        .collect::<Result<Vec<MultiPoly>, CatalogError>>()?;
    let eqs = target.polys();
    if eqs.is_empty() {
        return Err(bad("target has no equation".into()));
    }
    for e in eqs {
        if !e.substitute(&images).map_err(|e| bad(e.to_string()))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureReport {
    pub name: String,
    pub expected_profile: String,
    pub profile: Result<String, String>,
    pub expected_class: StabilityClass,
    pub class: Result<StabilityClass, String>,
    pub parametrization: Option<bool>,
    pub mismatches: Vec<String>,
}

impl FixtureReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn verify_fixture(name: &str) -> Result<FixtureReport, CatalogError> {
    let f = fixture(name)?;
    let doc = f.document();
    let mut mismatches = vec![];
    let profile = profile_document(&doc, TruncationPolicy::default()).map_err(|e| e.to_string());
    match &profile {
        Ok(p) => {
            if p.summary() != f.expected_profile {
                mismatches.push(format!("profile: expected {}, got {}", f.expected_profile, p.summary()));
            }
            if let Some(d) = f.degree {
                for t in p.types() {
                    if !order_bound_filter(d, &t).unwrap_or(true) {
                        mismatches.push(format!("{t} violates the order bound in degree {d}"));
                    }
                }
            }
        }
        Err(e) => mismatches.push(format!("profile: {e}")),
    }
    let class = stability_document(&doc).map(|v| v.class).map_err(|e| e.to_string());
    match &class {
        Ok(c) if *c != f.expected_class => mismatches.push(format!("stability: expected {}, got {c}", f.expected_class)),
        Err(e) => mismatches.push(format!("stability: {e}")),
        _ => {}
    }
    let parametrization = f.parametrization.map(|_| verify_parametrization(f.name).unwrap_or(false));
    if parametrization == Some(false) {
        mismatches.push("parametrization does not land on the surface".into());
    }
    Ok(FixtureReport {
        name: f.name.into(),
        expected_profile: f.expected_profile.into(),
        profile: profile.map(|p| p.summary()),
        expected_class: f.expected_class,
        class,
        parametrization,
        mismatches,
    })
}

pub fn verify_all(exec: Exec) -> Vec<FixtureReport> {
    par::map(exec, FIXTURES, |f| verify_fixture(f.name).expect("fixture exists"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_green() {
        let bad: Vec<_> = verify_all(Exec::Serial).into_iter().filter(|r| !r.ok()).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }
}
