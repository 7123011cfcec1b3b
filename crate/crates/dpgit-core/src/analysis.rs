//! Routing a parsed document to the matching profiler and GIT classifier.

use std::sync::Arc;

use crate::config::TruncationPolicy;
use crate::deform::{def_polystability, DefSpace};
use crate::gitstab::{
    binary_form_stability, cubic_stability, exceptional_e_stability, pencil_stability, plane_quartic_stability,
    sextic_dp1_stability, torus_stability, GitError, TorusPoint, Verdict,
};
use crate::input::{DefKind, Document, RingKind};
use crate::polyalg::{AlgebraError, BinaryForm, FieldElement, MultiPoly, Ring, WeightedDegree};
use crate::singular::{
    profile_cubic, profile_double_cover, profile_pencil, profile_plane_curve, Base, QuadricPencil, SingularError,
    SurfaceProfile,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error(transparent)]
    Git(#[from] GitError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Unsupported(String),
}

fn unsupported<T>(msg: impl Into<String>) -> Result<T, AnalysisError> {
    Err(AnalysisError::Unsupported(msg.into()))
}

/// What a document describes.
#[derive(Clone, Debug)]
pub enum Surface {
    Cubic(MultiPoly),
    Pencil(QuadricPencil),
    DoubleCover { base: Base, branch: MultiPoly },
    PlaneCurve(MultiPoly),
    BinaryForm(BinaryForm),
}

/// Base and branch of `t^2 = B` hidden in a hypersurface of a weighted `P^3`.
///
/// One top-weight variable: `a t^2 + b t + c` gives `B = (b^2 - 4ac) / 4a^2`.
/// Two top-weight variables: the quadratic part is diagonalized to
/// `a u^2 + e v^2` and `B = -(e v^2 + c) / a`, with `v` joining the base.
pub fn extract_double_cover(p: &MultiPoly) -> Result<(Base, MultiPoly), AnalysisError> {
    let ring = p.ring().clone();
    let w = ring.weights().map(|w| w.to_vec()).ok_or_else(|| AnalysisError::Unsupported("ambient has no weights".into()))?;
    if w.len() != 4 {
        return unsupported("double-cover extraction needs four variables");
    }
    let d = match p.weighted_degree(&crate::polyalg::WeightSystem(w.clone()))? {
        WeightedDegree::Homogeneous(d) => d,
        _ => return unsupported("equation is not weighted homogeneous"),
    };
    if d % 2 != 0 {
        return unsupported("odd degree: not a double cover");
    }
    let top: Vec<usize> = (0..4).filter(|&i| 2 * w[i] == d).collect();
    let rest: Vec<usize> = (0..4).filter(|i| !top.contains(i)).collect();
    let names = ring.names();
    match top.len() {
        1 => {
            let t = top[0];
            let base_ring = Ring::from_names(rest.iter().map(|&i| names[i].clone()).collect(), Some(rest.iter().map(|&i| w[i]).collect()));
            let c = p.coeffs_in(t);
            if c.len() != 3 || !c[2].is_constant() {
                return unsupported(format!("equation must be quadratic in {} with constant leading coefficient", names[t]));
            }
            let mut map = vec![0; 4];
            for (k, &i) in rest.iter().enumerate() {
                map[i] = k;
            }
            let emb = |q: &MultiPoly| q.embed(&base_ring, &map);
            let a = c[2].constant_term();
            let (b, c0) = (emb(&c[1]), emb(&c[0]));
            let disc = &(&b * &b) - &c0.scale(&(&a * &FieldElement::from_i64(4)));
            let branch = disc.scale(&(&(&a * &a) * &FieldElement::from_i64(4)).inv());
            finish(branch)
        }
        2 => {
            let (t1, t2) = (top[0], top[1]);
            let mut bnames: Vec<String> = rest.iter().map(|&i| names[i].clone()).collect();
            bnames.push(names[t2].clone());
            let mut bw: Vec<i64> = rest.iter().map(|&i| w[i]).collect();
            bw.push(d / 2);
            let base_ring = Ring::from_names(bnames, Some(bw));
            let mut map = vec![0; 4];
            for (k, &i) in rest.iter().enumerate() {
                map[i] = k;
            }
            map[t2] = 2;
            map[t1] = 2;
            let coeff = |e1: u32, e2: u32| -> FieldElement {
                let mut e = vec![0u32; 4];
                e[t1] = e1;
                e[t2] = e2;
                p.coeff_of(&e)
            };
            let (al, be, ga) = (coeff(2, 0), coeff(1, 1), coeff(0, 2));
            let c = p.subs_value(t1, &FieldElement::zero()).subs_value(t2, &FieldElement::zero());
            let quad_part = top_quadratic(&ring, t1, t2, &al, &be, &ga);
            if &quad_part + &c != *p {
                return unsupported("mixed terms between the top-weight variables and the base are not supported");
            }
            // a u^2 + e v^2
            let (a, e) = if !al.is_zero() {
                (al.clone(), &ga - &(&(&be * &be) * &(&al * &FieldElement::from_i64(4)).inv()))
            } else if !ga.is_zero() {
                (ga.clone(), al.clone())
            } else if !be.is_zero() {
                (be.clone(), -&be)
            } else {
                return unsupported("no quadratic term in the top-weight variables");
            };
            let v = MultiPoly::var(&base_ring, 2);
            let c = c.embed(&base_ring, &map);
            let branch = (&(&v * &v).scale(&e) + &c).scale(&-&a.inv());
            finish(branch)
        }
        _ => unsupported("no variable of half the degree: not a double cover"),
    }
}

fn top_quadratic(ring: &Arc<Ring>, t1: usize, t2: usize, a: &FieldElement, b: &FieldElement, c: &FieldElement) -> MultiPoly {
    let x = MultiPoly::var(ring, t1);
    let y = MultiPoly::var(ring, t2);
    &(&(&x * &x).scale(a) + &(&x * &y).scale(b)) + &(&y * &y).scale(c)
}

fn finish(branch: MultiPoly) -> Result<(Base, MultiPoly), AnalysisError> {
    let w = branch.ring().weights().map(|w| w.to_vec()).unwrap_or_default();
    match Base::from_weights(&w) {
        Some(b) => Ok((b, branch)),
        None => unsupported(format!("base P({}) is not one of P^2, P(1,1,2), P(1,1,4), P(1,2,9)", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))),
    }
}

/// Classify what kind of surface (or curve) a document describes.
pub fn surface_of(doc: &Document) -> Result<Surface, AnalysisError> {
    let Some(ring) = &doc.ring else {
        return unsupported("document declares no ring");
    };
    let polys = doc.polys();
    if let Some(b) = doc.branch() {
        let w = ring.weights().unwrap_or_default();
        return match Base::from_weights(&w) {
            Some(base) => Ok(Surface::DoubleCover { base, branch: b.clone() }),
            None => unsupported(format!("branch over {ring} is not a supported base")),
        };
    }
    match (&ring.kind, polys.len()) {
        (RingKind::Projective(1), 1) => {
            let p = polys[0];
            match p.ambient_degree()? {
                WeightedDegree::Homogeneous(d) if d > 0 => Ok(Surface::BinaryForm(
                    BinaryForm::from_multipoly(p, 0, 1, d as usize).expect("homogeneous binary form"),
                )),
                _ => unsupported("binary form must be homogeneous of positive degree"),
            }
        }
        (RingKind::Projective(2), 1) => Ok(Surface::PlaneCurve(polys[0].clone())),
        (RingKind::Projective(3), 1) => Ok(Surface::Cubic(polys[0].clone())),
        (RingKind::Projective(4), 2) => Ok(Surface::Pencil(QuadricPencil::from_quadrics(polys[0], polys[1])?)),
        (RingKind::Weighted(w), 1) if w.len() == 4 => {
            let (base, branch) = extract_double_cover(polys[0])?;
            Ok(Surface::DoubleCover { base, branch })
        }
        (RingKind::Weighted(w), 0) if w.len() == 3 => unsupported("weighted plane given without a branch statement"),
        _ => unsupported(format!("no profiler for {} polynomial(s) over {ring}", polys.len())),
    }
}

pub fn profile_document(doc: &Document, policy: TruncationPolicy) -> Result<SurfaceProfile, AnalysisError> {
    Ok(match surface_of(doc)? {
        Surface::Cubic(f) => profile_cubic(&f)?,
        Surface::Pencil(p) => profile_pencil(&p)?,
        Surface::DoubleCover { base, branch } => profile_double_cover(base, &branch, policy)?,
        Surface::PlaneCurve(f) => profile_plane_curve(&f, policy)?,
        Surface::BinaryForm(_) => return unsupported("binary forms have no singularity profile"),
    })
}

/// `z^2 + b z + c` over `P(1,1,4)` reduces to the binary octic `b^2 - 4c`.
fn branch_octic(branch: &MultiPoly) -> Result<BinaryForm, AnalysisError> {
    let c = branch.coeffs_in(2);
    if c.len() != 3 || !c[2].is_constant() {
        return unsupported("branch over P(1,1,4) must be quadratic in z with constant leading coefficient (vertex off the branch)");
    }
    let a = c[2].constant_term();
    let disc = &(&c[1] * &c[1]) - &c[0].scale(&(&a * &FieldElement::from_i64(4)));
    BinaryForm::from_multipoly(&disc, 0, 1, 8).ok_or_else(|| AnalysisError::Unsupported("branch is not weighted homogeneous".into()))
}

/// The GIT verdict for a document: explicit deformation or torus data first,
/// then by ambient.
pub fn stability_document(doc: &Document) -> Result<Verdict, AnalysisError> {
    if let Some(kind) = doc.def() {
        let Some(v) = doc.point() else {
            return unsupported(format!("def {} needs a point statement", kind.name()));
        };
        return Ok(match kind {
            DefKind::X1T => def_polystability(DefSpace::X1T, v)?,
            DefKind::X1e => def_polystability(DefSpace::X1e, v)?,
            DefKind::E => {
                if v.iter().all(|c| c.is_zero()) {
                    return Err(GitError::EmptySupport.into());
                }
                exceptional_e_stability(v)?
            }
        });
    }
    if let (Some(w), Some(v)) = (doc.weights(), doc.point()) {
        return Ok(torus_stability(&TorusPoint::new(v.clone(), w.clone())?)?);
    }
    Ok(match surface_of(doc)? {
        Surface::Cubic(f) => cubic_stability(&f)?,
        Surface::Pencil(p) => pencil_stability(&p)?,
        Surface::PlaneCurve(f) => plane_quartic_stability(&f)?,
        Surface::BinaryForm(f) => binary_form_stability(&f)?,
        Surface::DoubleCover { base, branch } => match base {
            Base::P2 => plane_quartic_stability(&branch)?,
            Base::P112 => sextic_dp1_stability(&branch)?,
            Base::P114 => binary_form_stability(&branch_octic(&branch)?)?,
            Base::P129 => return unsupported("no GIT model for P(1,2,9) covers; give def X1T coordinates"),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::parse;

    fn cover(src: &str) -> (Base, String) {
        let d = parse(src).unwrap();
        let (b, f) = extract_double_cover(d.polys()[0]).unwrap();
        (b, f.to_string())
    }

    #[test]
    fn extraction() {
        assert_eq!(cover("ring P(1,1,2,3) vars x,y,z,w; poly w^2 - z^3 - x^6 - y^6").0, Base::P112);
        assert_eq!(cover("ring P(1,2,9,9) vars x1,x2,x3,x4; poly x3*x4 - x2^9").0, Base::P129);
        assert_eq!(cover("ring P(1,1,4,4) vars x1 x2 x3 x4; poly x1^4*x2^4 - x3*x4").0, Base::P114);
        assert_eq!(cover("ring P(1,1,1,2) vars x y z w; poly w^2 - x^4 - y^4 - z^4").0, Base::P2);
    }
}
