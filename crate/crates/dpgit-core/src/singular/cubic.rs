//! Cubic surfaces in P^3.

use crate::config::TruncationPolicy;
use crate::germ::{classify_surface_germ, SingularityType};
use crate::par::{self, Exec};
use crate::polyalg::{FieldElement, MultiPoly, Ring, WeightedDegree};

use super::solver::solve_from;
use super::{field_of, Ambient, SingularError, SingularPoint, SurfaceProfile};

fn check_cubic(f: &MultiPoly) -> Result<(), SingularError> {
    if f.nvars() != 4 {
        return Err(SingularError::Precondition("a cubic surface needs four variables".into()));
    }
    match f.ambient_degree()? {
        WeightedDegree::Homogeneous(3) if !f.is_zero() => Ok(()),
        _ => Err(SingularError::Precondition("not a homogeneous cubic".into())),
    }
}

/// Projective singular points of `F = 0`, stratified by the first nonzero
/// coordinate. Returns `None` when the singular locus is positive-dimensional.
pub(crate) fn projective_singular_points(f: &MultiPoly) -> Result<Option<Vec<(Vec<FieldElement>, usize)>>, SingularError> {
    let n = f.nvars();
    let partials: Vec<MultiPoly> = (0..n).map(|i| f.derivative(i)).collect();
    let mut out = Vec::new();
    for s in 0..n {
        let sys: Vec<MultiPoly> = partials
            .iter()
            .chain(std::iter::once(f))
            .map(|p| {
                let mut q = p.clone();
                for j in 0..s {
                    q = q.subs_value(j, &FieldElement::zero());
                }
                q.subs_value(s, &FieldElement::one())
            })
            .collect();
        let sol = solve_from(&sys, s + 1)?;
        if sol.positive_dimensional {
            return Ok(None);
        }
        for p in sol.points {
            let mut coords = vec![FieldElement::zero(); s];
            coords.push(FieldElement::one());
            coords.extend(p.coords);
            out.push((coords, p.cluster));
        }
    }
    Ok(Some(out))
}

/// `F(p + u)` in the affine chart where the coordinate `chart` equals one.
pub(crate) fn local_equation(f: &MultiPoly, p: &[FieldElement], chart: usize) -> Result<MultiPoly, SingularError> {
    let n = f.nvars();
    let names: Vec<String> = (0..n - 1).map(|i| format!("u{i}")).collect();
    let local = Ring::from_names(names, None);
    let mut k = 0;
    let images: Vec<MultiPoly> = (0..n)
        .map(|i| {
            if i == chart {
                MultiPoly::one(&local)
            } else {
                let v = &MultiPoly::var(&local, k) + &MultiPoly::constant(&local, p[i].clone());
                k += 1;
                v
            }
        })
        .collect();
    Ok(f.substitute(&images)?)
}

pub fn profile_cubic(f: &MultiPoly) -> Result<SurfaceProfile, SingularError> {
    check_cubic(f)?;
    let pts = match projective_singular_points(f)? {
        None => return Ok(SurfaceProfile::non_normal(Ambient::CubicSurface, Some(3))),
        Some(p) => p,
    };
    let types = par::map(Exec::default(), &pts, |(coords, _)| -> Result<SingularityType, SingularError> {
        let chart = coords.iter().position(|c| !c.is_zero()).unwrap();
        let h = local_equation(f, coords, chart)?;
        Ok(classify_surface_germ(&h, TruncationPolicy::surface())?)
    });
    let mut points = Vec::new();
    for ((coords, cluster), ty) in pts.into_iter().zip(types) {
        let ty = ty?;
        points.push(SingularPoint {
            field: field_of(&coords),
            coords,
            cluster_size: cluster,
            ty,
            note: None,
        });
    }
    Ok(SurfaceProfile {
        ambient: Ambient::CubicSurface,
        points,
        is_normal: true,
        degree: Some(3),
    })
}
