//! Double covers `w^2 = f` of P^2 and of the weighted planes P(1,1,2),
//! P(1,1,4), P(1,2,9); singular points of plane curves.

use std::fmt;

use crate::config::TruncationPolicy;
use crate::par::{self, Exec};
use crate::germ::{classify_adaptive, double_cover_adaptive, SingularityType};
use crate::polyalg::linalg;
use crate::polyalg::{FieldElement, MultiPoly, Ring, UPoly, WeightSystem, WeightedDegree};

use super::solver::solve_from;
use super::{field_of, Ambient, SingularError, SingularPoint, SurfaceProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    P2,
    P112,
    P114,
    P129,
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.weights();
        if *self == Base::P2 {
            f.write_str("P^2")
        } else {
            write!(f, "P({},{},{})", w[0], w[1], w[2])
        }
    }
}

impl Base {
    pub fn weights(&self) -> [i64; 3] {
        match self {
            Base::P2 => [1, 1, 1],
            Base::P112 => [1, 1, 2],
            Base::P114 => [1, 1, 4],
            Base::P129 => [1, 2, 9],
        }
    }

    pub fn from_weights(w: &[i64]) -> Option<Base> {
        [Base::P2, Base::P112, Base::P114, Base::P129].into_iter().find(|b| b.weights() == w)
    }

    pub fn branch_degree(&self) -> i64 {
        match self {
            Base::P2 => 4,
            Base::P112 => 6,
            Base::P114 => 8,
            Base::P129 => 18,
        }
    }

    pub fn cover_weight(&self) -> i64 {
        self.branch_degree() / 2
    }

    /// Anticanonical degree of the cover.
    pub fn surface_degree(&self) -> u32 {
        match self {
            Base::P2 | Base::P114 => 2,
            Base::P112 | Base::P129 => 1,
        }
    }
}

/// A point of the base together with the local branch germ in two variables.
struct LocalBranch {
    coords: Vec<FieldElement>,
    cluster: usize,
    germ: MultiPoly,
}

fn plane() -> std::sync::Arc<Ring> {
    Ring::new(&["u", "v"])
}

/// `f` restricted to the chart where variable `chart` is one, recentred at
/// `p`, in local variables `(u, v)` for the remaining two coordinates.
fn chart_germ(f: &MultiPoly, p: &[FieldElement], chart: usize) -> Result<MultiPoly, SingularError> {
    let r = plane();
    let mut k = 0;
    let images: Vec<MultiPoly> = (0..3)
        .map(|i| {
            if i == chart {
                MultiPoly::one(&r)
            } else {
                let v = &MultiPoly::var(&r, k) + &MultiPoly::constant(&r, p[i].clone());
                k += 1;
                v
            }
        })
        .collect();
    Ok(f.substitute(&images)?)
}

/// Characteristic polynomial over Q of multiplication by `a`.
fn char_poly_over_q(a: &FieldElement) -> UPoly {
    match a.field() {
        None => UPoly::linear_root(a),
        Some(k) => {
            let n = k.degree();
            let g = k.generator();
            let cols: Vec<Vec<FieldElement>> = (0..n)
                .map(|j| {
                    let e = a * &g.pow(j as u32);
                    let c: Vec<FieldElement> = match &e {
                        FieldElement::Rat(q) => {
                            let mut v = vec![FieldElement::zero(); n];
                            v[0] = FieldElement::Rat(q.clone());
                            v
                        }
                        FieldElement::Alg(x) => {
                            let mut v: Vec<FieldElement> = x.coeffs().iter().map(|q| FieldElement::Rat(q.clone())).collect();
                            v.resize(n, FieldElement::zero());
                            v
                        }
                    };
                    c
                })
                .collect();
            linalg::char_poly(&linalg::transpose(&cols))
        }
    }
}

fn negate_arg(u: &UPoly) -> UPoly {
    UPoly::new(
        u.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect(),
    )
}

/// Singular points of the curve `f = 0` off the orbifold vertices, with the
/// local branch germ at each.
fn affine_strata(base: Base, f: &MultiPoly) -> Result<Option<Vec<LocalBranch>>, SingularError> {
    let fx = f.derivative(0);
    let fy = f.derivative(1);
    let fz = f.derivative(2);
    let mut out = Vec::new();
    // chart x = 1
    let sys: Vec<MultiPoly> = [f, &fy, &fz].iter().map(|p| p.subs_value(0, &FieldElement::one())).collect();
    let sol = solve_from(&sys, 1)?;
    if sol.positive_dimensional {
        return Ok(None);
    }
    for s in sol.points {
        let mut coords = vec![FieldElement::one()];
        coords.extend(s.coords);
        let germ = chart_germ(f, &coords, 0)?;
        out.push(LocalBranch {
            coords,
            cluster: s.cluster,
            germ,
        });
    }
    // x = 0, chart y = 1
    let sys: Vec<MultiPoly> = [f, &fx, &fz]
        .iter()
        .map(|p| p.subs_value(0, &FieldElement::zero()).subs_value(1, &FieldElement::one()))
        .collect();
    let sol = solve_from(&sys, 2)?;
    if sol.positive_dimensional {
        return Ok(None);
    }
    let mut stratum: Vec<(FieldElement, usize)> = sol.points.into_iter().map(|s| (s.coords[0].clone(), s.cluster)).collect();
    if base == Base::P129 {
        stratum.retain(|(z, _)| !z.is_zero());
        let mut kept = Vec::new();
        for (z, c) in stratum {
            let cp = char_poly_over_q(&z);
            let neg = negate_arg(&cp);
            let text = |u: &UPoly| u.monic().coeffs().iter().map(|x| x.to_text()).collect::<Vec<_>>();
            if cp.degree() == Some(1) {
                if z.rational_sign() == Some(1) {
                    kept.push((z, c));
                }
            } else if neg.monic() == cp.monic() {
                kept.push((z, c / 2));
            } else if text(&cp) < text(&neg) {
                kept.push((z, c));
            }
        }
        stratum = kept;
    }
    for (z, cluster) in stratum {
        let coords = vec![FieldElement::zero(), FieldElement::one(), z];
        let germ = chart_germ(f, &coords, 1)?;
        out.push(LocalBranch { coords, cluster, germ });
    }
    // [0:0:1] is a smooth point of P^2 only
    if base == Base::P2 {
        let p = vec![FieldElement::zero(), FieldElement::zero(), FieldElement::one()];
        if [f, &fx, &fy].iter().all(|q| q.eval(&p).is_zero()) {
            let germ = chart_germ(f, &p, 2)?;
            out.push(LocalBranch {
                coords: p,
                cluster: 1,
                germ,
            });
        }
    }
    Ok(Some(out))
}

fn check_branch(base: Base, f: &MultiPoly) -> Result<(), SingularError> {
    if f.nvars() != 3 {
        return Err(SingularError::Precondition("a branch curve needs three variables".into()));
    }
    match f.weighted_degree(&WeightSystem(base.weights().to_vec()))? {
        WeightedDegree::Homogeneous(d) if d == base.branch_degree() && !f.is_zero() => Ok(()),
        _ => Err(SingularError::Precondition(format!(
            "branch must be weighted homogeneous of degree {} on {}",
            base.branch_degree(),
            base
        ))),
    }
}

fn is_reduced(f: &MultiPoly) -> bool {
    f.squarefree_part().total_degree() == f.total_degree()
}

fn vertex(coords: [i64; 3]) -> Vec<FieldElement> {
    coords.iter().map(|&c| FieldElement::from_i64(c)).collect()
}

/// Singular points of `w^2 = f` over `base`.
pub fn profile_double_cover(base: Base, f: &MultiPoly, policy: TruncationPolicy) -> Result<SurfaceProfile, SingularError> {
    check_branch(base, f)?;
    let ambient = Ambient::DoubleCover(base);
    let degree = Some(base.surface_degree());
    if !is_reduced(f) {
        return Ok(SurfaceProfile::non_normal(ambient, degree));
    }
    let Some(branches) = affine_strata(base, f)? else {
        return Ok(SurfaceProfile::non_normal(ambient, degree));
    };
    let types = par::map(Exec::default(), &branches, |b| double_cover_adaptive(&b.germ, true, policy));
    let mut points = Vec::new();
    for (b, ty) in branches.into_iter().zip(types) {
        let ty = ty?;
        if ty == SingularityType::NonNormal {
            return Ok(SurfaceProfile::non_normal(ambient, degree));
        }
        points.push(SingularPoint {
            field: field_of(&b.coords),
            coords: b.coords,
            cluster_size: b.cluster,
            ty,
            note: None,
        });
    }
    // Z/2 vertex: P(1,1,2) at [0:0:1], P(1,2,9) at [0:1:0]
    let z2 = match base {
        Base::P112 => Some((vertex([0, 0, 1]), 2)),
        Base::P129 => Some((vertex([0, 1, 0]), 1)),
        _ => None,
    };
    if let Some((p, chart)) = z2 {
        let g = chart_germ(f, &p, chart)?;
        if g.constant_term().is_zero() {
            let local = double_cover_adaptive(&g, true, policy)?;
            let (ty, note) = match local {
                SingularityType::A(1) => (SingularityType::CyclicQuotient { n: 4, a: 1 }, None),
                SingularityType::A(3) => (SingularityType::CyclicQuotient { n: 8, a: 3 }, None),
                SingularityType::NonNormal => return Ok(SurfaceProfile::non_normal(ambient, degree)),
                other => (SingularityType::WorseThanADE, Some(format!("unclassified-quotient: invariant germ of type {other}"))),
            };
            points.push(SingularPoint {
                coords: p,
                field: None,
                cluster_size: 1,
                ty,
                note,
            });
        }
    }
    // mu_4 or mu_9 vertex at [0:0:1]
    let big = match base {
        Base::P114 => Some(SingularityType::CyclicQuotient { n: 4, a: 1 }),
        Base::P129 => Some(SingularityType::CyclicQuotient { n: 9, a: 2 }),
        _ => None,
    };
    if let Some(ty) = big {
        let p = vertex([0, 0, 1]);
        if f.eval(&p).is_zero() {
            return Err(SingularError::Excluded(format!("branch curve passes through the vertex [0:0:1] of {base}")));
        }
        points.push(SingularPoint {
            coords: p,
            field: None,
            cluster_size: 2,
            ty,
            note: Some("two points over the vertex".into()),
        });
    }
    Ok(SurfaceProfile {
        ambient,
        points,
        is_normal: true,
        degree,
    })
}

/// Singular points of a reduced plane curve `F = 0`; a non-reduced curve is
/// reported as non-normal.
pub fn profile_plane_curve(f: &MultiPoly, policy: TruncationPolicy) -> Result<SurfaceProfile, SingularError> {
    if f.nvars() != 3 {
        return Err(SingularError::Precondition("a plane curve needs three variables".into()));
    }
    match f.ambient_degree()? {
        WeightedDegree::Homogeneous(d) if d >= 1 && !f.is_zero() => {}
        _ => return Err(SingularError::Precondition("not a homogeneous plane curve".into())),
    }
    if !is_reduced(f) {
        return Ok(SurfaceProfile::non_normal(Ambient::PlaneCurve, None));
    }
    let Some(branches) = affine_strata(Base::P2, f)? else {
        return Ok(SurfaceProfile::non_normal(Ambient::PlaneCurve, None));
    };
    let types = par::map(Exec::default(), &branches, |b| classify_adaptive(&b.germ, true, policy));
    let mut points = Vec::new();
    for (b, ty) in branches.into_iter().zip(types) {
        let ty = ty?;
        points.push(SingularPoint {
            field: field_of(&b.coords),
            coords: b.coords,
            cluster_size: b.cluster,
            ty,
            note: None,
        });
    }
    Ok(SurfaceProfile {
        ambient: Ambient::PlaneCurve,
        points,
        is_normal: true,
        degree: None,
    })
}
