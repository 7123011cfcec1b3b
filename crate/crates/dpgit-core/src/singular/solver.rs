//! Zero-dimensional polynomial systems by iterated resultants and exact
//! back-substitution. Non-rational solutions are grouped into Galois
//! clusters, one representative each, with coordinates in a single `Q(alpha)`.

use std::sync::Arc;

use crate::polyalg::factor::factor_over_q;
use crate::polyalg::{AlgebraError, FieldElement, MultiPoly, NumberField, UPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePoint {
    /// Values of the solved variables, in variable order.
    pub coords: Vec<FieldElement>,
    /// Number of Galois conjugates represented.
    pub cluster: usize,
}

impl AffinePoint {
    pub fn field(&self) -> Option<Arc<NumberField>> {
        self.coords.iter().find_map(|c| c.field().cloned())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Solutions {
    pub points: Vec<AffinePoint>,
    pub positive_dimensional: bool,
}

/// Solve `system = 0` in the variables `first..n` (earlier variables must not
/// occur). Retries with generic shears of the last variable when a fiber
/// needs a second field extension.
pub fn solve_from(system: &[MultiPoly], first: usize) -> Result<Solutions, AlgebraError> {
    let n = match system.first() {
        Some(p) => p.nvars(),
        None => return Ok(Solutions::default()),
    };
    for attempt in 0..8u32 {
        let shear = shear_coefficients(attempt, first, n);
        let sys: Vec<MultiPoly> = match &shear {
            None => system.to_vec(),
            Some(c) => {
                let images = shear_images(system[0].ring(), c, n, true);
                system.iter().map(|p| p.substitute(&images)).collect::<Result<_, _>>()?
            }
        };
        match solve_rec(&sys, first, n) {
            Ok(mut sol) => {
                if let Some(c) = &shear {
                    for p in &mut sol.points {
                        unshear(&mut p.coords, c, first);
                    }
                }
                sol.points.sort_by_key(|p| point_key(&p.coords));
                return Ok(sol);
            }
            Err(AlgebraError::Tower) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(AlgebraError::Tower)
}

pub fn point_key(c: &[FieldElement]) -> String {
    c.iter().map(|x| x.to_text()).collect::<Vec<_>>().join(",")
}

fn shear_coefficients(attempt: u32, first: usize, n: usize) -> Option<Vec<i64>> {
    if attempt == 0 || n - first < 2 {
        return if attempt == 0 { None } else { Some(vec![0; n]) };
    }
    Some(
        (0..n)
            .map(|i| {
                if i < first || i == n - 1 {
                    0
                } else {
                    ((attempt as i64 * 7 + i as i64 * 3) % 5) + 1
                }
            })
            .collect(),
    )
}

/// `x_last -> y_last - sum c_i y_i`.
fn shear_images(ring: &Arc<crate::polyalg::Ring>, c: &[i64], n: usize, forward: bool) -> Vec<MultiPoly> {
    let mut images: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(ring, i)).collect();
    let sign = if forward { -1 } else { 1 };
    for (i, &ci) in c.iter().enumerate() {
        if ci != 0 {
            images[n - 1] = &images[n - 1] + &MultiPoly::var(ring, i).scale(&FieldElement::from_i64(sign * ci));
        }
    }
    images
}

fn unshear(coords: &mut [FieldElement], c: &[i64], first: usize) {
    let last = coords.len() - 1;
    let mut v = coords[last].clone();
    for (i, &ci) in c.iter().enumerate() {
        if ci != 0 && i >= first {
            v = &v - &(&coords[i - first] * &FieldElement::from_i64(ci));
        }
    }
    coords[last] = v;
}

fn combo(polys: &[MultiPoly], coeffs: impl Fn(usize) -> i64) -> MultiPoly {
    let mut acc = MultiPoly::zero(polys[0].ring());
    for (i, p) in polys.iter().enumerate() {
        acc = &acc + &p.scale(&FieldElement::from_i64(coeffs(i)));
    }
    acc
}

fn solve_rec(system: &[MultiPoly], k: usize, n: usize) -> Result<Solutions, AlgebraError> {
    let sys: Vec<MultiPoly> = system.iter().filter(|p| !p.is_zero()).cloned().collect();
    if sys.iter().any(|p| p.is_constant()) {
        return Ok(Solutions::default());
    }
    if k == n {
        return Ok(Solutions {
            points: vec![AffinePoint {
                coords: vec![],
                cluster: 1,
            }],
            positive_dimensional: false,
        });
    }
    if sys.is_empty() {
        return Ok(Solutions {
            points: vec![],
            positive_dimensional: true,
        });
    }
    let (involving, others): (Vec<MultiPoly>, Vec<MultiPoly>) = sys.iter().cloned().partition(|p| p.involves(k));
    if involving.len() >= 2 {
        let mut h = involving[0].clone();
        for p in &involving[1..] {
            h = h.gcd(p);
        }
        if !h.is_constant() {
            let mut left = vec![h.clone()];
            left.extend(others.iter().cloned());
            let mut right: Vec<MultiPoly> = involving.iter().map(|p| p.div_exact(&h).expect("gcd divides")).collect();
            right.extend(others.iter().cloned());
            let a = solve_rec(&left, k, n)?;
            let b = solve_rec(&right, k, n)?;
            if a.positive_dimensional || b.positive_dimensional {
                return Ok(Solutions {
                    points: vec![],
                    positive_dimensional: true,
                });
            }
            let mut points = a.points;
            for p in b.points {
                if !points.iter().any(|q| q.coords == p.coords) {
                    points.push(p);
                }
            }
            return Ok(Solutions {
                points,
                positive_dimensional: false,
            });
        }
    }
    let mut proj = others.clone();
    if involving.len() >= 2 {
        let g0 = combo(&involving, |i| i as i64 + 1);
        let extra = involving.len().min(3);
        for j in 1..extra.max(2) {
            let gj = combo(&involving, |i| ((i as i64 + 2) * (j as i64 + 3)) % 11 + 1 - (i as i64 % 2) * 2 * j as i64);
            let r = if gj.involves(k) && g0.involves(k) {
                g0.resultant(&gj, k)?
            } else {
                MultiPoly::zero(g0.ring())
            };
            if r.is_zero() {
                return Ok(Solutions {
                    points: vec![],
                    positive_dimensional: true,
                });
            }
            proj.push(r);
        }
    }
    let sub = solve_rec(&proj, k + 1, n)?;
    if sub.positive_dimensional {
        return Ok(sub);
    }
    let mut out = Solutions::default();
    for sp in sub.points {
        if involving.is_empty() {
            return Ok(Solutions {
                points: vec![],
                positive_dimensional: true,
            });
        }
        let mut g = UPoly::zero();
        for p in &involving {
            let mut q = p.clone();
            for (j, v) in sp.coords.iter().enumerate() {
                q = q.subs_value(k + 1 + j, v);
            }
            let u = q.to_upoly(k).expect("only the fiber variable remains");
            g = g.gcd(&u);
        }
        if g.is_zero() {
            return Ok(Solutions {
                points: vec![],
                positive_dimensional: true,
            });
        }
        if g.degree() == Some(0) {
            continue;
        }
        let base_field = sp.field();
        if g.is_rational() && base_field.is_none() {
            for (fac, _) in factor_over_q(&g) {
                let d = fac.degree().unwrap();
                let root = if d == 1 {
                    -&fac.coeff(0)
                } else {
                    let minpoly: Vec<_> = fac.coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect();
                    NumberField::new(minpoly, "a")?.generator()
                };
                let mut coords = vec![root];
                coords.extend(sp.coords.iter().cloned());
                out.points.push(AffinePoint {
                    coords,
                    cluster: sp.cluster * d,
                });
            }
        } else {
            if g.degree() != Some(1) {
                return Err(AlgebraError::Tower);
            }
            let root = -&(&g.coeff(0) * &g.coeff(1).inv());
            let mut coords = vec![root];
            coords.extend(sp.coords.iter().cloned());
            out.points.push(AffinePoint {
                coords,
                cluster: sp.cluster,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::Ring;

    #[test]
    fn circle_meets_line() {
        let r = Ring::new(&["x", "y"]);
        // x^2 + y^2 - 2, x - y
        let a = MultiPoly::from_int_terms(&r, &[(1, &[2, 0]), (1, &[0, 2]), (-2, &[0, 0])]);
        let b = MultiPoly::from_int_terms(&r, &[(1, &[1, 0]), (-1, &[0, 1])]);
        let s = solve_from(&[a, b], 0).unwrap();
        assert!(!s.positive_dimensional);
        assert_eq!(s.points.len(), 2);
        assert!(s.points.iter().all(|p| p.cluster == 1));
    }

    #[test]
    fn irrational_cluster() {
        let r = Ring::new(&["x", "y"]);
        // x^2 - 2, y - x
        let a = MultiPoly::from_int_terms(&r, &[(1, &[2, 0]), (-2, &[0, 0])]);
        let b = MultiPoly::from_int_terms(&r, &[(1, &[0, 1]), (-1, &[1, 0])]);
        let s = solve_from(&[a.clone(), b.clone()], 0).unwrap();
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.points[0].cluster, 2);
        let p = &s.points[0].coords;
        assert!(a.eval(p).is_zero() && b.eval(p).is_zero());
    }

    #[test]
    fn curve_is_positive_dimensional() {
        let r = Ring::new(&["x", "y"]);
        let a = MultiPoly::from_int_terms(&r, &[(1, &[1, 1])]);
        let b = MultiPoly::from_int_terms(&r, &[(1, &[2, 1])]);
        assert!(solve_from(&[a, b], 0).unwrap().positive_dimensional);
    }
}
