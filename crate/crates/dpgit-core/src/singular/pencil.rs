//! Quartic del Pezzo surfaces as base loci of pencils of quadrics in P^4.

use crate::config::TruncationPolicy;
use crate::germ::{classify_surface_series, GermError, SingularityType};
use crate::polyalg::factor::factor_over_q;
use crate::polyalg::linalg::{self, Matrix};
use crate::polyalg::{BinaryForm, FieldElement, Mono, MultiPoly, NumberField, Ring, WeightedDegree};

use super::{field_of, normalize_projective, Ambient, SingularError, SingularPoint, SurfaceProfile};

/// `X = {x^T A x = x^T B x = 0}` with symmetric 5x5 matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricPencil {
    pub a: Matrix,
    pub b: Matrix,
}

fn quadric_matrix(q: &MultiPoly) -> Result<Matrix, SingularError> {
    if q.nvars() != 5 {
        return Err(SingularError::Precondition("quadrics must live in five variables".into()));
    }
    match q.ambient_degree()? {
        WeightedDegree::Homogeneous(2) if !q.is_zero() => {}
        _ => return Err(SingularError::Precondition("not a homogeneous quadric".into())),
    }
    let half = FieldElement::from_ratio(1, 2);
    let mut m = vec![vec![FieldElement::zero(); 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            let mut e = vec![0u32; 5];
            e[i] += 1;
            e[j] += 1;
            let c = q.coeff_of(&e);
            m[i][j] = if i == j { c } else { &c * &half };
        }
    }
    Ok(m)
}

impl QuadricPencil {
    pub fn new(a: Matrix, b: Matrix) -> Result<QuadricPencil, SingularError> {
        let ok = |m: &Matrix| m.len() == 5 && m.iter().all(|r| r.len() == 5) && linalg::transpose(m) == *m;
        if !ok(&a) || !ok(&b) {
            return Err(SingularError::Precondition("pencil matrices must be symmetric 5x5".into()));
        }
        Ok(QuadricPencil { a, b })
    }

    pub fn from_quadrics(q1: &MultiPoly, q2: &MultiPoly) -> Result<QuadricPencil, SingularError> {
        QuadricPencil::new(quadric_matrix(q1)?, quadric_matrix(q2)?)
    }

    /// The diagonal pencil `sum x_i^2`, `sum l_i x_i^2`.
    pub fn diagonal(l: &[i64]) -> QuadricPencil {
        assert_eq!(l.len(), 5);
        let a = linalg::identity(5);
        let mut b = vec![vec![FieldElement::zero(); 5]; 5];
        for i in 0..5 {
            b[i][i] = FieldElement::from_i64(l[i]);
        }
        QuadricPencil { a, b }
    }

    pub fn quadrics(&self, ring: &std::sync::Arc<Ring>) -> (MultiPoly, MultiPoly) {
        let q = |m: &Matrix| {
            let mut p = MultiPoly::zero(ring);
            for i in 0..5 {
                for j in 0..5 {
                    let mut e = vec![0u32; 5];
                    e[i] += 1;
                    e[j] += 1;
                    p.add_term(Mono(e), m[i][j].clone());
                }
            }
            p
        };
        (q(&self.a), q(&self.b))
    }

    fn member(&self, t: &FieldElement) -> Matrix {
        linalg::add(&self.a, &linalg::scale(&self.b, t))
    }

    /// `det(lambda A + mu B)` with coefficient `i` on `lambda^(5-i) mu^i`.
    pub fn quintic(&self) -> BinaryForm {
        let xs: Vec<FieldElement> = (0..6).map(FieldElement::from_i64).collect();
        let ys: Vec<FieldElement> = xs.iter().map(|t| linalg::det(&self.member(t))).collect();
        let u = linalg::interpolate(&xs, &ys);
        BinaryForm::homogenize(&u, 5)
    }

    pub fn is_proportional(&self) -> bool {
        let rows: Vec<Vec<FieldElement>> = vec![
            self.a.iter().flatten().cloned().collect(),
            self.b.iter().flatten().cloned().collect(),
        ];
        linalg::rank(&rows) < 2
    }

    /// Whether some member is nonsingular and `A'^-1 B` is diagonalizable.
    pub fn is_simultaneously_diagonalizable(&self) -> bool {
        let Some(t0) = (0..6).map(FieldElement::from_i64).find(|t| !linalg::det(&self.member(t)).is_zero()) else {
            return false;
        };
        let inv = linalg::inverse(&self.member(&t0)).unwrap();
        let c = linalg::mul(&inv, &self.b);
        let sf = linalg::char_poly(&c).squarefree_part();
        linalg::is_zero(&linalg::eval_poly(&sf, &c))
    }

    /// Multiplicities of the roots of the quintic, largest first.
    pub fn segre_multiplicities(&self) -> Vec<usize> {
        self.quintic().root_multiplicities()
    }
}

/// Roots of a binary quadratic form `a s^2 + 2b s t + c t^2` over the field of
/// its coefficients, with the extension degree of each root. Rational roots
/// come first.
fn binary_quadratic_roots(a: &FieldElement, b2: &FieldElement, c: &FieldElement) -> Result<Vec<([FieldElement; 2], usize)>, SingularError> {
    let f = BinaryForm::new(vec![a.clone(), b2.clone(), c.clone()]);
    let mut out = Vec::new();
    if f.multiplicity_at_infinity() > 0 {
        out.push(([FieldElement::zero(), FieldElement::one()], 1));
    }
    let u = f.dehomogenize().squarefree_part();
    if u.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    if u.is_rational() {
        for (fac, _) in factor_over_q(&u) {
            let d = fac.degree().unwrap();
            let root = if d == 1 {
                -&fac.coeff(0)
            } else {
                let mp = fac.coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect();
                NumberField::new(mp, "a")?.generator()
            };
            out.push(([FieldElement::one(), root], d));
        }
        return Ok(out);
    }
    if u.degree() == Some(1) {
        let m = u.monic();
        out.push(([FieldElement::one(), -&m.coeff(0)], 1));
        return Ok(out);
    }
    Err(crate::polyalg::AlgebraError::Tower.into())
}

fn kernel_points(m: &Matrix, n: &Matrix) -> Result<Option<Vec<(Vec<FieldElement>, usize)>>, SingularError> {
    let k = linalg::kernel(m);
    match k.len() {
        0 => Ok(Some(vec![])),
        1 => {
            let p = &k[0];
            if linalg::bilinear(n, p, p).is_zero() {
                Ok(Some(vec![(p.clone(), 1)]))
            } else {
                Ok(Some(vec![]))
            }
        }
        2 => {
            let a = linalg::bilinear(n, &k[0], &k[0]);
            let b2 = &linalg::bilinear(n, &k[0], &k[1]) * &FieldElement::from_i64(2);
            let c = linalg::bilinear(n, &k[1], &k[1]);
            if a.is_zero() && b2.is_zero() && c.is_zero() {
                return Ok(None);
            }
            let mut out = Vec::new();
            for ([s, t], d) in binary_quadratic_roots(&a, &b2, &c)? {
                let v: Vec<FieldElement> = k[0].iter().zip(&k[1]).map(|(x, y)| &(x * &s) + &(y * &t)).collect();
                out.push((v, d));
            }
            Ok(Some(out))
        }
        _ => Ok(None),
    }
}

/// Local equation of `X` at `p`: solve `Q_N = 0` for one coordinate as a
/// series, substitute into `Q_M`.
fn local_surface(m: &Matrix, n: &Matrix, p: &[FieldElement], order: u32) -> MultiPoly {
    let chart = p.iter().position(|x| !x.is_zero()).unwrap();
    let np = linalg::mul_vec(n, p);
    let others: Vec<usize> = (0..5).filter(|&i| i != chart).collect();
    let k = *others.iter().find(|&&i| !np[i].is_zero()).expect("point is smooth on Q_N");
    let ring4 = Ring::new(&["u0", "u1", "u2", "u3"]);
    let idx = |i: usize| others.iter().position(|&j| j == i).unwrap();
    let kk = idx(k);
    // u = x - p on the chart, x_chart = p_chart fixed
    let xvec = |sub: &[MultiPoly]| -> Vec<MultiPoly> {
        (0..5)
            .map(|i| {
                if i == chart {
                    MultiPoly::zero(&ring4)
                } else {
                    sub[idx(i)].clone()
                }
            })
            .collect()
    };
    let quad = |mat: &Matrix, u: &[MultiPoly]| -> MultiPoly {
        let mut acc = MultiPoly::zero(&ring4);
        for i in 0..5 {
            for j in 0..5 {
                if !mat[i][j].is_zero() && !u[i].is_zero() && !u[j].is_zero() {
                    acc = &acc + &u[i].mul_trunc(&u[j], order).scale(&mat[i][j]);
                }
            }
        }
        acc
    };
    let lin = |v: &[FieldElement], u: &[MultiPoly]| -> MultiPoly {
        let mut acc = MultiPoly::zero(&ring4);
        for i in 0..5 {
            if !v[i].is_zero() {
                acc = &acc + &u[i].scale(&v[i]);
            }
        }
        acc
    };
    let vars: Vec<MultiPoly> = (0..4).map(|i| MultiPoly::var(&ring4, i)).collect();
    let coef = (&np[k] * &FieldElement::from_i64(2)).inv();
    let mut np_rest = np.clone();
    np_rest[k] = FieldElement::zero();
    np_rest[chart] = FieldElement::zero();
    let mut sub = vars.clone();
    sub[kk] = MultiPoly::zero(&ring4);
    for _ in 0..=order {
        let u = xvec(&sub);
        // Q_N(p + u) = 2 (Np).u + u^T N u = 0
        let rhs = &lin(&np_rest, &u).scale(&FieldElement::from_i64(2)) + &quad(n, &u);
        let next = rhs.scale(&-&coef).truncate(order);
        if next == sub[kk] {
            break;
        }
        sub[kk] = next;
    }
    let u = xvec(&sub);
    let mp = linalg::mul_vec(m, p);
    let h = &lin(&mp, &u).scale(&FieldElement::from_i64(2)) + &quad(m, &u);
    let h = h.truncate(order);
    let ring3 = Ring::new(&["u", "v", "w"]);
    let mut map = [0usize; 4];
    let mut c = 0;
    for (j, slot) in map.iter_mut().enumerate() {
        if j != kk {
            *slot = c;
            c += 1;
        }
    }
    h.embed(&ring3, &map)
}

fn classify_local(m: &Matrix, n: &Matrix, p: &[FieldElement]) -> Result<SingularityType, SingularError> {
    let policy = TruncationPolicy::surface();
    let mut last = Err(GermError::RaiseTruncation(policy.start));
    for order in policy.schedule() {
        let h = local_surface(m, n, p, order);
        last = classify_surface_series(&h, order);
        if !matches!(last, Err(GermError::RaiseTruncation(_))) {
            break;
        }
    }
    Ok(last?)
}

pub fn profile_pencil(pencil: &QuadricPencil) -> Result<SurfaceProfile, SingularError> {
    if pencil.is_proportional() {
        return Err(SingularError::DegeneratePencil);
    }
    let q = pencil.quintic();
    if q.is_zero() {
        return Err(SingularError::DegeneratePencil);
    }
    let mut members: Vec<(Matrix, Matrix, usize)> = Vec::new();
    let u = q.dehomogenize();
    if u.degree().unwrap_or(0) > 0 {
        for (fac, _) in factor_over_q(&u.squarefree_part()) {
            let d = fac.degree().unwrap();
            let t = if d == 1 {
                -&fac.coeff(0)
            } else {
                let mp = fac.coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect();
                NumberField::new(mp, "a")?.generator()
            };
            members.push((pencil.member(&t), pencil.b.clone(), d));
        }
    }
    if q.multiplicity_at_infinity() > 0 {
        members.push((pencil.b.clone(), pencil.a.clone(), 1));
    }
    let mut found: Vec<(Vec<FieldElement>, usize, Matrix, Matrix)> = Vec::new();
    for (m, n, d) in members {
        let Some(pts) = kernel_points(&m, &n)? else {
            return Ok(SurfaceProfile::non_normal(Ambient::QuarticDelPezzo, Some(4)));
        };
        for (p, e) in pts {
            let p = normalize_projective(&p);
            if found.iter().any(|(q, ..)| *q == p) {
                continue;
            }
            found.push((p, d * e, m.clone(), n.clone()));
        }
    }
    let mut points = Vec::new();
    for (p, cluster, m, n) in found {
        let np = linalg::mul_vec(&n, &p);
        let ty = if np.iter().all(|x| x.is_zero()) {
            SingularityType::WorseThanADE
        } else {
            classify_local(&m, &n, &p)?
        };
        points.push(SingularPoint {
            field: field_of(&p),
            coords: p,
            cluster_size: cluster,
            ty,
            note: None,
        });
    }
    points.sort_by_key(|p| super::solver::point_key(&p.coords));
    Ok(SurfaceProfile {
        ambient: Ambient::QuarticDelPezzo,
        points,
        is_normal: true,
        degree: Some(4),
    })
}
