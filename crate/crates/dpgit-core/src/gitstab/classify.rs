//! Stability verdicts for the moduli problems of del Pezzo surfaces.

use crate::config::TruncationPolicy;
use crate::germ::SingularityType;
use crate::polyalg::linalg::{self, Matrix};
use crate::polyalg::{BinaryForm, FieldElement, MultiPoly, WeightedDegree};
use crate::singular::{
    profile_cubic, profile_double_cover, profile_pencil, profile_plane_curve, Base, QuadricPencil, SingularPoint,
    SurfaceProfile,
};

use super::torus::{torus_stability, TorusPoint};
use super::{Certificate, GitError, StabilityClass, Verdict};

/// Weights of `(a1, a2, b0, ..., b6)` for the rank-one torus acting on the
/// exceptional deformation space.
pub const EXCEPTIONAL_E_WEIGHTS: [i64; 9] = [4, -4, 6, 4, 2, 0, -2, -4, -6];

/// Weight `(a_i - a_n)_{i<n}` for the diagonal torus of `SL(n+1)` on the
/// monomial `x^a`.
fn monomial_torus_point(f: &MultiPoly) -> TorusPoint {
    let n = f.nvars() - 1;
    let (coords, weights): (Vec<FieldElement>, Vec<Vec<i64>>) = f
        .terms()
        .map(|(m, c)| {
            let w = (0..n).map(|i| m.0[i] as i64 - m.0[n] as i64).collect();
            (c.clone(), w)
        })
        .unzip();
    TorusPoint { coords, weights }
}

/// `f(T y)`.
fn linear_change(f: &MultiPoly, t: &Matrix) -> Result<MultiPoly, GitError> {
    let ring = f.ring().clone();
    let n = f.nvars();
    let images: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let mut acc = MultiPoly::zero(&ring);
            for j in 0..n {
                if !t[i][j].is_zero() {
                    acc = &acc + &MultiPoly::var(&ring, j).scale(&t[i][j]);
                }
            }
            acc
        })
        .collect();
    Ok(f.substitute(&images)?)
}

fn frame_text(p: &[FieldElement]) -> String {
    let c: Vec<String> = p.iter().map(|x| x.to_text()).collect();
    format!("point [{}] moved to the last coordinate vertex", c.join(" : "))
}

/// Look for a diagonal destabilizing 1-PS in the given coordinates and after
/// moving each listed rational point to `[0:...:0:1]`.
fn diagonal_certificate(f: &MultiPoly, points: &[&SingularPoint]) -> Option<Certificate> {
    let n = f.nvars();
    let try_frame = |g: &MultiPoly, frame: Option<String>| -> Option<Certificate> {
        let v = torus_stability(&monomial_torus_point(g)).ok()?;
        v.certificate.map(|mut c| {
            c.frame = frame;
            c
        })
    };
    if let Some(c) = try_frame(f, Some("given coordinates".into())) {
        return Some(c);
    }
    for p in points {
        if p.field.is_some() {
            continue;
        }
        let s = p.coords.iter().position(|x| !x.is_zero())?;
        let mut t = vec![vec![FieldElement::zero(); n]; n];
        let mut col = 0;
        for j in 0..n {
            if j != s {
                t[j][col] = FieldElement::one();
                col += 1;
            }
        }
        for (i, row) in t.iter_mut().enumerate() {
            row[n - 1] = p.coords[i].clone();
        }
        let g = linear_change(f, &t).ok()?;
        if let Some(c) = try_frame(&g, Some(frame_text(&p.coords))) {
            return Some(c);
        }
    }
    None
}

fn with_certificate(mut v: Verdict, f: &MultiPoly, profile: Option<&SurfaceProfile>, worst: impl Fn(&SingularityType) -> bool) -> Verdict {
    let pts: Vec<&SingularPoint> = profile.map(|p| p.points.iter().filter(|q| worst(&q.ty)).collect()).unwrap_or_default();
    match diagonal_certificate(f, &pts) {
        Some(c) => v.certificate = Some(c),
        None => v.flags.push("no diagonal certificate in the tried frames".into()),
    }
    v
}

/// `SL2` stability of a binary form by root multiplicities.
pub fn binary_form_stability(f: &BinaryForm) -> Result<Verdict, GitError> {
    if f.is_zero() {
        return Err(GitError::EmptySupport);
    }
    let d = f.degree();
    let mults = f.root_multiplicities();
    let top = mults.first().copied().unwrap_or(0);
    if 2 * top < d {
        return Ok(Verdict::of(StabilityClass::Stable));
    }
    if 2 * top == d {
        let class = if mults.len() == 2 {
            StabilityClass::PolystableNotStable
        } else {
            StabilityClass::SemistableNotPolystable
        };
        return Ok(Verdict::of(class));
    }
    // the root of multiplicity > d/2 is rational; move it to [0:1]
    let l = f.roots_where(|m| 2 * m > d);
    let (l0, l1) = (l.coeff(0).clone(), l.coeff(1).clone());
    let zero = FieldElement::zero();
    let (a, c) = if !l0.is_zero() { (l0.inv(), zero.clone()) } else { (zero.clone(), l1.inv()) };
    let b = -&l1;
    let dd = l0.clone();
    let g = f.transform([&a, &b, &c, &dd]);
    let support: Vec<Vec<i64>> = (0..=d)
        .filter(|&i| !g.coeff(i).is_zero())
        .map(|i| vec![d as i64 - 2 * i as i64])
        .collect();
    Ok(Verdict {
        class: StabilityClass::Unstable,
        certificate: Some(Certificate {
            one_ps: vec![1],
            support_weights: support,
            frame: Some(format!("x -> {}*x + {}*y, y -> {}*x + {}*y", a, b, c, dd)),
        }),
        flags: vec![],
    })
}

/// Cubic surfaces: stable iff at worst `A1`; strictly polystable iff exactly
/// three `A2`; semistable iff at worst `A1`/`A2`.
pub fn cubic_stability(f: &MultiPoly) -> Result<Verdict, GitError> {
    let profile = profile_cubic(f)?;
    let a12 = |t: &SingularityType| matches!(t, SingularityType::A(1) | SingularityType::A(2));
    if !profile.is_normal || !profile.only(a12) {
        let v = Verdict::of(StabilityClass::Unstable);
        return Ok(with_certificate(v, f, Some(&profile), |t| !a12(t)));
    }
    let types = profile.types();
    let n2 = types.iter().filter(|t| **t == SingularityType::A(2)).count();
    let class = if n2 == 0 {
        StabilityClass::Stable
    } else if n2 == 3 && types.len() == 3 {
        StabilityClass::PolystableNotStable
    } else {
        StabilityClass::SemistableNotPolystable
    };
    Ok(Verdict::of(class))
}

/// Quartic del Pezzo surfaces as pencils of quadrics.
pub fn pencil_stability(p: &QuadricPencil) -> Result<Verdict, GitError> {
    let profile = profile_pencil(p)?;
    if !profile.is_normal {
        return Ok(Verdict::of(StabilityClass::Unstable).flag("non-normal"));
    }
    if profile.is_smooth() {
        return Ok(Verdict::of(StabilityClass::Stable));
    }
    if !profile.only(|t| *t == SingularityType::A(1)) {
        return Ok(Verdict::of(StabilityClass::Unstable));
    }
    let diag = p.is_simultaneously_diagonalizable();
    let top = p.segre_multiplicities().first().copied().unwrap_or(0);
    if diag && top <= 2 {
        Ok(Verdict::of(StabilityClass::PolystableNotStable))
    } else {
        Ok(Verdict::of(StabilityClass::SemistableNotPolystable).flag("boundary"))
    }
}

fn is_rank3_conic(q: &MultiPoly) -> bool {
    let half = FieldElement::from_ratio(1, 2);
    let m: Matrix = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let mut e = vec![0u32; 3];
                    e[i] += 1;
                    e[j] += 1;
                    let c = q.coeff_of(&e);
                    if i == j {
                        c
                    } else {
                        &c * &half
                    }
                })
                .collect()
        })
        .collect();
    linalg::rank(&m) == 3
}

/// Whether the tangent line of the cusp-like point `p` is a component of `F`.
fn tangent_line_is_component(f: &MultiPoly, p: &SingularPoint) -> Result<bool, GitError> {
    let s = p.coords.iter().position(|x| !x.is_zero()).unwrap();
    let others: Vec<usize> = (0..3).filter(|&i| i != s).collect();
    let plane = crate::polyalg::Ring::new(&["u", "v"]);
    let images: Vec<MultiPoly> = (0..3)
        .map(|i| {
            let base = MultiPoly::constant(&plane, p.coords[i].clone());
            match others.iter().position(|&j| j == i) {
                Some(k) => &base + &MultiPoly::var(&plane, k),
                None => base,
            }
        })
        .collect();
    let g = f.substitute(&images)?;
    let (q20, q11) = (g.coeff_of(&[2, 0]), g.coeff_of(&[1, 1]));
    let (a, b) = if q20.is_zero() {
        (FieldElement::zero(), FieldElement::one())
    } else {
        (q20.clone(), &q11 * &FieldElement::from_ratio(1, 2))
    };
    let mut dir = vec![FieldElement::zero(); 3];
    dir[others[0]] = -&b;
    dir[others[1]] = a;
    let deg = f.total_degree().unwrap_or(0) as i64;
    Ok((0..=deg).all(|k| {
        let s = FieldElement::from_i64(k);
        let pt: Vec<FieldElement> = p.coords.iter().zip(&dir).map(|(x, d)| x + &(d * &s)).collect();
        f.eval(&pt).is_zero()
    }))
}

/// Plane quartic curves.
pub fn plane_quartic_stability(f: &MultiPoly) -> Result<Verdict, GitError> {
    if f.nvars() != 3 || f.ambient_degree()? != WeightedDegree::Homogeneous(4) || f.is_zero() {
        return Err(GitError::Precondition("expected a homogeneous quartic in three variables".into()));
    }
    let sf = f.squarefree_part();
    if sf.total_degree() != f.total_degree() {
        if sf.total_degree() == Some(2) && is_rank3_conic(&sf) && f.div_exact(&(&sf * &sf)).is_some_and(|c| c.is_constant()) {
            return Ok(Verdict::of(StabilityClass::PolystableNotStable).flag("double conic"));
        }
        let v = Verdict::of(StabilityClass::Unstable).flag("non-reduced");
        return Ok(with_certificate(v, f, None, |_| true));
    }
    let profile = profile_plane_curve(f, TruncationPolicy::default())?;
    let is_a = |t: &SingularityType| matches!(t, SingularityType::A(_));
    if !profile.only(is_a) {
        let v = Verdict::of(StabilityClass::Unstable);
        return Ok(with_certificate(v, f, Some(&profile), |t| !is_a(t)));
    }
    for p in &profile.points {
        if p.ty == SingularityType::A(5) && tangent_line_is_component(f, p)? {
            let v = Verdict::of(StabilityClass::Unstable).flag("tacnode tangent line is a component");
            return Ok(with_certificate(v, f, Some(&profile), |t| *t == SingularityType::A(5)));
        }
    }
    let types = profile.types();
    if types.iter().all(|t| matches!(t, SingularityType::A(1) | SingularityType::A(2))) {
        return Ok(Verdict::of(StabilityClass::Stable));
    }
    let a3 = types.iter().filter(|t| **t == SingularityType::A(3)).count();
    let a1 = types.iter().filter(|t| **t == SingularityType::A(1)).count();
    if a3 == 2 && types.len() == 2 + a1 && a1 <= 1 {
        return Ok(Verdict::of(StabilityClass::PolystableNotStable));
    }
    Ok(Verdict::of(StabilityClass::SemistableNotPolystable))
}

/// `z^3 + f4 z + f6` for a sextic in `P(1,1,2)` with nonzero `z^3` term.
pub fn tschirnhaus(branch: &MultiPoly) -> Result<(BinaryForm, BinaryForm, MultiPoly), GitError> {
    let c = branch.coeffs_in(2);
    if c.len() != 4 || !c[3].is_constant() || c[3].is_zero() {
        return Err(GitError::Precondition("the z^3 coefficient of the branch sextic must be a nonzero constant".into()));
    }
    let c3 = c[3].constant_term();
    let ring = branch.ring().clone();
    let shift = c[2].scale(&(&c3 * &FieldElement::from_i64(3)).inv());
    let images = vec![
        MultiPoly::var(&ring, 0),
        MultiPoly::var(&ring, 1),
        &MultiPoly::var(&ring, 2) - &shift,
    ];
    let g = branch.substitute(&images)?.scale(&c3.inv());
    let gc = g.coeffs_in(2);
    let get = |k: usize, d: usize| -> Result<BinaryForm, GitError> {
        let p = gc.get(k).cloned().unwrap_or_else(|| MultiPoly::zero(&ring));
        BinaryForm::from_multipoly(&p, 0, 1, d).ok_or_else(|| GitError::Precondition("branch is not weighted homogeneous".into()))
    };
    Ok((get(1, 4)?, get(0, 6)?, g))
}

/// Weights `2i - d` of the coefficient of `x^i y^(d-i)` with `x` vanishing at `u`.
fn moved_support(f: &BinaryForm, a: &[&FieldElement; 4]) -> Vec<Vec<i64>> {
    if f.is_zero() {
        return vec![];
    }
    let g = f.transform(*a);
    let d = g.degree() as i64;
    (0..=g.degree())
        .filter(|&i| !g.coeff(i).is_zero())
        .map(|i| vec![d - 2 * i as i64])
        .collect()
}

/// Degree-one del Pezzo surfaces `w^2 = z^3 + f4 z + f6` in `P(1,1,2,3)`.
pub fn sextic_dp1_stability(branch: &MultiPoly) -> Result<Verdict, GitError> {
    let (f4, f6, normalized) = tschirnhaus(branch)?;
    if f4.is_zero() && f6.is_zero() {
        return Err(GitError::EmptySupport);
    }
    let s3 = (!f4.is_zero()).then(|| f4.roots_of_multiplicity_at_least(3));
    let s4 = (!f6.is_zero()).then(|| f6.roots_of_multiplicity_at_least(4));
    let bad = match (&s3, &s4) {
        (None, Some(b)) => Some(b.clone()),
        (Some(a), None) => Some(a.clone()),
        (Some(a), Some(b)) => Some(a.gcd(b)),
        (None, None) => None,
    };
    if let Some(l) = bad.filter(|l| l.degree() >= 1) {
        // a single rational root; move it to [0:1]
        let (l0, l1) = (l.coeff(0).clone(), l.coeff(1).clone());
        let zero = FieldElement::zero();
        let (a, c) = if !l0.is_zero() { (l0.inv(), zero.clone()) } else { (zero.clone(), l1.inv()) };
        let b = -&l1;
        let m = [&a, &b, &c, &l0];
        let mut support = moved_support(&f4, &m);
        support.extend(moved_support(&f6, &m));
        let cert = Certificate {
            one_ps: vec![1],
            support_weights: support,
            frame: Some(format!("x -> {}*x + {}*y, y -> {}*x + {}*y", a, b, c, l0)),
        };
        let mut v = Verdict::of(StabilityClass::Unstable);
        if cert.verify() {
            v.certificate = Some(cert);
        }
        return Ok(v);
    }
    let disc = f4.pow(3).scale(&FieldElement::from_i64(-4)).sub(&f6.pow(2).scale(&FieldElement::from_i64(27)));
    if disc.is_zero() {
        return Ok(Verdict::of(StabilityClass::PolystableNotStable).flag("non-normal"));
    }
    let profile = profile_double_cover(Base::P112, &normalized, TruncationPolicy::default())?;
    if !profile.is_normal {
        return Ok(Verdict::of(StabilityClass::PolystableNotStable).flag("non-normal"));
    }
    let types = profile.types();
    let only_a = types.iter().all(|t| matches!(t, SingularityType::A(_)));
    if types.len() == 2 && types.iter().all(|t| *t == SingularityType::D(4)) {
        return Ok(Verdict::of(StabilityClass::PolystableNotStable));
    }
    if only_a {
        return Ok(Verdict::of(StabilityClass::Stable));
    }
    Ok(Verdict::of(StabilityClass::SemistableNotPolystable))
}

/// The exceptional point as `(a1, a2, b0..b6)`.
pub fn exceptional_e_stability(coords: &[FieldElement]) -> Result<Verdict, GitError> {
    if coords.len() != 9 {
        return Err(GitError::DimensionMismatch {
            expected: 9,
            got: coords.len(),
        });
    }
    let weights = EXCEPTIONAL_E_WEIGHTS.iter().map(|&w| vec![w]).collect();
    torus_stability(&TorusPoint::new(coords.to_vec(), weights)?)
}

/// Coordinates of `(a1, a2, g6)` where `g6(x, y)` is rewritten in
/// `u = x + i y`, `v = x - i y`.
pub fn exceptional_e_from_forms(a1: &FieldElement, a2: &FieldElement, g6: &BinaryForm) -> Result<Vec<FieldElement>, GitError> {
    if g6.degree() != 6 {
        return Err(GitError::Precondition("g6 must be a sextic binary form".into()));
    }
    let i = FieldElement::i();
    let half = FieldElement::from_ratio(1, 2);
    // x = (u + v)/2, y = (u - v)/(2i)
    let c = (&FieldElement::from_i64(2) * &i).inv();
    let b = g6.transform([&half, &half, &c, &-&c]);
    let mut out = vec![a1.clone(), a2.clone()];
    out.extend(b.coeffs().iter().cloned());
    Ok(out)
}
