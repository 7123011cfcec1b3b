//! Isolated plane-curve germs at the origin: ADE recognition, the Du Val type
//! of the double cover `w^2 = f`, and surface germs reduced to curve germs.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::config::TruncationPolicy;
use crate::polyalg::linalg;
use crate::polyalg::{AlgebraError, BinaryForm, FieldElement, Mono, MultiPoly, Ring};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SingularityType {
    Smooth,
    A(u32),
    D(u32),
    E(u32),
    /// `1/n(1,a)` with `a = min(a, a^-1 mod n)`.
    CyclicQuotient { n: u64, a: u64 },
    NonNormal,
    WorseThanADE,
}

impl SingularityType {
    /// Canonical `1/n(1,a)`; `None` unless `1 <= a < n` and `gcd(a, n) = 1`.
    pub fn cyclic(n: u64, a: u64) -> Option<SingularityType> {
        if n < 2 || a == 0 || a >= n || a.gcd(&n) != 1 {
            return None;
        }
        let inv = mod_inverse(a, n);
        Some(SingularityType::CyclicQuotient { n, a: a.min(inv) })
    }

    pub fn is_ade(&self) -> bool {
        matches!(self, SingularityType::A(_) | SingularityType::D(_) | SingularityType::E(_))
    }

    pub fn milnor(&self) -> Option<u32> {
        match self {
            SingularityType::Smooth => Some(0),
            SingularityType::A(k) | SingularityType::D(k) | SingularityType::E(k) => Some(*k),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Option<SingularityType> {
        let s = s.trim();
        match s {
            "Smooth" => return Some(SingularityType::Smooth),
            "NonNormal" => return Some(SingularityType::NonNormal),
            "WorseThanADE" => return Some(SingularityType::WorseThanADE),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("1/") {
            let (n, tail) = rest.split_once("(1,")?;
            let a = tail.strip_suffix(')')?;
            return SingularityType::cyclic(n.parse().ok()?, a.parse().ok()?);
        }
        let (head, num) = s.split_at(1);
        let k: u32 = num.parse().ok()?;
        match head {
            "A" if k >= 1 => Some(SingularityType::A(k)),
            "D" if k >= 4 => Some(SingularityType::D(k)),
            "E" if (6..=8).contains(&k) => Some(SingularityType::E(k)),
            _ => None,
        }
    }
}

pub fn mod_inverse(a: u64, n: u64) -> u64 {
    let (g, x) = {
        let e = (a as i128).extended_gcd(&(n as i128));
        (e.gcd, e.x)
    };
    assert_eq!(g, 1, "not invertible");
    x.rem_euclid(n as i128) as u64
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityType::Smooth => write!(f, "Smooth"),
            SingularityType::A(k) => write!(f, "A{k}"),
            SingularityType::D(k) => write!(f, "D{k}"),
            SingularityType::E(k) => write!(f, "E{k}"),
            SingularityType::CyclicQuotient { n, a } => write!(f, "1/{n}(1,{a})"),
            SingularityType::NonNormal => write!(f, "NonNormal"),
            SingularityType::WorseThanADE => write!(f, "WorseThanADE"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GermError {
    #[error("raise truncation order (undecided at order {0})")]
    RaiseTruncation(u32),
    #[error("germ does not pass through the origin")]
    NotThroughOrigin,
    #[error("germ is identically zero")]
    ZeroGerm,
    #[error("germ must live in two variables")]
    WrongArity,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A germ `f(x, y)` at the origin known modulo terms of total degree above
/// `truncation_order`; `exact` marks an honest polynomial.
#[derive(Clone, Debug)]
pub struct CurveGerm {
    pub f: MultiPoly,
    pub truncation_order: u32,
    pub exact: bool,
}

impl CurveGerm {
    pub fn polynomial(f: MultiPoly, truncation_order: u32) -> CurveGerm {
        CurveGerm {
            f,
            truncation_order,
            exact: true,
        }
    }

    pub fn series(f: MultiPoly, truncation_order: u32) -> CurveGerm {
        CurveGerm {
            f,
            truncation_order,
            exact: false,
        }
    }
}

/// One attempt at the germ's working order.
pub fn classify_curve_germ(g: &CurveGerm) -> Result<SingularityType, GermError> {
    if g.f.nvars() != 2 {
        return Err(GermError::WrongArity);
    }
    if g.exact && g.f.is_zero() {
        return Err(GermError::ZeroGerm);
    }
    if !g.f.constant_term().is_zero() {
        return Err(GermError::NotThroughOrigin);
    }
    if g.exact && g.f.order().unwrap_or(0) >= 2 && non_isolated(&g.f) {
        return Ok(SingularityType::NonNormal);
    }
    classify_at(&g.f, g.truncation_order, g.exact)
}

/// Retry with doubled orders according to `policy`.
pub fn classify_adaptive(f: &MultiPoly, exact: bool, policy: TruncationPolicy) -> Result<SingularityType, GermError> {
    let mut last = Err(GermError::RaiseTruncation(policy.start));
    for n in policy.schedule() {
        let g = CurveGerm {
            f: f.clone(),
            truncation_order: n,
            exact,
        };
        last = classify_curve_germ(&g);
        match last {
            Err(GermError::RaiseTruncation(_)) => continue,
            _ => return last,
        }
    }
    last
}

/// Type of the double cover `w^2 = f` over the origin.
pub fn double_cover_type(g: &CurveGerm) -> Result<SingularityType, GermError> {
    if !g.f.constant_term().is_zero() {
        return Ok(SingularityType::Smooth);
    }
    classify_curve_germ(g)
}

pub fn double_cover_adaptive(f: &MultiPoly, exact: bool, policy: TruncationPolicy) -> Result<SingularityType, GermError> {
    if !f.constant_term().is_zero() {
        return Ok(SingularityType::Smooth);
    }
    classify_adaptive(f, exact, policy)
}

/// Whether `f` has a monomial of total degree at most three.
pub fn quotient_singularity_test(f: &MultiPoly) -> bool {
    f.terms().any(|(m, _)| m.degree() <= 3)
}

/// A curve of singular points through the origin: a common factor of
/// `f, f_x, f_y` vanishing there.
fn non_isolated(f: &MultiPoly) -> bool {
    let g = f.gcd(&f.derivative(0)).gcd(&f.derivative(1));
    !g.is_constant() && g.constant_term().is_zero()
}

fn var(ring: &Arc<Ring>, i: usize) -> MultiPoly {
    MultiPoly::var(ring, i)
}

fn linear(ring: &Arc<Ring>, a: &FieldElement, b: &FieldElement) -> MultiPoly {
    &var(ring, 0).scale(a) + &var(ring, 1).scale(b)
}

fn classify_at(f: &MultiPoly, n: u32, exact: bool) -> Result<SingularityType, GermError> {
    let ft = f.truncate(n);
    let m = match ft.order() {
        Some(m) => m,
        None => return Err(GermError::RaiseTruncation(n)),
    };
    match m {
        0 => Err(GermError::NotThroughOrigin),
        1 => Ok(SingularityType::Smooth),
        2 => classify_double_point(&ft, f, n, exact),
        3 => classify_triple_point(&ft, f, n, exact),
        _ => Ok(SingularityType::WorseThanADE),
    }
}

fn classify_double_point(ft: &MultiPoly, f: &MultiPoly, n: u32, exact: bool) -> Result<SingularityType, GermError> {
    let ring = ft.ring().clone();
    let a = ft.coeff_of(&[2, 0]);
    let b = ft.coeff_of(&[1, 1]);
    let c = ft.coeff_of(&[0, 2]);
    let disc = &(&b * &b) - &(&(&a * &c) * &FieldElement::from_i64(4));
    if !disc.is_zero() {
        return Ok(SingularityType::A(1));
    }
    // move the double tangent to y = 0
    let (g, k) = if !a.is_zero() {
        let s = &b * &(&a * &FieldElement::from_i64(2)).inv();
        let images = [
            &var(&ring, 1) - &var(&ring, 0).scale(&s),
            var(&ring, 0),
        ];
        (ft.substitute(&images)?, a)
    } else {
        (ft.clone(), c)
    };
    let c_x = critical_value_1d(&g, &k, n);
    match c_x.order() {
        Some(o) => Ok(SingularityType::A(o - 1)),
        None => {
            if exact && non_isolated(f) {
                Ok(SingularityType::NonNormal)
            } else {
                Err(GermError::RaiseTruncation(n))
            }
        }
    }
}

/// For `g = k y^2 + ...` with no `x^2`, `xy` terms: solve `g_y(x, Y(x)) = 0`
/// and return `g(x, Y(x))` modulo `x^(n+1)`.
fn critical_value_1d(g: &MultiPoly, k: &FieldElement, n: u32) -> MultiPoly {
    let ring = g.ring().clone();
    let two_k = k * &FieldElement::from_i64(2);
    let rest = &g.derivative(1) - &var(&ring, 1).scale(&two_k);
    let scale = -&two_k.inv();
    let mut y = MultiPoly::zero(&ring);
    for _ in 0..n + 2 {
        let next = rest.substitute_trunc(&[var(&ring, 0), y.clone()], n).scale(&scale);
        if next == y {
            break;
        }
        y = next;
    }
    g.substitute_trunc(&[var(&ring, 0), y], n)
}

/// Linear change making `(x', y') = (l2, l1)` the new coordinates.
fn change_to_forms(f: &MultiPoly, l2: &BinaryForm, l1: &BinaryForm) -> Result<MultiPoly, GermError> {
    let m = vec![
        vec![l2.coeff(0).clone(), l2.coeff(1).clone()],
        vec![l1.coeff(0).clone(), l1.coeff(1).clone()],
    ];
    let inv = linalg::inverse(&m).ok_or_else(|| AlgebraError::Precondition("dependent tangent lines".into()))?;
    let ring = f.ring().clone();
    let images = [linear(&ring, &inv[0][0], &inv[0][1]), linear(&ring, &inv[1][0], &inv[1][1])];
    Ok(f.substitute(&images)?)
}

fn classify_triple_point(ft: &MultiPoly, f: &MultiPoly, n: u32, exact: bool) -> Result<SingularityType, GermError> {
    let cone = BinaryForm::from_multipoly(&ft.homogeneous_part(3), 0, 1, 3).expect("cubic tangent cone");
    let mults = cone.root_multiplicities();
    match mults.as_slice() {
        [1, 1, 1] => Ok(SingularityType::D(4)),
        [2, 1] => {
            let l1 = cone.roots_where(|m| m == 2);
            let l2 = cone.roots_where(|m| m == 1);
            let src = if exact { f } else { ft };
            let g = change_to_forms(src, &l2, &l1)?;
            let blown = blow_up_along_y0(&g);
            let next_n = n.saturating_sub(3).max(1);
            let inner = if exact {
                classify_at(&blown, blown.total_degree().unwrap_or(0).max(next_n), true)
            } else {
                classify_at(&blown, next_n, false)
            };
            match inner {
                Ok(SingularityType::Smooth) => Ok(SingularityType::D(5)),
                Ok(SingularityType::A(j)) => Ok(SingularityType::D(5 + j)),
                Ok(SingularityType::NonNormal) => Ok(SingularityType::NonNormal),
                Ok(_) => Ok(SingularityType::WorseThanADE),
                Err(GermError::RaiseTruncation(_)) => Err(GermError::RaiseTruncation(n)),
                Err(e) => Err(e),
            }
        }
        [3] => {
            let l = cone.roots_where(|_| true);
            let one = FieldElement::one();
            let zero = FieldElement::zero();
            let other = if !l.coeff(1).is_zero() {
                BinaryForm::new(vec![one, zero])
            } else {
                BinaryForm::new(vec![zero, one])
            };
            let g = change_to_forms(ft, &other, &l)?;
            if !g.coeff_of(&[4, 0]).is_zero() {
                Ok(SingularityType::E(6))
            } else if !g.coeff_of(&[3, 1]).is_zero() {
                Ok(SingularityType::E(7))
            } else if !g.coeff_of(&[5, 0]).is_zero() {
                Ok(SingularityType::E(8))
            } else if n < 5 {
                Err(GermError::RaiseTruncation(n))
            } else {
                Ok(SingularityType::WorseThanADE)
            }
        }
        _ => unreachable!("binary cubic root pattern"),
    }
}

/// Chart `y = x t` of the blow-up, divided by `x^3`.
fn blow_up_along_y0(g: &MultiPoly) -> MultiPoly {
    let ring = g.ring().clone();
    MultiPoly::from_terms(
        &ring,
        g.terms().map(|(m, c)| {
            let (a, b) = (m.0[0], m.0[1]);
            (Mono(vec![a + b - 3, b]), c.clone())
        }),
    )
}

/// Du Val type of the hypersurface germ `h(u, v, w) = 0` at the origin.
pub fn classify_surface_germ(h: &MultiPoly, policy: TruncationPolicy) -> Result<SingularityType, GermError> {
    if h.nvars() != 3 {
        return Err(GermError::WrongArity);
    }
    if !h.constant_term().is_zero() {
        return Err(GermError::NotThroughOrigin);
    }
    let mut last = Err(GermError::RaiseTruncation(policy.start));
    for n in policy.schedule() {
        last = surface_at(h, n);
        if !matches!(last, Err(GermError::RaiseTruncation(_))) {
            return last;
        }
    }
    last
}

/// One attempt on a surface germ known modulo degree `n + 1`.
pub fn classify_surface_series(h: &MultiPoly, n: u32) -> Result<SingularityType, GermError> {
    if h.nvars() != 3 {
        return Err(GermError::WrongArity);
    }
    surface_at(h, n)
}

fn surface_at(h: &MultiPoly, n: u32) -> Result<SingularityType, GermError> {
    let ht = h.truncate(n);
    let m = match ht.order() {
        Some(m) => m,
        None => return Err(GermError::RaiseTruncation(n)),
    };
    match m {
        1 => return Ok(SingularityType::Smooth),
        2 => {}
        _ => return Ok(SingularityType::WorseThanADE),
    }
    let ring = ht.ring().clone();
    let half = FieldElement::from_ratio(1, 2);
    let mut hess = vec![vec![FieldElement::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut e = vec![0u32; 3];
            e[i] += 1;
            e[j] += 1;
            let c = ht.coeff_of(&e);
            hess[i][j] = if i == j { c } else { &c * &half };
        }
    }
    let (p, d) = linalg::diagonalize_symmetric(&hess);
    let images: Vec<MultiPoly> = (0..3)
        .map(|i| {
            let mut acc = MultiPoly::zero(&ring);
            for j in 0..3 {
                acc = &acc + &var(&ring, j).scale(&p[i][j]);
            }
            acc
        })
        .collect();
    let g = ht.substitute_trunc(&images, n);
    let rank = d.iter().filter(|x| !x.is_zero()).count();
    match rank {
        3 => Ok(SingularityType::A(1)),
        2 => {
            let sol = solve_critical(&g, &d[..2], n);
            let c = g.substitute_trunc(&sol, n);
            match c.order() {
                Some(o) => Ok(SingularityType::A(o - 1)),
                None => Err(GermError::RaiseTruncation(n)),
            }
        }
        1 => {
            let sol = solve_critical(&g, &d[..1], n);
            let c = g.substitute_trunc(&sol, n);
            let plane = Ring::new(&["u", "v"]);
            let c2 = c.embed(&plane, &[0, 0, 1]);
            let c2 = MultiPoly::from_terms(&plane, c2.terms().map(|(m, a)| (m.clone(), a.clone())));
            match classify_at(&c2, n, false) {
                Err(GermError::RaiseTruncation(_)) => Err(GermError::RaiseTruncation(n)),
                r => r,
            }
        }
        _ => Ok(SingularityType::WorseThanADE),
    }
}

/// Solve `dg/dx_j = 0` for the first `diag.len()` variables as series in the
/// rest; returns substitution images for all three variables.
fn solve_critical(g: &MultiPoly, diag: &[FieldElement], n: u32) -> Vec<MultiPoly> {
    let ring = g.ring().clone();
    let k = diag.len();
    let rests: Vec<MultiPoly> = (0..k)
        .map(|j| &g.derivative(j) - &var(&ring, j).scale(&(&diag[j] * &FieldElement::from_i64(2))))
        .collect();
    let scales: Vec<FieldElement> = (0..k).map(|j| -&(&diag[j] * &FieldElement::from_i64(2)).inv()).collect();
    let mut images: Vec<MultiPoly> = (0..3)
        .map(|i| if i < k { MultiPoly::zero(&ring) } else { var(&ring, i) })
        .collect();
    for _ in 0..n + 2 {
        let next: Vec<MultiPoly> = (0..k)
            .map(|j| rests[j].substitute_trunc(&images, n).scale(&scales[j]))
            .collect();
        if next.iter().zip(&images).all(|(a, b)| a == b) {
            break;
        }
        for (j, v) in next.into_iter().enumerate() {
            images[j] = v;
        }
    }
    images
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Ring> {
        Ring::new(&["x", "y"])
    }

    fn classify(terms: &[(i64, &[u32])]) -> SingularityType {
        let f = MultiPoly::from_int_terms(&xy(), terms);
        classify_adaptive(&f, true, TruncationPolicy::default()).unwrap()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(classify(&[(1, &[0, 2]), (-1, &[3, 0])]), SingularityType::A(2));
        assert_eq!(classify(&[(1, &[0, 2]), (1, &[7, 0])]), SingularityType::A(6));
        assert_eq!(classify(&[(1, &[2, 1]), (1, &[0, 4])]), SingularityType::D(5));
        assert_eq!(classify(&[(1, &[0, 3]), (1, &[4, 0])]), SingularityType::E(6));
        assert_eq!(classify(&[(1, &[0, 3]), (1, &[3, 1])]), SingularityType::E(7));
        assert_eq!(classify(&[(1, &[0, 3]), (1, &[5, 0])]), SingularityType::E(8));
        assert_eq!(classify(&[(1, &[4, 0]), (1, &[0, 4])]), SingularityType::WorseThanADE);
    }

    #[test]
    fn three_lines_is_d4() {
        // y (x - y)(x + y)
        assert_eq!(classify(&[(1, &[2, 1]), (-1, &[0, 3])]), SingularityType::D(4));
    }

    #[test]
    fn square_is_non_normal() {
        // (y - x^2)^2
        assert_eq!(
            classify(&[(1, &[0, 2]), (-2, &[2, 1]), (1, &[4, 0])]),
            SingularityType::NonNormal
        );
    }

    #[test]
    fn tacnode_of_two_conics() {
        // (z^2 + y)(2 z^2 + y) in local coordinates (y, z) = (x, y) here
        let f = MultiPoly::from_int_terms(&xy(), &[(1, &[2, 0]), (3, &[1, 2]), (2, &[0, 4])]);
        assert_eq!(classify_adaptive(&f, true, TruncationPolicy::default()).unwrap(), SingularityType::A(3));
    }

    #[test]
    fn truncation_error_is_reported() {
        let f = MultiPoly::from_int_terms(&xy(), &[(1, &[0, 2]), (1, &[30, 0])]);
        let g = CurveGerm::series(f, 24);
        assert_eq!(classify_curve_germ(&g), Err(GermError::RaiseTruncation(24)));
    }

    #[test]
    fn cyclic_canonical_form() {
        assert_eq!(SingularityType::cyclic(9, 5), Some(SingularityType::CyclicQuotient { n: 9, a: 2 }));
        assert_eq!(SingularityType::cyclic(8, 3).unwrap().to_string(), "1/8(1,3)");
        assert_eq!(SingularityType::parse("1/9(1,5)"), SingularityType::cyclic(9, 2));
        assert_eq!(SingularityType::parse("E7"), Some(SingularityType::E(7)));
    }

    #[test]
    fn surface_germs() {
        let r = Ring::new(&["u", "v", "w"]);
        let pol = TruncationPolicy::surface();
        // u^2 + v^2 + w^4: A3
        let h = MultiPoly::from_int_terms(&r, &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 4])]);
        assert_eq!(classify_surface_germ(&h, pol).unwrap(), SingularityType::A(3));
        // u^2 + v^3 + w^4: E6
        let h = MultiPoly::from_int_terms(&r, &[(1, &[2, 0, 0]), (1, &[0, 3, 0]), (1, &[0, 0, 4])]);
        assert_eq!(classify_surface_germ(&h, pol).unwrap(), SingularityType::E(6));
        // uv + w^2: A1
        let h = MultiPoly::from_int_terms(&r, &[(1, &[1, 1, 0]), (1, &[0, 0, 2])]);
        assert_eq!(classify_surface_germ(&h, pol).unwrap(), SingularityType::A(1));
    }

    #[test]
    fn quotient_test_examples() {
        let r = xy();
        assert!(!quotient_singularity_test(&MultiPoly::from_int_terms(&r, &[(1, &[4, 0]), (1, &[0, 4])])));
        assert!(quotient_singularity_test(&MultiPoly::from_int_terms(&r, &[(1, &[3, 0]), (1, &[0, 5])])));
        assert!(quotient_singularity_test(&MultiPoly::from_int_terms(&r, &[(1, &[1, 1])])));
    }
}
