//! Hilbert-Mumford for a torus acting diagonally: stability of a point is
//! decided by the position of the origin relative to the convex hull of the
//! weights of its nonzero coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polyalg::linalg;
use crate::polyalg::{rat, FieldElement, Rational};

use super::lp::{maximize, LpOutcome};
use super::{Certificate, GitError, StabilityClass, Verdict};

/// A point of a torus representation with the weight of each coordinate.
#[derive(Clone, Debug)]
pub struct TorusPoint {
    pub coords: Vec<FieldElement>,
    pub weights: Vec<Vec<i64>>,
}

impl TorusPoint {
    pub fn new(coords: Vec<FieldElement>, weights: Vec<Vec<i64>>) -> Result<TorusPoint, GitError> {
        if coords.len() != weights.len() {
            return Err(GitError::DimensionMismatch {
                expected: weights.len(),
                got: coords.len(),
            });
        }
        let r = weights.first().map_or(0, |w| w.len());
        if r == 0 || weights.iter().any(|w| w.len() != r) {
            return Err(GitError::Precondition("weights must all have the same positive rank".into()));
        }
        Ok(TorusPoint { coords, weights })
    }

    pub fn rank(&self) -> usize {
        self.weights[0].len()
    }

    /// Weights of the nonzero coordinates.
    pub fn support(&self) -> Vec<Vec<i64>> {
        self.coords
            .iter()
            .zip(&self.weights)
            .filter(|(c, _)| !c.is_zero())
            .map(|(_, w)| w.clone())
            .collect()
    }
}

fn to_q(s: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    s.iter().map(|w| w.iter().map(|&x| rat(x)).collect()).collect()
}

/// LP over `lambda >= 0`: `sum lambda_i = 1`, `sum lambda_i s_i = 0`.
fn hull_constraints(s: &[Vec<i64>]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let r = s[0].len();
    let m = s.len();
    let mut a = Vec::with_capacity(r + 1);
    for k in 0..r {
        a.push((0..m).map(|i| rat(s[i][k])).collect());
    }
    a.push(vec![rat(1); m]);
    let mut b = vec![Rational::zero(); r];
    b.push(rat(1));
    (a, b)
}

/// Whether the origin lies in the convex hull of `s`.
pub fn origin_in_hull(s: &[Vec<i64>]) -> bool {
    let (a, b) = hull_constraints(s);
    !matches!(maximize(&a, &b, &vec![Rational::zero(); s.len()]), LpOutcome::Infeasible)
}

/// Whether the origin lies in the relative interior of the convex hull of `s`:
/// some convex combination giving zero uses every point with positive weight.
pub fn origin_in_relative_interior(s: &[Vec<i64>]) -> bool {
    let (a, b) = hull_constraints(s);
    (0..s.len()).all(|j| {
        let mut c = vec![Rational::zero(); s.len()];
        c[j] = Rational::one();
        matches!(maximize(&a, &b, &c), LpOutcome::Optimal { value, .. } if value.is_positive())
    })
}

pub fn weight_rank(s: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<FieldElement>> = s.iter().map(|w| w.iter().map(|&x| FieldElement::from_i64(x)).collect()).collect();
    linalg::rank(&m)
}

/// A rational functional `mu` with `<mu, s_i> >= 1` for all `i`, if one exists.
fn separating_functional(s: &[Vec<i64>]) -> Option<Vec<Rational>> {
    let r = s[0].len();
    let m = s.len();
    // variables: mu+ (r), mu- (r), slack (m)
    let q = to_q(s);
    let mut a = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(2 * r + m);
        row.extend(q[i].iter().cloned());
        row.extend(q[i].iter().map(|x| -x));
        for j in 0..m {
            row.push(if i == j { -Rational::one() } else { Rational::zero() });
        }
        a.push(row);
    }
    let b = vec![rat(1); m];
    let c = vec![Rational::zero(); 2 * r + m];
    match maximize(&a, &b, &c) {
        LpOutcome::Optimal { x, .. } => Some((0..r).map(|k| &x[k] - &x[r + k]).collect()),
        _ => None,
    }
}

fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

fn pairs_positive(s: &[Vec<i64>], v: &[i64]) -> bool {
    s.iter().all(|w| w.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() > 0)
}

/// Smallest max-norm destabilizing 1-PS, first in lexicographic order among
/// vectors of that norm; the cleared LP solution when the search would be large.
pub fn destabilizing_one_ps(s: &[Vec<i64>]) -> Option<Vec<i64>> {
    let mu = separating_functional(s)?;
    let cleared = clear_denominators(&mu);
    let bound = cleared.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero);
    let r = s[0].len();
    let fallback = || cleared.iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>();
    let Some(b) = bound.to_i64() else {
        return fallback();
    };
    let work = ((2 * b + 1) as f64).powi(r as i32);
    if work > 2.0e6 {
        return fallback();
    }
    for k in 1..=b {
        let mut v = vec![-k; r];
        'search: loop {
            if v.iter().any(|x| x.abs() == k) && pairs_positive(s, &v) {
                return Some(v);
            }
            let mut i = r;
            while i > 0 {
                i -= 1;
                if v[i] < k {
                    v[i] += 1;
                    for x in v.iter_mut().skip(i + 1) {
                        *x = -k;
                    }
                    continue 'search;
                }
            }
            break;
        }
    }
    fallback()
}

/// Classify a point for the torus action.
pub fn torus_stability(p: &TorusPoint) -> Result<Verdict, GitError> {
    let s = p.support();
    if s.is_empty() {
        return Err(GitError::EmptySupport);
    }
    if !origin_in_hull(&s) {
        let one_ps = destabilizing_one_ps(&s).expect("origin outside the hull is separated");
        return Ok(Verdict {
            class: StabilityClass::Unstable,
            certificate: Some(Certificate {
                one_ps,
                support_weights: s,
                frame: None,
            }),
            flags: vec![],
        });
    }
    let class = if !origin_in_relative_interior(&s) {
        StabilityClass::SemistableNotPolystable
    } else if weight_rank(&s) == p.rank() {
        StabilityClass::Stable
    } else {
        StabilityClass::PolystableNotStable
    };
    Ok(Verdict {
        class,
        certificate: None,
        flags: vec![],
    })
}
