//! T-singularities, Hirzebruch-Jung strings, the Markov-type equation
//! `a^2 + b^2 + 2c^2 = 4abc`, the orbifold order bound and per-degree menus.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::germ::{mod_inverse, SingularityType};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("invalid cyclic quotient 1/{n}(1,{a}): need n >= 2, 1 <= a < n, gcd(a, n) = 1")]
    InvalidQuotient { n: u64, a: u64 },
    #[error("degree must be 1, 2, 3 or 4, got {0}")]
    InvalidDegree(u32),
    #[error("unsupported singularity type {0}")]
    Unsupported(String),
    #[error("Milnor number undefined in this checker: {0}")]
    MilnorUndefined(String),
}

/// `1/(d n^2)(1, d n a - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TSingularity {
    pub d: u64,
    pub n: u64,
    pub a: u64,
}

impl TSingularity {
    pub fn index(&self) -> u64 {
        self.d * self.n * self.n
    }

    pub fn weight(&self) -> u64 {
        (self.d * self.n * self.a - 1) % self.index()
    }

    pub fn is_du_val(&self) -> bool {
        self.n == 1
    }

    pub fn singularity_type(&self) -> SingularityType {
        if self.is_du_val() {
            SingularityType::A((self.d - 1) as u32)
        } else {
            SingularityType::cyclic(self.index(), self.weight()).expect("T-singularities are valid quotients")
        }
    }
}

fn check_quotient(n: u64, a: u64) -> Result<(), EnumError> {
    if n < 2 || a == 0 || a >= n || a.gcd(&n) != 1 {
        return Err(EnumError::InvalidQuotient { n, a });
    }
    Ok(())
}

fn check_degree(d: u32) -> Result<(), EnumError> {
    if !(1..=4).contains(&d) {
        return Err(EnumError::InvalidDegree(d));
    }
    Ok(())
}

/// Match `a` against `d n0 a0 - 1 (mod d n0^2)` by solving for `a0` per square divisor.
fn match_weight(n: u64, a: u64) -> Option<TSingularity> {
    let mut n0 = (n as f64).sqrt() as u64 + 1;
    while n0 >= 1 {
        if n % (n0 * n0) == 0 {
            let d = n / (n0 * n0);
            if (a + 1) % (d * n0) == 0 {
                let a0 = ((a + 1) / (d * n0)) % n0;
                if n0 == 1 {
                    return Some(TSingularity { d, n: 1, a: 1 });
                }
                if a0 != 0 && a0.gcd(&n0) == 1 {
                    return Some(TSingularity { d, n: n0, a: a0 });
                }
            }
        }
        n0 -= 1;
    }
    None
}

/// The T-decomposition of `1/n(1,a)` or of `1/n(1,a^-1)`.
pub fn is_t_singularity(n: u64, a: u64) -> Result<Option<TSingularity>, EnumError> {
    check_quotient(n, a)?;
    Ok(match_weight(n, a).or_else(|| match_weight(n, mod_inverse(a, n))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HJString {
    pub n: u64,
    /// `min(a, a^-1 mod n)`.
    pub a: u64,
    pub expansion: Vec<u64>,
    pub string: Vec<i64>,
    pub reversed: Vec<i64>,
}

/// `n/a = b1 - 1/(b2 - 1/(...))`.
pub fn hj_expansion(n: u64, a: u64) -> Result<HJString, EnumError> {
    check_quotient(n, a)?;
    let a = a.min(mod_inverse(a, n));
    let (mut p, mut q) = (n, a);
    let mut expansion = vec![];
    while q > 0 {
        let b = p.div_ceil(q);
        expansion.push(b);
        (p, q) = (q, b * q - p);
    }
    let string: Vec<i64> = expansion.iter().map(|&b| -(b as i64)).collect();
    let reversed = string.iter().rev().copied().collect();
    Ok(HJString {
        n,
        a,
        expansion,
        string,
        reversed,
    })
}

/// Positive solutions with `max(a, b, c) <= bound`, by mutation from `(1,1,1)`.
pub fn markov_solutions(bound: u64) -> Vec<(u64, u64, u64)> {
    let mut seen = BTreeSet::new();
    if bound == 0 {
        return vec![];
    }
    let mut stack = vec![(1u64, 1u64, 1u64)];
    while let Some(s @ (a, b, c)) = stack.pop() {
        if a.max(b).max(c) > bound || !seen.insert(s) {
            continue;
        }
        let next = [
            (4 * b * c - a, b, c),
            (a, 4 * a * c - b, c),
            (a, b, 2 * a * b - c),
        ];
        stack.extend(next.into_iter().filter(|t| t.0 > 0 && t.1 > 0 && t.2 > 0));
    }
    seen.into_iter().collect()
}

/// Order of the local fundamental group.
pub fn orbifold_order(t: &SingularityType) -> Result<u64, EnumError> {
    Ok(match *t {
        SingularityType::Smooth => 1,
        SingularityType::A(k) => k as u64 + 1,
        SingularityType::D(k) => 4 * (k as u64 - 2),
        SingularityType::E(6) => 24,
        SingularityType::E(7) => 48,
        SingularityType::E(8) => 120,
        SingularityType::CyclicQuotient { n, .. } => n,
        ref other => return Err(EnumError::Unsupported(other.to_string())),
    })
}

/// `|Gamma| * d < 12`.
pub fn order_bound_filter(d: u32, t: &SingularityType) -> Result<bool, EnumError> {
    check_degree(d)?;
    Ok(orbifold_order(t)? * (d as u64) < 12)
}

fn menu_order(t: &SingularityType) -> (u8, u64, u64) {
    match *t {
        SingularityType::A(k) => (0, k as u64, 0),
        SingularityType::D(k) => (1, k as u64, 0),
        SingularityType::E(k) => (2, k as u64, 0),
        SingularityType::CyclicQuotient { n, a } => (3, n, a),
        _ => (4, 0, 0),
    }
}

/// Singularity types allowed in degree `d`: T-singularities (Du Val ones
/// included) within the order bound. With `noether`, ADE types are further
/// limited to Milnor number at most `9 - d`. Types, not multisets.
pub fn gh_menu(d: u32, noether: bool) -> Result<Vec<SingularityType>, EnumError> {
    check_degree(d)?;
    let limit = 12 / d as u64 + 1;
    let mut out: BTreeSet<SingularityType> = BTreeSet::new();
    for k in 1..limit as u32 {
        out.insert(SingularityType::A(k));
    }
    for k in 4..limit as u32 {
        out.insert(SingularityType::D(k));
    }
    for k in 6..=8 {
        out.insert(SingularityType::E(k));
    }
    for n in 2..limit {
        for a in 1..n {
            if a.gcd(&n) == 1 {
                if let Some(t) = is_t_singularity(n, a)? {
                    out.insert(t.singularity_type());
                }
            }
        }
    }
    let mut menu = vec![];
    for t in out {
        if !order_bound_filter(d, &t)? {
            continue;
        }
        if noether && t.milnor().is_some_and(|m| m > 9 - d) {
            continue;
        }
        menu.push(t);
    }
    menu.sort_by_key(menu_order);
    Ok(menu)
}

/// `rho + d + sum mu = 10` for ADE-only profiles.
pub fn noether_check(d: u32, picard_rank: u32, profile: &[SingularityType]) -> Result<bool, EnumError> {
    check_degree(d)?;
    let mut total = 0;
    for t in profile {
        match (t.is_ade() || *t == SingularityType::Smooth, t.milnor()) {
            (true, Some(m)) => total += m,
            _ => return Err(EnumError::MilnorUndefined(t.to_string())),
        }
    }
    Ok(picard_rank + d + total == 10)
}

/// Admissible Bergman exponents `k`, as `k in step * Z+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BergmanExponents {
    pub step: u32,
}

impl BergmanExponents {
    pub fn contains(&self, k: u32) -> bool {
        k >= 1 && k % self.step == 0
    }
}

impl fmt::Display for BergmanExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.step == 1 {
            write!(f, "k >= 1")
        } else {
            write!(f, "k = {}l, l >= 1", self.step)
        }
    }
}

pub fn bergman_exponents(d: u32) -> Result<BergmanExponents, EnumError> {
    check_degree(d)?;
    Ok(BergmanExponents {
        step: match d {
            1 => 6,
            2 => 2,
            _ => 1,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[SingularityType]) -> Vec<String> {
        v.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn menus() {
        assert_eq!(names(&gh_menu(4, false).unwrap()), ["A1"]);
        assert_eq!(names(&gh_menu(3, false).unwrap()), ["A1", "A2"]);
        assert_eq!(names(&gh_menu(2, false).unwrap()), ["A1", "A2", "A3", "A4", "1/4(1,1)"]);
        assert_eq!(gh_menu(1, false).unwrap().len(), 14);
        assert_eq!(gh_menu(1, true).unwrap().len(), 12);
    }

    #[test]
    fn hj_nine_two() {
        let h = hj_expansion(9, 2).unwrap();
        assert_eq!(h.expansion, [5, 2]);
        assert_eq!(h.reversed, [-2, -5]);
        assert_eq!(hj_expansion(4, 1).unwrap().expansion, [4]);
    }

    #[test]
    fn t_examples() {
        assert_eq!(is_t_singularity(4, 1).unwrap(), Some(TSingularity { d: 1, n: 2, a: 1 }));
        assert_eq!(is_t_singularity(9, 2).unwrap().map(|t| (t.d, t.n)), Some((1, 3)));
        assert_eq!(is_t_singularity(7, 1).unwrap(), None);
        assert!(is_t_singularity(6, 2).is_err());
    }
}
