//! Torus GIT on the deformation spaces of the degree-one surfaces `X1T` and `X1e`.

use crate::gitstab::{torus_stability, Certificate, GitError, StabilityClass, TorusPoint, Verdict};
use crate::polyalg::FieldElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefSpace {
    /// Representatives `(v1, v2, v3)` of the three blocks, rank-two torus.
    X1T,
    /// `(a1, a2, b0, ..., b6)`, rank-one torus.
    X1e,
}

impl DefSpace {
    pub fn name(&self) -> &'static str {
        match self {
            DefSpace::X1T => "X1T",
            DefSpace::X1e => "X1e",
        }
    }

    pub fn weights(&self) -> Vec<Vec<i64>> {
        match self {
            DefSpace::X1T => vec![vec![1, -1], vec![-3, 6], vec![-3, -3]],
            DefSpace::X1e => {
                let mut w = vec![vec![-4], vec![-2]];
                w.extend((0..7).map(|i| vec![8 - i]));
                w
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.weights().len()
    }

    pub fn torus_rank(&self) -> usize {
        self.weights()[0].len()
    }

    /// Coordinate blocks as index ranges.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        match self {
            DefSpace::X1T => vec![0..1, 1..2, 2..3],
            DefSpace::X1e => vec![0..2, 2..9],
        }
    }
}

fn point(space: DefSpace, v: &[FieldElement]) -> Result<TorusPoint, GitError> {
    if v.len() != space.dim() {
        return Err(GitError::DimensionMismatch {
            expected: space.dim(),
            got: v.len(),
        });
    }
    TorusPoint::new(v.to_vec(), space.weights())
}

/// The origin is the surface itself, a fixed point, hence polystable.
pub fn def_polystability(space: DefSpace, v: &[FieldElement]) -> Result<Verdict, GitError> {
    let p = point(space, v)?;
    if v.iter().all(|x| x.is_zero()) {
        return Ok(Verdict::of(StabilityClass::PolystableNotStable).flag("fixed point"));
    }
    torus_stability(&p)
}

pub fn destabilizing_1ps(space: DefSpace, v: &[FieldElement]) -> Result<Option<Certificate>, GitError> {
    let verdict = def_polystability(space, v)?;
    Ok(verdict.certificate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<FieldElement> {
        x.iter().map(|&a| FieldElement::from_i64(a)).collect()
    }

    #[test]
    fn x1t_patterns() {
        let c = |x: &[i64]| def_polystability(DefSpace::X1T, &v(x)).unwrap();
        assert_eq!(c(&[1, 1, 1]).class, StabilityClass::Stable);
        assert_eq!(c(&[0, 0, 0]).class, StabilityClass::PolystableNotStable);
        assert_eq!(c(&[0, 1, 1]).certificate.unwrap().one_ps, vec![-1, 0]);
        assert_eq!(c(&[1, 1, 0]).certificate.unwrap().one_ps, vec![3, 2]);
        assert_eq!(c(&[1, 0, 1]).certificate.unwrap().one_ps, vec![0, -1]);
    }
}
