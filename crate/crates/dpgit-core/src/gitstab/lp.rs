//! Exact rational simplex with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::polyalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, x: Vec<Rational> },
}

/// Maximize `c.x` subject to `A x = b`, `x >= 0`.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    // rows with b >= 0, one artificial per row
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Rational> = a[i].iter().map(|x| if flip { -x } else { x.clone() }).collect();
        for j in 0..m {
            row.push(if i == j { Rational::one() } else { Rational::zero() });
        }
        row.push(if flip { -&b[i] } else { b[i].clone() });
        t.push(row);
    }
    let width = n + m;
    let mut basis: Vec<usize> = (n..n + m).collect();
    // phase 1: maximize -sum(artificials)
    let mut obj1 = vec![Rational::zero(); width];
    for o in obj1.iter_mut().skip(n) {
        *o = -Rational::one();
    }
    if run(&mut t, &mut basis, &obj1, width) == Step::Unbounded {
        return LpOutcome::Unbounded;
    }
    let phase1: Rational = basis
        .iter()
        .zip(&t)
        .filter(|(&bj, _)| bj >= n)
        .map(|(_, r)| r[width].clone())
        .fold(Rational::zero(), |a, x| a + x);
    if !phase1.is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
            }
        }
    }
    let keep: Vec<usize> = (0..m).filter(|&i| basis[i] < n).collect();
    let mut t2: Vec<Vec<Rational>> = keep
        .iter()
        .map(|&i| {
            let mut r: Vec<Rational> = t[i][..n].to_vec();
            r.push(t[i][width].clone());
            r
        })
        .collect();
    let mut basis2: Vec<usize> = keep.iter().map(|&i| basis[i]).collect();
    if run(&mut t2, &mut basis2, c, n) == Step::Unbounded {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bj) in basis2.iter().enumerate() {
        x[bj] = t2[i][n].clone();
    }
    let value = c.iter().zip(&x).map(|(p, q)| p * q).fold(Rational::zero(), |a, v| a + v);
    LpOutcome::Optimal { value, x }
}

#[derive(PartialEq, Eq)]
enum Step {
    Optimal,
    Unbounded,
}

fn pivot(t: &mut [Vec<Rational>], basis: &mut [usize], r: usize, c: usize) {
    let p = t[r][c].clone();
    for x in t[r].iter_mut() {
        *x = &*x / &p;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                *x = &*x - &(&f * y);
            }
        }
    }
    basis[r] = c;
}

/// Primal simplex on a feasible tableau whose last column is the right-hand side.
fn run(t: &mut [Vec<Rational>], basis: &mut [usize], c: &[Rational], width: usize) -> Step {
    loop {
        // reduced cost c_j - c_B B^-1 A_j
        let entering = (0..width).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut rc = c[j].clone();
            for (i, &bj) in basis.iter().enumerate() {
                rc -= &c[bj] * &t[i][j];
            }
            rc.is_positive()
        });
        let Some(j) = entering else {
            return Step::Optimal;
        };
        let mut best: Option<(Rational, usize, usize)> = None;
        for i in 0..t.len() {
            if t[i][j].is_positive() {
                let ratio = &t[i][width] / &t[i][j];
                let better = match &best {
                    None => true,
                    Some((r, _, b)) => ratio < *r || (ratio == *r && basis[i] < *b),
                };
                if better {
                    best = Some((ratio, i, basis[i]));
                }
            }
        }
        match best {
            None => return Step::Unbounded,
            Some((_, i, _)) => pivot(t, basis, i, j),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    #[test]
    fn small_lp() {
        // max x + y, x + 2y + s = 4, 3x + y + t = 6
        let a = vec![
            vec![rat(1), rat(2), rat(1), rat(0)],
            vec![rat(3), rat(1), rat(0), rat(1)],
        ];
        let b = vec![rat(4), rat(6)];
        let c = vec![rat(1), rat(1), rat(0), rat(0)];
        match maximize(&a, &b, &c) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, crate::polyalg::ratio(14, 5)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn infeasible() {
        let a = vec![vec![rat(1)]];
        let b = vec![rat(-1)];
        assert_eq!(maximize(&a, &b, &[rat(0)]), LpOutcome::Infeasible);
    }
}
