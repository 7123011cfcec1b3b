//! Dense exact linear algebra over `FieldElement`.

use super::field::FieldElement;
use super::upoly::UPoly;

pub type Matrix = Vec<Vec<FieldElement>>;

pub fn from_i64(rows: &[&[i64]]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| FieldElement::from_i64(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { FieldElement::one() } else { FieldElement::zero() }).collect())
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| {
            (0..m)
                .map(|j| {
                    let mut acc = FieldElement::zero();
                    for (k, x) in r.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(x * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mul_vec(a: &Matrix, v: &[FieldElement]) -> Vec<FieldElement> {
    a.iter()
        .map(|r| {
            let mut acc = FieldElement::zero();
            for (x, y) in r.iter().zip(v) {
                acc = &acc + &(x * y);
            }
            acc
        })
        .collect()
}

pub fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn scale(a: &Matrix, c: &FieldElement) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

/// `v^T A w`
pub fn bilinear(a: &Matrix, v: &[FieldElement], w: &[FieldElement]) -> FieldElement {
    let aw = mul_vec(a, w);
    let mut acc = FieldElement::zero();
    for (x, y) in v.iter().zip(&aw) {
        acc = &acc + &(x * y);
    }
    acc
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(a: &Matrix) -> (Matrix, Vec<usize>) {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(a: &Matrix) -> usize {
    rref(a).1.len()
}

/// A basis of the right kernel.
pub fn kernel(a: &Matrix) -> Vec<Vec<FieldElement>> {
    let cols = a.first().map_or(0, |r| r.len());
    let (m, piv) = rref(a);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![FieldElement::zero(); cols];
            v[f] = FieldElement::one();
            for (r, &p) in piv.iter().enumerate() {
                v[p] = -&m[r][f];
            }
            v
        })
        .collect()
}

pub fn det(a: &Matrix) -> FieldElement {
    let n = a.len();
    let mut m = a.clone();
    let mut d = FieldElement::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return FieldElement::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -&d;
        }
        d = &d * &m[c][c];
        let inv = m[c][c].inv();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
    }
    d
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let (m, piv) = rref(&aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Congruence diagonalization of a symmetric matrix: returns `(P, D)` with
/// `P^T A P = diag(D)`, `P` invertible. Nonzero entries of `D` come first.
pub fn diagonalize_symmetric(a: &Matrix) -> (Matrix, Vec<FieldElement>) {
    let n = a.len();
    let mut m = a.clone();
    let mut p = identity(n);
    // column operations are mirrored on rows to keep symmetry
    let add_col = |m: &mut Matrix, p: &mut Matrix, dst: usize, src: usize, f: &FieldElement| {
        for r in 0..n {
            let t = f * &m[r][src];
            m[r][dst] = &m[r][dst] + &t;
            let t = f * &p[r][src];
            p[r][dst] = &p[r][dst] + &t;
        }
        for c in 0..n {
            let t = f * &m[src][c];
            m[dst][c] = &m[dst][c] + &t;
        }
    };
    let swap = |m: &mut Matrix, p: &mut Matrix, i: usize, j: usize| {
        m.swap(i, j);
        for r in m.iter_mut() {
            r.swap(i, j);
        }
        for r in p.iter_mut() {
            r.swap(i, j);
        }
    };
    let mut k = 0;
    while k < n {
        if m[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                swap(&mut m, &mut p, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                add_col(&mut m, &mut p, k, j, &FieldElement::one());
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_zero())
            {
                add_col(&mut m, &mut p, i, j, &FieldElement::one());
                continue;
            } else {
                break;
            }
        }
        if m[k][k].is_zero() {
            continue;
        }
        let inv = m[k][k].inv();
        for j in k + 1..n {
            if !m[k][j].is_zero() {
                let f = -&(&m[k][j] * &inv);
                add_col(&mut m, &mut p, j, k, &f);
            }
        }
        k += 1;
    }
    let d = (0..n).map(|i| m[i][i].clone()).collect();
    (p, d)
}

/// The polynomial of degree `< xs.len()` through the points `(xs[i], ys[i])`.
pub fn interpolate(xs: &[FieldElement], ys: &[FieldElement]) -> UPoly {
    let n = xs.len();
    let vand: Matrix = xs.iter().map(|x| (0..n).map(|k| x.pow(k as u32)).collect()).collect();
    let inv = inverse(&vand).expect("interpolation nodes must be distinct");
    UPoly::new(mul_vec(&inv, ys))
}

/// `det(t I - A)`.
pub fn char_poly(a: &Matrix) -> UPoly {
    let n = a.len();
    let xs: Vec<FieldElement> = (0..=n).map(|t| FieldElement::from_i64(t as i64)).collect();
    let ys: Vec<FieldElement> = xs
        .iter()
        .map(|t| {
            let m: Matrix = (0..n)
                .map(|i| (0..n).map(|j| if i == j { t - &a[i][j] } else { -&a[i][j] }).collect())
                .collect();
            det(&m)
        })
        .collect();
    interpolate(&xs, &ys)
}

/// `p(A)` by Horner's rule.
pub fn eval_poly(p: &UPoly, a: &Matrix) -> Matrix {
    let n = a.len();
    let mut acc: Matrix = vec![vec![FieldElement::zero(); n]; n];
    for c in p.coeffs().iter().rev() {
        acc = mul(&acc, a);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] = &row[i] + c;
        }
    }
    acc
}

pub fn is_zero(a: &Matrix) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonalizes_hyperbolic_plane() {
        let a = from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
        let (p, d) = diagonalize_symmetric(&a);
        let pt = transpose(&p);
        let b = mul(&mul(&pt, &a), &p);
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert_eq!(b[i][i], d[i]);
                } else {
                    assert!(b[i][j].is_zero());
                }
            }
        }
        assert!(!d[0].is_zero() && !d[1].is_zero() && d[2].is_zero());
        assert!(!det(&p).is_zero());
    }

    #[test]
    fn kernel_and_inverse() {
        let a = from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mul_vec(&a, v).iter().all(|x| x.is_zero()));
        }
        let b = from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(mul(&b, &inverse(&b).unwrap()), identity(2));
        assert_eq!(det(&b), FieldElement::one());
        // t^2 - 3t + 1
        assert_eq!(char_poly(&b), UPoly::from_i64(&[1, -3, 1]));
        assert!(is_zero(&eval_poly(&char_poly(&b), &b)));
    }
}
