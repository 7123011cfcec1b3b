//! Dense univariate polynomials over a `FieldElement` field.

use super::field::FieldElement;

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    c: Vec<FieldElement>,
}

impl UPoly {
    pub fn new(mut c: Vec<FieldElement>) -> UPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> UPoly {
        UPoly { c: vec![] }
    }

    pub fn one() -> UPoly {
        UPoly::new(vec![FieldElement::one()])
    }

    pub fn constant(a: FieldElement) -> UPoly {
        UPoly::new(vec![a])
    }

    /// x - a
    pub fn linear_root(a: &FieldElement) -> UPoly {
        UPoly::new(vec![-a, FieldElement::one()])
    }

    pub fn from_i64(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| FieldElement::from_i64(x)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.c.get(k).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn lc(&self) -> FieldElement {
        self.c.last().cloned().unwrap_or_else(FieldElement::zero)
    }

    /// Lowest power of x with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![FieldElement::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, a: &FieldElement) -> UPoly {
        UPoly::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        let inv = d.lc().inv();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![FieldElement::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd] * &inv;
            if !top.is_zero() {
                for j in 0..=dd {
                    r[k + j] = &r[k + j] - &(&top * &d.c[j]);
                }
            }
            q[k] = top;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    /// Exact quotient; panics on a nonzero remainder.
    pub fn div_exact(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let inv = self.lc().inv();
        self.scale(&inv)
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * &FieldElement::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    /// p(q(x))
    pub fn compose(&self, q: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(q).add(&UPoly::constant(a.clone()));
        }
        acc
    }

    /// Yun's algorithm: returns squarefree `s_1, s_2, ...` with `self = lc * prod s_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<UPoly> {
        assert!(!self.is_zero());
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_exact(&a);
        let mut c = df.div_exact(&a);
        let mut out = Vec::new();
        loop {
            let d = c.sub(&b.derivative());
            if b.degree() == Some(0) {
                break;
            }
            let g = b.gcd(&d);
            out.push(g.clone());
            b = b.div_exact(&g);
            c = d.div_exact(&g);
        }
        out
    }

    pub fn squarefree_part(&self) -> UPoly {
        let f = self.monic();
        f.div_exact(&f.gcd(&f.derivative()))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Multiplicity of every distinct root (over the algebraic closure), largest first.
    pub fn root_multiplicities(&self) -> Vec<usize> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        for (i, s) in self.squarefree_decomposition().iter().enumerate() {
            for _ in 0..s.degree().unwrap_or(0) {
                out.push(i + 1);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().all(|x| x.as_rational().is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yun_multiplicities() {
        // (x-1)^3 (x+2)^2 (x^2+1)
        let a = UPoly::from_i64(&[-1, 1]).pow(3);
        let b = UPoly::from_i64(&[2, 1]).pow(2);
        let c = UPoly::from_i64(&[1, 0, 1]);
        let p = a.mul(&b).mul(&c);
        assert_eq!(p.root_multiplicities(), vec![3, 2, 1, 1]);
        assert!(!p.is_squarefree());
        assert_eq!(p.squarefree_part().degree(), Some(4));
    }

    #[test]
    fn divrem_roundtrip() {
        let a = UPoly::from_i64(&[3, 0, 2, 5, 1]);
        let b = UPoly::from_i64(&[1, 2, 3]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }
}
