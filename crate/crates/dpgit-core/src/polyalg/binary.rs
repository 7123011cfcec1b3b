//! Binary forms, transvectants and the SL2 action.

use std::sync::Arc;

use super::field::FieldElement;
use super::multipoly::{Mono, MultiPoly, Ring};
use super::upoly::UPoly;

/// `coeffs[i]` is the coefficient of `x^(d-i) y^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<FieldElement>,
}

fn fact(n: usize) -> FieldElement {
    let mut acc = FieldElement::one();
    for k in 2..=n {
        acc = &acc * &FieldElement::from_i64(k as i64);
    }
    acc
}

fn falling(n: usize, k: usize) -> FieldElement {
    let mut acc = FieldElement::one();
    for j in 0..k {
        acc = &acc * &FieldElement::from_i64((n - j) as i64);
    }
    acc
}

fn binom(n: usize, k: usize) -> i64 {
    let mut acc: i64 = 1;
    for j in 0..k {
        acc = acc * (n - j) as i64 / (j + 1) as i64;
    }
    acc
}

impl BinaryForm {
    pub fn new(coeffs: Vec<FieldElement>) -> BinaryForm {
        assert!(!coeffs.is_empty(), "a binary form needs degree >= 0");
        BinaryForm { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> BinaryForm {
        BinaryForm::new(c.iter().map(|&x| FieldElement::from_i64(x)).collect())
    }

    pub fn zero(d: usize) -> BinaryForm {
        BinaryForm::new(vec![FieldElement::zero(); d + 1])
    }

    /// The linear form vanishing at `[p : q]`, namely `q x - p y`.
    pub fn linear_vanishing_at(p: &FieldElement, q: &FieldElement) -> BinaryForm {
        BinaryForm::new(vec![q.clone(), -p])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &FieldElement {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_rational().is_some())
    }

    pub fn eval(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let d = self.degree();
        let mut acc = FieldElement::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(&(c * &x.pow((d - i) as u32)) * &y.pow(i as u32));
        }
        acc
    }

    pub fn add(&self, o: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), o.degree());
        BinaryForm::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), o.degree());
        BinaryForm::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, a: &FieldElement) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|c| c * a).collect())
    }

    pub fn mul(&self, o: &BinaryForm) -> BinaryForm {
        let mut out = vec![FieldElement::zero(); self.degree() + o.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BinaryForm::new(out)
    }

    pub fn pow(&self, e: u32) -> BinaryForm {
        let mut acc = BinaryForm::from_i64(&[1]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `f(1, t)` as a polynomial in `t`.
    pub fn dehomogenize(&self) -> UPoly {
        UPoly::new(self.coeffs.clone())
    }

    /// `x^d u(y/x)`.
    pub fn homogenize(u: &UPoly, d: usize) -> BinaryForm {
        assert!(u.degree().unwrap_or(0) <= d);
        let mut c = vec![FieldElement::zero(); d + 1];
        for (i, a) in u.coeffs().iter().enumerate() {
            c[i] = a.clone();
        }
        BinaryForm::new(c)
    }

    /// Multiplicity of the root `[0 : 1]` (the power of `x` dividing the form).
    pub fn multiplicity_at_infinity(&self) -> usize {
        match self.dehomogenize().degree() {
            None => self.degree(),
            Some(k) => self.degree() - k,
        }
    }

    /// Root multiplicities over the algebraic closure, largest first.
    pub fn root_multiplicities(&self) -> Vec<usize> {
        assert!(!self.is_zero(), "the zero form has no roots");
        let mut m = self.dehomogenize().root_multiplicities();
        let inf = self.multiplicity_at_infinity();
        if inf > 0 {
            m.push(inf);
        }
        m.sort_unstable_by(|a, b| b.cmp(a));
        m
    }

    pub fn max_multiplicity(&self) -> usize {
        self.root_multiplicities().first().copied().unwrap_or(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.max_multiplicity() <= 1
    }

    /// Product of the distinct roots whose multiplicity is at least `k`.
    pub fn roots_of_multiplicity_at_least(&self, k: usize) -> BinaryForm {
        self.roots_where(|m| m >= k)
    }

    /// Product of the distinct roots whose multiplicity satisfies `keep`.
    pub fn roots_where(&self, keep: impl Fn(usize) -> bool) -> BinaryForm {
        let u = self.dehomogenize();
        let mut acc = UPoly::one();
        if u.degree().unwrap_or(0) > 0 {
            for (i, s) in u.squarefree_decomposition().iter().enumerate() {
                if keep(i + 1) {
                    acc = acc.mul(s);
                }
            }
        }
        let deg = acc.degree().unwrap_or(0);
        let mut f = BinaryForm::homogenize(&acc, deg);
        let inf = self.multiplicity_at_infinity();
        if inf > 0 && keep(inf) {
            f = f.mul(&BinaryForm::from_i64(&[1, 0]));
        }
        f
    }

    /// Monic (in the dehomogenized sense) gcd of two nonzero forms.
    pub fn gcd(&self, o: &BinaryForm) -> BinaryForm {
        let g = self.dehomogenize().gcd(&o.dehomogenize());
        let deg = g.degree().unwrap_or(0);
        let inf = self.multiplicity_at_infinity().min(o.multiplicity_at_infinity());
        let mut f = BinaryForm::homogenize(&g, deg);
        for _ in 0..inf {
            f = f.mul(&BinaryForm::from_i64(&[1, 0]));
        }
        f
    }

    /// `f(a x + b y, c x + d y)`.
    pub fn transform(&self, m: [&FieldElement; 4]) -> BinaryForm {
        let [a, b, c, d] = m;
        let l1 = BinaryForm::new(vec![a.clone(), b.clone()]);
        let l2 = BinaryForm::new(vec![c.clone(), d.clone()]);
        let n = self.degree();
        let mut acc = BinaryForm::zero(n);
        for (i, k) in self.coeffs.iter().enumerate() {
            if k.is_zero() {
                continue;
            }
            let t = l1.pow((n - i) as u32).mul(&l2.pow(i as u32)).scale(k);
            acc = acc.add(&t);
        }
        acc
    }

    /// `d^(a+b) f / dx^a dy^b`.
    pub fn partial(&self, a: usize, b: usize) -> BinaryForm {
        let d = self.degree();
        assert!(a + b <= d);
        let out: Vec<FieldElement> = (0..=d - a - b)
            .map(|j| {
                let i = j + b;
                let c = &self.coeffs[i];
                if c.is_zero() {
                    return FieldElement::zero();
                }
                &(c * &falling(d - i, a)) * &falling(i, b)
            })
            .collect();
        BinaryForm::new(out)
    }

    /// The `k`-th transvectant, normalized by `(m-k)!(n-k)!/(m! n!)`.
    pub fn transvectant(&self, o: &BinaryForm, k: usize) -> BinaryForm {
        let (m, n) = (self.degree(), o.degree());
        assert!(k <= m && k <= n, "transvectant order exceeds a degree");
        let mut acc = BinaryForm::zero(m + n - 2 * k);
        for i in 0..=k {
            let s = binom(k, i) * if i % 2 == 0 { 1 } else { -1 };
            let t = self.partial(k - i, i).mul(&o.partial(i, k - i));
            acc = acc.add(&t.scale(&FieldElement::from_i64(s)));
        }
        let norm = &(&fact(m - k) * &fact(n - k)) * &(&fact(m) * &fact(n)).inv();
        acc.scale(&norm)
    }

    pub fn to_multipoly(&self, ring: &Arc<Ring>, xi: usize, yi: usize) -> MultiPoly {
        let d = self.degree() as u32;
        let mut p = MultiPoly::zero(ring);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut e = vec![0; ring.nvars()];
            e[xi] += d - i as u32;
            e[yi] += i as u32;
            p.add_term(Mono(e), c.clone());
        }
        p
    }

    /// Read a form of degree `d` in variables `xi`, `yi`; `None` if other variables
    /// occur or a term has the wrong degree.
    pub fn from_multipoly(p: &MultiPoly, xi: usize, yi: usize, d: usize) -> Option<BinaryForm> {
        let mut c = vec![FieldElement::zero(); d + 1];
        for (m, a) in p.terms() {
            for (j, &e) in m.0.iter().enumerate() {
                if j != xi && j != yi && e > 0 {
                    return None;
                }
            }
            if (m.0[xi] + m.0[yi]) as usize != d {
                return None;
            }
            c[m.0[yi] as usize] = a.clone();
        }
        Some(BinaryForm::new(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicities_include_infinity() {
        // x^2 y (x - y)^3 has degree 6
        let f = BinaryForm::from_i64(&[0, 1, 0])
            .mul(&BinaryForm::from_i64(&[1, 0]))
            .mul(&BinaryForm::from_i64(&[1, -1]).pow(3));
        assert_eq!(f.degree(), 6);
        assert_eq!(f.root_multiplicities(), vec![3, 2, 1]);
    }

    #[test]
    fn hessian_of_cubic_via_transvectant() {
        // (f, f)_2 of x^3 + y^3 is proportional to x y
        let f = BinaryForm::from_i64(&[1, 0, 0, 1]);
        let h = f.transvectant(&f, 2);
        assert!(h.coeff(0).is_zero() && h.coeff(2).is_zero());
        assert!(!h.coeff(1).is_zero());
    }

    #[test]
    fn transform_identity() {
        let f = BinaryForm::from_i64(&[1, 2, 3, 4]);
        let one = FieldElement::one();
        let z = FieldElement::zero();
        assert_eq!(f.transform([&one, &z, &z, &one]), f);
        let g = f.transform([&z, &one, &one, &z]);
        assert_eq!(g, BinaryForm::from_i64(&[4, 3, 2, 1]));
    }
}
