//! Factorization of univariate rational polynomials into irreducibles over Q.
//!
//! The integer factorization itself (Berlekamp/Zassenhaus with Hensel lifting)
//! comes from the `algebraics` crate; this module only converts representations.

use algebraics::polynomial::Polynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{FieldElement, Rational};
use super::upoly::UPoly;

fn to_primitive_integer(c: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for q in c {
        l = l.lcm(q.denom());
    }
    let ints: Vec<BigInt> = c.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Irreducible monic factors of a nonzero rational polynomial, with multiplicities.
pub fn factor_over_q(p: &UPoly) -> Vec<(UPoly, usize)> {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    if p.degree() == Some(0) {
        return vec![];
    }
    let rats: Vec<Rational> = p
        .coeffs()
        .iter()
        .map(|x| x.as_rational().expect("factor_over_q needs rational coefficients").clone())
        .collect();
    let ints = to_primitive_integer(&rats);
    let poly: Polynomial<BigInt> = ints.into();
    let factors = poly.factor();
    let mut out: Vec<(UPoly, usize)> = factors
        .polynomial_factors
        .into_iter()
        .map(|f| {
            let c: Vec<FieldElement> = f
                .polynomial
                .into_coefficients()
                .into_iter()
                .map(|x| FieldElement::Rat(Rational::from_integer(x)))
                .collect();
            (UPoly::new(c).monic(), f.power)
        })
        .filter(|(f, _)| f.degree().unwrap_or(0) > 0)
        .collect();
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| format!("{:?}", a.0.coeffs()).cmp(&format!("{:?}", b.0.coeffs())))
    });
    out
}

/// Rational roots with multiplicity.
pub fn rational_roots(p: &UPoly) -> Vec<(Rational, usize)> {
    factor_over_q(p)
        .into_iter()
        .filter(|(f, _)| f.degree() == Some(1))
        .map(|(f, m)| {
            let r = -f.coeff(0);
            (r.as_rational().unwrap().clone(), m)
        })
        .collect()
}

pub fn is_irreducible_over_q(monic_coeffs: &[Rational]) -> bool {
    let p = UPoly::new(monic_coeffs.iter().cloned().map(FieldElement::Rat).collect());
    let f = factor_over_q(&p);
    f.len() == 1 && f[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_product_of_quadratics() {
        // (x^2 - 2)(x^2 - 3)(x - 1/2)^2
        let a = UPoly::from_i64(&[-2, 0, 1]);
        let b = UPoly::from_i64(&[-3, 0, 1]);
        let c = UPoly::new(vec![FieldElement::from_ratio(-1, 2), FieldElement::one()]);
        let p = a.mul(&b).mul(&c).mul(&c);
        let f = factor_over_q(&p);
        assert_eq!(f.len(), 3);
        assert_eq!(f[0].0, c);
        assert_eq!(f[0].1, 2);
        let roots = rational_roots(&p);
        assert_eq!(roots, vec![(super::super::field::ratio(1, 2), 2)]);
    }
}
