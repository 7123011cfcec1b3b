//! Exact scalars: rationals and elements of a single simple extension Q(α).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Q[t]/(m(t)) for a monic irreducible `m` of degree at least 2.
#[derive(Debug)]
pub struct NumberField {
    /// Monic minimal polynomial, coefficients from the constant term up.
    minpoly: Vec<Rational>,
    symbol: String,
}

impl NumberField {
    pub fn new(minpoly: Vec<Rational>, symbol: &str) -> Result<Arc<NumberField>, AlgebraError> {
        let mut m = minpoly;
        while m.last().is_some_and(|c| c.is_zero()) {
            m.pop();
        }
        if m.len() < 3 {
            return Err(AlgebraError::BadMinimalPolynomial(
                "minimal polynomial must have degree at least 2".into(),
            ));
        }
        let lc = m.last().unwrap().clone();
        for c in m.iter_mut() {
            *c = &*c / &lc;
        }
        if !super::factor::is_irreducible_over_q(&m) {
            return Err(AlgebraError::BadMinimalPolynomial(
                "minimal polynomial is reducible over Q".into(),
            ));
        }
        Ok(Arc::new(NumberField {
            minpoly: m,
            symbol: symbol.to_string(),
        }))
    }

    /// Q(i), shared so that every Gaussian-rational element lives in the same field.
    pub fn gaussian() -> Arc<NumberField> {
        static GAUSS: OnceLock<Arc<NumberField>> = OnceLock::new();
        GAUSS
            .get_or_init(|| {
                Arc::new(NumberField {
                    minpoly: vec![rat(1), rat(0), rat(1)],
                    symbol: "i".into(),
                })
            })
            .clone()
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn generator(self: &Arc<Self>) -> FieldElement {
        let mut c = vec![Rational::zero(); self.degree()];
        c[1] = Rational::one();
        FieldElement::Alg(AlgElem {
            coeffs: c,
            field: self.clone(),
        })
    }

    pub fn same(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
        Arc::ptr_eq(a, b) || a.minpoly == b.minpoly
    }

    /// Human-readable minimal polynomial in the field symbol.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.minpoly.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            parts.push((k, c.clone()));
        }
        format_univariate(&parts, &self.symbol)
    }
}

fn format_univariate(parts: &[(usize, Rational)], sym: &str) -> String {
    let mut s = String::new();
    for (idx, (k, c)) in parts.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => sym.to_string(),
            _ => format!("{sym}^{k}"),
        };
        if mono.is_empty() {
            s.push_str(&fmt_rat(&a));
        } else if a.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{}*{}", fmt_rat(&a), mono));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn fmt_rat(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Clone, Debug)]
pub struct AlgElem {
    coeffs: Vec<Rational>,
    field: Arc<NumberField>,
}

impl AlgElem {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }
}

/// A rational number or an element of one fixed simple extension.
#[derive(Clone, Debug)]
pub enum FieldElement {
    Rat(Rational),
    Alg(AlgElem),
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => a == b,
            (FieldElement::Alg(a), FieldElement::Alg(b)) => {
                NumberField::same(&a.field, &b.field) && a.coeffs == b.coeffs
            }
            _ => false,
        }
    }
}
impl Eq for FieldElement {}

impl From<Rational> for FieldElement {
    fn from(q: Rational) -> Self {
        FieldElement::Rat(q)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::Rat(rat(n))
    }
}

fn poly_mul_mod(a: &[Rational], b: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let n = m.len() - 1;
    let mut prod = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            prod[i + j] += x * y;
        }
    }
    reduce_mod(prod, m, n)
}

fn reduce_mod(mut p: Vec<Rational>, m: &[Rational], n: usize) -> Vec<Rational> {
    // m is monic of degree n
    while p.len() > n {
        let top = p.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = p.len() - n;
        for k in 0..n {
            p[shift + k] -= &top * &m[k];
        }
    }
    p.resize(n, Rational::zero());
    p
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Inverse of `a` modulo the irreducible `m` by the extended Euclidean algorithm.
fn inv_mod(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let n = m.len() - 1;
    let mut r0: Vec<Rational> = m.to_vec();
    let mut r1: Vec<Rational> = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<Rational> = vec![];
    let mut s1: Vec<Rational> = vec![Rational::one()];
    assert!(!r1.is_empty(), "division by zero in number field");
    while r1.len() > 1 {
        // r0 = q r1 + r
        let (q, r) = divrem(&r0, &r1);
        let qs1 = mul_plain(&q, &s1);
        let mut s2 = sub_plain(&s0, &qs1);
        trim(&mut s2);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        trim(&mut r1);
        assert!(
            !r1.is_empty(),
            "minimal polynomial is reducible: zero divisor in number field"
        );
    }
    let c = r1[0].clone();
    let mut out: Vec<Rational> = s1.iter().map(|x| x / &c).collect();
    out = reduce_mod(out, m, n);
    out
}

fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lb;
        for j in 0..=db {
            r[k + j] -= &c * &b[j];
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn mul_plain(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut prod = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    prod
}

fn sub_plain(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect()
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Rat(Rational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        FieldElement::Rat(rat(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        FieldElement::Rat(ratio(n, d))
    }

    /// The imaginary unit of Q(i).
    pub fn i() -> Self {
        NumberField::gaussian().generator()
    }

    /// Element of `field` with the given coordinates in the power basis.
    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: Vec<Rational>) -> Self {
        let n = field.degree();
        let c = reduce_mod(coeffs, field.minpoly(), n);
        FieldElement::Alg(AlgElem {
            coeffs: c,
            field: field.clone(),
        })
        .normalized()
    }

    fn normalized(self) -> Self {
        match self {
            FieldElement::Alg(a) => {
                if a.coeffs.iter().skip(1).all(|c| c.is_zero()) {
                    FieldElement::Rat(a.coeffs[0].clone())
                } else {
                    FieldElement::Alg(a)
                }
            }
            r => r,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rat(q) => q.is_zero(),
            FieldElement::Alg(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rat(q) => q.is_one(),
            FieldElement::Alg(_) => false,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElement::Rat(q) => Some(q),
            FieldElement::Alg(_) => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match self {
            FieldElement::Rat(_) => None,
            FieldElement::Alg(a) => Some(&a.field),
        }
    }

    /// Fails if the two elements live in different extensions.
    pub fn common_field(
        a: Option<&Arc<NumberField>>,
        b: Option<&Arc<NumberField>>,
    ) -> Result<Option<Arc<NumberField>>, AlgebraError> {
        match (a, b) {
            (None, None) => Ok(None),
            (Some(f), None) | (None, Some(f)) => Ok(Some(f.clone())),
            (Some(f), Some(g)) => {
                if NumberField::same(f, g) {
                    Ok(Some(f.clone()))
                } else {
                    Err(AlgebraError::Tower)
                }
            }
        }
    }

    fn parts(&self, field: &Arc<NumberField>) -> Vec<Rational> {
        match self {
            FieldElement::Rat(q) => {
                let mut v = vec![Rational::zero(); field.degree()];
                v[0] = q.clone();
                v
            }
            FieldElement::Alg(a) => a.coeffs.clone(),
        }
    }

    fn pick_field<'a>(a: &'a FieldElement, b: &'a FieldElement) -> Option<&'a Arc<NumberField>> {
        match (a, b) {
            (FieldElement::Alg(x), FieldElement::Alg(y)) => {
                if !NumberField::same(&x.field, &y.field) {
                    panic!("{}", AlgebraError::Tower);
                }
                Some(&x.field)
            }
            (FieldElement::Alg(x), _) => Some(&x.field),
            (_, FieldElement::Alg(y)) => Some(&y.field),
            _ => None,
        }
    }

    pub fn inv(&self) -> FieldElement {
        match self {
            FieldElement::Rat(q) => {
                assert!(!q.is_zero(), "division by zero");
                FieldElement::Rat(q.recip())
            }
            FieldElement::Alg(a) => {
                let c = inv_mod(&a.coeffs, a.field.minpoly());
                FieldElement::Alg(AlgElem {
                    coeffs: c,
                    field: a.field.clone(),
                })
                .normalized()
            }
        }
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        let mut acc = FieldElement::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Rendering used in reports and in the canonical text format.
    pub fn to_text(&self) -> String {
        match self {
            FieldElement::Rat(q) => fmt_rat(q),
            FieldElement::Alg(a) => {
                let mut parts = Vec::new();
                for (k, c) in a.coeffs.iter().enumerate().rev() {
                    if !c.is_zero() {
                        parts.push((k, c.clone()));
                    }
                }
                format_univariate(&parts, &a.field.symbol)
            }
        }
    }

    /// True when the printed form needs parentheses inside a product.
    pub fn is_compound(&self) -> bool {
        match self {
            FieldElement::Rat(_) => false,
            FieldElement::Alg(a) => a.coeffs.iter().filter(|c| !c.is_zero()).count() > 1,
        }
    }

    /// Sign of a rational element; extension elements report `None`.
    pub fn rational_sign(&self) -> Option<i8> {
        self.as_rational().map(|q| {
            if q.is_zero() {
                0
            } else if q.is_negative() {
                -1
            } else {
                1
            }
        })
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        if let (FieldElement::Rat(a), FieldElement::Rat(b)) = (self, rhs) {
            return FieldElement::Rat(a + b);
        }
        let f = FieldElement::pick_field(self, rhs).unwrap().clone();
        let a = self.parts(&f);
        let b = rhs.parts(&f);
        let c = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
        FieldElement::Alg(AlgElem { coeffs: c, field: f }).normalized()
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        if let (FieldElement::Rat(a), FieldElement::Rat(b)) = (self, rhs) {
            return FieldElement::Rat(a - b);
        }
        let f = FieldElement::pick_field(self, rhs).unwrap().clone();
        let a = self.parts(&f);
        let b = rhs.parts(&f);
        let c = a.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
        FieldElement::Alg(AlgElem { coeffs: c, field: f }).normalized()
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a * b),
            (FieldElement::Rat(a), FieldElement::Alg(y)) | (FieldElement::Alg(y), FieldElement::Rat(a)) => {
                if a.is_zero() {
                    return FieldElement::zero();
                }
                let c = y.coeffs.iter().map(|x| x * a).collect();
                FieldElement::Alg(AlgElem {
                    coeffs: c,
                    field: y.field.clone(),
                })
            }
            (FieldElement::Alg(x), FieldElement::Alg(y)) => {
                if !NumberField::same(&x.field, &y.field) {
                    panic!("{}", AlgebraError::Tower);
                }
                let c = poly_mul_mod(&x.coeffs, &y.coeffs, x.field.minpoly());
                FieldElement::Alg(AlgElem {
                    coeffs: c,
                    field: x.field.clone(),
                })
                .normalized()
            }
        }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &'a FieldElement) -> FieldElement {
        if let (FieldElement::Rat(a), FieldElement::Rat(b)) = (self, rhs) {
            assert!(!b.is_zero(), "division by zero");
            return FieldElement::Rat(a / b);
        }
        self * &rhs.inv()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rat(q) => FieldElement::Rat(-q),
            FieldElement::Alg(a) => FieldElement::Alg(AlgElem {
                coeffs: a.coeffs.iter().map(|c| -c).collect(),
                field: a.field.clone(),
            }),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let i = FieldElement::i();
        assert_eq!(&i * &i, FieldElement::from_i64(-1));
        let z = &FieldElement::from_i64(1) + &i;
        let w = z.inv();
        assert_eq!(&z * &w, FieldElement::one());
        assert_eq!(z.to_text(), "i + 1");
    }

    #[test]
    fn cubic_extension_inverse() {
        let f = NumberField::new(vec![rat(-2), rat(0), rat(0), rat(1)], "a").unwrap();
        let a = f.generator();
        let x = &(&a * &a) + &FieldElement::from_i64(3);
        assert_eq!(&x * &x.inv(), FieldElement::one());
        assert_eq!(a.pow(3), FieldElement::from_i64(2));
    }

    #[test]
    fn reducible_minpoly_rejected() {
        assert!(NumberField::new(vec![rat(-1), rat(0), rat(1)], "a").is_err());
    }
}
