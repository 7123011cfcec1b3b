//! Sparse multivariate polynomials over `FieldElement`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{FieldElement, NumberField};
use super::upoly::UPoly;
use super::AlgebraError;

/// Exponent vector. Ordered graded-lexicographically: total degree first, then
/// the exponent of the first variable, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, o: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(o.0.iter()) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Mono(out))
    }

    pub fn dot(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w.iter()).map(|(&e, &x)| e as i64 * x).sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Variable names plus optional positive weights (weighted projective ambient).
#[derive(Debug, Clone)]
pub struct Ring {
    names: Vec<String>,
    weights: Option<Vec<i64>>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Ring {
    pub fn new(names: &[&str]) -> Arc<Ring> {
        Arc::new(Ring {
            names: names.iter().map(|s| s.to_string()).collect(),
            weights: None,
        })
    }

    pub fn from_names(names: Vec<String>, weights: Option<Vec<i64>>) -> Arc<Ring> {
        Arc::new(Ring { names, weights })
    }

    pub fn weighted(names: &[&str], weights: &[i64]) -> Arc<Ring> {
        Arc::new(Ring {
            names: names.iter().map(|s| s.to_string()).collect(),
            weights: Some(weights.to_vec()),
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Integer weights on the variables, possibly negative (one-parameter subgroups).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem(pub Vec<i64>);

impl WeightSystem {
    pub fn negated(&self) -> WeightSystem {
        WeightSystem(self.0.iter().map(|w| -w).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightedDegree {
    Homogeneous(i64),
    /// Sorted distinct degrees present.
    Mixed(Vec<i64>),
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Mono, FieldElement>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}
impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(ring: &Arc<Ring>) -> MultiPoly {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: FieldElement) -> MultiPoly {
        let mut p = MultiPoly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Mono::one(ring.nvars()), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> MultiPoly {
        MultiPoly::constant(ring, FieldElement::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> MultiPoly {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        MultiPoly::monomial(ring, Mono(e), FieldElement::one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Mono, c: FieldElement) -> MultiPoly {
        assert_eq!(m.0.len(), ring.nvars());
        let mut p = MultiPoly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, FieldElement)>>(ring: &Arc<Ring>, it: I) -> MultiPoly {
        let mut p = MultiPoly::zero(ring);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    /// Terms given as (integer coefficient, exponents).
    pub fn from_int_terms(ring: &Arc<Ring>, t: &[(i64, &[u32])]) -> MultiPoly {
        MultiPoly::from_terms(
            ring,
            t.iter().map(|(c, e)| (Mono(e.to_vec()), FieldElement::from_i64(*c))),
        )
    }

    pub fn add_term(&mut self, m: Mono, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn coeff(&self, m: &Mono) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn coeff_of(&self, e: &[u32]) -> FieldElement {
        self.coeff(&Mono(e.to_vec()))
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeff(&Mono::one(self.nvars()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Lowest total degree of a term (multiplicity at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    pub fn leading(&self) -> Option<(&Mono, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// The common coefficient field, rejecting mixed extensions.
    pub fn field(&self) -> Result<Option<Arc<NumberField>>, AlgebraError> {
        let mut f: Option<Arc<NumberField>> = None;
        for c in self.terms.values() {
            f = FieldElement::common_field(f.as_ref(), c.field())?;
        }
        Ok(f)
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    pub fn check_ring(&self, o: &MultiPoly) -> Result<(), AlgebraError> {
        if *self.ring == *o.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn scale(&self, c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Leading coefficient 1 under the graded-lex order.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv();
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            p.add_term(Mono(e), c * &FieldElement::from_i64(k as i64));
        }
        p
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars());
        let mut acc = FieldElement::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Replace variable `i` by the constant `v`, staying in the same ring.
    pub fn subs_value(&self, i: usize, v: &FieldElement) -> MultiPoly {
        let mut p = MultiPoly::zero(&self.ring);
        let mut powers: Vec<FieldElement> = vec![FieldElement::one()];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * v;
                powers.push(next);
            }
            let mut k = m.0.clone();
            k[i] = 0;
            p.add_term(Mono(k), c * &powers[e]);
        }
        p
    }

    /// Compose with polynomial images of the variables (all in one target ring).
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly, AlgebraError> {
        if images.len() != self.nvars() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        for im in images {
            if *im.ring != *target {
                return Err(AlgebraError::RingMismatch);
            }
        }
        Ok(self.substitute_with(images, &target, None))
    }

    fn substitute_with(&self, images: &[MultiPoly], target: &Arc<Ring>, trunc: Option<u32>) -> MultiPoly {
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|_| vec![MultiPoly::one(target)]).collect();
        let mut out = MultiPoly::zero(target);
        let mul = |a: &MultiPoly, b: &MultiPoly| match trunc {
            Some(n) => a.mul_trunc(b, n),
            None => a * b,
        };
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = mul(powers[v].last().unwrap(), &images[v]);
                    powers[v].push(next);
                }
                t = mul(&t, &powers[v][e as usize]);
            }
            out = &out + &t;
        }
        out
    }

    /// Composition truncated at total degree `n` in the target variables.
    pub fn substitute_trunc(&self, images: &[MultiPoly], n: u32) -> MultiPoly {
        let target = images[0].ring.clone();
        self.substitute_with(images, &target, Some(n))
    }

    /// Move into another ring by renaming variables: variable `i` goes to `map[i]`.
    pub fn embed(&self, target: &Arc<Ring>, map: &[usize]) -> MultiPoly {
        let n = target.nvars();
        let mut p = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; n];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            p.add_term(Mono(e), c.clone());
        }
        p
    }

    pub fn truncate(&self, n: u32) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product keeping only terms of total degree at most `n`.
    pub fn mul_trunc(&self, o: &MultiPoly, n: u32) -> MultiPoly {
        let mut acc: BTreeMap<Mono, FieldElement> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > n {
                break;
            }
            for (mb, cb) in &o.terms {
                if da + mb.degree() > n {
                    break;
                }
                let m = ma.mul(mb);
                let v = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x = &*x + &v,
                    None => {
                        acc.insert(m, v);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly {
            ring: self.ring.clone(),
            terms: acc,
        }
    }

    pub fn weighted_degree(&self, w: &WeightSystem) -> Result<WeightedDegree, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        if w.0.len() != self.nvars() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars(),
                got: w.0.len(),
            });
        }
        if w.0.iter().any(|&x| x <= 0) {
            return Err(AlgebraError::NonPositiveWeights);
        }
        let mut ds: Vec<i64> = self.terms.keys().map(|m| m.dot(&w.0)).collect();
        ds.sort_unstable();
        ds.dedup();
        if ds.len() == 1 {
            Ok(WeightedDegree::Homogeneous(ds[0]))
        } else {
            Ok(WeightedDegree::Mixed(ds))
        }
    }

    /// Weighted degree with respect to the ring's own weights (all ones if absent).
    pub fn ambient_degree(&self) -> Result<WeightedDegree, AlgebraError> {
        let w = self
            .ring
            .weights()
            .map(|w| w.to_vec())
            .unwrap_or_else(|| vec![1; self.nvars()]);
        self.weighted_degree(&WeightSystem(w))
    }

    /// Sum of the terms of minimal weight under `lam`, with that weight: the flat
    /// limit as t -> 0 of the family obtained by acting with `lam(t)`.
    pub fn degeneration_limit(&self, lam: &WeightSystem) -> Result<(MultiPoly, i64), AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        if lam.0.len() != self.nvars() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars(),
                got: lam.0.len(),
            });
        }
        let min = self.terms.keys().map(|m| m.dot(&lam.0)).min().unwrap();
        let p = MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.dot(&lam.0) == min)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        };
        Ok((p, min))
    }

    /// Coefficients with respect to variable `i` (as polynomials in the same ring).
    pub fn coeffs_in(&self, i: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(i).unwrap_or(0) as usize;
        let mut out: Vec<MultiPoly> = (0..=d).map(|_| MultiPoly::zero(&self.ring)).collect();
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            out[k].terms.insert(Mono(e), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(ring: &Arc<Ring>, i: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut p = MultiPoly::zero(ring);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut e = m.0.clone();
                e[i] += k as u32;
                p.add_term(Mono(e), a.clone());
            }
        }
        p
    }

    pub fn to_upoly(&self, i: usize) -> Option<UPoly> {
        let mut c = vec![FieldElement::zero(); self.degree_in(i).unwrap_or(0) as usize + 1];
        for (m, a) in &self.terms {
            if m.0.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            c[m.0[i] as usize] = a.clone();
        }
        Some(UPoly::new(c))
    }

    pub fn from_upoly(ring: &Arc<Ring>, i: usize, u: &UPoly) -> MultiPoly {
        let mut p = MultiPoly::zero(ring);
        for (k, a) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; ring.nvars()];
            e[i] = k as u32;
            p.add_term(Mono(e), a.clone());
        }
        p
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (lm, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let inv = lc.inv();
        let mut r = self.clone();
        let mut q = MultiPoly::zero(&self.ring);
        while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let k = m.div(&lm)?;
            let a = &c * &inv;
            q.add_term(k.clone(), a.clone());
            r = &r - &d.mul_mono(&k, &a);
        }
        Some(q)
    }

    /// gcd of the coefficients with respect to `v`.
    pub fn content_in(&self, v: usize) -> MultiPoly {
        let mut g = MultiPoly::zero(&self.ring);
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(&c);
            if g.is_constant() {
                return MultiPoly::one(&self.ring);
            }
        }
        g
    }

    /// `lc(b)^(deg a - deg b + 1) a mod b` in variable `v`.
    fn sprem(&self, b: &MultiPoly, v: usize) -> MultiPoly {
        let (da, db) = (self.degree_in(v).unwrap_or(0), b.degree_in(v).unwrap_or(0));
        let lb = b.coeffs_in(v).pop().unwrap();
        let mut r = self.clone();
        let mut steps = 0;
        let mut xv = vec![0u32; self.nvars()];
        while !r.is_zero() {
            let dr = r.degree_in(v).unwrap_or(0);
            if dr < db {
                break;
            }
            let lr = r.coeffs_in(v).pop().unwrap();
            xv[v] = dr - db;
            let shift = MultiPoly::monomial(&self.ring, Mono(xv.clone()), FieldElement::one());
            r = &(&r * &lb) - &(&(&lr * &shift) * b);
            steps += 1;
        }
        let missing = (da - db + 1).saturating_sub(steps);
        if missing > 0 && !r.is_zero() {
            r = &r * &lb.pow(missing);
        }
        r
    }

    /// Upper bound on the degree in `v` of `gcd(self, o)` from a specialization
    /// of the other variables that keeps both leading coefficients.
    fn gcd_degree_bound(&self, o: &MultiPoly, v: usize) -> Option<usize> {
        let others: Vec<usize> = (0..self.nvars()).filter(|&i| i != v).collect();
        let (la, lb) = (self.coeffs_in(v).pop().unwrap(), o.coeffs_in(v).pop().unwrap());
        for shift in 0..8i64 {
            let pt: Vec<FieldElement> = (0..self.nvars()).map(|i| FieldElement::from_i64(2 + shift + 3 * i as i64)).collect();
            if la.eval(&pt).is_zero() || lb.eval(&pt).is_zero() {
                continue;
            }
            let image = |f: &MultiPoly| others.iter().fold(f.clone(), |acc, &i| acc.subs_value(i, &pt[i])).to_upoly(v);
            let (ua, ub) = (image(self)?, image(o)?);
            return ua.gcd(&ub).degree();
        }
        None
    }

    /// Greatest common divisor, normalized to leading coefficient 1.
    pub fn gcd(&self, o: &MultiPoly) -> MultiPoly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.is_constant() || o.is_constant() {
            return MultiPoly::one(&self.ring);
        }
        let n = self.nvars();
        if let Some(v) = (0..n).find(|&i| self.involves(i) != o.involves(i)) {
            return if self.involves(v) { self.content_in(v).gcd(o) } else { self.gcd(&o.content_in(v)) };
        }
        // main variable of least degree
        let v = (0..n)
            .filter(|&i| self.involves(i))
            .min_by_key(|&i| self.degree_in(i).unwrap().max(o.degree_in(i).unwrap()))
            .unwrap();
        let ca = self.content_in(v);
        let cb = o.content_in(v);
        let c = ca.gcd(&cb);
        if self.gcd_degree_bound(o, v) == Some(0) {
            return c;
        }
        let pa = self.div_exact(&ca).unwrap();
        let pb = o.div_exact(&cb).unwrap();
        let (mut a, mut b) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
        // subresultant remainder sequence
        let mut g = MultiPoly::one(&self.ring);
        let mut h = MultiPoly::one(&self.ring);
        loop {
            let delta = a.degree_in(v).unwrap() - b.degree_in(v).unwrap();
            let r = a.sprem(&b, v);
            if r.is_zero() {
                break;
            }
            if !r.involves(v) {
                return c;
            }
            let r = r.div_exact(&(&g * &h.pow(delta))).expect("subresultant division is exact");
            a = b;
            b = r;
            g = a.coeffs_in(v).pop().unwrap();
            h = if delta == 0 {
                h
            } else {
                g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division is exact")
            };
        }
        let cc = b.content_in(v);
        (&c * &b.div_exact(&cc).unwrap()).monic()
    }

    /// Sylvester resultant eliminating variable `v`.
    pub fn resultant(&self, o: &MultiPoly, v: usize) -> Result<MultiPoly, AlgebraError> {
        self.check_ring(o)?;
        if self.is_zero() || o.is_zero() {
            return Err(AlgebraError::Precondition("resultant of a zero polynomial".into()));
        }
        let m = self.degree_in(v).unwrap() as usize;
        let n = o.degree_in(v).unwrap() as usize;
        if m == 0 && n == 0 {
            return Err(AlgebraError::Precondition(
                "resultant needs positive degree in the eliminated variable".into(),
            ));
        }
        if m == 0 {
            return Ok(self.pow(n as u32));
        }
        if n == 0 {
            return Ok(o.pow(m as u32));
        }
        let a = self.coeffs_in(v);
        let b = o.coeffs_in(v);
        let size = m + n;
        let zero = MultiPoly::zero(&self.ring);
        let mut mat: Vec<Vec<MultiPoly>> = vec![vec![zero.clone(); size]; size];
        for r in 0..n {
            for k in 0..=m {
                mat[r][r + k] = a[m - k].clone();
            }
        }
        for r in 0..m {
            for k in 0..=n {
                mat[n + r][r + k] = b[n - k].clone();
            }
        }
        Ok(bareiss_det(mat, &self.ring))
    }

    /// Squarefree part (product of distinct irreducible factors), monic.
    pub fn squarefree_part(&self) -> MultiPoly {
        let mut g = self.clone();
        for i in 0..self.nvars() {
            if self.involves(i) {
                g = g.gcd(&self.derivative(i));
            }
        }
        if g.is_constant() {
            return self.monic();
        }
        self.div_exact(&g).unwrap().monic()
    }

    /// Exact square root when `self = c * q^2` with `c` a square in the field of
    /// coefficients, up to sign.
    pub fn sqrt_exact(&self) -> Option<MultiPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let (lm, _) = self.leading()?;
        if lm.0.iter().any(|e| e % 2 == 1) {
            return None;
        }
        let s = self.monic();
        let half = Mono(lm.0.iter().map(|e| e / 2).collect());
        // Newton-free: square root by undetermined coefficients in descending order
        let mut q = MultiPoly::monomial(&self.ring, half.clone(), FieldElement::one());
        let two_inv = FieldElement::from_ratio(1, 2);
        loop {
            let r = &s - &(&q * &q);
            let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) else {
                let lc = self.leading().unwrap().1.clone();
                return match lc.as_rational() {
                    Some(x) => rational_sqrt(x).map(|sq| q.scale(&FieldElement::Rat(sq))),
                    None => None,
                };
            };
            let k = rm.div(&half)?;
            if k >= half {
                return None;
            }
            q.add_term(k, &rc * &two_inv);
        }
    }
}

fn rational_sqrt(q: &super::field::Rational) -> Option<super::field::Rational> {
    use num_traits::Signed;
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(super::field::Rational::new(n, d))
    } else {
        None
    }
}

/// Fraction-free determinant; every division is exact in the polynomial ring.
pub fn bareiss_det(mut m: Vec<Vec<MultiPoly>>, ring: &Arc<Ring>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(ring);
    }
    let mut sign = false;
    let mut prev = MultiPoly::one(ring);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return MultiPoly::zero(ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division must be exact");
            }
            m[i][k] = MultiPoly::zero(ring);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &'a MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut p = big.clone();
        for (m, c) in &small.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &'a MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &'a MultiPoly) -> MultiPoly {
        let mut acc: BTreeMap<Mono, FieldElement> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let v = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x = &*x + &v,
                    None => {
                        acc.insert(m, v);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly {
            ring: self.ring.clone(),
            terms: acc,
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&FieldElement::from_i64(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn fmt_mono(m: &Mono, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    /// Canonical text: terms in descending graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = fmt_mono(m, self.ring.names());
            let (neg, mag) = match c.rational_sign() {
                Some(-1) => (true, -c),
                _ => (false, c.clone()),
            };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coef = if mag.is_compound() {
                format!("({})", mag.to_text())
            } else {
                mag.to_text()
            };
            if mono.is_empty() {
                s.push_str(&coef);
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{coef}*{mono}"));
            }
        }
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Ring> {
        Ring::new(&["x", "y"])
    }

    #[test]
    fn gcd_of_monomials() {
        let r = xy();
        let a = MultiPoly::from_int_terms(&r, &[(1, &[2, 1])]);
        let b = MultiPoly::from_int_terms(&r, &[(1, &[1, 2])]);
        assert_eq!(a.gcd(&b), MultiPoly::from_int_terms(&r, &[(1, &[1, 1])]));
    }

    #[test]
    fn resultant_sign_convention() {
        let r = xy();
        let p = MultiPoly::from_int_terms(&r, &[(1, &[0, 2]), (-1, &[1, 0])]);
        let q = MultiPoly::from_int_terms(&r, &[(1, &[0, 1]), (-1, &[0, 0])]);
        let res = p.resultant(&q, 1).unwrap();
        assert_eq!(res, MultiPoly::from_int_terms(&r, &[(1, &[0, 0]), (-1, &[1, 0])]));
    }

    #[test]
    fn display_is_descending() {
        let r = Ring::new(&["x", "y", "z", "w"]);
        let p = MultiPoly::from_int_terms(&r, &[(1, &[0, 0, 0, 2]), (-1, &[0, 0, 3, 0]), (-1, &[6, 0, 0, 0])]);
        assert_eq!(p.to_string(), "-x^6 - z^3 + w^2");
    }

    #[test]
    fn sqrt_of_square() {
        let r = Ring::new(&["x", "y", "z"]);
        let q = MultiPoly::from_int_terms(&r, &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])]);
        let p = (&q * &q).scale(&FieldElement::from_i64(4));
        let s = p.sqrt_exact().unwrap();
        assert_eq!(&s * &s, p);
        assert!(q.sqrt_exact().is_none());
    }
}
