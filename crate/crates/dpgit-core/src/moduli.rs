//! Moduli coordinates: the binary quintic of a pencil, its invariants in
//! P(1,2,3), divisor predicates, and the blow-up substitution near `p0`.

use std::fmt;

use crate::polyalg::{BinaryForm, FieldElement, Rational};
use crate::singular::{QuadricPencil, SingularError};

const CONSTANTS: &str = include_str!("../data/constants.txt");

/// A value pinned in `data/constants.txt` (`key = rational` lines).
pub fn pinned_constant(key: &str) -> Option<Rational> {
    CONSTANTS.lines().find_map(|l| {
        let l = l.split('#').next()?.trim();
        let (k, v) = l.split_once('=')?;
        if k.trim() != key {
            return None;
        }
        v.trim().parse::<Rational>().ok()
    })
}

/// Constant `c` with the discriminant locus `z1^2 = c z2` in our normalization.
pub fn deg4_divisor_constant() -> Rational {
    pinned_constant("deg4_divisor_constant").expect("data/constants.txt pins deg4_divisor_constant")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuliError {
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error("{0}")]
    Precondition(String),
    #[error("internal identity check failed: {0}")]
    Identity(String),
}

/// `det(lambda A + mu B)`; allows `A` proportional to `B` but not a vanishing determinant.
pub fn pencil_to_quintic(p: &QuadricPencil) -> Result<BinaryForm, ModuliError> {
    let q = p.quintic();
    if q.is_zero() {
        return Err(SingularError::DegeneratePencil.into());
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliPoint123 {
    pub z: [Rational; 3],
}

impl fmt::Display for ModuliPoint123 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.z.iter().map(crate::polyalg::field::fmt_rat).collect();
        write!(f, "[{}]", s.join(" : "))
    }
}

impl ModuliPoint123 {
    /// Canonical representative under `z_i -> t^i z_i`, `t` in `C*`:
    /// `(1, z2/z1^2, z3/z1^3)` when `z1 != 0`; `(0, r, r)` with `r = z2^3/z3^2`
    /// when only `z1` vanishes; `(0,1,0)` or `(0,0,1)` otherwise.
    pub fn canonical(z: [Rational; 3]) -> Option<ModuliPoint123> {
        use num_traits::{One, Zero};
        let [z1, z2, z3] = z;
        let out = if !z1.is_zero() {
            [Rational::one(), &z2 / (&z1 * &z1), &z3 / (&z1 * &z1 * &z1)]
        } else if !z2.is_zero() && !z3.is_zero() {
            let r = (&z2 * &z2 * &z2) / (&z3 * &z3);
            [Rational::zero(), r.clone(), r]
        } else if !z2.is_zero() {
            [Rational::zero(), Rational::one(), Rational::zero()]
        } else if !z3.is_zero() {
            [Rational::zero(), Rational::zero(), Rational::one()]
        } else {
            return None;
        };
        Some(ModuliPoint123 { z: out })
    }
}

/// `(I4, I8, I12)` before canonicalization, from `i = (f,f)_4`,
/// `j = (i,f)_2`, `tau = (j,j)_2`: `I4 = (i,i)_2`, `I8 = (i,tau)_2`, `I12 = (tau,tau)_2`.
pub fn quintic_invariants_raw(q: &BinaryForm) -> Result<[Rational; 3], ModuliError> {
    if q.degree() != 5 {
        return Err(ModuliError::Precondition("expected a binary quintic".into()));
    }
    if !q.is_rational() {
        return Err(ModuliError::Precondition("quintic coefficients must be rational".into()));
    }
    let i = q.transvectant(q, 4);
    let j = i.transvectant(q, 2);
    let tau = j.transvectant(&j, 2);
    let get = |f: BinaryForm| -> Rational { f.coeff(0).as_rational().unwrap().clone() };
    Ok([get(i.transvectant(&i, 2)), get(i.transvectant(&tau, 2)), get(tau.transvectant(&tau, 2))])
}

/// `None` for nullforms, where all three invariants vanish.
pub fn quintic_invariants(q: &BinaryForm) -> Result<Option<ModuliPoint123>, ModuliError> {
    if q.is_zero() {
        return Err(ModuliError::Precondition("the zero quintic has no invariants".into()));
    }
    Ok(ModuliPoint123::canonical(quintic_invariants_raw(q)?))
}

pub fn divisor_value_deg4(z: &[Rational; 3]) -> Rational {
    &z[0] * &z[0] - deg4_divisor_constant() * &z[1]
}

pub fn divisor_check_deg4(m: &ModuliPoint123) -> bool {
    use num_traits::Zero;
    divisor_value_deg4(&m.z).is_zero()
}

/// `(z1^2 - 64 z2)^2 - 2^11 (8 z4 + z1 z3)`.
pub fn divisor_value_deg3(z: &[Rational; 5]) -> Rational {
    let c = |n: i64| Rational::from_integer(n.into());
    let a = &z[0] * &z[0] - c(64) * &z[1];
    &a * &a - c(2048) * (c(8) * &z[3] + &z[0] * &z[2])
}

pub fn divisor_check_deg3(z: &[Rational; 5]) -> bool {
    use num_traits::Zero;
    divisor_value_deg3(z).is_zero()
}

/// Ratio `I4^2 / I8` on a quintic; `None` when `I8 = 0`.
pub fn calibrate_divisor_constant(q: &BinaryForm) -> Result<Option<Rational>, ModuliError> {
    use num_traits::Zero;
    let [i4, i8, _] = quintic_invariants_raw(q)?;
    if i8.is_zero() {
        return Ok(None);
    }
    Ok(Some(&i4 * &i4 / i8))
}

fn q2() -> BinaryForm {
    BinaryForm::from_i64(&[1, 0, 1])
}

/// `(f4, f6)` with `f4 = -t^2 q^2/3 + t^3 g4`, `f6 = 2 t^3 q^3/27 - t^4 q g4/3 + t^5 g6`,
/// `q = x^2 + y^2`, after checking
/// `t z'^3 + z'^2 (x'^2 + y'^2) + z' g4(x', y') + g6(x', y') = t (z^3 + f4 z + f6)`
/// for `x' = t x`, `y' = t y`, `z' = z - (t/3)(x^2 + y^2)`.
pub fn blowup_substitution(g4: &BinaryForm, g6: &BinaryForm, t: &Rational) -> Result<(BinaryForm, BinaryForm), ModuliError> {
    use num_traits::Zero;
    if t.is_zero() {
        return Err(ModuliError::Precondition("t must be nonzero".into()));
    }
    if g4.degree() != 4 || g6.degree() != 6 {
        return Err(ModuliError::Precondition("g4 must be a quartic and g6 a sextic".into()));
    }
    let tt = FieldElement::Rat(t.clone());
    let q = q2();
    let third = FieldElement::from_ratio(1, 3);
    let f4 = q.pow(2).scale(&-&(&tt.pow(2) * &third)).add(&g4.scale(&tt.pow(3)));
    let f6 = q
        .pow(3)
        .scale(&(&tt.pow(3) * &FieldElement::from_ratio(2, 27)))
        .sub(&q.mul(g4).scale(&(&tt.pow(4) * &third)))
        .add(&g6.scale(&tt.pow(5)));
    check_blowup_identity(g4, g6, &tt, &f4, &f6)?;
    Ok((f4, f6))
}

/// Both sides as polynomials in `z` with binary-form coefficients, compared degree by degree.
fn check_blowup_identity(g4: &BinaryForm, g6: &BinaryForm, t: &FieldElement, f4: &BinaryForm, f6: &BinaryForm) -> Result<(), ModuliError> {
    use crate::polyalg::{MultiPoly, Ring};
    let ring = Ring::new(&["x", "y", "z"]);
    let x = MultiPoly::var(&ring, 0);
    let y = MultiPoly::var(&ring, 1);
    let z = MultiPoly::var(&ring, 2);
    let c = |a: &FieldElement| MultiPoly::constant(&ring, a.clone());
    let q = &(&x * &x) + &(&y * &y);
    let zp = &z - &(&q * &c(&(t * &FieldElement::from_ratio(1, 3))));
    let xp = &x * &c(t);
    let yp = &y * &c(t);
    let sub = |f: &BinaryForm| f.to_multipoly(&ring, 0, 1).substitute(&[xp.clone(), yp.clone(), z.clone()]).unwrap();
    let lhs = &(&(&c(t) * &zp.pow(3)) + &(&zp.pow(2) * &(&(&xp * &xp) + &(&yp * &yp)))) + &(&(&zp * &sub(g4)) + &sub(g6));
    let rhs = &c(t) * &(&(&z.pow(3) + &(&z * &f4.to_multipoly(&ring, 0, 1))) + &f6.to_multipoly(&ring, 0, 1));
    if lhs == rhs {
        Ok(())
    } else {
        Err(ModuliError::Identity("blow-up substitution".into()))
    }
}

/// `(f4 / t^2, f6 / t^3)` at `t = 0`: the pair `p0`.
pub fn blowup_limit() -> (BinaryForm, BinaryForm) {
    let q = q2();
    (q.pow(2).scale(&FieldElement::from_ratio(-1, 3)), q.pow(3).scale(&FieldElement::from_ratio(2, 27)))
}

/// `(f4 / t^2, f6 / t^3)`, the weighted-rescaled pair (same point of P(4,6)).
pub fn blowup_normalized(g4: &BinaryForm, g6: &BinaryForm, t: &Rational) -> Result<(BinaryForm, BinaryForm), ModuliError> {
    let (f4, f6) = blowup_substitution(g4, g6, t)?;
    let tt = FieldElement::Rat(t.clone());
    Ok((f4.scale(&tt.pow(2).inv()), f6.scale(&tt.pow(3).inv())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    #[test]
    fn calibration_matches_pinned_constant() {
        for c in [[0i64, 0, 1, 2, -3, 5], [0, 0, 1, 0, -1, 7], [0, 0, 3, -1, 4, 2]] {
            let q = BinaryForm::from_i64(&c);
            assert_eq!(calibrate_divisor_constant(&q).unwrap(), Some(deg4_divisor_constant()));
        }
    }

    #[test]
    fn blowup_limit_is_p0() {
        let g4 = BinaryForm::from_i64(&[1, 0, -2, 3, 1]);
        let g6 = BinaryForm::from_i64(&[0, 1, 0, 0, 5, 0, -1]);
        let (f4, f6) = blowup_normalized(&g4, &g6, &crate::polyalg::ratio(1, 1000)).unwrap();
        let (p4, p6) = blowup_limit();
        assert_eq!(f4.sub(&p4).scale(&FieldElement::from_i64(1000)), g4);
        assert!(f6.sub(&p6).coeffs().iter().all(|c| c.as_rational().unwrap() < &rat(1)));
        assert!(blowup_substitution(&g4, &g6, &rat(0)).is_err());
    }

    #[test]
    fn canonical_cases() {
        let c = |a: i64, b: i64, d: i64| ModuliPoint123::canonical([rat(a), rat(b), rat(d)]);
        assert_eq!(c(2, 8, 16).unwrap().z, [rat(1), rat(2), rat(2)]);
        assert_eq!(c(0, 4, 8).unwrap().z, [rat(0), rat(1), rat(1)]);
        assert_eq!(c(0, 3, 0).unwrap().z, [rat(0), rat(1), rat(0)]);
        assert!(c(0, 0, 0).is_none());
    }
}
