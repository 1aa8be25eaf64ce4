//! Laurent polynomials in q^{1/2} with integer coefficients.
//!
//! Exponents are stored doubled so that every power of q^{1/2} has an
//! integer key: the entry `(d, c)` represents `c·q^{d/2}`. Zero
//! coefficients are never stored, so structural equality of the underlying
//! maps is equality in the ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Errors raised when substituting a numeric value for q.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    /// A half-integer power of q is present but the supplied q is not the
    /// square of a rational.
    #[error("nonsquare q with half-powers")]
    NonsquareQ,
    /// A zero base would have to be raised to a negative exponent.
    #[error("division by zero")]
    DivisionByZero,
}

/// An element of Z[q^{1/2}, q^{-1/2}], keyed by doubled exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent::default()
    }

    pub fn one() -> Self {
        QLaurent::half_power(0)
    }

    /// The monomial q^{d/2} for a doubled exponent d.
    pub fn half_power(d: i64) -> Self {
        QLaurent::monomial(d, BigInt::one())
    }

    /// The monomial q^n.
    pub fn power(n: i64) -> Self {
        QLaurent::half_power(2 * n)
    }

    /// The constant polynomial c.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        QLaurent::monomial(0, c.into())
    }

    /// The monomial c·q^{d/2}.
    pub fn monomial(d: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(d, c);
        }
        QLaurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the only stored power is q^0.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&d| d == 0)
    }

    /// Coefficient of q^0.
    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&0).cloned().unwrap_or_else(BigInt::zero)
    }

    /// True when some stored exponent is a genuine half-integer.
    pub fn has_half_powers(&self) -> bool {
        self.terms.keys().any(|&d| d % 2 != 0)
    }

    /// Iterate over (doubled exponent, coefficient) pairs, exponent ascending.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, d: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(d).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&d);
        }
    }

    /// Multiply by q^{d/2} (shift every doubled exponent by d).
    pub fn mul_half_power(&self, d: i64) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (e + d, c.clone())).collect(),
        }
    }

    /// Multiply every coefficient by the integer c.
    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return QLaurent::zero();
        }
        QLaurent {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Substitute a rational value for q.
    ///
    /// If any half-integer power is present, `q_value` must be the square of
    /// a rational; otherwise integer powers of `q_value` are used directly.
    /// A zero `q_value` is rejected when a negative exponent occurs.
    pub fn evaluate(&self, q_value: &BigRational) -> Result<BigRational, EvalError> {
        let sqrt = if self.has_half_powers() {
            Some(rational_sqrt(q_value).ok_or(EvalError::NonsquareQ)?)
        } else {
            None
        };
        let mut total = BigRational::zero();
        for (&d, c) in &self.terms {
            let factor = match &sqrt {
                Some(s) => rational_pow(s, d)?,
                None => rational_pow(q_value, d / 2)?,
            };
            total += factor * BigRational::from(c.clone());
        }
        Ok(total)
    }
}

/// base^e for a possibly negative exponent; zero base with negative exponent
/// is an error.
pub fn rational_pow(base: &BigRational, e: i64) -> Result<BigRational, EvalError> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if base.is_zero() {
        if e < 0 {
            return Err(EvalError::DivisionByZero);
        }
        return Ok(BigRational::zero());
    }
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    if e < 0 {
        acc = acc.recip();
    }
    Ok(acc)
}

/// Exact rational square root, if one exists.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(
            BigInt::from_biguint(Sign::Plus, sn),
            BigInt::from_biguint(Sign::Plus, sd),
        ))
    } else {
        None
    }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (&d, c) in &rhs.terms {
            out.add_term(d, c);
        }
        out
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (&d, c) in &rhs.terms {
            out.add_term(d, &-c);
        }
        out
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (&d1, c1) in &self.terms {
            for (&d2, c2) in &rhs.terms {
                out.add_term(d1 + d2, &(c1 * c2));
            }
        }
        out
    }
}

impl AddAssign<&QLaurent> for QLaurent {
    fn add_assign(&mut self, rhs: &QLaurent) {
        for (&d, c) in &rhs.terms {
            self.add_term(d, c);
        }
    }
}

/// Render one monomial c·q^{d/2}, e.g. `3`, `q`, `-q^{2}`, `7q^{-3/2}`.
fn fmt_monomial(d: i64, c: &BigInt) -> String {
    let q_part = match d {
        0 => String::new(),
        2 => "q".to_string(),
        d if d % 2 == 0 => format!("q^{{{}}}", d / 2),
        d => format!("q^{{{}/2}}", d),
    };
    if q_part.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        q_part
    } else if (-c).is_one() {
        format!("-{q_part}")
    } else {
        format!("{c}{q_part}")
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&d, c) in &self.terms {
            let s = fmt_monomial(d, c);
            if first {
                write!(f, "{s}")?;
                first = false;
            } else if let Some(rest) = s.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {s}")?;
            }
        }
        Ok(())
    }
}

impl QLaurent {
    /// Rendering used when the element multiplies a basis symbol: `1` is
    /// dropped, a lone monomial attaches directly, anything longer is
    /// parenthesized.
    pub fn display_as_factor(&self) -> String {
        if self.is_zero() {
            return "0·".to_string();
        }
        if self.terms.len() == 1 {
            let (&d, c) = self.terms.iter().next().unwrap();
            if d == 0 && c.is_one() {
                return String::new();
            }
            if d == 0 && (-c).is_one() {
                return "-".to_string();
            }
            return format!("{}·", fmt_monomial(d, c));
        }
        format!("({self})·")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(d: i64) -> QLaurent {
        QLaurent::half_power(d)
    }

    #[test]
    fn zero_terms_are_never_stored() {
        let mut a = QLaurent::monomial(3, 5);
        a.add_term(3, &BigInt::from(-5));
        assert!(a.is_zero());
        assert_eq!(a, QLaurent::zero());
        assert_eq!(QLaurent::monomial(4, 0), QLaurent::zero());
    }

    #[test]
    fn ring_identities() {
        let a = &q(1) + &QLaurent::constant(2);
        let b = &q(-3) - &QLaurent::constant(1);
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&(&a + &b) * &a, &(&a * &a) + &(&b * &a));
        assert_eq!(&a * &QLaurent::one(), a);
        assert_eq!(&a - &a, QLaurent::zero());
    }

    #[test]
    fn half_power_shift_composes() {
        let a = &q(1) + &q(-4);
        assert_eq!(a.mul_half_power(3), &a * &q(3));
        assert_eq!(a.mul_half_power(0), a);
    }

    #[test]
    fn evaluate_integer_powers_uses_q_directly() {
        // q·1 at q=4: no half powers, so 4 need not be a square of the input.
        let v = QLaurent::power(1).evaluate(&BigRational::from_integer(4.into()));
        assert_eq!(v.unwrap(), BigRational::from_integer(4.into()));
        // q^{3} at q=2/3.
        let third = BigRational::new(2.into(), 3.into());
        let v = QLaurent::power(3).evaluate(&third).unwrap();
        assert_eq!(v, BigRational::new(8.into(), 27.into()));
    }

    #[test]
    fn evaluate_half_powers_requires_square() {
        let half = q(1); // q^{1/2}
        assert_eq!(
            half.evaluate(&BigRational::from_integer(2.into())),
            Err(EvalError::NonsquareQ)
        );
        let v = half
            .evaluate(&BigRational::new(4.into(), 9.into()))
            .unwrap();
        assert_eq!(v, BigRational::new(2.into(), 3.into()));
        // q^{-3/2} at q = 4 is 1/8.
        let v = q(-3).evaluate(&BigRational::from_integer(4.into())).unwrap();
        assert_eq!(v, BigRational::new(1.into(), 8.into()));
    }

    #[test]
    fn evaluate_zero_q_with_negative_power_fails() {
        let zero = BigRational::zero();
        assert_eq!(q(-2).evaluate(&zero), Err(EvalError::DivisionByZero));
        assert_eq!(q(2).evaluate(&zero), Ok(BigRational::zero()));
    }

    #[test]
    fn display_matches_expected_forms() {
        assert_eq!(q(-3).to_string(), "q^{-3/2}");
        assert_eq!(q(2).to_string(), "q");
        assert_eq!(q(4).to_string(), "q^{2}");
        assert_eq!(QLaurent::constant(-7).to_string(), "-7");
        let mixed = &QLaurent::one() - &q(6);
        assert_eq!(mixed.to_string(), "1 - q^{3}");
        assert_eq!(QLaurent::zero().to_string(), "0");
    }
}
