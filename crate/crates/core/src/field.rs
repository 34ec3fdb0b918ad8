//! Exact coefficient fields: the rationals and prime fields `Z/p`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// The default characteristic used when no field is requested explicitly.
pub const DEFAULT_PRIME: u32 = 32003;

const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

/// A field element. Rationals are kept reduced with positive denominator
/// (guaranteed by `BigRational`); residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u32),
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(AlgebraError::InvalidField(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Residue(v.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(*p);
                let mut r = v % &m;
                if r.is_negative() {
                    r += &m;
                }
                Scalar::Residue(r.to_u32().expect("residue fits"))
            }
        }
    }

    /// `num / den`; fails on a zero denominator (including `den ≡ 0 mod p`).
    pub fn fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, AlgebraError> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.mul(&self.from_bigint(num), &self.inv(&d)))
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (FieldSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x + y)
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Residue(x)) => {
                Scalar::Residue(if *x == 0 { 0 } else { p - x })
            }
            (FieldSpec::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (FieldSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x * y)
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    /// Multiplicative inverse. Panics on zero; callers check first.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Residue(x)) => {
                Scalar::Residue(pow_mod(*x as u64, *p as u64 - 2, *p as u64) as u32)
            }
            (FieldSpec::Rationals, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Residue(x)) => x < p,
            (FieldSpec::Rationals, Scalar::Rational(r)) => r.denom().is_positive(),
            _ => false,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "ZZ/{p}"),
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue(x) => *x == 1,
        }
    }

    /// True when the element prints with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(FieldSpec::prime(32003).is_ok());
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(32004).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime((1u64 << 31) + 11).is_err());
    }

    #[test]
    fn residue_arithmetic() {
        let f = FieldSpec::Prime(7);
        let a = f.from_i64(-3);
        assert_eq!(a, Scalar::Residue(4));
        assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
        assert_eq!(f.add(&a, &f.from_i64(3)), f.zero());
    }

    #[test]
    fn rationals_reduce() {
        let f = FieldSpec::Rationals;
        let half = f.fraction(&BigInt::from(2), &BigInt::from(-4)).unwrap();
        assert_eq!(half.to_string(), "-1/2");
        assert!(f.fraction(&BigInt::from(1), &BigInt::from(0)).is_err());
        assert!(FieldSpec::Prime(5)
            .fraction(&BigInt::from(1), &BigInt::from(10))
            .is_err());
    }
}
