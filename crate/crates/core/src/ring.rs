//! Coefficient rings: the integers, the rationals and prime fields.
//!
//! Every algebraic structure in the crate is generic over a [`Ring`] value.
//! The ring value carries whatever context its elements need (the modulus for
//! a prime field), so elements themselves stay plain data.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted for a prime field.
pub const MAX_PRIME: u64 = 1 << 31;

/// Serializable description of a coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RingSpec {
    Integers,
    Rationals,
    PrimeField { p: u64 },
}

impl RingSpec {
    pub fn validate(&self) -> Result<()> {
        if let RingSpec::PrimeField { p } = *self {
            if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
                return Err(Error::InvalidRing(format!("{p} is not a prime in [2, 2^31]")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::PrimeField { p } => write!(f, "F{p}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    /// Parses the command-line forms `Z`, `Q` and `Fp:P`.
    fn from_str(s: &str) -> Result<Self> {
        let spec = match s.trim() {
            "Z" => RingSpec::Integers,
            "Q" => RingSpec::Rationals,
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .or_else(|| other.strip_prefix('F'))
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidRing(format!("unknown ring `{other}`")))?;
                RingSpec::PrimeField { p }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A commutative ring with exact arithmetic.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> RingSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse, when `a` is a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_field(&self) -> bool;
    /// The element as an integer; `None` outside the integers.
    fn to_integer(&self, a: &Self::Elem) -> Option<BigInt>;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn sum<I: IntoIterator<Item = Self::Elem>>(&self, items: I) -> Self::Elem {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, &x))
    }

    /// Dot product of two equal-length slices.
    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = self.zero();
        for (x, y) in a.iter().zip(b) {
            if !self.is_zero(x) && !self.is_zero(y) {
                acc = self.add(&acc, &self.mul(x, y));
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

/// The field of residues modulo a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        RingSpec::PrimeField { p }.validate()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// All residues `0..p` in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u64> + Clone {
        0..self.p
    }

    /// Whether `a` is the square of a nonzero element.
    pub fn is_nonzero_square(&self, a: u64) -> bool {
        (1..self.p).any(|x| x * x % self.p == a % self.p)
    }

    /// Whether `a` is a square, zero included.
    pub fn is_square(&self, a: u64) -> bool {
        a.is_multiple_of(self.p) || self.is_nonzero_square(a)
    }
}

impl Ring for Integers {
    type Elem = BigInt;

    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn from_bigint(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
    fn is_field(&self) -> bool {
        false
    }
    fn to_integer(&self, a: &BigInt) -> Option<BigInt> {
        Some(a.clone())
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("`{s}` is not an integer")))
    }
}

impl Ring for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> RingSpec {
        RingSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_field(&self) -> bool {
        true
    }
    fn to_integer(&self, _a: &BigRational) -> Option<BigInt> {
        None
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("`{s}` is not a rational number"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
        }
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn spec(&self) -> RingSpec {
        RingSpec::PrimeField { p: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits in u64")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut e = self.p - 2;
        let mut base = *a;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        Some(acc)
    }
    fn is_field(&self) -> bool {
        true
    }
    fn to_integer(&self, _a: &u64) -> Option<BigInt> {
        None
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let v = BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("`{s}` is not a residue")))?;
        Ok(self.from_bigint(&v))
    }
}

/// Maps integer-valued data into another ring.
pub fn map_integers<R: Ring>(ring: &R, values: &[BigInt]) -> Vec<R::Elem> {
    values.iter().map(|v| ring.from_bigint(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_spec_parsing() {
        assert_eq!("Z".parse::<RingSpec>().unwrap(), RingSpec::Integers);
        assert_eq!("Q".parse::<RingSpec>().unwrap(), RingSpec::Rationals);
        assert_eq!("Fp:5".parse::<RingSpec>().unwrap(), RingSpec::PrimeField { p: 5 });
        assert!("Fp:4".parse::<RingSpec>().is_err());
        assert!("Fp:1".parse::<RingSpec>().is_err());
        assert!("R".parse::<RingSpec>().is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.neg(&0), 0);
        assert!(f.is_nonzero_square(4));
        assert!(!f.is_square(2));
        assert!(f.is_square(0));
        for a in 1..5 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }

    #[test]
    fn rational_round_trip() {
        let q = Rationals;
        let half = q.parse("2/4").unwrap();
        assert_eq!(q.format(&half), "1/2");
        assert_eq!(q.format(&q.from_i64(-3)), "-3");
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn integer_units() {
        let z = Integers;
        assert_eq!(z.inv(&BigInt::from(-1)), Some(BigInt::from(-1)));
        assert_eq!(z.inv(&BigInt::from(2)), None);
    }

    #[test]
    fn ring_spec_json_form() {
        let s = serde_json::to_string(&RingSpec::PrimeField { p: 3 }).unwrap();
        assert_eq!(s, r#"{"kind":"PrimeField","p":3}"#);
        let back: RingSpec = serde_json::from_str(r#"{"kind":"Integers"}"#).unwrap();
        assert_eq!(back, RingSpec::Integers);
    }
}
