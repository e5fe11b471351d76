//! Field descriptors and exact scalars.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LinalgError;

/// The coefficient field: either the rationals or a prime field `GF(p)`.
///
/// The only way to obtain a prime field is through [`Field::prime`] (or
/// parsing), which checks primality, so every `Field` value is valid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    modulus: Option<u64>,
}

impl Field {
    pub const fn rationals() -> Self {
        Self { modulus: None }
    }

    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Self { modulus: Some(p) })
    }

    /// `None` for the rationals.
    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    /// 0 for the rationals, `p` for `GF(p)`.
    pub fn characteristic(&self) -> u64 {
        self.modulus.unwrap_or(0)
    }

    pub fn is_rational(&self) -> bool {
        self.modulus.is_none()
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.modulus {
            None => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Some(p) => Scalar::Residue {
                value: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den` in this field. Fails when `den` vanishes in the field.
    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        let d = self.from_i64(den);
        if d.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        Ok(&self.from_i64(num) * &d.inverse())
    }
}

impl Default for Field {
    fn default() -> Self {
        Self::rationals()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => f.write_str("rat"),
            Some(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = LinalgError;

    /// Accepts `rat` or `gf:<p>` with `p` prime.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "rat" {
            return Ok(Self::rationals());
        }
        let p = s
            .strip_prefix("gf:")
            .and_then(|rest| rest.parse::<u64>().ok())
            .ok_or_else(|| LinalgError::BadFieldDescriptor(s.to_string()))?;
        Self::prime(p)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element.
///
/// Arithmetic between scalars of different fields is a logic error and
/// panics; [`Matrix`](super::Matrix) construction rejects mixed entries with
/// [`LinalgError::FieldMismatch`] so the elimination kernel never sees them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Reduced fraction with positive denominator.
    Rational(BigRational),
    /// `0 <= value < modulus`, modulus prime.
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::rationals(),
            Scalar::Residue { modulus, .. } => Field {
                modulus: Some(*modulus),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inverse(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            },
        }
    }

    /// Integer value when the scalar is an integral rational that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => i64::try_from(*value).ok(),
        }
    }

    fn residue_parts(a: &Scalar, b: &Scalar) -> Option<(u64, u64, u64)> {
        match (a, b) {
            (
                Scalar::Residue { value: x, modulus: p },
                Scalar::Residue { value: y, modulus: q },
            ) if p == q => Some((*x, *y, *p)),
            _ => None,
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(p as i128) as u64
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (self, rhs) {
            return Scalar::Rational(x + y);
        }
        let (x, y, p) = Scalar::residue_parts(self, rhs).unwrap_or_else(|| mismatch(self, rhs));
        Scalar::Residue {
            value: ((x as u128 + y as u128) % p as u128) as u64,
            modulus: p,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (self, rhs) {
            return Scalar::Rational(x - y);
        }
        let (x, y, p) = Scalar::residue_parts(self, rhs).unwrap_or_else(|| mismatch(self, rhs));
        Scalar::Residue {
            value: ((x as u128 + p as u128 - y as u128) % p as u128) as u64,
            modulus: p,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (self, rhs) {
            return Scalar::Rational(x * y);
        }
        let (x, y, p) = Scalar::residue_parts(self, rhs).unwrap_or_else(|| mismatch(self, rhs));
        Scalar::Residue {
            value: ((x as u128 * y as u128) % p as u128) as u64,
            modulus: p,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

/// Scalars serialize as their display string (`"-1/2"`, `"3"`).
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => {
                let sign = if r.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}/{}", r.numer().abs(), r.denom())
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}
