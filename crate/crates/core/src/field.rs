//! Exact scalar arithmetic: arbitrary-precision rationals and prime fields.
//!
//! No floating point anywhere: Hilbert dimensions are exact integers and
//! rounding would invalidate every downstream count.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Default modulus for desk-scale genericity experiments (largest 16-bit prime).
pub const DEFAULT_PRIME: u64 = 65521;

/// Moduli must stay below 2^31 so products fit comfortably in u64/u128 paths.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || p > MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::one()),
            FieldSpec::Prime(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Fp(v.rem_euclid(*p as i64) as u64),
        }
    }

    /// a/b as a field element. `b` must be nonzero (and invertible mod p).
    pub fn from_fraction(&self, a: i64, b: i64) -> Result<Scalar> {
        if b == 0 {
            return Err(Error::Precondition("zero denominator".into()));
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Q(BigRational::new(
                BigInt::from(a),
                BigInt::from(b),
            ))),
            FieldSpec::Prime(_) => {
                let num = self.from_i64(a);
                let den = self.from_i64(b);
                if den.is_zero() {
                    return Err(Error::Precondition(format!(
                        "denominator {b} vanishes in {self}"
                    )));
                }
                Ok(num.mul(&den.inv(self), self))
            }
        }
    }

    pub fn check_same(&self, other: &FieldSpec) -> Result<()> {
        if self != other {
            return Err(Error::FieldMismatch(self.to_string(), other.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// A field element. Which variant is valid is dictated by the ambient
/// `FieldSpec`; mixing variants is a programming error and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp(v) => *v == 1,
        }
    }

    pub fn add(&self, other: &Scalar, field: &FieldSpec) -> Scalar {
        match (self, other, field) {
            (Scalar::Q(a), Scalar::Q(b), _) => Scalar::Q(a + b),
            (Scalar::Fp(a), Scalar::Fp(b), FieldSpec::Prime(p)) => Scalar::Fp((a + b) % p),
            _ => panic!("scalar/field variant mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar, field: &FieldSpec) -> Scalar {
        match (self, other, field) {
            (Scalar::Q(a), Scalar::Q(b), _) => Scalar::Q(a - b),
            (Scalar::Fp(a), Scalar::Fp(b), FieldSpec::Prime(p)) => Scalar::Fp((a + p - b) % p),
            _ => panic!("scalar/field variant mismatch"),
        }
    }

    pub fn mul(&self, other: &Scalar, field: &FieldSpec) -> Scalar {
        match (self, other, field) {
            (Scalar::Q(a), Scalar::Q(b), _) => Scalar::Q(a * b),
            (Scalar::Fp(a), Scalar::Fp(b), FieldSpec::Prime(p)) => {
                Scalar::Fp(((*a as u128 * *b as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar/field variant mismatch"),
        }
    }

    pub fn neg(&self, field: &FieldSpec) -> Scalar {
        match (self, field) {
            (Scalar::Q(a), _) => Scalar::Q(-a),
            (Scalar::Fp(a), FieldSpec::Prime(p)) => Scalar::Fp(if *a == 0 { 0 } else { p - a }),
            _ => panic!("scalar/field variant mismatch"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, field: &FieldSpec) -> Scalar {
        match (self, field) {
            (Scalar::Q(a), _) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Q(a.recip())
            }
            (Scalar::Fp(a), FieldSpec::Prime(p)) => {
                assert!(*a != 0, "inverse of zero");
                Scalar::Fp(pow_mod(*a, p - 2, *p))
            }
            _ => panic!("scalar/field variant mismatch"),
        }
    }

    pub fn div(&self, other: &Scalar, field: &FieldSpec) -> Scalar {
        self.mul(&other.inv(field), field)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v) => write!(f, "{v}"),
        }
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
