//! Exact scalar fields: ℚ with arbitrary precision and GF(p) for primes `p < 2³¹`.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for ℚ.
    fn characteristic(&self) -> u64;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
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
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// Residues mod a prime `p < 2³¹`, stored reduced in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(p: u64) -> bool {
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

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "{p} is not a prime below 2^31"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
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
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // a^(p-2) by square and multiply
        let (mut base, mut exp, mut acc) = (*a, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(acc)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// A field chosen at run time by its characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Characteristic(pub u64);

impl Characteristic {
    /// Rejects characteristics that are neither 0 nor a prime below 2³¹.
    pub fn validate(self) -> Result<Characteristic> {
        if self.0 != 0 {
            PrimeField::new(self.0)?;
        }
        Ok(self)
    }
}

/// Runs `$body` with `$f` bound to the field of characteristic `$c`.
#[macro_export]
macro_rules! with_field {
    ($c:expr, $f:ident => $body:expr) => {{
        let c: $crate::field::Characteristic = $c;
        if c.0 == 0 {
            let $f = $crate::field::Rationals;
            $body
        } else {
            match $crate::field::PrimeField::new(c.0) {
                Ok($f) => $body,
                Err(e) => Err(e),
            }
        }
    }};
}

/// Rational rendering helper for reports.
pub fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else if q.is_negative() {
        format!("-{}/{}", q.numer().abs(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
