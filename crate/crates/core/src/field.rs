//! Arithmetic in prime fields `F_q` with `q` an odd prime below `2^31`.
//!
//! Polynomials store bare `u32` residues and do arithmetic through a
//! [`PrimeField`]; [`FieldElement`] is the checked, self-describing form used
//! at API boundaries.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not an odd prime below 2^31")]
    BadModulus(u64),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("elements of F_{0} and F_{1} cannot be combined")]
    Mismatch(u32, u32),
}

/// The field `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    q: u32,
}

impl TryFrom<u32> for PrimeField {
    type Error = FieldError;
    fn try_from(q: u32) -> Result<Self, FieldError> {
        PrimeField::new(q as u64)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.q
    }
}

/// Trial division; `q < 2^31` keeps this under 50k iterations.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q % 2 == 0 {
        return q == 2;
    }
    let mut p = 3;
    while p * p <= q {
        if q % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if q < 3 || q >= 1 << 31 || !is_prime(q) {
            return Err(FieldError::BadModulus(q));
        }
        Ok(PrimeField { q: q as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.q
    }

    /// Reduce an arbitrary signed integer into `[0, q)`.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.q as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Result<u32, FieldError> {
        if a % self.q == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.q as i64, (a % self.q) as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let k = r0 / r1;
            (r0, r1) = (r1, r0 - k * r1);
            (s0, s1) = (s1, s0 - k * s1);
        }
        Ok(self.from_i64(s0))
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Centered representative in `(-q/2, q/2]`, used for printing.
    pub fn centered(self, a: u32) -> i64 {
        if a > self.q / 2 {
            a as i64 - self.q as i64
        } else {
            a as i64
        }
    }

    pub fn element(self, v: i64) -> FieldElement {
        FieldElement {
            value: self.from_i64(v),
            field: self,
        }
    }
}

/// A residue together with its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: PrimeField,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same(self, other: FieldElement) -> Result<PrimeField, FieldError> {
        if self.field != other.field {
            return Err(FieldError::Mismatch(self.field.q, other.field.q));
        }
        Ok(self.field)
    }

    pub fn add(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        let f = self.same(other)?;
        Ok(FieldElement { value: f.add(self.value, other.value), field: f })
    }

    pub fn sub(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        let f = self.same(other)?;
        Ok(FieldElement { value: f.sub(self.value, other.value), field: f })
    }

    pub fn mul(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        let f = self.same(other)?;
        Ok(FieldElement { value: f.mul(self.value, other.value), field: f })
    }

    pub fn neg(self) -> FieldElement {
        FieldElement { value: self.field.neg(self.value), field: self.field }
    }

    pub fn inv(self) -> Result<FieldElement, FieldError> {
        Ok(FieldElement { value: self.field.inv(self.value)?, field: self.field })
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
