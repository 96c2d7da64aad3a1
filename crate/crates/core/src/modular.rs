//! Cyclic-group elements and the exact "divide by two" used by the Gamma
//! formulas, which write `pq/2` and `p^2/2` inside `Z/p^2`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json;

/// `a * g` in `Z/N`, with `a` kept in `[0, N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CyclicElement {
    #[serde(serialize_with = "json::int")]
    pub coefficient: BigInt,
    #[serde(serialize_with = "json::int")]
    pub modulus: BigInt,
    pub generator: String,
}

impl CyclicElement {
    pub fn new(coefficient: &BigInt, modulus: &BigInt, generator: impl Into<String>) -> Self {
        assert!(modulus.is_positive(), "cyclic group order must be positive");
        CyclicElement {
            coefficient: coefficient.mod_floor(modulus),
            modulus: modulus.clone(),
            generator: generator.into(),
        }
    }

    /// Rewrites `a * g` as `(a k) * h` given `g = k * h`.
    pub fn substitute(&self, k: &BigInt, generator: impl Into<String>) -> Self {
        CyclicElement::new(&(&self.coefficient * k), &self.modulus, generator)
    }
}

impl fmt::Display for CyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{} mod {}", self.coefficient, self.generator, self.modulus)
    }
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let ext = a.mod_floor(n).extended_gcd(n);
    if ext.gcd.is_one() {
        Some(ext.x.mod_floor(n))
    } else {
        None
    }
}

/// `value / 2` as an element of `Z/modulus`.
///
/// Even values are halved as integers. Odd values need 2 to be invertible,
/// i.e. an odd modulus; otherwise the half is undefined.
pub fn half_mod(value: &BigInt, modulus: &BigInt) -> Result<BigInt> {
    if value.is_even() {
        return Ok((value / BigInt::from(2)).mod_floor(modulus));
    }
    let two = BigInt::from(2);
    match mod_inverse(&two, modulus) {
        Some(inv) => Ok((value * inv).mod_floor(modulus)),
        None => Err(Error::ModularHalfUndefined {
            value: value.clone(),
            modulus: modulus.clone(),
        }),
    }
}

/// `(-1)^k` for any integer `k`, negative exponents included.
pub fn neg_one_pow(k: &BigInt) -> i32 {
    if k.is_even() {
        1
    } else {
        -1
    }
}

pub(crate) fn is_coprime(a: &BigInt, b: &BigInt) -> bool {
    a.gcd(b).is_one() && !(a.is_zero() && b.is_zero())
}
