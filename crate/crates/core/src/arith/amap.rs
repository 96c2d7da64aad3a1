//! The A-map on coprime pairs, in its closed (Euclidean) form and in
//! the original subtractive form. The subtractive form is kept literal so it
//! can serve as an oracle for the closed one.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::euclid::{euclidean_sequences, CoprimePair, EuclideanData, Role};
use crate::error::{Error, Result};
use crate::json;
use crate::modular::is_coprime;
use crate::registry::{Named, Registry};

/// Output of the closed A-map for a pq pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedAMap {
    /// `(m, n) = (rho_0, rho_{-1})`, always normalized `n > m`.
    pub mn: CoprimePair,
    pub ell: i64,
    /// The dual sequences `rho`, `sigma` as built by the recursion.
    pub dual: EuclideanData,
}

impl ClosedAMap {
    /// `A(p-q, q)` is `(m, n)` for even `ell` and `(n, m)` for odd `ell`.
    pub fn swapped(&self) -> bool {
        self.ell.rem_euclid(2) == 1
    }

    pub fn ordered(&self) -> (BigInt, BigInt) {
        let (m, n) = (self.mn.first().clone(), self.mn.second().clone());
        if self.swapped() {
            (n, m)
        } else {
            (m, n)
        }
    }
}

/// Closed form: `sigma_0 = r_ell - 1`, `sigma_i = s_{ell+1-i}`, and `rho`
/// built backwards from `rho_{ell+2} = 0`, `rho_{ell+1} = 1` by
/// `rho_i = rho_{i+1} sigma_{i+1} + rho_{i+2}`.
pub fn a_map_closed(pq: &CoprimePair) -> ClosedAMap {
    pq.expect_role(Role::PQ);
    let data = euclidean_sequences(pq);
    let ell = data.ell();

    let mut sigma = Vec::with_capacity((ell + 2) as usize);
    sigma.push(data.r(ell) - 1);
    for i in 1..=ell + 1 {
        sigma.push(data.s(ell + 1 - i).clone());
    }

    // rho[k] holds rho_{k-1}
    let len = (ell + 4) as usize;
    let mut rho = vec![BigInt::zero(); len];
    rho[len - 1] = BigInt::zero();
    rho[len - 2] = BigInt::one();
    for i in (-1..=ell).rev() {
        let k = (i + 1) as usize;
        rho[k] = &rho[k + 1] * &sigma[(i + 1) as usize] + &rho[k + 2];
    }

    let mn = CoprimePair::mn(rho[1].clone(), rho[0].clone())
        .expect("closed A-map produces a normalized coprime pair");
    let dual = EuclideanData::from_parts(rho, sigma);
    ClosedAMap { mn, ell, dual }
}

/// Output of the subtractive recursion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubtractiveAMap {
    #[serde(serialize_with = "json::int")]
    pub m: BigInt,
    #[serde(serialize_with = "json::int")]
    pub n: BigInt,
    /// Raw coefficients with `-c m + d n = 1`.
    #[serde(serialize_with = "json::int")]
    pub c: BigInt,
    #[serde(serialize_with = "json::int")]
    pub d: BigInt,
    pub steps: u64,
}

/// Iterates `(a, b) -> (a - b, b)` or `(a, b - a)` with the companion updates
/// on `(m, n)` and `(c, d)` until `a = b = 1`.
pub fn a_map_subtractive(a: &BigInt, b: &BigInt) -> Result<SubtractiveAMap> {
    if !is_coprime(a, b) {
        return Err(Error::NotCoprime(a.clone(), b.clone()));
    }
    for x in [a, b] {
        if x <= &BigInt::zero() {
            return Err(Error::NotPositive(x.clone()));
        }
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let (mut m, mut n) = (BigInt::one(), BigInt::one());
    let (mut c, mut d) = (BigInt::zero(), BigInt::one());
    let mut steps = 0u64;
    while !(a.is_one() && b.is_one()) {
        if a > b {
            a -= &b;
            m += &n;
            d += &c;
        } else {
            b -= &a;
            n += &m;
            c += &d;
        }
        steps += 1;
    }
    Ok(SubtractiveAMap { m, n, c, d, steps })
}

/// `A(a, b)` as an ordered pair with the raw coefficients
/// (`-c x + d y = 1` for image `(x, y)`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AMapImage {
    #[serde(serialize_with = "json::int")]
    pub x: BigInt,
    #[serde(serialize_with = "json::int")]
    pub y: BigInt,
    #[serde(serialize_with = "json::int")]
    pub c: BigInt,
    #[serde(serialize_with = "json::int")]
    pub d: BigInt,
}

/// One way of evaluating the A-map on an arbitrary coprime pair.
pub trait AMapMethod: Named + Send + Sync {
    fn image(&self, a: &BigInt, b: &BigInt) -> Result<AMapImage>;
}

pub struct Closed;
pub struct Subtractive;

impl Named for Closed {
    fn name(&self) -> &'static str {
        "closed"
    }
    fn description(&self) -> &'static str {
        "Euclidean quotients and the dual rho/sigma recursion"
    }
}

impl AMapMethod for Closed {
    fn image(&self, a: &BigInt, b: &BigInt) -> Result<AMapImage> {
        if !is_coprime(a, b) {
            return Err(Error::NotCoprime(a.clone(), b.clone()));
        }
        if a == b {
            // only (1, 1) is coprime here; it is already terminal
            return Ok(AMapImage { x: a.clone(), y: b.clone(), c: BigInt::zero(), d: BigInt::one() });
        }
        if a < b {
            // A(a, b) is A(b, a) reversed, with the raw pair shifted to stay positive
            let t = self.image(b, a)?;
            return Ok(AMapImage { c: &t.x - &t.d, d: &t.y - &t.c, x: t.y, y: t.x });
        }
        let pq = CoprimePair::pq(a + b, b.clone())?;
        let closed = a_map_closed(&pq);
        let bez = super::euclid::bezout_cd(&pq);
        let (x, y) = closed.ordered();
        let (c, d) = if closed.swapped() { (-bez.d, bez.c) } else { (-bez.c, bez.d) };
        Ok(AMapImage { x, y, c, d })
    }
}

impl Named for Subtractive {
    fn name(&self) -> &'static str {
        "subtractive"
    }
    fn description(&self) -> &'static str {
        "step-by-step subtraction (slow for large inputs)"
    }
}

impl AMapMethod for Subtractive {
    fn image(&self, a: &BigInt, b: &BigInt) -> Result<AMapImage> {
        let s = a_map_subtractive(a, b)?;
        Ok(AMapImage { x: s.m, y: s.n, c: s.c, d: s.d })
    }
}

pub fn amap_methods() -> Registry<dyn AMapMethod> {
    let mut reg: Registry<dyn AMapMethod> = Registry::new("A-map method");
    reg.register(Box::new(Closed)).register(Box::new(Subtractive));
    reg
}
