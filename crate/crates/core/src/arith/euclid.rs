use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json;
use crate::modular::is_coprime;

/// Which normalization a pair carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    /// `(p, q)` with `p - q > q >= 1`, parametrizing `B(p,q)`.
    PQ,
    /// `(m, n)` with `n > m >= 1`, parametrizing `A(m,n)`.
    MN,
}

/// An ordered pair of positive coprime integers in one of the two
/// normalizations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoprimePair {
    first: BigInt,
    second: BigInt,
    role: Role,
}

impl CoprimePair {
    pub fn pq(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        check_positive(&p)?;
        check_positive(&q)?;
        if !is_coprime(&p, &q) {
            return Err(Error::NotCoprime(p, q));
        }
        if &p - &q <= q {
            let hint = if p > q && (&p - &q) * 2 < p {
                format!("B(p,q) = B(p,p-q), so try ({}, {})", p, &p - &q)
            } else {
                "need p > 2q".to_string()
            };
            return Err(Error::PqOutOfRange { p, q, hint });
        }
        Ok(CoprimePair { first: p, second: q, role: Role::PQ })
    }

    pub fn mn(m: impl Into<BigInt>, n: impl Into<BigInt>) -> Result<Self> {
        let (m, n) = (m.into(), n.into());
        check_positive(&m)?;
        check_positive(&n)?;
        if !is_coprime(&m, &n) {
            return Err(Error::NotCoprime(m, n));
        }
        if n <= m {
            return Err(Error::MnOutOfRange { m, n });
        }
        Ok(CoprimePair { first: m, second: n, role: Role::MN })
    }

    pub fn first(&self) -> &BigInt {
        &self.first
    }

    pub fn second(&self) -> &BigInt {
        &self.second
    }

    pub fn role(&self) -> Role {
        self.role
    }

    /// The lens-space parameter `p`: `p` itself for a pq pair, `m + n` for an
    /// mn pair.
    pub fn lens_p(&self) -> BigInt {
        match self.role {
            Role::PQ => self.first.clone(),
            Role::MN => &self.first + &self.second,
        }
    }

    pub(crate) fn expect_role(&self, role: Role) {
        assert_eq!(self.role, role, "operation needs a {role:?} pair, got {self}");
    }
}

impl fmt::Display for CoprimePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

fn check_positive(x: &BigInt) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::NotPositive(x.clone()))
    }
}

/// Remainders `r_{-1} > r_0 > ... > r_{ell+1} = 1 > r_{ell+2} = 0` and
/// quotients `s_0..=s_{ell+1}` with `r_{i-1} = r_i s_i + r_{i+1}`.
///
/// Indices follow the math: `r(-1)` is the larger input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EuclideanData {
    #[serde(serialize_with = "json::ints")]
    remainders: Vec<BigInt>,
    #[serde(serialize_with = "json::ints")]
    quotients: Vec<BigInt>,
    ell: i64,
}

impl EuclideanData {
    /// Runs the Euclidean algorithm on `a > b >= 1`, `gcd(a, b) = 1`.
    pub(crate) fn run(a: &BigInt, b: &BigInt) -> Self {
        debug_assert!(a > b && b.is_positive() && is_coprime(a, b));
        let mut remainders = vec![a.clone(), b.clone()];
        let mut quotients = Vec::new();
        loop {
            let n = remainders.len();
            if remainders[n - 1].is_zero() {
                break;
            }
            let (s, r) = remainders[n - 2].div_mod_floor(&remainders[n - 1]);
            quotients.push(s);
            remainders.push(r);
        }
        // remainders = [r_{-1}, ..., r_{ell+1} = 1, r_{ell+2} = 0]
        let ell = remainders.len() as i64 - 4;
        EuclideanData { remainders, quotients, ell }
    }

    /// Builds the data from sequences produced some other way (the dual
    /// sequences of the A-map); checks the defining invariants.
    pub(crate) fn from_parts(remainders: Vec<BigInt>, quotients: Vec<BigInt>) -> Self {
        let ell = remainders.len() as i64 - 4;
        let data = EuclideanData { remainders, quotients, ell };
        debug_assert!(data.invariants_hold());
        data
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    /// `r_i` for `-1 <= i <= ell + 2`.
    pub fn r(&self, i: i64) -> &BigInt {
        assert!((-1..=self.ell + 2).contains(&i), "r_{i} outside -1..={}", self.ell + 2);
        &self.remainders[(i + 1) as usize]
    }

    /// `s_i` for `0 <= i <= ell + 1`.
    pub fn s(&self, i: i64) -> &BigInt {
        assert!((0..=self.ell + 1).contains(&i), "s_{i} outside 0..={}", self.ell + 1);
        &self.quotients[i as usize]
    }

    pub fn remainders(&self) -> &[BigInt] {
        &self.remainders
    }

    pub fn quotients(&self) -> &[BigInt] {
        &self.quotients
    }

    /// `r_{-1} / r_0` rebuilt from the quotients as a regular continued
    /// fraction `s_0 + 1/(s_1 + 1/(...))`, closing with `r_{ell+1} = 1`.
    pub fn reconstruct(&self) -> BigRational {
        let mut acc = BigRational::from_integer(self.quotients.last().unwrap().clone());
        for s in self.quotients.iter().rev().skip(1) {
            acc = BigRational::from_integer(s.clone()) + acc.recip();
        }
        acc / BigRational::from_integer(self.r(self.ell + 1).clone())
    }

    pub fn invariants_hold(&self) -> bool {
        let ell = self.ell;
        if ell < -1 || self.remainders.len() as i64 != ell + 4 || self.quotients.len() as i64 != ell + 2 {
            return false;
        }
        let strictly_decreasing = self.remainders.windows(2).all(|w| w[0] > w[1]);
        let ends = self.r(ell + 1).is_one() && self.r(ell + 2).is_zero();
        let ell_is_last = ell == -1 || self.r(ell) > &BigInt::one();
        let division = (0..=ell + 1).all(|i| *self.r(i - 1) == self.r(i) * self.s(i) + self.r(i + 1));
        strictly_decreasing && ends && ell_is_last && division
    }
}

/// Euclidean data of a pair: `(p, q)` for a pq pair, `(n, m)` for an mn pair
/// (so `rho_{-1} = n`, `rho_0 = m`).
pub fn euclidean_sequences(pair: &CoprimePair) -> EuclideanData {
    match pair.role() {
        Role::PQ => EuclideanData::run(pair.first(), pair.second()),
        Role::MN => EuclideanData::run(pair.second(), pair.first()),
    }
}

/// Bezout coefficients `c m + d n = 1` for the mn pair matched to a pq pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BezoutData {
    #[serde(serialize_with = "json::int")]
    pub c: BigInt,
    #[serde(serialize_with = "json::int")]
    pub d: BigInt,
}

/// `|det A_i|` for `i = -1..=ell`, where `A_i` is the tridiagonal matrix
/// with diagonal `s_1, -s_2, s_3, ...`. Index `k` of the result holds
/// `|det A_{k-1}|`.
pub fn det_a_abs(data: &EuclideanData) -> Vec<BigInt> {
    let mut dets = vec![BigInt::zero(), BigInt::one()];
    for i in 1..=data.ell() {
        let next = data.s(i) * &dets[i as usize] + &dets[(i - 1) as usize];
        dets.push(next);
    }
    dets
}

/// The Bezout pair singled out by the A-map:
/// `(-1)^ell (-c, d) = (|det A_{ell-1}| + (r_ell - 1)|det A_ell|, |det A_ell|)`.
///
/// For `q = 1` (`ell = -1`) the backward convention `|det A_{-2}| = 1` gives
/// `(c, d) = (1, 0)`.
pub fn bezout_cd(pq: &CoprimePair) -> BezoutData {
    pq.expect_role(Role::PQ);
    let data = euclidean_sequences(pq);
    let ell = data.ell();
    let (prev, last) = if ell == -1 {
        (BigInt::one(), BigInt::zero())
    } else {
        let dets = det_a_abs(&data);
        (dets[ell as usize].clone(), dets[(ell + 1) as usize].clone())
    };
    let x = prev + (data.r(ell) - 1) * &last;
    let sign = if ell.rem_euclid(2) == 0 { BigInt::one() } else { -BigInt::one() };
    BezoutData { c: -&sign * x, d: sign * last }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn five_two() {
        let e = euclidean_sequences(&CoprimePair::pq(5, 2).unwrap());
        assert_eq!(e.remainders(), ints(&[5, 2, 1, 0]).as_slice());
        assert_eq!(e.quotients(), ints(&[2, 2]).as_slice());
        assert_eq!(e.ell(), 0);
    }

    #[test]
    fn eight_three() {
        let e = euclidean_sequences(&CoprimePair::pq(8, 3).unwrap());
        assert_eq!(e.remainders(), ints(&[8, 3, 2, 1, 0]).as_slice());
        assert_eq!(e.quotients(), ints(&[2, 1, 2]).as_slice());
        assert_eq!(e.ell(), 1);
        assert_eq!(e.r(-1), &BigInt::from(8));
        assert_eq!(e.s(2), &BigInt::from(2));
    }

    #[test]
    fn q_one_is_degenerate() {
        let e = euclidean_sequences(&CoprimePair::pq(3, 1).unwrap());
        assert_eq!(e.remainders(), ints(&[3, 1, 0]).as_slice());
        assert_eq!(e.quotients(), ints(&[3]).as_slice());
        assert_eq!(e.ell(), -1);
        assert!(e.invariants_hold());
    }

    #[test]
    fn mn_runs_on_n_m() {
        let e = euclidean_sequences(&CoprimePair::mn(2, 3).unwrap());
        assert_eq!(e.remainders(), ints(&[3, 2, 1, 0]).as_slice());
        assert_eq!(e.quotients(), ints(&[1, 2]).as_slice());
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(matches!(CoprimePair::pq(4, 2), Err(Error::NotCoprime(..))));
        assert!(matches!(CoprimePair::pq(5, 3), Err(Error::PqOutOfRange { .. })));
        assert!(matches!(CoprimePair::pq(4, 0), Err(Error::NotPositive(_))));
        assert!(matches!(CoprimePair::mn(3, 2), Err(Error::MnOutOfRange { .. })));
        assert!(matches!(CoprimePair::mn(1, 1), Err(Error::MnOutOfRange { .. })));
        assert!(CoprimePair::mn(1, 2).is_ok());
    }

    #[test]
    fn out_of_range_hint_suggests_complement() {
        let err = CoprimePair::pq(5, 3).unwrap_err().to_string();
        assert!(err.contains("(5, 2)"), "{err}");
    }

    #[test]
    fn reconstruct_round_trip() {
        for (p, q) in [(5, 2), (8, 3), (3, 1), (101, 29)] {
            let e = euclidean_sequences(&CoprimePair::pq(p, q).unwrap());
            assert_eq!(e.reconstruct(), BigRational::new(p.into(), q.into()));
        }
    }

    #[test]
    fn bezout_examples() {
        let cases = [((5, 2), (-1, 1)), ((8, 3), (2, -1)), ((7, 3), (-2, 1)), ((3, 1), (1, 0))];
        for ((p, q), (c, d)) in cases {
            let b = bezout_cd(&CoprimePair::pq(p, q).unwrap());
            assert_eq!((b.c, b.d), (BigInt::from(c), BigInt::from(d)), "({p},{q})");
        }
    }
}
