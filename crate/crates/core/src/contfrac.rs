//! Negative continued fractions `[c_1, ..., c_n] = c_1 - 1/(c_2 - 1/(... - 1/c_n))`
//! and the two chains attached to a matched pair of rational balls.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{a_map_closed, euclidean_sequences, CoprimePair, Role};
use crate::error::{Error, Result};
use crate::json;

pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ContinuedFraction(#[serde(serialize_with = "json::ints")] Vec<BigInt>);

impl ContinuedFraction {
    /// Panics on an empty list; a continued fraction has at least one term.
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        assert!(!coefficients.is_empty(), "continued fraction needs a coefficient");
        ContinuedFraction(coefficients)
    }

    pub fn from_i64s(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        ContinuedFraction(self.0.iter().rev().cloned().collect())
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Value of a chain together with the two determinants it is a ratio of:
/// the full tridiagonal matrix, and the one with the first node removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: ExactRational,
    pub full_det: BigInt,
    pub tail_det: BigInt,
}

pub fn evaluate(cf: &ContinuedFraction) -> Result<Evaluation> {
    let c = cf.coefficients();
    let mut value = BigRational::from_integer(c[c.len() - 1].clone());
    for (index, coeff) in c.iter().enumerate().rev().skip(1) {
        if value.is_zero() {
            return Err(Error::DegenerateTail { index: index + 1 });
        }
        value = BigRational::from_integer(coeff.clone()) - value.recip();
    }
    let full_det = det_sequence(cf).pop().unwrap();
    let tail_det = if c.len() == 1 {
        BigInt::one()
    } else {
        det_sequence(&ContinuedFraction(c[1..].to_vec())).pop().unwrap()
    };
    debug_assert!(tail_det.is_zero() || value == BigRational::new(full_det.clone(), tail_det.clone()));
    Ok(Evaluation { value, full_det, tail_det })
}

/// `[det C_1, ..., det C_n]` for the leading principal minors, via
/// `det C_k = c_k det C_{k-1} - det C_{k-2}` from `det C_0 = 1`, `det C_{-1} = 0`.
pub fn det_sequence(cf: &ContinuedFraction) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(cf.len());
    let (mut prev, mut prev2) = (BigInt::one(), BigInt::zero());
    for c in cf.coefficients() {
        let next = c * &prev - &prev2;
        prev2 = std::mem::replace(&mut prev, next.clone());
        out.push(next);
    }
    out
}

/// The unique expansion with every coefficient `<= -2`; exists exactly for
/// `r < -1`.
pub fn negative_expansion(r: &ExactRational) -> Result<ContinuedFraction> {
    if r >= &-BigRational::one() {
        return Err(Error::NotNegativeExpandable(r.to_string()));
    }
    let mut out = Vec::new();
    let mut x = r.clone();
    loop {
        let c = x.floor().to_integer();
        if x.is_integer() {
            out.push(c);
            break;
        }
        x = (BigRational::from_integer(c.clone()) - &x).recip();
        out.push(c);
    }
    Ok(ContinuedFraction(out))
}

fn signed(k: i64, x: &BigInt) -> BigInt {
    if k.rem_euclid(2) == 0 {
        x.clone()
    } else {
        -x
    }
}

/// `[-s_0, s_1, ..., (-1)^ell r_ell, 1, (-1)^(ell+1) r_ell, ..., -s_1, s_0]`,
/// the plumbing chain bounding `L(p^2, pq-1)` on the `B(p,q)` side.
pub fn symmetric_chain(pq: &CoprimePair) -> ContinuedFraction {
    pq.expect_role(Role::PQ);
    let e = euclidean_sequences(pq);
    let ell = e.ell();
    let mut out: Vec<BigInt> = (0..=ell).map(|k| signed(k + 1, e.s(k))).collect();
    out.push(signed(ell, e.r(ell)));
    out.push(BigInt::one());
    out.push(signed(ell + 1, e.r(ell)));
    out.extend((0..=ell).rev().map(|k| signed(k, e.s(k))));
    ContinuedFraction(out)
}

/// The `A(m,n)` side chain
/// `[(-1)^ell rho_ell, (-1)^(ell-1) sigma_ell, ..., -sigma_0-1, 1, sigma_0+1, ..., (-1)^ell sigma_ell, (-1)^(ell+1) rho_ell]`,
/// collapsing to `[-sigma_0-1, 1, sigma_0+1]` when `ell = -1`.
pub fn a_side_chain(mn: &CoprimePair) -> ContinuedFraction {
    mn.expect_role(Role::MN);
    let e = euclidean_sequences(mn);
    let ell = e.ell();
    let sigma0 = e.s(0) + 1;
    let mut out = Vec::with_capacity((2 * ell + 5) as usize);
    if ell >= 0 {
        out.push(signed(ell, e.r(ell)));
        out.extend((1..=ell).rev().map(|k| signed(k + 1, e.s(k))));
    }
    out.push(-&sigma0);
    out.push(BigInt::one());
    out.push(sigma0);
    if ell >= 0 {
        out.extend((1..=ell).map(|k| signed(k, e.s(k))));
        out.push(signed(ell + 1, e.r(ell)));
    }
    ContinuedFraction(out)
}

/// The A-side chain for the pair matched to `pq` under the A-map.
pub fn matched_a_side_chain(pq: &CoprimePair) -> ContinuedFraction {
    a_side_chain(&a_map_closed(pq).mn)
}

/// `-p^2 / (pq - 1)`.
pub fn expected_symmetric_value(pq: &CoprimePair) -> ExactRational {
    let (p, q) = (pq.first(), pq.second());
    BigRational::new(-(p * p), p * q - 1)
}

/// Lens-space parameter `Q` with `value = -P/Q`, `P = |numerator|`, reduced mod `P`.
pub fn lens_parameter(value: &ExactRational) -> (BigInt, BigInt) {
    let p = value.numer().abs();
    let q = if value.is_negative() { value.denom().clone() } else { -value.denom() };
    let q = q.mod_floor(&p);
    (p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(xs: &[i64]) -> ContinuedFraction {
        ContinuedFraction::from_i64s(xs)
    }

    fn rat(n: i64, d: i64) -> ExactRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate(&cf(&[-3, -5, -2])).unwrap().value, rat(-25, 9));
        assert_eq!(evaluate(&cf(&[-2, 2, 1, -2, 2])).unwrap().value, rat(-25, 9));
        assert_eq!(evaluate(&cf(&[7])).unwrap().value, rat(7, 1));
    }

    #[test]
    fn evaluate_determinant_pair() {
        let ev = evaluate(&cf(&[-3, -5, -2])).unwrap();
        assert_eq!((ev.full_det, ev.tail_det), (BigInt::from(-25), BigInt::from(9)));
    }

    #[test]
    fn degenerate_tail() {
        assert_eq!(evaluate(&cf(&[3, 0])), Err(Error::DegenerateTail { index: 1 }));
        // [1, 1, 1]: tail [1, 1] evaluates to 0
        assert_eq!(evaluate(&cf(&[1, 1, 1])), Err(Error::DegenerateTail { index: 1 }));
    }

    #[test]
    fn det_sequence_examples() {
        assert_eq!(det_sequence(&cf(&[-2, 2, 1, -2, 2])), ints(&[-2, -5, -3, 11, 25]));
        assert_eq!(det_sequence(&cf(&[4])), ints(&[4]));
        assert_eq!(det_sequence(&cf(&[-2, -2, -2])), ints(&[-2, 3, -4]));
    }

    #[test]
    fn negative_expansion_examples() {
        assert_eq!(negative_expansion(&rat(-25, 9)).unwrap(), cf(&[-3, -5, -2]));
        assert_eq!(negative_expansion(&rat(-2, 1)).unwrap(), cf(&[-2]));
        assert_eq!(negative_expansion(&rat(-49, 13)).unwrap(), cf(&[-4, -5, -2, -2]));
        assert_eq!(negative_expansion(&rat(-3, 2)).unwrap(), cf(&[-2, -2]));
        assert!(negative_expansion(&rat(-1, 1)).is_err());
        assert!(negative_expansion(&rat(5, 3)).is_err());
    }

    #[test]
    fn symmetric_chain_examples() {
        let pq = |p, q| CoprimePair::pq(p, q).unwrap();
        assert_eq!(symmetric_chain(&pq(5, 2)), cf(&[-2, 2, 1, -2, 2]));
        assert_eq!(symmetric_chain(&pq(7, 2)), cf(&[-3, 2, 1, -2, 3]));
        assert_eq!(symmetric_chain(&pq(8, 3)), cf(&[-2, 1, -2, 1, 2, -1, 2]));
        assert_eq!(symmetric_chain(&pq(3, 1)), cf(&[-3, 1, 3]));
        assert_eq!(evaluate(&symmetric_chain(&pq(7, 2))).unwrap().value, rat(-49, 13));
        assert_eq!(evaluate(&symmetric_chain(&pq(8, 3))).unwrap().value, rat(-64, 23));
    }

    #[test]
    fn a_side_chain_examples() {
        let mn = |m, n| CoprimePair::mn(m, n).unwrap();
        let c = a_side_chain(&mn(2, 3));
        assert_eq!(c, cf(&[2, -2, 1, 2, -2]));
        assert_eq!(evaluate(&c).unwrap().value, rat(25, 11));

        let c = a_side_chain(&mn(1, 2));
        assert_eq!(c, cf(&[-3, 1, 3]));
        assert_eq!(evaluate(&c).unwrap().value, rat(-9, 2));

        let c = a_side_chain(&mn(3, 4));
        assert_eq!(c, cf(&[3, -2, 1, 2, -3]));
        assert_eq!(det_sequence(&c).pop().unwrap().abs(), BigInt::from(49));
    }

    #[test]
    fn lens_parameters() {
        assert_eq!(lens_parameter(&rat(-25, 9)), (BigInt::from(25), BigInt::from(9)));
        assert_eq!(lens_parameter(&rat(25, 11)), (BigInt::from(25), BigInt::from(14)));
    }
}
