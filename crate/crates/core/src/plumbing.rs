//! Linear plumbings: linking matrices, first homology, the S_i determinant
//! family, tracing the gamma_0 sphere, and lens-space equivalence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{euclidean_sequences, CoprimePair, EuclideanData, Role};
use crate::contfrac::{a_side_chain, det_sequence, ContinuedFraction};
use crate::error::{Error, Result};
use crate::json;
use crate::matrix::IntMatrix;
use crate::modular::{is_coprime, CyclicElement};

/// A linear plumbing is recorded by its Euler weights, the same data as a
/// continued fraction.
pub type WeightedChain = ContinuedFraction;

/// Weights on the diagonal, 1 on the off-diagonals.
pub fn linking_matrix(chain: &WeightedChain) -> IntMatrix {
    let n = chain.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, w) in chain.coefficients().iter().enumerate() {
        m[(i, i)] = w.clone();
        if i + 1 < n {
            m[(i, i + 1)] = BigInt::one();
            m[(i + 1, i)] = BigInt::one();
        }
    }
    m
}

/// `H_1` of the boundary as the cyclic group generated by the first meridian.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyPresentation {
    #[serde(serialize_with = "json::int")]
    pub order: BigInt,
    /// Coefficient of `mu_i` in terms of `mu_1`, reduced mod `order`.
    #[serde(serialize_with = "json::ints")]
    pub meridian_coeffs: Vec<BigInt>,
}

impl HomologyPresentation {
    /// `mu_{i+1}` (0-based `i`) as an element of `Z/order`.
    pub fn meridian(&self, i: usize, generator: &str) -> CyclicElement {
        CyclicElement::new(&self.meridian_coeffs[i], &self.order, generator)
    }

    /// Every row of the linking matrix, `c_i mu_i + mu_{i-1} + mu_{i+1} = 0`,
    /// holds in `Z/order`.
    pub fn relations_hold(&self, chain: &WeightedChain) -> bool {
        let mu = &self.meridian_coeffs;
        let zero = BigInt::zero();
        let n = mu.len();
        (0..n).all(|i| {
            let prev = if i == 0 { &zero } else { &mu[i - 1] };
            let next = if i + 1 == n { &zero } else { &mu[i + 1] };
            (&chain.coefficients()[i] * &mu[i] + prev + next).is_multiple_of(&self.order)
        })
    }
}

/// `mu_i = (-1)^(i-1) det C_{i-1} mu_1`, order `|det C_n|`.
pub fn h1_presentation(chain: &WeightedChain) -> Result<HomologyPresentation> {
    let dets = det_sequence(chain);
    let order = dets[dets.len() - 1].abs();
    if order.is_zero() {
        return Err(Error::NonRationalSphere);
    }
    let mut meridian_coeffs = Vec::with_capacity(chain.len());
    meridian_coeffs.push(BigInt::one().mod_floor(&order));
    for (k, d) in dets.iter().take(chain.len() - 1).enumerate() {
        // k + 1 = i - 1
        let v = if k % 2 == 0 { -d } else { d.clone() };
        meridian_coeffs.push(v.mod_floor(&order));
    }
    Ok(HomologyPresentation { order, meridian_coeffs })
}

/// Smith normal form diagonal of a square matrix.
pub fn snf_order(matrix: &IntMatrix) -> Result<Vec<BigInt>> {
    if matrix.rows() != matrix.cols() {
        return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
    }
    Ok(matrix.smith_diagonal())
}

/// `+1, +1, -1, -1` with period 4: the value of `sin(pi i/2) + cos(pi i/2)`.
pub fn epsilon(i: i64) -> i64 {
    [1, 1, -1, -1][i.rem_euclid(4) as usize]
}

fn pm_one(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn check_index(i: i64, lo: i64, hi: i64) -> Result<()> {
    if (lo..=hi).contains(&i) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: i, lo, hi })
    }
}

/// The three chains `S_i`, `S_i^+`, `S_i^-` cut out of the B-side chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiChains {
    pub s: WeightedChain,
    /// Absent for `i = ell + 1`, where there is no further quotient to attach.
    pub plus: Option<WeightedChain>,
    pub minus: Option<WeightedChain>,
}

/// `S_i`: the middle `2i + 3` nodes of the B-side chain, i.e. weights
/// `(-1)^(k+1) s_k` for `k = ell+1-i..=ell+1`, the `1`, then the mirror
/// `(-1)^k s_k` back down, with `s_{ell+1} = r_ell`.
pub fn s_i_chains(pq: &CoprimePair, i: i64) -> Result<SiChains> {
    pq.expect_role(Role::PQ);
    let e = euclidean_sequences(pq);
    let ell = e.ell();
    check_index(i, 0, ell + 1)?;
    let lo = ell + 1 - i;
    let w = |k: i64, sign: i64| if sign > 0 { e.s(k).clone() } else { -e.s(k) };
    let mut core: Vec<BigInt> = (lo..=ell + 1).map(|k| w(k, pm_one(k + 1))).collect();
    core.push(BigInt::one());
    core.extend((lo..=ell + 1).rev().map(|k| w(k, pm_one(k))));

    let (plus, minus) = if i <= ell {
        let k = ell - i;
        let mut plus = vec![w(k, pm_one(k + 1))];
        plus.extend(core.iter().cloned());
        let mut minus = core.clone();
        minus.push(w(k, pm_one(k)));
        (Some(ContinuedFraction::new(plus)), Some(ContinuedFraction::new(minus)))
    } else {
        (None, None)
    };
    Ok(SiChains { s: ContinuedFraction::new(core), plus, minus })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiDeterminants {
    #[serde(serialize_with = "json::int")]
    pub s: BigInt,
    #[serde(serialize_with = "json::opt_int")]
    pub plus: Option<BigInt>,
    #[serde(serialize_with = "json::opt_int")]
    pub minus: Option<BigInt>,
}

/// Closed forms: `det S_i = (-1)^(i+1) r_{ell-i}^2`,
/// `det S_i^+ = (-1)^ell (r_{ell-i-1} r_{ell-i} + (-1)^(ell+i))`,
/// `det S_i^- = (-1)^ell ((-1)^(ell+i) - r_{ell-i-1} r_{ell-i})`.
pub fn s_i_closed_forms(e: &EuclideanData, i: i64) -> SiDeterminants {
    let ell = e.ell();
    let r = e.r(ell - i);
    let s = r * r * pm_one(i + 1);
    let (plus, minus) = if i <= ell {
        let prod = e.r(ell - i - 1) * r;
        let sign = BigInt::from(pm_one(ell + i));
        (
            Some((&prod + &sign) * pm_one(ell)),
            Some((&sign - &prod) * pm_one(ell)),
        )
    } else {
        (None, None)
    };
    SiDeterminants { s, plus, minus }
}

/// Determinants of `S_i`, `S_i^+`, `S_i^-` from their linking matrices,
/// checked against the closed forms.
pub fn s_i_determinants(pq: &CoprimePair, i: i64) -> Result<SiDeterminants> {
    let chains = s_i_chains(pq, i)?;
    let det = |c: &WeightedChain| linking_matrix(c).determinant();
    let brute = SiDeterminants {
        s: det(&chains.s)?,
        plus: chains.plus.as_ref().map(det).transpose()?,
        minus: chains.minus.as_ref().map(det).transpose()?,
    };
    let expected = s_i_closed_forms(&euclidean_sequences(pq), i);
    if brute != expected {
        return Err(Error::CertificateFailure(format!(
            "S_{i} determinants for {pq}: matrix {brute:?}, closed form {expected:?}"
        )));
    }
    Ok(brute)
}

/// The diagonal `[-rho_ell, (-1)^0 sigma_ell, (-1)^1 sigma_{ell-1}, ..., (-1)^(i-1) sigma_{ell+1-i}]`
/// met while tracing `gamma_0` through `i` slides.
pub fn gamma0_trace_chain(mn: &CoprimePair, i: i64) -> Result<WeightedChain> {
    mn.expect_role(Role::MN);
    let e = euclidean_sequences(mn);
    let ell = e.ell();
    check_index(i, 0, ell + 1)?;
    let mut diag = vec![-e.r(ell)];
    for k in (ell + 1 - i..=ell).rev() {
        let v = e.s(k).clone();
        diag.push(if pm_one(ell - k) > 0 { v } else { -v });
    }
    Ok(ContinuedFraction::new(diag))
}

/// Determinant of the traced chain, checked against `-epsilon(i) rho_{ell-i}`.
pub fn gamma0_trace_det(mn: &CoprimePair, i: i64) -> Result<BigInt> {
    let chain = gamma0_trace_chain(mn, i)?;
    let det = linking_matrix(&chain).determinant()?;
    let e = euclidean_sequences(mn);
    let expected = -(e.r(e.ell() - i) * epsilon(i));
    if det != expected {
        return Err(Error::CertificateFailure(format!(
            "gamma_0 trace for {mn} at i = {i}: det {det}, expected {expected}"
        )));
    }
    Ok(det)
}

/// `gamma_0` written in the meridians at the two ends of the A-side chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaInEta {
    /// In terms of the first meridian, `eta_{(-1)^ell}`.
    pub left: CyclicElement,
    /// In terms of the last meridian, `eta_{(-1)^(ell+1)}`.
    pub right: CyclicElement,
}

fn eta_name(k: i64) -> &'static str {
    if pm_one(k) > 0 {
        "eta+"
    } else {
        "eta-"
    }
}

/// Reads `gamma_0` (the `-sigma_0 - 1` node) off the meridian relations of the
/// A-side chain, once from each end.
pub fn gamma0_in_eta(mn: &CoprimePair) -> Result<GammaInEta> {
    let chain = a_side_chain(mn);
    let ell = euclidean_sequences(mn).ell();
    let idx = (ell + 1) as usize;
    let left = h1_presentation(&chain)?.meridian(idx, eta_name(ell));
    let right = h1_presentation(&chain.reversed())?.meridian(chain.len() - 1 - idx, eta_name(ell + 1));
    Ok(GammaInEta { left, right })
}

/// Closed forms `gamma_0 = -epsilon(ell) m eta_{(-1)^ell} = epsilon(ell+1) n eta_{(-1)^(ell+1)}`.
pub fn gamma0_in_eta_closed(mn: &CoprimePair) -> GammaInEta {
    mn.expect_role(Role::MN);
    let ell = euclidean_sequences(mn).ell();
    let (m, n) = (mn.first(), mn.second());
    let modulus = mn.lens_p() * mn.lens_p();
    GammaInEta {
        left: CyclicElement::new(&(m * -epsilon(ell)), &modulus, eta_name(ell)),
        right: CyclicElement::new(&(n * epsilon(ell + 1)), &modulus, eta_name(ell + 1)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LensRelation {
    SamePreserving,
    SameReversing,
    Different,
}

/// Classification of `L(p, q1)` against `L(p, q2)`.
///
/// When both orientations match (possible when `q^2 = -1 mod p` and friends)
/// the preserving answer wins.
pub fn lens_equiv(p: &BigInt, q1: &BigInt, q2: &BigInt) -> Result<LensRelation> {
    if !p.is_positive() {
        return Err(Error::NotPositive(p.clone()));
    }
    for q in [q1, q2] {
        if !is_coprime(p, q) {
            return Err(Error::NotCoprime(p.clone(), q.clone()));
        }
    }
    let md = |x: BigInt| x.mod_floor(p);
    let (a, b) = (md(q1.clone()), md(q2.clone()));
    let prod = md(&a * &b);
    let one = md(BigInt::one());
    if a == b || prod == one {
        Ok(LensRelation::SamePreserving)
    } else if a == md(-&b) || prod == md(-BigInt::one()) {
        Ok(LensRelation::SameReversing)
    } else {
        Ok(LensRelation::Different)
    }
}

/// `det S_{ell+1} / det S_ell^-`, which recovers `-p^2/(pq-1)`; needs `ell >= 0`.
pub fn s_ratio(pq: &CoprimePair) -> Result<BigRational> {
    let ell = euclidean_sequences(pq).ell();
    check_index(ell, 0, i64::MAX)?;
    let top = s_i_determinants(pq, ell + 1)?.s;
    let bottom = s_i_determinants(pq, ell)?.minus.expect("i <= ell has S_i^-");
    Ok(BigRational::new(top, bottom))
}
