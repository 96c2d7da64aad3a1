//! Homotopy invariants of the contact structures induced on the common
//! boundary: Thurston-Bennequin bookkeeping, the Gamma invariant computed
//! from both fillings, and d_3.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{a_map_closed, bezout_cd, euclidean_sequences, CoprimePair, Role};
use crate::error::{Error, Result};
use crate::json;
use crate::modular::{half_mod, CyclicElement};
use crate::spin::{admissible_labels, induced_spin, t_transport, SpinLabel};

pub const MU0: &str = "mu0";
pub const GAMMA0: &str = "gamma0";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaValue {
    pub element: CyclicElement,
    pub spin: SpinLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TbBreakdown {
    #[serde(serialize_with = "json::int")]
    pub positives: BigInt,
    #[serde(serialize_with = "json::int")]
    pub negatives: BigInt,
    #[serde(serialize_with = "json::int")]
    pub left_cusps: BigInt,
    #[serde(serialize_with = "json::int")]
    pub tb: BigInt,
}

/// Crossing count of the Legendrian attaching circle on the A-side, using
/// `n = m sigma_0 + rho_1`; checked against `tb = mn - 2(m+n) + 1`.
pub fn tb_breakdown(mn: &CoprimePair) -> Result<TbBreakdown> {
    mn.expect_role(Role::MN);
    let e = euclidean_sequences(mn);
    let (m, n) = (mn.first(), mn.second());
    let sigma0 = e.s(0);
    let rho1 = e.r(1);
    debug_assert_eq!(&(m * sigma0 + rho1), n);
    let m1 = m - 1;
    let positives = &m1 * ((rho1 - 1) + sigma0 * &m1) + sigma0 * &m1;
    let negatives = m + n - 1;
    let left_cusps = BigInt::one();
    let tb = &positives - &negatives - &left_cusps;
    let expected = m * n - (m + n) * 2 + 1;
    if tb != expected {
        return Err(Error::CertificateFailure(format!("tb for {mn}: crossings give {tb}, expected {expected}")));
    }
    Ok(TbBreakdown { positives, negatives, left_cusps, tb })
}

/// `(rot + lk)/2`, the value of the Chern class on a 2-handle.
pub fn rho_evaluation(rot: &BigInt, lk_char: &BigInt) -> Result<BigInt> {
    let total = rot + lk_char;
    if total.is_odd() {
        return Err(Error::NonIntegralRho(total));
    }
    Ok(total / 2)
}

fn half_t(t: i8) -> BigInt {
    // (1 - t)/2 for t = +1/-1
    BigInt::from((1 - t as i64) / 2)
}

fn t1_pow_q(label: SpinLabel, q: &BigInt) -> i64 {
    if label.t1() == -1 && q.is_odd() {
        -1
    } else {
        1
    }
}

/// `(3 - t_0 t_1^q)/2`.
fn b_side_k(pq: &CoprimePair, label: SpinLabel) -> BigInt {
    BigInt::from((3 - label.t0() as i64 * t1_pow_q(label, pq.second())) / 2)
}

/// `(pq/2 + ((3 - t_0 t_1^q)/2) p^2/2) mu_0` in `Z/p^2`.
pub fn gamma_b(pq: &CoprimePair, label: SpinLabel) -> Result<GammaValue> {
    pq.expect_role(Role::PQ);
    label.check_for(pq.first())?;
    let (p, q) = (pq.first(), pq.second());
    let modulus = p * p;
    let coefficient = half_mod(&(p * q), &modulus)? + b_side_k(pq, label) * half_mod(&modulus, &modulus)?;
    Ok(GammaValue { element: CyclicElement::new(&coefficient, &modulus, MU0), spin: label })
}

/// `(pq/2) mu_0`, the value the B-side Gamma reduces to for the distinguished label.
pub fn half_pq(pq: &CoprimePair) -> Result<CyclicElement> {
    let (p, q) = (pq.first(), pq.second());
    let modulus = p * p;
    Ok(CyclicElement::new(&half_mod(&(p * q), &modulus)?, &modulus, MU0))
}

/// The B-side Gamma assembled from the two handle evaluations
/// `rho([K_0]) = ((1-t_1)/2) p / 2` and
/// `rho([K_1]) = (q + ((3 - t_0 t_1^q)/2) p - ((1-t_1)/2)(pq+1)) / 2`,
/// pushed through `mu~_0 = (1 + pq) mu_0`, `mu~_1 = p mu_0`.
///
/// Only integral for labels coming from a characteristic sublink.
pub fn gamma_b_via_rho(pq: &CoprimePair, label: SpinLabel) -> Result<GammaValue> {
    pq.expect_role(Role::PQ);
    label.check_for(pq.first())?;
    let (p, q) = (pq.first(), pq.second());
    let b = half_t(label.t1());
    let rho0 = rho_evaluation(&BigInt::zero(), &(&b * p))?;
    let lk1 = b_side_k(pq, label) * p - &b * (p * q + 1);
    let rho1 = rho_evaluation(q, &lk1)?;
    let coefficient = rho0 * (p * q + 1) + rho1 * p;
    Ok(GammaValue { element: CyclicElement::new(&coefficient, &(p * p), MU0), spin: label })
}

/// Data shared by the A-side computations for a matched pair.
struct Matched {
    m: BigInt,
    n: BigInt,
    c: BigInt,
    d: BigInt,
    ell: i64,
    modulus: BigInt,
}

fn matched(mn: &CoprimePair, pq: &CoprimePair) -> Result<Matched> {
    mn.expect_role(Role::MN);
    pq.expect_role(Role::PQ);
    let image = a_map_closed(pq);
    if &image.mn != mn {
        return Err(Error::InvalidConfig(format!("{mn} is not the A-map image of {pq}, which is {}", image.mn)));
    }
    let bez = bezout_cd(pq);
    let (m, n) = (mn.first().clone(), mn.second().clone());
    let modulus = (&m + &n) * (&m + &n);
    Ok(Matched { m, n, c: bez.c, d: bez.d, ell: image.ell, modulus })
}

/// `-(d-c)^2 mn + (cd(m+n) - c(d-c)m + d(d-c)n)(m+n)`, which is 1 whenever
/// `cm + dn = 1`; it lets `gamma_1` be traded for `(d-c)^2 (m+n) gamma_0`.
pub fn elimination_identity(m: &BigInt, n: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    let dc = d - c;
    let s = m + n;
    -(&dc * &dc) * m * n + (c * d * &s - c * &dc * m + d * &dc * n) * &s
}

fn parity_sign(k: &BigInt) -> i64 {
    if k.is_even() {
        1
    } else {
        -1
    }
}

/// `((m+n)/2) [(d-c)^2 + ((1-t_1)/2)(1 + (d-c)^2 (mn + ((1 + (-1)^(c+ell) t_0)/2)(m+n)))] gamma_0`
/// in `Z/(m+n)^2`, for the label induced from `label` on the B-side.
pub fn gamma_a(mn: &CoprimePair, pq: &CoprimePair, label: SpinLabel) -> Result<GammaValue> {
    let mt = matched(mn, pq)?;
    let induced = induced_spin(pq, label)?;
    let Matched { m, n, c, d, ell, modulus } = &mt;
    if !elimination_identity(m, n, c, d).is_one() {
        return Err(Error::CertificateFailure(format!("elimination identity fails for {mn} with c = {c}, d = {d}")));
    }
    let e = parity_sign(&(c + ell));
    let a = BigInt::from((1 + e * label.t0() as i64) / 2);
    let b = half_t(label.t1());
    let dc2 = (d - c) * (d - c);
    let s = m + n;
    let bracket = &dc2 + &b * (BigInt::one() + &dc2 * (m * n + &a * &s));
    let coefficient = half_mod(&(&s * bracket), modulus)?;
    Ok(GammaValue { element: CyclicElement::new(&coefficient, modulus, GAMMA0), spin: induced })
}

/// The A-side Gamma from its two handle evaluations
/// `rho(gamma_0) = ((1-t_1)/2)(m+n)/2`,
/// `rho(gamma_1) = (1 + ((1-t_1)/2)(mn + ((1 + (-1)^(c+ell) t_0)/2)(m+n)))/2`,
/// halved in `Z/(m+n)^2`, with `gamma_1 = (d-c)^2 (m+n) gamma_0`.
pub fn gamma_a_via_rho(mn: &CoprimePair, pq: &CoprimePair, label: SpinLabel) -> Result<GammaValue> {
    let mt = matched(mn, pq)?;
    let induced = induced_spin(pq, label)?;
    let Matched { m, n, c, d, ell, modulus } = &mt;
    let e = parity_sign(&(c + ell));
    let a = BigInt::from((1 + e * label.t0() as i64) / 2);
    let b = half_t(label.t1());
    let s = m + n;
    let rho0 = half_mod(&(&b * &s), modulus)?;
    let rho1 = half_mod(&(BigInt::one() + &b * (m * n + &a * &s)), modulus)?;
    let gamma1 = (d - c) * (d - c) * &s;
    let coefficient = rho0 + rho1 * gamma1;
    Ok(GammaValue { element: CyclicElement::new(&coefficient, modulus, GAMMA0), spin: induced })
}

/// `f^{-1}_* gamma_0` is `n mu_0` for even `ell` and `m mu_0` for odd `ell`.
pub fn gamma0_pullback_factor(mn: &CoprimePair, ell: i64) -> &BigInt {
    if ell.rem_euclid(2) == 0 {
        mn.second()
    } else {
        mn.first()
    }
}

/// The A-side Gamma pulled back to the B-side boundary; must equal `gamma_b`.
pub fn gamma_pullback(mn: &CoprimePair, pq: &CoprimePair, label: SpinLabel) -> Result<GammaValue> {
    let ga = gamma_a(mn, pq, label)?;
    let ell = euclidean_sequences(pq).ell();
    let pulled = GammaValue {
        element: ga.element.substitute(gamma0_pullback_factor(mn, ell), MU0),
        spin: label,
    };
    let gb = gamma_b(pq, label)?;
    if pulled.element != gb.element {
        return Err(Error::CertificateFailure(format!(
            "Gamma mismatch for {pq} / {mn} with {label}: pulled back {}, B-side {}",
            pulled.element, gb.element
        )));
    }
    Ok(pulled)
}

/// `(c_1^2 - 3 sigma - 2 chi) / 4`.
pub fn d3_from_characteristic(c1sq: &BigRational, sigma: &BigInt, chi: &BigInt) -> BigRational {
    (c1sq - BigRational::from_integer(sigma * 3 + chi * 2)) / BigRational::from_integer(BigInt::from(4))
}

/// `d_3` of a contact structure filled by a Stein rational ball:
/// `c_1^2 = 0`, `sigma = 0`, `chi = 1`.
pub fn d3_rational_ball() -> BigRational {
    d3_from_characteristic(&BigRational::zero(), &BigInt::zero(), &BigInt::one())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelReport {
    pub t0: i8,
    pub t1: i8,
    #[serde(rename = "gammaB", serialize_with = "json::int")]
    pub gamma_b: BigInt,
    #[serde(rename = "gammaA", serialize_with = "json::int")]
    pub gamma_a: BigInt,
    #[serde(rename = "gammaA_pulled", serialize_with = "json::int")]
    pub gamma_a_pulled: BigInt,
    /// Whether `gamma_b` equals `(pq/2) mu_0`.
    pub half_pq: bool,
    #[serde(rename = "T")]
    pub t_list: Vec<i8>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    #[serde(serialize_with = "json::int")]
    pub p: BigInt,
    #[serde(serialize_with = "json::int")]
    pub q: BigInt,
    #[serde(serialize_with = "json::int")]
    pub m: BigInt,
    #[serde(serialize_with = "json::int")]
    pub n: BigInt,
    pub ell: i64,
    #[serde(serialize_with = "json::int")]
    pub c: BigInt,
    #[serde(serialize_with = "json::int")]
    pub d: BigInt,
    pub labels: Vec<LabelReport>,
    pub d3: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}

/// Compares the two fillings' `d_3` and pulled-back Gamma for every label
/// admitted by the characteristic-sublink enumeration. Failures are recorded
/// in the report.
pub fn contactomorphism_certificate(pq: &CoprimePair) -> CertificateReport {
    pq.expect_role(Role::PQ);
    let image = a_map_closed(pq);
    let mn = image.mn.clone();
    let bez = bezout_cd(pq);
    let d3_b = d3_rational_ball();
    let d3_a = d3_rational_ball();
    let mut errors = Vec::new();
    let mut labels = Vec::new();
    for label in admissible_labels(pq) {
        let row = (|| -> Result<LabelReport> {
            let gb = gamma_b(pq, label)?;
            let ga = gamma_a(&mn, pq, label)?;
            let factor = gamma0_pullback_factor(&mn, image.ell);
            let pulled = ga.element.substitute(factor, MU0);
            Ok(LabelReport {
                t0: label.t0(),
                t1: label.t1(),
                pass: pulled == gb.element,
                half_pq: gb.element == half_pq(pq)?,
                gamma_b: gb.element.coefficient,
                gamma_a: ga.element.coefficient,
                gamma_a_pulled: pulled.coefficient,
                t_list: t_transport(pq, label)?,
            })
        })();
        match row {
            Ok(r) => labels.push(r),
            Err(e) => errors.push(format!("{label}: {e}")),
        }
    }
    let pass = errors.is_empty() && !labels.is_empty() && labels.iter().all(|l| l.pass) && d3_a == d3_b;
    CertificateReport {
        p: pq.first().clone(),
        q: pq.second().clone(),
        m: mn.first().clone(),
        n: mn.second().clone(),
        ell: image.ell,
        c: bez.c,
        d: bez.d,
        labels,
        d3: d3_a.to_string(),
        pass,
        errors,
    }
}
