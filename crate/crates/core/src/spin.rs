//! Spin structures on the lens-space boundaries, recorded as characteristic
//! sublinks and as `(t_0, t_1)` labels, and their transport across the
//! boundary identification.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::arith::{a_map_closed, bezout_cd, det_a_abs, euclidean_sequences, CoprimePair, Role};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// `(-1)^k` as `+1`/`-1`.
fn sign_pow(k: &BigInt) -> i8 {
    if k.is_even() {
        1
    } else {
        -1
    }
}

/// `x^k` for `x` in `{+1, -1}`.
fn pow_pm(x: i8, k: &BigInt) -> i8 {
    if x == 1 {
        1
    } else {
        sign_pow(k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpinLabel {
    t0: i8,
    t1: i8,
}

impl SpinLabel {
    pub fn new(t0: i8, t1: i8) -> Result<Self> {
        for t in [t0, t1] {
            if t != 1 && t != -1 {
                return Err(Error::InvalidSpinLabel { t0, t1, reason: "entries must be +1 or -1" });
            }
        }
        Ok(SpinLabel { t0, t1 })
    }

    pub fn t0(&self) -> i8 {
        self.t0
    }

    pub fn t1(&self) -> i8 {
        self.t1
    }

    /// All four formal labels, `(1,1), (1,-1), (-1,1), (-1,-1)`.
    pub fn all() -> [SpinLabel; 4] {
        [(1, 1), (1, -1), (-1, 1), (-1, -1)].map(|(t0, t1)| SpinLabel { t0, t1 })
    }

    /// For even `p` the component with weight `p` forces `t_1 = -1`.
    pub fn check_for(&self, p: &BigInt) -> Result<()> {
        if p.is_even() && self.t1 == 1 {
            return Err(Error::InvalidSpinLabel {
                t0: self.t0,
                t1: self.t1,
                reason: "t1 = -1 is forced when p is even",
            });
        }
        Ok(())
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t0, self.t1)
    }
}

/// `-1` marks a component in the sublink.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CharSublink {
    pub membership: Vec<i8>,
}

impl CharSublink {
    fn from_bits(bits: &[bool]) -> Self {
        CharSublink { membership: bits.iter().map(|&b| if b { -1 } else { 1 }).collect() }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.membership[i] == -1
    }

    /// `lk(K, L') = lk(K, K) mod 2` for every component `K`.
    pub fn is_characteristic(&self, matrix: &IntMatrix) -> bool {
        let n = self.membership.len();
        matrix.rows() == n
            && (0..n).all(|i| {
                let lk: BigInt = (0..n).filter(|&j| self.contains(j)).map(|j| &matrix[(i, j)]).sum();
                (lk - &matrix[(i, i)]).is_even()
            })
    }
}

fn parity_rows(matrix: &IntMatrix) -> Vec<Vec<bool>> {
    let n = matrix.rows();
    (0..n)
        .map(|i| {
            let mut row: Vec<bool> = (0..n).map(|j| matrix[(i, j)].is_odd()).collect();
            row.push(matrix[(i, i)].is_odd());
            row
        })
        .collect()
}

/// All characteristic sublinks, by solving `Q x = diag(Q)` over `GF(2)`.
/// Sorted by membership.
pub fn characteristic_sublinks(matrix: &IntMatrix) -> Vec<CharSublink> {
    let n = matrix.rows();
    let mut rows = parity_rows(matrix);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..n).find(|&i| rows[i][col]) else { continue };
        rows.swap(r, p);
        for i in 0..n {
            if i != r && rows[i][col] {
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                    *x ^= y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[n]) {
        return Vec::new();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::with_capacity(1 << free.len());
    for mask in 0u64..(1u64 << free.len()) {
        let mut x = vec![false; n];
        for (k, &c) in free.iter().enumerate() {
            x[c] = mask >> k & 1 == 1;
        }
        for (k, &c) in pivots.iter().enumerate() {
            x[c] = rows[k][n] ^ (free.iter().filter(|&&f| rows[k][f] && x[f]).count() % 2 == 1);
        }
        out.push(CharSublink::from_bits(&x));
    }
    out.sort();
    out
}

/// Brute force over all `2^n` subsets; only sensible for small `n`.
pub fn characteristic_sublinks_exhaustive(matrix: &IntMatrix) -> Vec<CharSublink> {
    let n = matrix.rows();
    assert!(n <= 24, "exhaustive enumeration over 2^{n} subsets");
    let mut out: Vec<CharSublink> = (0u64..(1u64 << n))
        .map(|mask| {
            let bits: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
            CharSublink::from_bits(&bits)
        })
        .filter(|s| s.is_characteristic(matrix))
        .collect();
    out.sort();
    out
}

/// Two-component surgery picture of `B(p,q)`'s boundary:
/// a 0-framed `K_0` and a `-(pq+1)`-framed `K_1` linking `p` times.
pub fn b_side_matrix(pq: &CoprimePair) -> IntMatrix {
    pq.expect_role(Role::PQ);
    let (p, q) = (pq.first(), pq.second());
    two_component(p.clone(), -(p * q) - 1)
}

/// The matching picture for `A(m,n)`: framings `0` and `mn`, linking `m+n`.
pub fn a_side_matrix(mn: &CoprimePair) -> IntMatrix {
    mn.expect_role(Role::MN);
    let (m, n) = (mn.first(), mn.second());
    two_component(m + n, m * n)
}

fn two_component(lk: BigInt, framing: BigInt) -> IntMatrix {
    let mut x = IntMatrix::zeros(2, 2);
    x[(0, 1)] = lk.clone();
    x[(1, 0)] = lk;
    x[(1, 1)] = framing;
    x
}

/// Labels whose sublink `((1 - t0 t1^q)/2) K_0 + ((1 - t1)/2) K_1` is
/// characteristic for the B-side picture.
pub fn admissible_labels(pq: &CoprimePair) -> Vec<SpinLabel> {
    let q = pq.second();
    let mut out: Vec<SpinLabel> = characteristic_sublinks(&b_side_matrix(pq))
        .iter()
        .map(|s| {
            let t1 = s.membership[1];
            let t0 = s.membership[0] * pow_pm(t1, q);
            SpinLabel { t0, t1 }
        })
        .collect();
    out.sort();
    out
}

/// Labels whose sublink `((1 - v0)/2) K_0 + ((1 - v1)/2) K_1` is
/// characteristic for the A-side picture.
pub fn a_side_admissible_labels(mn: &CoprimePair) -> Vec<SpinLabel> {
    let mut out: Vec<SpinLabel> = characteristic_sublinks(&a_side_matrix(mn))
        .iter()
        .map(|s| SpinLabel { t0: s.membership[0], t1: s.membership[1] })
        .collect();
    out.sort();
    out
}

/// `[T_0, ..., T_{ell+1}]` from `T_{-1} = 1`, `T_0 = t_0` and
/// `T_j = (-T_{j-1} t_1^{r_{j-1}})^{s_{j-1}} T_{j-2}`.
pub fn t_transport(pq: &CoprimePair, label: SpinLabel) -> Result<Vec<i8>> {
    pq.expect_role(Role::PQ);
    label.check_for(pq.first())?;
    let e = euclidean_sequences(pq);
    let mut t = vec![1i8, label.t0];
    for j in 1..=e.ell() + 1 {
        let prev = t[t.len() - 1];
        let base = -prev * pow_pm(label.t1, e.r(j - 1));
        let next = pow_pm(base, e.s(j - 1)) * t[t.len() - 2];
        t.push(next);
    }
    t.remove(0);
    Ok(t)
}

/// `T_j = (-1)^(1 + |det A_{j-1}|) (-t_0)^(rho_{ell+1-j}) t_1^(p |det A_{j-1}| + j r_j)`.
pub fn t_closed_form(pq: &CoprimePair, label: SpinLabel, j: i64) -> Result<i8> {
    pq.expect_role(Role::PQ);
    label.check_for(pq.first())?;
    let e = euclidean_sequences(pq);
    let ell = e.ell();
    if !(1..=ell + 1).contains(&j) {
        return Err(Error::IndexOutOfRange { index: j, lo: 1, hi: ell + 1 });
    }
    let a = &det_a_abs(&e)[j as usize];
    let rho = a_map_closed(pq).dual.r(ell + 1 - j).clone();
    let t1_exp = pq.first() * a + e.r(j) * j;
    Ok(sign_pow(&(a + 1)) * pow_pm(-label.t0, &rho) * pow_pm(label.t1, &t1_exp))
}

fn c_plus_ell_sign(pq: &CoprimePair) -> i8 {
    let ell = euclidean_sequences(pq).ell();
    sign_pow(&(bezout_cd(pq).c + ell))
}

/// For even `p`: `T_{ell+1} = (-1)^(c+ell) t_0`, checked against the recursion.
pub fn t_final_even_p(pq: &CoprimePair, label: SpinLabel) -> Result<i8> {
    pq.expect_role(Role::PQ);
    if pq.first().is_odd() {
        return Err(Error::RequiresEvenP(pq.first().clone()));
    }
    label.check_for(pq.first())?;
    let value = c_plus_ell_sign(pq) * label.t0;
    let last = *t_transport(pq, label)?.last().unwrap();
    if value != last {
        return Err(Error::CertificateFailure(format!(
            "T_(ell+1) for {pq} with {label}: recursion {last}, closed form {value}"
        )));
    }
    Ok(value)
}

/// The label on the A-side boundary induced from `label` on the B-side:
/// `v_0 = (e t_0 + t_1 - e t_0 t_1 + 1)/2`, `v_1 = t_1`, `e = (-1)^(c+ell)`.
pub fn induced_spin(pq: &CoprimePair, label: SpinLabel) -> Result<SpinLabel> {
    pq.expect_role(Role::PQ);
    label.check_for(pq.first())?;
    let e = c_plus_ell_sign(pq);
    let (t0, t1) = (label.t0, label.t1);
    let v0 = (e * t0 + t1 - e * t0 * t1 + 1) / 2;
    debug_assert!(v0 == 1 || v0 == -1);
    Ok(SpinLabel { t0: v0, t1 })
}

/// `|H^1(M; Z/2)|` for the boundary of the plumbing, from the rank of the
/// matrix mod 2.
pub fn spin_structure_count(matrix: &IntMatrix) -> usize {
    let n = matrix.rows();
    let d = matrix.smith_diagonal();
    let nullity = d.iter().filter(|x| x.is_even()).count();
    debug_assert!(nullity <= n);
    1 << nullity
}
