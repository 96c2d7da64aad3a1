//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//!
//! Oracles here are deliberately naive (i128 recurrences, plain Euclid) and
//! share no code with the library paths they check.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::result::Result;
use std::time::Instant;

use lensball_core::sweep::{sweep_pairs, Parity, DEFAULT_SWEEP_BOUND};
use lensball_core::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

type Pairs = [(u64, u64)];
type Verdict = Result<String, String>;
type Criterion<'a> = (u8, &'static str, Box<dyn Fn() -> Verdict + 'a>);

fn pq(p: u64, q: u64) -> CoprimePair {
    CoprimePair::pq(p, q).unwrap()
}

fn i(x: &BigInt) -> i128 {
    x.to_i128().expect("fits in i128")
}

/// Remainders of plain Euclid on `(a, b)`: `[a, b, ..., 1, 0]`.
fn euclid(a: i128, b: i128) -> Vec<i128> {
    let mut r = vec![a, b];
    while *r.last().unwrap() != 0 {
        let n = r.len();
        r.push(r[n - 2] % r[n - 1]);
    }
    r
}

/// Determinant of the tridiagonal linking matrix with the given diagonal and
/// unit off-diagonal.
fn tri_det(diag: &[i128]) -> i128 {
    let (mut prev, mut cur) = (0i128, 1i128);
    for &w in diag {
        (prev, cur) = (cur, w * cur - prev);
    }
    cur
}

/// `c_1 - 1/(c_2 - 1/(...))` as a reduced fraction.
fn cf_value(coeffs: &[i128]) -> (i128, i128) {
    let (mut num, mut den) = (*coeffs.last().unwrap(), 1i128);
    for &c in coeffs.iter().rev().skip(1) {
        (num, den) = (c * num - den, num);
    }
    let g = gcd(num, den);
    let s = if den < 0 { -1 } else { 1 };
    (s * num / g, s * den / g)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn coeffs(cf: &ContinuedFraction) -> Vec<i128> {
    cf.coefficients().iter().map(i).collect()
}

/// Runs `f` on every pair in parallel; collects up to five failures.
fn each_pair(pairs: &Pairs, f: impl Fn(u64, u64) -> Result<(), String> + Sync) -> Result<(), String> {
    let errs: Vec<String> = pairs.par_iter().filter_map(|&(p, q)| f(p, q).err().map(|e| format!("({p},{q}): {e}"))).collect();
    if errs.is_empty() {
        Ok(())
    } else {
        Err(format!("{} failing pairs, first: {}", errs.len(), errs.iter().take(5).cloned().collect::<Vec<_>>().join(" | ")))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_a_map(pairs: &Pairs) -> Verdict {
    each_pair(pairs, |p, q| {
        let pair = pq(p, q);
        let closed = a_map_closed(&pair);
        let sub = a_map_subtractive(&BigInt::from(p - q), &BigInt::from(q)).map_err(|e| e.to_string())?;
        ensure(closed.ordered() == (sub.m.clone(), sub.n.clone()), || format!("closed {:?} vs subtractive", closed.ordered()))?;
        let (m, n) = (i(closed.mn.first()), i(closed.mn.second()));
        let bez = bezout_cd(&pair);
        let (c, d) = (i(&bez.c), i(&bez.d));
        ensure(c * m + d * n == 1, || format!("c m + d n != 1 with c={c} d={d}"))?;
        ensure((d - c).abs() == q as i128, || format!("|d - c| = {}", (d - c).abs()))?;
        // subtractive raw pair: -c' x + d' y = 1 on the ordered image
        let (x, y) = (i(&sub.m), i(&sub.n));
        ensure(-i(&sub.c) * x + i(&sub.d) * y == 1, || "subtractive coefficients".into())
    })?;
    // bijectivity: for each p the images are exactly the coprime m < n with m + n = p
    let images: BTreeSet<(u64, u64)> = pairs
        .iter()
        .map(|&(p, q)| {
            let mn = a_map_closed(&pq(p, q)).mn;
            (mn.first().to_u64().unwrap(), mn.second().to_u64().unwrap())
        })
        .collect();
    let max_p = pairs.iter().map(|x| x.0).max().unwrap();
    let targets: BTreeSet<(u64, u64)> = (3..=max_p)
        .flat_map(|p| (1..p).filter(move |&m| 2 * m < p && gcd(m as i128, p as i128) == 1).map(move |m| (m, p - m)))
        .collect();
    ensure(images.len() == pairs.len(), || "A-map is not injective".into())?;
    ensure(images == targets, || "A-map image is not the full set of coprime (m, n)".into())?;
    Ok(format!("{} pairs, bijective onto {} (m, n)", pairs.len(), targets.len()))
}

fn c2_cf_identity(pairs: &Pairs) -> Verdict {
    each_pair(pairs, |p, q| {
        let (p2, pq1) = ((p * p) as i128, (p * q - 1) as i128);
        let chain = symmetric_chain(&pq(p, q));
        let lib = evaluate(&chain).map_err(|e| e.to_string())?.value;
        let want = BigRational::new(BigInt::from(-p2), BigInt::from(pq1));
        ensure(lib == want, || format!("library value {lib}"))?;
        let (num, den) = cf_value(&coeffs(&chain));
        let g = gcd(p2, pq1);
        ensure((num, den) == (-p2 / g, pq1 / g), || format!("oracle value {num}/{den}"))
    })?;
    Ok(format!("{} pairs, value -p^2/(pq-1) exactly", pairs.len()))
}

fn homology_matches(chain: &WeightedChain, p2: i128) -> Result<(), String> {
    let h1 = h1_presentation(chain).map_err(|e| e.to_string())?;
    let snf: Vec<i128> = snf_order(&linking_matrix(chain)).map_err(|e| e.to_string())?.iter().map(i).collect();
    let (last, rest) = snf.split_last().unwrap();
    ensure(rest.iter().all(|&x| x == 1), || format!("SNF {snf:?} is not cyclic"))?;
    ensure(last.abs() == p2 && i(&h1.order) == p2, || format!("orders: SNF {last}, presentation {}", h1.order))?;
    ensure(tri_det(&coeffs(chain)).abs() == p2, || "oracle determinant".into())?;
    ensure(h1.relations_hold(chain), || "meridian relations fail".into())?;
    ensure(i(&h1.meridian_coeffs[0]) == 1, || "first meridian is not the generator".into())
}

fn c3_homology(pairs: &Pairs) -> Verdict {
    each_pair(pairs, |p, q| {
        let pair = pq(p, q);
        let p2 = (p * p) as i128;
        homology_matches(&symmetric_chain(&pair), p2).map_err(|e| format!("B-side: {e}"))?;
        homology_matches(&matched_a_side_chain(&pair), p2).map_err(|e| format!("A-side: {e}"))
    })?;
    Ok(format!("{} pairs x 2 chains, H_1 cyclic of order p^2", pairs.len()))
}

fn c4_determinants(pairs: &Pairs) -> Verdict {
    let count = std::sync::atomic::AtomicUsize::new(0);
    each_pair(pairs, |p, q| {
        let pair = pq(p, q);
        let r = euclid(p as i128, q as i128);
        let ell = r.len() as i64 - 4;
        let rr = |k: i64| r[(k + 1) as usize];
        let pm = |k: i64| if k.rem_euclid(2) == 0 { 1i128 } else { -1 };
        for idx in 0..=ell + 1 {
            let dets = s_i_determinants(&pair, idx).map_err(|e| e.to_string())?;
            let chains = s_i_chains(&pair, idx).map_err(|e| e.to_string())?;
            let want_s = pm(idx + 1) * rr(ell - idx) * rr(ell - idx);
            ensure(tri_det(&coeffs(&chains.s)) == want_s && i(&dets.s) == want_s, || format!("det S_{idx}"))?;
            if idx <= ell {
                let prod = rr(ell - idx - 1) * rr(ell - idx);
                let sign = pm(ell + idx);
                let want_plus = pm(ell) * (prod + sign);
                let want_minus = pm(ell) * (sign - prod);
                let got_plus = tri_det(&coeffs(chains.plus.as_ref().unwrap()));
                let got_minus = tri_det(&coeffs(chains.minus.as_ref().unwrap()));
                ensure(got_plus == want_plus && dets.plus.as_ref().map(i) == Some(want_plus), || format!("det S_{idx}^+"))?;
                ensure(got_minus == want_minus && dets.minus.as_ref().map(i) == Some(want_minus), || format!("det S_{idx}^-"))?;
            }
            count.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
        let mn = a_map_closed(&pair).mn;
        let (m, n) = (i(mn.first()), i(mn.second()));
        let rho = euclid(n, m);
        let ell_mn = rho.len() as i64 - 4;
        for idx in 0..=ell_mn + 1 {
            let eps = [1i128, 1, -1, -1][idx.rem_euclid(4) as usize];
            let want = -eps * rho[(ell_mn - idx + 1) as usize];
            let lib = gamma0_trace_det(&mn, idx).map_err(|e| e.to_string())?;
            let chain = gamma0_trace_chain(&mn, idx).map_err(|e| e.to_string())?;
            ensure(i(&lib) == want && tri_det(&coeffs(&chain)) == want, || format!("gamma_0 trace at i={idx}"))?;
        }
        Ok(())
    })?;
    Ok(format!("{} pairs, {} S_i index checks, plus gamma_0 traces", pairs.len(), count.into_inner()))
}

fn c5_spin(pairs: &Pairs) -> Verdict {
    each_pair(pairs, |p, q| {
        let pair = pq(p, q);
        let expected = if p % 2 == 1 { 1 } else { 2 };
        let two = b_side_matrix(&pair);
        ensure(characteristic_sublinks(&two).len() == expected, || "two-component sublink count".into())?;
        let chain = linking_matrix(&symmetric_chain(&pair));
        let subs = characteristic_sublinks(&chain);
        ensure(subs.len() == expected, || format!("{} characteristic sublinks on the chain", subs.len()))?;
        if chain.rows() <= 12 {
            ensure(subs == characteristic_sublinks_exhaustive(&chain), || "exhaustive enumeration differs".into())?;
        }
        let labels = admissible_labels(&pair);
        ensure(labels.len() == expected, || "admissible label count".into())?;
        let ell = a_map_closed(&pair).ell;
        let bez = bezout_cd(&pair);
        let sign = if (i(&bez.c) + ell as i128).rem_euclid(2) == 0 { 1 } else { -1 };
        for label in labels {
            let t = t_transport(&pair, label).map_err(|e| e.to_string())?;
            for j in 1..=ell + 1 {
                let cf = t_closed_form(&pair, label, j).map_err(|e| e.to_string())?;
                ensure(cf == t[j as usize], || format!("T_{j} for {label}"))?;
            }
            if p % 2 == 0 {
                let last = *t.last().unwrap();
                ensure(last == sign * label.t0(), || format!("final T for {label}: {last}"))?;
                ensure(t_final_even_p(&pair, label).ok() == Some(last), || "t_final_even_p".into())?;
            }
        }
        Ok(())
    })?;
    Ok(format!("{} pairs, every admissible label, sublink counts 1/2", pairs.len()))
}

fn c6_gamma(pairs: &Pairs) -> Verdict {
    let spot = |p: u64, q: u64, want: i64| -> Result<(), String> {
        let pair = pq(p, q);
        let label = admissible_labels(&pair)[0];
        let g = gamma_b(&pair, label).map_err(|e| e.to_string())?.element;
        ensure(g.coefficient == BigInt::from(want) && g.modulus == BigInt::from(p * p), || format!("({p},{q}) gives {g}"))
    };
    spot(5, 2, 5)?;
    spot(7, 2, 7)?;
    each_pair(pairs, |p, q| {
        let pair = pq(p, q);
        let mn = a_map_closed(&pair).mn;
        let (pq_, p2) = ((p * q) as i128, (p * p) as i128);
        // pq/2 in Z/p^2: an integer for even p, pq times the inverse of 2 otherwise
        let half = if p % 2 == 0 { pq_ / 2 } else { (pq_ * (p2 + 1) / 2) % p2 };
        for label in admissible_labels(&pair) {
            let gb = gamma_b(&pair, label).map_err(|e| e.to_string())?;
            let pulled = gamma_pullback(&mn, &pair, label).map_err(|e| e.to_string())?;
            ensure(pulled.element == gb.element, || format!("pullback {} vs {} at {label}", pulled.element, gb.element))?;
            let gamma_admissible = p % 2 == 1 || (label.t0(), label.t1()) == (1, -1);
            if gamma_admissible {
                ensure(i(&gb.element.coefficient) == half, || format!("Gamma_B {} at {label}, expected {half}", gb.element))?;
            }
        }
        Ok(())
    })?;
    Ok(format!("{} pairs; (5,2) -> 5 mod 25, (7,2) -> 7 mod 49", pairs.len()))
}

fn c7_tb(max_n: u64) -> Verdict {
    let pairs: Vec<(u64, u64)> =
        (2..=max_n).flat_map(|n| (1..n).filter(move |&m| gcd(m as i128, n as i128) == 1).map(move |m| (m, n))).collect();
    let bad: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(m, n)| {
            let t = tb_breakdown(&CoprimePair::mn(m, n).unwrap());
            let want = (m * n) as i128 - 2 * (m + n) as i128 + 1;
            match t {
                Ok(t) if i(&t.tb) == want && i(&t.positives) - i(&t.negatives) - i(&t.left_cusps) == want => None,
                Ok(t) => Some(format!("({m},{n}): tb {}", t.tb)),
                Err(e) => Some(format!("({m},{n}): {e}")),
            }
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} failures, first {:?}", bad.len(), bad.first()))?;
    Ok(format!("{} coprime (m, n) with n <= {max_n}", pairs.len()))
}

fn c8_d3() -> Verdict {
    let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    let direct = d3_from_characteristic(&BigRational::from_integer(0.into()), &BigInt::from(0), &BigInt::from(1));
    ensure(direct == half, || format!("d3(0, 0, 1) = {direct}"))?;
    ensure(d3_rational_ball() == half, || "rational ball d3".into())?;
    Ok("d3 = -1/2 for both fillings".into())
}

fn c9_scope(pairs: &Pairs) -> Verdict {
    each_pair(pairs, |p, q| {
        let cert = contactomorphism_certificate(&pq(p, q));
        ensure(cert.pass, || format!("certificate: {:?}", cert.errors))
    })?;
    Ok(format!(
        "informational: d3 and Gamma agreement certified on {} pairs; the classification step they feed is not machine-checked",
        pairs.len()
    ))
}

fn main() -> ExitCode {
    let bound = DEFAULT_SWEEP_BOUND;
    let pairs = sweep_pairs(bound, Parity::All);
    let criteria: Vec<Criterion> = vec![
        (1, "A-map closed = subtractive, Bezout data, bijective", Box::new(|| c1_a_map(&pairs))),
        (2, "symmetric chain evaluates to -p^2/(pq-1)", Box::new(|| c2_cf_identity(&pairs))),
        (3, "H_1 presentation agrees with Smith normal form", Box::new(|| c3_homology(&pairs))),
        (4, "S_i determinants and gamma_0 trace closed forms", Box::new(|| c4_determinants(&pairs))),
        (5, "spin transport, final T for even p, sublink counts", Box::new(|| c5_spin(&pairs))),
        (6, "Gamma pullback = Gamma_B = (pq/2) mu0", Box::new(|| c6_gamma(&pairs))),
        (7, "tb crossing count = mn - 2(m+n) + 1", Box::new(|| c7_tb(bound))),
        (8, "d3 of a Stein rational ball", Box::new(c8_d3)),
        (9, "scope: computable hypotheses of the contactomorphism", Box::new(|| c9_scope(&pairs))),
    ];
    let mut failed = 0;
    for (id, title, run) in &criteria {
        let start = Instant::now();
        let verdict = run();
        let ms = start.elapsed().as_millis();
        match verdict {
            Ok(detail) => println!("PASS {id} {title} ({detail}) [{ms} ms]"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {title}: {why} [{ms} ms]");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
