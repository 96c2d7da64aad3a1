//! Per-pair property suites run by the sweep. Each suite is a named
//! `PairCheck` in a registry, so the sweep can run any subset.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{a_map_closed, a_map_subtractive, bezout_cd, euclidean_sequences, CoprimePair};
use crate::contfrac::{
    a_side_chain, det_sequence, evaluate, expected_symmetric_value, lens_parameter, negative_expansion,
    symmetric_chain,
};
use crate::plumbing::{
    gamma0_in_eta, gamma0_in_eta_closed, gamma0_trace_det, h1_presentation, lens_equiv, linking_matrix,
    s_i_determinants, s_ratio, snf_order, LensRelation, WeightedChain,
};
use crate::registry::{Named, Registry};
use crate::spin::{
    a_side_admissible_labels, admissible_labels, b_side_matrix, characteristic_sublinks, induced_spin,
    spin_structure_count, t_closed_form, t_final_even_p, t_transport, SpinLabel,
};
use crate::stein::{
    contactomorphism_certificate, d3_rational_ball, elimination_identity, gamma_a, gamma_a_via_rho, gamma_b,
    gamma_b_via_rho, gamma_pullback, half_pq, tb_breakdown,
};

/// Collects failure messages for one pair.
#[derive(Debug, Default)]
pub struct Findings(Vec<String>);

impl Findings {
    pub fn ensure(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.0.push(msg());
        }
    }

    pub fn ok<T>(&mut self, r: crate::Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.0.push(format!("{what}: {e}"));
                None
            }
        }
    }

    pub fn into_messages(self) -> Vec<String> {
        self.0
    }
}

pub trait PairCheck: Named + Send + Sync {
    fn check(&self, pq: &CoprimePair, out: &mut Findings);

    /// Spin labels this suite exercised for the pair; used only for reporting.
    fn labels_exercised(&self, _pq: &CoprimePair) -> usize {
        0
    }
}

/// Labels allowed by the parity of `p`: all four for odd `p`, `(+-1, -1)` for even.
pub fn labels_for_parity(p: &BigInt) -> Vec<SpinLabel> {
    SpinLabel::all().into_iter().filter(|l| l.check_for(p).is_ok()).collect()
}

/// The label the B-side Gamma is stated for: the characteristic label for
/// odd `p`, `(1, -1)` for even `p`.
pub fn gamma_label(pq: &CoprimePair) -> SpinLabel {
    if pq.first().bit(0) {
        admissible_labels(pq)[0]
    } else {
        SpinLabel::new(1, -1).unwrap()
    }
}

fn pm(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub struct CoreArith;

impl Named for CoreArith {
    fn name(&self) -> &'static str {
        "core-arith"
    }
    fn description(&self) -> &'static str {
        "Euclidean data, closed vs subtractive A-map, Bezout window"
    }
}

impl PairCheck for CoreArith {
    fn check(&self, pq: &CoprimePair, out: &mut Findings) {
        let (p, q) = (pq.first(), pq.second());
        let e = euclidean_sequences(pq);
        out.ensure(e.invariants_hold(), || "Euclidean invariants".into());
        out.ensure(e.reconstruct() == BigRational::new(p.clone(), q.clone()), || "p/q reconstruction".into());

        let closed = a_map_closed(pq);
        let ell = closed.ell;
        out.ensure(closed.dual == euclidean_sequences(&closed.mn), || "dual sequences differ from Euclid(n, m)".into());
        let (m, n) = (closed.mn.first(), closed.mn.second());
        out.ensure(&(m + n) == p, || format!("m + n = {} != p", m + n));

        let bez = bezout_cd(pq);
        let (c, d) = (&bez.c, &bez.d);
        out.ensure((c * m + d * n).is_one(), || format!("cm + dn != 1 for c = {c}, d = {d}"));
        let diff = if ell.rem_euclid(2) == 0 { d - c } else { c - d };
        out.ensure(&diff == q, || format!("d - c parity rule gives {diff}, q = {q}"));
        let cw = c * pm(ell + 1);
        let dw = d * pm(ell);
        let d_floor_ok = if q.is_one() { !dw.is_negative() } else { dw.is_positive() };
        out.ensure(cw.is_positive() && &cw < p && d_floor_ok && &dw < p, || {
            format!("Bezout window fails for c = {c}, d = {d}, ell = {ell}")
        });

        if let Some(sub) = out.ok(a_map_subtractive(&(p - q), q), "subtractive A-map") {
            out.ensure(closed.ordered() == (sub.m.clone(), sub.n.clone()), || {
                format!("closed {:?} vs subtractive ({}, {})", closed.ordered(), sub.m, sub.n)
            });
            let raw = if closed.swapped() { (-d, c.clone()) } else { (-c, d.clone()) };
            out.ensure(raw == (sub.c.clone(), sub.d.clone()), || {
                format!("raw coefficients {raw:?} vs subtractive ({}, {})", sub.c, sub.d)
            });
        }
    }
}

pub struct ContFrac;

impl Named for ContFrac {
    fn name(&self) -> &'static str {
        "contfrac"
    }
    fn description(&self) -> &'static str {
        "chain values, determinant ratios, negative expansions, A-side lens type"
    }
}

fn chain_value_checks(chain: &WeightedChain, label: &str, out: &mut Findings) -> Option<BigRational> {
    let ev = out.ok(evaluate(chain), label)?;
    out.ensure(!ev.tail_det.is_zero() && ev.value == BigRational::new(ev.full_det.clone(), ev.tail_det.clone()), || {
        format!("{label}: value is not det(full)/det(tail)")
    });
    let dets = det_sequence(chain);
    if dets.len() >= 2 && !dets[dets.len() - 2].is_zero() {
        let leading = BigRational::new(dets[dets.len() - 1].clone(), dets[dets.len() - 2].clone());
        let rev = out.ok(evaluate(&chain.reversed()), label).map(|r| r.value);
        out.ensure(rev.as_ref() == Some(&leading), || format!("{label}: reversed value is not det C_n/det C_(n-1)"));
    }
    Some(ev.value)
}

impl PairCheck for ContFrac {
    fn check(&self, pq: &CoprimePair, out: &mut Findings) {
        let p = pq.first();
        let target = expected_symmetric_value(pq);
        let b_chain = symmetric_chain(pq);
        if let Some(v) = chain_value_checks(&b_chain, "B-chain", out) {
            out.ensure(v == target, || format!("B-chain value {v}, expected {target}"));
        }
        if let Some(expansion) = out.ok(negative_expansion(&target), "negative expansion") {
            out.ensure(expansion.coefficients().iter().all(|c| c <= &BigInt::from(-2)), || {
                "expansion has a coefficient above -2".into()
            });
            let back = out.ok(evaluate(&expansion), "expansion round trip").map(|e| e.value);
            out.ensure(back.as_ref() == Some(&target), || "expansion does not evaluate back".into());
        }

        let mn = a_map_closed(pq).mn;
        let a_chain = a_side_chain(&mn);
        let full = det_sequence(&a_chain).pop().unwrap();
        out.ensure(full.abs() == p * p, || format!("|det A-chain| = {}, expected p^2", full.abs()));
        if let Some(v) = chain_value_checks(&a_chain, "A-chain", out) {
            let (big_p, lens_q) = lens_parameter(&v);
            if big_p == p * p {
                let rel = lens_equiv(&big_p, &(pq.first() * pq.second() - 1), &lens_q);
                if let Some(rel) = out.ok(rel, "lens_equiv") {
                    out.ensure(rel != LensRelation::Different, || format!("A-chain bounds L({big_p}, {lens_q}), not L(p^2, pq-1)"));
                }
            }
        }
    }
}

pub struct Plumbing;

impl Named for Plumbing {
    fn name(&self) -> &'static str {
        "plumbing"
    }
    fn description(&self) -> &'static str {
        "H_1 vs Smith normal form, S_i and gamma_0 determinant identities"
    }
}

fn homology_checks(chain: &WeightedChain, p2: &BigInt, label: &str, out: &mut Findings) {
    let Some(h) = out.ok(h1_presentation(chain), label) else { return };
    out.ensure(&h.order == p2, || format!("{label}: |H_1| = {}, expected {p2}", h.order));
    out.ensure(h.relations_hold(chain), || format!("{label}: meridian relations fail"));
    out.ensure(h.meridian_coeffs[0].is_one(), || format!("{label}: first meridian coefficient is not 1"));
    if let Some(snf) = out.ok(snf_order(&linking_matrix(chain)), label) {
        let product = snf.iter().fold(BigInt::one(), |a, x| a * x);
        let cyclic = snf[..snf.len() - 1].iter().all(|x| x.is_one());
        out.ensure(product == h.order && cyclic, || format!("{label}: Smith normal form {snf:?} vs order {}", h.order));
    }
}

impl PairCheck for Plumbing {
    fn check(&self, pq: &CoprimePair, out: &mut Findings) {
        let p2 = pq.first() * pq.first();
        let closed = a_map_closed(pq);
        let mn = &closed.mn;
        homology_checks(&symmetric_chain(pq), &p2, "B-chain", out);
        homology_checks(&a_side_chain(mn), &p2, "A-chain", out);

        let ell = closed.ell;
        for i in 0..=ell + 1 {
            out.ok(s_i_determinants(pq, i), "S_i determinants");
            out.ok(gamma0_trace_det(mn, i), "gamma_0 trace");
        }
        if ell >= 0 {
            if let Some(r) = out.ok(s_ratio(pq), "S ratio") {
                out.ensure(r == expected_symmetric_value(pq), || format!("det S_(ell+1) / det S_ell^- = {r}"));
            }
        }
        if let Some(g) = out.ok(gamma0_in_eta(mn), "gamma_0 in eta") {
            out.ensure(g == gamma0_in_eta_closed(mn), || format!("gamma_0 = {} = {}", g.left, g.right));
        }
    }
}

pub struct Spin;

impl Named for Spin {
    fn name(&self) -> &'static str {
        "spin"
    }
    fn description(&self) -> &'static str {
        "characteristic sublinks, T_j recursion vs closed form, induced labels"
    }
}

impl PairCheck for Spin {
    fn check(&self, pq: &CoprimePair, out: &mut Findings) {
        let p = pq.first();
        let expected = if p.bit(0) { 1 } else { 2 };
        let chain_matrix = linking_matrix(&symmetric_chain(pq));
        let subs = characteristic_sublinks(&chain_matrix);
        out.ensure(subs.len() == expected && subs.len() == spin_structure_count(&chain_matrix), || {
            format!("{} characteristic sublinks on the B-chain", subs.len())
        });
        out.ensure(subs.iter().all(|s| s.is_characteristic(&chain_matrix)), || "non-characteristic solution".into());
        let labels = admissible_labels(pq);
        out.ensure(labels.len() == expected, || format!("{} admissible labels", labels.len()));
        out.ensure(characteristic_sublinks(&b_side_matrix(pq)).len() == expected, || "two-component count".into());

        let ell = euclidean_sequences(pq).ell();
        for label in labels_for_parity(p) {
            let Some(t) = out.ok(t_transport(pq, label), "T transport") else { continue };
            for j in 1..=ell + 1 {
                let cf = out.ok(t_closed_form(pq, label, j), "T closed form");
                out.ensure(cf == Some(t[j as usize]), || format!("T_{j} for {label}: recursion {}, closed form {cf:?}", t[j as usize]));
            }
            if !p.bit(0) {
                out.ok(t_final_even_p(pq, label), "final T for even p");
            }
        }

        let mn = a_map_closed(pq).mn;
        let a_labels = a_side_admissible_labels(&mn);
        for label in &labels {
            if let Some(v) = out.ok(induced_spin(pq, *label), "induced spin") {
                out.ensure(a_labels.contains(&v), || format!("induced {v} from {label} is not characteristic on the A-side"));
                if label.t1() == -1 {
                    let back = out.ok(induced_spin(pq, v), "induced spin");
                    out.ensure(back == Some(*label), || format!("induced spin is not an involution at {label}"));
                }
            }
        }
    }

    fn labels_exercised(&self, pq: &CoprimePair) -> usize {
        admissible_labels(pq).len()
    }
}

pub struct SteinInvariants;

impl Named for SteinInvariants {
    fn name(&self) -> &'static str {
        "stein-invariants"
    }
    fn description(&self) -> &'static str {
        "tb count, Gamma on both sides and its pullback, d_3"
    }
}

impl PairCheck for SteinInvariants {
    fn check(&self, pq: &CoprimePair, out: &mut Findings) {
        let mn = a_map_closed(pq).mn;
        out.ok(tb_breakdown(&mn), "tb");
        let bez = bezout_cd(pq);
        out.ensure(elimination_identity(mn.first(), mn.second(), &bez.c, &bez.d).is_one(), || {
            "elimination identity".into()
        });
        for label in admissible_labels(pq) {
            out.ok(gamma_pullback(&mn, pq, label), "Gamma pullback");
            let b = (gamma_b(pq, label), gamma_b_via_rho(pq, label));
            if let (Some(x), Some(y)) = (out.ok(b.0, "Gamma B"), out.ok(b.1, "Gamma B via rho")) {
                out.ensure(x == y, || format!("Gamma B for {label}: {} vs rho route {}", x.element, y.element));
            }
            let a = (gamma_a(&mn, pq, label), gamma_a_via_rho(&mn, pq, label));
            if let (Some(x), Some(y)) = (out.ok(a.0, "Gamma A"), out.ok(a.1, "Gamma A via rho")) {
                out.ensure(x == y, || format!("Gamma A for {label}: {} vs rho route {}", x.element, y.element));
            }
        }
        let label = gamma_label(pq);
        if let (Some(gb), Some(h)) = (out.ok(gamma_b(pq, label), "Gamma B"), out.ok(half_pq(pq), "pq/2")) {
            out.ensure(gb.element == h, || format!("Gamma B for {label} is {}, not (pq/2) mu0", gb.element));
        }
        out.ensure(d3_rational_ball() == BigRational::new(BigInt::from(-1), BigInt::from(2)), || "d3".into());
        let cert = contactomorphism_certificate(pq);
        out.ensure(cert.pass, || format!("certificate failed: {:?}", cert.errors));
    }

    fn labels_exercised(&self, pq: &CoprimePair) -> usize {
        admissible_labels(pq).len()
    }
}

/// The five suites, in the order they run.
pub fn pair_checks() -> Registry<dyn PairCheck> {
    let mut reg: Registry<dyn PairCheck> = Registry::new("check");
    reg.register(Box::new(CoreArith))
        .register(Box::new(ContFrac))
        .register(Box::new(Plumbing))
        .register(Box::new(Spin))
        .register(Box::new(SteinInvariants));
    reg
}
