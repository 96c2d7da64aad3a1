//! Runs the registered pair checks over every admissible `(p, q)` up to a
//! bound, on a rayon pool, and renders the merged report.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::CoprimePair;
use crate::checks::{pair_checks, Findings, PairCheck};
use crate::error::{Error, Result};

pub const DEFAULT_SWEEP_BOUND: u64 = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    All,
    Odd,
    Even,
}

impl Parity {
    fn admits(self, p: u64) -> bool {
        match self {
            Parity::All => true,
            Parity::Odd => p % 2 == 1,
            Parity::Even => p.is_multiple_of(2),
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::All => "all",
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Parity::All),
            "odd" => Ok(Parity::Odd),
            "even" => Ok(Parity::Even),
            _ => Err(Error::InvalidConfig(format!("parity must be all, odd or even, not {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub max_p: u64,
    pub parity: Parity,
    pub emit: Emit,
    pub parallelism: usize,
    /// Check names; empty runs every registered check.
    pub checks: Vec<String>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_p: DEFAULT_SWEEP_BOUND,
            parity: Parity::All,
            emit: Emit::Text,
            parallelism: 1,
            checks: Vec::new(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_p < 3 {
            return Err(Error::InvalidConfig(format!("max_p must be at least 3, got {}", self.max_p)));
        }
        if self.parallelism == 0 {
            return Err(Error::InvalidConfig("parallelism must be positive".into()));
        }
        pair_checks().select(&self.checks)?;
        Ok(())
    }
}

/// Every `(p, q)` with `3 <= p <= max_p`, `p - q > q >= 1`, `gcd(p, q) = 1`,
/// ordered by `p` then `q`.
pub fn sweep_pairs(max_p: u64, parity: Parity) -> Vec<(u64, u64)> {
    (3..=max_p)
        .filter(|&p| parity.admits(p))
        .flat_map(|p| (1..p).take_while(move |&q| p > 2 * q).filter(move |&q| p.gcd(&q) == 1).map(move |q| (p, q)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckFailure {
    pub check: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub p: u64,
    pub q: u64,
    pub failures: Vec<CheckFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairOutcome {
    pub p: u64,
    pub q: u64,
    pub labels: usize,
    pub failures: Vec<CheckFailure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub max_p: u64,
    pub parity: Parity,
    pub checks: Vec<&'static str>,
    pub checked: usize,
    pub passed: usize,
    /// Spin labels exercised by the spin-aware checks, summed over pairs.
    pub labels: usize,
    pub failures: Vec<PairFailure>,
    #[serde(skip)]
    pub outcomes: Vec<PairOutcome>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn is_success(&self) -> bool {
        self.failures.is_empty()
    }
}

fn run_pair(p: u64, q: u64, checks: &[&dyn PairCheck]) -> PairOutcome {
    let pq = CoprimePair::pq(p, q).expect("sweep pairs are admissible");
    let mut failures = Vec::new();
    let mut labels = 0;
    for check in checks {
        let mut f = Findings::default();
        check.check(&pq, &mut f);
        labels = labels.max(check.labels_exercised(&pq));
        failures.extend(f.into_messages().into_iter().map(|detail| CheckFailure { check: check.name(), detail }));
    }
    PairOutcome { p, q, labels, failures }
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let registry = pair_checks();
    let checks = registry.select(&config.checks)?;
    let pairs = sweep_pairs(config.max_p, config.parity);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let start = Instant::now();
    // par_iter().collect() keeps input order, so the merge is keyed by (p, q)
    let outcomes: Vec<PairOutcome> =
        pool.install(|| pairs.par_iter().map(|&(p, q)| run_pair(p, q, &checks)).collect());
    let elapsed = start.elapsed();

    let failures: Vec<PairFailure> = outcomes
        .iter()
        .filter(|o| !o.failures.is_empty())
        .map(|o| PairFailure { p: o.p, q: o.q, failures: o.failures.clone() })
        .collect();
    Ok(SweepReport {
        max_p: config.max_p,
        parity: config.parity,
        checks: checks.iter().map(|c| c.name()).collect(),
        checked: outcomes.len(),
        passed: outcomes.len() - failures.len(),
        labels: outcomes.iter().map(|o| o.labels).sum(),
        failures,
        outcomes,
        elapsed,
    })
}

#[derive(Serialize)]
struct Versioned<'a> {
    schema: u32,
    #[serde(flatten)]
    report: &'a SweepReport,
}

/// Renders without timing information, so output is identical across runs
/// and thread counts.
pub fn render(report: &SweepReport, emit: Emit) -> String {
    match emit {
        Emit::Text => {
            let mut s = String::new();
            for f in &report.failures {
                for c in &f.failures {
                    writeln!(s, "FAIL ({}, {}) [{}] {}", f.p, f.q, c.check, c.detail).unwrap();
                }
            }
            writeln!(
                s,
                "checked {} pairs (p <= {}, parity {}, checks: {}), {} labels; passed {}, failed {}",
                report.checked,
                report.max_p,
                report.parity,
                report.checks.join(", "),
                report.labels,
                report.passed,
                report.failures.len()
            )
            .unwrap();
            s
        }
        Emit::Json => {
            let mut s = serde_json::to_string_pretty(&Versioned { schema: 1, report }).expect("report serializes");
            s.push('\n');
            s
        }
        Emit::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["p", "q", "labels", "pass", "failed_checks", "detail"]).unwrap();
            for o in &report.outcomes {
                let mut names: Vec<&str> = o.failures.iter().map(|f| f.check).collect();
                names.dedup();
                let detail: Vec<&str> = o.failures.iter().map(|f| f.detail.as_str()).collect();
                w.write_record([
                    o.p.to_string(),
                    o.q.to_string(),
                    o.labels.to_string(),
                    o.failures.is_empty().to_string(),
                    names.join(";"),
                    detail.join("; "),
                ])
                .unwrap();
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_enumeration() {
        assert_eq!(sweep_pairs(3, Parity::All), vec![(3, 1)]);
        assert_eq!(sweep_pairs(8, Parity::All), vec![(3, 1), (4, 1), (5, 1), (5, 2), (6, 1), (7, 1), (7, 2), (7, 3), (8, 1), (8, 3)]);
        assert!(sweep_pairs(50, Parity::Even).iter().all(|(p, _)| p % 2 == 0));
        assert_eq!(sweep_pairs(300, Parity::All).len(), 13698);
    }

    #[test]
    fn config_validation() {
        let mut c = SweepConfig { max_p: 2, ..SweepConfig::default() };
        assert!(c.validate().is_err());
        c.max_p = 3;
        assert!(c.validate().is_ok());
        c.parallelism = 0;
        assert!(c.validate().is_err());
        c.parallelism = 1;
        c.checks = vec!["nope".into()];
        assert!(matches!(c.validate(), Err(Error::UnknownName { .. })));
        assert!("sideways".parse::<Parity>().is_err());
    }

    #[test]
    fn small_sweep_is_clean_and_deterministic() {
        let base = SweepConfig { max_p: 40, ..SweepConfig::default() };
        let one = run_sweep(&base).unwrap();
        assert!(one.is_success(), "{:?}", one.failures);
        assert_eq!(one.checked, one.passed + one.failures.len());
        let four = run_sweep(&SweepConfig { parallelism: 4, ..base.clone() }).unwrap();
        for emit in [Emit::Text, Emit::Json, Emit::Csv] {
            assert_eq!(render(&one, emit), render(&four, emit));
        }
    }

    #[test]
    fn even_sweep_counts_two_labels_per_pair() {
        let r = run_sweep(&SweepConfig { max_p: 50, parity: Parity::Even, ..SweepConfig::default() }).unwrap();
        assert!(r.is_success());
        assert_eq!(r.labels, 2 * r.checked);
    }

    #[test]
    fn json_is_versioned() {
        let r = run_sweep(&SweepConfig { max_p: 3, ..SweepConfig::default() }).unwrap();
        let v: serde_json::Value = serde_json::from_str(&render(&r, Emit::Json)).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["checked"], 1);
        assert_eq!(v["failures"].as_array().unwrap().len(), 0);
        assert!(v.get("elapsed").is_none());
    }
}
