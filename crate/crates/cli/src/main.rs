use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use lensball_core::arith::{a_map_closed, amap_methods, euclidean_sequences, CoprimePair};
use lensball_core::contfrac::{evaluate, lens_parameter, matched_a_side_chain, symmetric_chain, ContinuedFraction};
use lensball_core::plumbing::{h1_presentation, lens_equiv};
use lensball_core::stein::contactomorphism_certificate;
use lensball_core::sweep::{render, run_sweep, Emit, Parity, SweepConfig, DEFAULT_SWEEP_BOUND};
use lensball_core::{json, Error};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "lensball", version, about = "Exact checks for lens-space rational balls")]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// CSV output (sweep and certify only)
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euclidean sequences of (p, q), p - q > q >= 1
    Euclid { p: BigInt, q: BigInt },
    /// A-map image of a coprime pair
    Amap {
        a: BigInt,
        b: BigInt,
        #[arg(long, default_value = "closed")]
        method: String,
    },
    /// Both plumbing chains, their values, H_1 orders and lens types
    Chains { p: BigInt, q: BigInt },
    /// Gamma and d_3 comparison between the two fillings
    Certify { p: BigInt, q: BigInt },
    /// Run the property suites over every admissible pair up to a bound
    Sweep {
        #[arg(long, env = "LENSBALL_SWEEP_BOUND", default_value_t = DEFAULT_SWEEP_BOUND)]
        max_p: u64,
        #[arg(long, default_value = "all")]
        parity: Parity,
        /// Worker threads; defaults to the available parallelism
        #[arg(long)]
        jobs: Option<usize>,
        /// Comma-separated suite names; default runs all
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
}

enum Failure {
    /// Bad input; exit 2.
    Usage(String),
    /// A check did not hold; exit 1.
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn int(x: &BigInt) -> Value {
    json::int(x, serde_json::value::Serializer).expect("integers serialize")
}

fn words(cf: &ContinuedFraction) -> String {
    cf.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn list(xs: &[BigInt]) -> String {
    format!("[{}]", xs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn emit(cli: &Cli) -> Emit {
    if cli.json {
        Emit::Json
    } else if cli.csv {
        Emit::Csv
    } else {
        Emit::Text
    }
}

fn no_csv(cli: &Cli, cmd: &str) -> Outcome {
    if cli.csv {
        return Err(Failure::Usage(format!("--csv is not supported by {cmd}")));
    }
    Ok(())
}

fn cmd_euclid(cli: &Cli, p: &BigInt, q: &BigInt) -> Outcome {
    no_csv(cli, "euclid")?;
    let pq = CoprimePair::pq(p.clone(), q.clone())?;
    let e = euclidean_sequences(&pq);
    if cli.json {
        print_json(&json!({ "schema": 1, "p": int(p), "q": int(q), "euclid": e }));
    } else {
        println!("r={} s={} ell={}", list(e.remainders()), list(e.quotients()), e.ell());
    }
    Ok(())
}

fn cmd_amap(cli: &Cli, a: &BigInt, b: &BigInt, method: &str) -> Outcome {
    no_csv(cli, "amap")?;
    let img = amap_methods().get(method)?.image(a, b)?;
    // report Bezout coefficients in the c x + d y = 1 form
    let c = -&img.c;
    let d = &img.d;
    let ell = if a == b {
        None
    } else {
        let small = a.min(b).clone();
        Some(a_map_closed(&CoprimePair::pq(a + b, small)?).ell)
    };
    if cli.json {
        print_json(&json!({
            "schema": 1, "method": method, "a": int(a), "b": int(b),
            "image": [int(&img.x), int(&img.y)], "c": int(&c), "d": int(d), "ell": ell,
        }));
    } else {
        let ell = ell.map(|l| format!(" ell={l}")).unwrap_or_default();
        println!("A({a}, {b}) = ({}, {}) c={c} d={d}{ell}", img.x, img.y);
    }
    Ok(())
}

fn cmd_chains(cli: &Cli, p: &BigInt, q: &BigInt) -> Outcome {
    no_csv(cli, "chains")?;
    let pq = CoprimePair::pq(p.clone(), q.clone())?;
    let ell = a_map_closed(&pq).ell;
    let sides = [("B", symmetric_chain(&pq)), ("A", matched_a_side_chain(&pq))];
    let mut rows = Vec::new();
    for (side, chain) in &sides {
        let value = evaluate(chain)?.value;
        let order = h1_presentation(chain)?.order;
        let lens = lens_parameter(&value);
        rows.push((*side, chain, value, order, lens));
    }
    let (pb, qb) = &rows[0].4;
    let (pa, qa) = &rows[1].4;
    let relation = if pa == pb { Some(lens_equiv(pb, qb, qa)?) } else { None };
    if cli.json {
        let sides: Vec<Value> = rows
            .iter()
            .map(|(side, chain, value, order, (lp, lq))| {
                json!({
                    "side": side, "chain": chain, "value": value.to_string(),
                    "h1_order": int(order), "lens": [int(lp), int(lq)],
                })
            })
            .collect();
        print_json(&json!({ "schema": 1, "p": int(p), "q": int(q), "ell": ell, "sides": sides, "relation": relation }));
    } else {
        println!("ell={ell}");
        for (side, chain, value, order, (lp, lq)) in &rows {
            println!("{side}-chain: {}", words(chain));
            println!("{side}-value: {value}  |H1| = {order}  L({lp}, {lq})");
        }
        match relation {
            Some(r) => println!("relation: {}", serde_json::to_value(r).expect("json").as_str().unwrap_or("?")),
            None => println!("relation: different orders"),
        }
    }
    Ok(())
}

fn cmd_certify(cli: &Cli, p: &BigInt, q: &BigInt) -> Outcome {
    let pq = CoprimePair::pq(p.clone(), q.clone())?;
    let report = contactomorphism_certificate(&pq);
    match emit(cli) {
        Emit::Json => {
            let mut v = serde_json::to_value(&report).expect("json");
            v["schema"] = json!(1);
            print_json(&v);
        }
        Emit::Csv => {
            println!("p,q,m,n,ell,t0,t1,gammaB,gammaA,gammaA_pulled,half_pq,pass");
            for l in &report.labels {
                println!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    report.p, report.q, report.m, report.n, report.ell, l.t0, l.t1, l.gamma_b, l.gamma_a,
                    l.gamma_a_pulled, l.half_pq, l.pass
                );
            }
        }
        Emit::Text => {
            println!(
                "B({}, {}) vs A({}, {}): ell={} c={} d={} d3={}",
                report.p, report.q, report.m, report.n, report.ell, report.c, report.d, report.d3
            );
            let modulus = &report.p * &report.p;
            for l in &report.labels {
                println!(
                    "  ({:+}, {:+}): gammaB={} gammaA={} pulled={} mod {modulus}  pq/2:{}  {}",
                    l.t0,
                    l.t1,
                    l.gamma_b,
                    l.gamma_a,
                    l.gamma_a_pulled,
                    if l.half_pq { "yes" } else { "no" },
                    if l.pass { "ok" } else { "MISMATCH" }
                );
            }
            for e in &report.errors {
                println!("  error: {e}");
            }
            println!("{}", if report.pass { "PASS" } else { "FAIL" });
        }
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_sweep(cli: &Cli, max_p: u64, parity: Parity, jobs: Option<usize>, checks: &[String]) -> Outcome {
    let parallelism = jobs.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let config = SweepConfig { max_p, parity, emit: emit(cli), parallelism, checks: checks.to_vec() };
    let start = Instant::now();
    let report = run_sweep(&config)?;
    print!("{}", render(&report, config.emit));
    if config.emit == Emit::Text {
        eprintln!("elapsed {:.2?} on {parallelism} threads", start.elapsed());
    }
    if report.is_success() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Euclid { p, q } => cmd_euclid(&cli, p, q),
        Command::Amap { a, b, method } => cmd_amap(&cli, a, b, method),
        Command::Chains { p, q } => cmd_chains(&cli, p, q),
        Command::Certify { p, q } => cmd_certify(&cli, p, q),
        Command::Sweep { max_p, parity, jobs, checks } => cmd_sweep(&cli, *max_p, *parity, *jobs, checks),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
