//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so the lines are always printed.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use cfladder_cli::commands::ladder_from_specs;
use cfladder_core::{
    expand, kuzmin_report, verify_identities, verify_ladder, AlgebraicNumber, BigInt, Bucket,
    CoverageStatus, Ladder,
};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const BIN: &str = env!("CARGO_BIN_EXE_cfladder");
const GOLDEN: &str = "root:1,-1,-1:1:2";
const BATTERY_XI: [&str; 6] = ["cbrt:2", "cbrt:3", "cbrt:6", "sqrt:2", "sqrt:3", GOLDEN];
const BATTERY_M: [u64; 6] = [1, 2, 3, 5, 6, 10];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cfladder(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(BIN).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "cfladder {args:?} exited with {}: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

// ---- independent expansion oracle: integer bisection + Euclid on both endpoints

fn scaled_sign(coeffs: &[i64], x: &BigInt, scale: &BigInt) -> i32 {
    let mut acc = BigInt::from(coeffs[0]);
    let mut s_pow = BigInt::one();
    for &c in &coeffs[1..] {
        s_pow *= scale;
        acc = acc * x + BigInt::from(c) * &s_pow;
    }
    if acc.is_positive() {
        1
    } else if acc.is_negative() {
        -1
    } else {
        0
    }
}

fn oracle_quotients(coeffs: &[i64], lo: i64, hi: i64, count: usize) -> Vec<BigInt> {
    let mut bits = 512u32;
    loop {
        let scale = BigInt::one() << bits;
        let mut below = BigInt::from(lo) * &scale;
        let mut above = BigInt::from(hi) * &scale;
        let lo_sign = scaled_sign(coeffs, &below, &scale);
        while &above - &below > BigInt::one() {
            let mid: BigInt = (&below + &above) >> 1;
            if scaled_sign(coeffs, &mid, &scale) == lo_sign {
                below = mid;
            } else {
                above = mid;
            }
        }
        let (mut a, mut b, mut c, mut d) = (below, scale.clone(), above, scale);
        let mut out = Vec::new();
        while !b.is_zero() && !d.is_zero() && out.len() < count {
            let (qa, ra) = a.div_mod_floor(&b);
            let (qc, rc) = c.div_mod_floor(&d);
            if qa != qc {
                break;
            }
            out.push(qa);
            (a, b, c, d) = (b, ra, d, rc);
        }
        if out.len() == count {
            return out;
        }
        bits *= 2;
    }
}

fn brute_force(ladder: &Ladder) -> BTreeSet<(usize, usize)> {
    let (ex, ey) = (ladder.exp_xi(), ladder.exp_eta());
    let mut out = BTreeSet::new();
    for n in 1..=ladder.max_n() {
        let (p, q) = ex.convergent(n as i64 - 1).unwrap();
        for k in 1..=ladder.max_k() {
            let (pp, qq) = ey.convergent(k as i64 - 1).unwrap();
            if p * pp == ladder.m() * q * qq {
                out.insert((n, k));
            }
        }
    }
    out
}

fn battery(terms: usize) -> Result<Vec<(String, u64, Ladder)>, String> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = BATTERY_XI
            .iter()
            .flat_map(|xi| BATTERY_M.iter().map(move |&m| (*xi, m)))
            .map(|(xi, m)| {
                scope.spawn(move || {
                    ladder_from_specs(xi, None, m, terms)
                        .map(|(_, _, l)| (xi.to_string(), m, l))
                        .map_err(|e| format!("{xi} m={m}: {e}"))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("battery thread")).collect()
    })
}

// ---- criteria

fn length_1000_count() -> Outcome {
    let start = Instant::now();
    let out = cfladder(&["ladder", "--xi", "cbrt:2", "--m", "2", "--terms", "1000"])?;
    let secs = start.elapsed().as_secs_f64();
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    let header = text
        .lines()
        .find_map(|l| l.strip_prefix("# connections: "))
        .ok_or("no connections header")?
        .to_string();
    let rows = text.lines().filter(|l| !l.starts_with('#')).count() - 1;
    ensure(header == "665" && rows == 665, || {
        format!("header {header}, {rows} rows, expected 665")
    })?;
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("665 connections (n,k in 1..1000) in {secs:.2}s"))
}

fn hand_prefix() -> Outcome {
    let (_, _, ladder) = ladder_from_specs("cbrt:2", Some("cbrt:4"), 2, 8).map_err(|e| e.to_string())?;
    let want: [(usize, usize, [i64; 4]); 3] = [
        (2, 3, [2, 1, 0, 0]),
        (3, 4, [1, 2, 0, 1]),
        (5, 6, [2, 1, -1, -1]),
    ];
    for (n, k, rstv) in want {
        let c = ladder
            .connections()
            .iter()
            .find(|c| c.n == n && c.k == k)
            .ok_or_else(|| format!("missing ({n},{k})"))?;
        let got = [&c.r, &c.s, &c.t, &c.value].map(|v| v.clone());
        ensure(got == rstv.map(BigInt::from), || {
            format!("({n},{k}) has (r,s,t,value) = {got:?}")
        })?;
    }
    Ok(format!("(2,3), (3,4), (5,6) match among {} connections", ladder.connections().len()))
}

fn expansion_oracle() -> Outcome {
    let cases: [(&str, &[i64], i64, i64); 5] = [
        ("cbrt:2", &[1, 0, 0, -2], 1, 2),
        ("cbrt:4", &[1, 0, 0, -4], 1, 2),
        ("cbrt:6", &[1, 0, 0, -6], 1, 2),
        ("cbrt:36", &[1, 0, 0, -36], 3, 4),
        ("sqrt:2", &[1, 0, -2], 1, 2),
    ];
    for (name, coeffs, lo, hi) in cases {
        let x = AlgebraicNumber::root(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            BigInt::from(lo).into(),
            BigInt::from(hi).into(),
        )
        .map_err(|e| e.to_string())?;
        let engine = expand(&x, 200).map_err(|e| e.to_string())?;
        let oracle = oracle_quotients(coeffs, lo, hi, 200);
        if let Some(i) = (0..200).find(|&i| engine.quotients().get(i) != Some(&oracle[i])) {
            return Err(format!("{name}: first mismatch at b_{i}"));
        }
    }
    Ok("200 quotients of cbrt 2, 4, 6, 36 and sqrt 2 identical".into())
}

fn ladder_oracle() -> Outcome {
    let mut total = 0;
    for (xi, m, ladder) in battery(60)? {
        let got: BTreeSet<_> = ladder.connections().iter().map(|c| (c.n, c.k)).collect();
        let want = brute_force(&ladder);
        ensure(got == want, || {
            format!("{xi} m={m}: lookup {} vs brute force {}", got.len(), want.len())
        })?;
        total += got.len();
    }
    Ok(format!("36 ladders at N=K=60, {total} connections agree"))
}

fn theorem_suite(ladders: &[(String, u64, Ladder)]) -> Outcome {
    let mut connections = 0;
    let mut covered = 0;
    for (xi, m, ladder) in ladders {
        let report = verify_ladder(ladder);
        ensure(report.passed, || {
            format!("{xi} m={m}: {} violations", report.violation_count())
        })?;
        connections += report.connections.len();
        if let Some(cov) = &report.coverage {
            covered += cov.iter().filter(|c| c.status == CoverageStatus::Connected).count();
        }
    }
    Ok(format!(
        "36 ladders at 500 terms, {connections} connections, {covered} large quotients covered, 0 violations"
    ))
}

fn identities(ladders: &[(String, u64, Ladder)]) -> Outcome {
    for (xi, m, ladder) in ladders {
        for (side, exp) in [("xi", ladder.exp_xi()), ("eta", ladder.exp_eta())] {
            let report = verify_identities(exp);
            if !report.passed {
                let first = report.failures().next();
                return Err(format!("{xi} m={m} {side}: first failure {first:?}"));
            }
        }
    }
    Ok(format!("{} expansions pass", 2 * ladders.len()))
}

fn golden_shift() -> Outcome {
    let terms = 100;
    let (_, _, ladder) = ladder_from_specs(GOLDEN, None, 1, terms).map_err(|e| e.to_string())?;
    let got: BTreeSet<_> = ladder.connections().iter().map(|c| (c.n, c.k)).collect();
    let want: BTreeSet<_> = (1..terms).map(|n| (n, n + 1)).collect();
    ensure(got == want, || format!("connection set has {} entries", got.len()))?;
    for c in ladder.connections() {
        let ok = c.r.is_one()
            && c.s.is_one()
            && c.value.is_zero()
            && c.t.is_zero()
            && ladder.exp_xi().quotient(c.n) == ladder.exp_eta().quotient(c.n + 1);
        ensure(ok, || format!("connection ({}, {}) is not a plain shift", c.n, c.k))?;
    }
    Ok(format!("{} connections (n, n+1), r=s=1, t=value=0", got.len()))
}

fn kuzmin() -> Outcome {
    let x = AlgebraicNumber::nth_root(&BigInt::from(2), 3).map_err(|e| e.to_string())?;
    let exp = expand(&x, 1000).map_err(|e| e.to_string())?;
    let report = kuzmin_report(&exp, 1).map_err(|e| e.to_string())?;
    let e1 = report.empirical[&Bucket::Value(1)];
    let sum: f64 = report.empirical.values().sum();
    ensure((e1 - 0.41504).abs() < 0.08, || format!("empirical(1) = {e1:.4}"))?;
    ensure((sum - 1.0).abs() < 1e-12, || format!("frequencies sum to {sum}"))?;
    Ok(format!("empirical(1) = {e1:.4} over {} quotients, sum = {sum}", report.sample_size))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |tag: &str| -> Result<Vec<Vec<u8>>, String> {
        let fig = dir.path().join(format!("fig3-{tag}.csv"));
        let svg = dir.path().join(format!("ladder-{tag}.svg"));
        let (fig_s, svg_s) = (path_str(&fig)?, path_str(&svg)?);
        let ladder = cfladder(&[
            "ladder", "--xi", "cbrt:2", "--m", "2", "--terms", "300", "--figure3", &fig_s, "--svg",
            &svg_s, "--out", "json",
        ])?;
        let expand = cfladder(&["expand", "--number", "cbrt:36", "--terms", "200"])?;
        let stats = cfladder(&["stats", "--number", "sqrt:3", "--terms", "300"])?;
        let read = |p: &Path| std::fs::read(p).map_err(|e| e.to_string());
        Ok(vec![ladder, read(&fig)?, read(&svg)?, expand, stats])
    };
    let (a, b) = (run("a")?, run("b")?);
    let names = ["ladder stdout", "figure3", "svg", "expand stdout", "stats stdout"];
    for (name, (x, y)) in names.iter().zip(a.iter().zip(&b)) {
        ensure(x == y, || format!("{name} differs between runs"))?;
        ensure(!x.is_empty(), || format!("{name} is empty"))?;
    }
    Ok("ladder, figure3, svg, expand and stats byte-identical across runs".into())
}

fn path_str(p: &Path) -> Result<String, String> {
    p.to_str().map(str::to_string).ok_or_else(|| "non-UTF-8 temp path".into())
}

fn main() {
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "665 connections", length_1000_count()));
    results.push((2, "hand-derived prefix", hand_prefix()));
    results.push((3, "expansion oracle", expansion_oracle()));
    results.push((4, "ladder oracle", ladder_oracle()));
    match battery(500) {
        Ok(ladders) => {
            results.push((5, "theorem suite", theorem_suite(&ladders)));
            results.push((6, "classical identities", identities(&ladders)));
        }
        Err(e) => {
            results.push((5, "theorem suite", Err(e.clone())));
            results.push((6, "classical identities", Err(e)));
        }
    }
    results.push((7, "golden shift ladder", golden_shift()));
    results.push((8, "Kuzmin smoke", kuzmin()));
    results.push((9, "determinism", determinism()));

    let mut failed = 0;
    for (i, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {i} ({name}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {i} ({name}): {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
