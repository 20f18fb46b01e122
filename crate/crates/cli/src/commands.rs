use std::io::Write;
use std::path::{Path, PathBuf};

use cfladder_core::{
    build_ladder, expand, figure3_series, kuzmin_report, verify_identities, verify_ladder,
    AlgebraicNumber, BigInt, Bucket, Expansion, IdentityReport, Ladder, LadderReport,
};
use clap::{Args, Parser, Subcommand};

use crate::error::CliError;
use crate::output::{ladder_svg, Cell, Format, Table};
use crate::spec::{parse_number_spec, NumberSpec};

#[derive(Debug, Parser)]
#[command(name = "cfladder", version, about = "Continued-fraction ladders of (xi, m/xi)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partial quotients and convergents of a number.
    Expand(ExpandArgs),
    /// Connections between the convergents of xi and m/xi.
    Ladder(LadderArgs),
    /// Partial-quotient histogram against the Kuzmin law.
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    /// Number spec, e.g. cbrt:2, sqrt:3, rat:355/113, root:1,-1,-1:1:2
    #[arg(long)]
    pub number: String,
    /// Number of partial quotients b_0..b_{N-1}
    #[arg(long)]
    pub terms: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub out: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Check the classical convergent identities; exit 4 on failure
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct LadderArgs {
    /// Number spec for xi
    #[arg(long)]
    pub xi: String,
    /// Positive integer with xi * eta = m
    #[arg(long)]
    pub m: u64,
    /// Ladder length: indices n and k range over 1..=N
    #[arg(long)]
    pub terms: usize,
    /// Explicit eta; must equal m/xi
    #[arg(long)]
    pub eta: Option<String>,
    /// Run the full theorem suite; exit 4 on any violation
    #[arg(long)]
    pub verify: bool,
    /// Write the (i, n - k) series here (.json for JSON, otherwise CSV)
    #[arg(long)]
    pub figure3: Option<PathBuf>,
    /// Write an SVG ladder diagram here
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub out: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Number spec, e.g. cbrt:2
    #[arg(long)]
    pub number: String,
    /// Number of partial quotients to expand
    #[arg(long)]
    pub terms: usize,
    /// Leading quotients excluded from the sample (b_0 by default)
    #[arg(long, default_value_t = 1)]
    pub skip_first: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub out: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn emit(bytes: &[u8], path: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => stdout.write_all(bytes)?,
    }
    Ok(())
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Expand(args) => run_expand(args, stdout, stderr),
        Command::Ladder(args) => run_ladder(args, stdout, stderr),
        Command::Stats(args) => run_stats(args, stdout),
    }
}

pub fn expansion_table(spec: &NumberSpec, exp: &Expansion) -> Table {
    let mut t = Table::new(&["n", "b_n", "p_n", "q_n"]);
    t.meta("number", spec.canonical());
    t.meta("terms", exp.len());
    t.meta("terminated", exp.terminated());
    for (n, b) in exp.quotients().iter().enumerate() {
        let (p, q) = exp.convergent(n as i64).expect("index in range");
        t.push(vec![n.into(), b.into(), p.into(), q.into()]);
    }
    t
}

fn identity_summary(name: &str, report: &IdentityReport, stderr: &mut dyn Write) -> std::io::Result<()> {
    let failures: Vec<_> = report.failures().collect();
    writeln!(
        stderr,
        "identities[{name}]: {} ({} determinant, {} alternation, {} delta, {} relative-error, {} complete-quotient checks; {} failures)",
        pass_fail(report.passed),
        report.determinant.len(),
        report.alternation.len(),
        report.delta_bounds.len(),
        report.relative_error.len(),
        report.complete_quotients.len(),
        failures.len()
    )?;
    for (check, n) in failures.iter().take(20) {
        writeln!(stderr, "  failed {check} at n = {n}")?;
    }
    Ok(())
}

fn run_expand(args: &ExpandArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let spec = parse_number_spec(&args.number)?;
    let exp = expand(spec.value(), args.terms)?;
    let mut table = expansion_table(&spec, &exp);
    let report = args.verify.then(|| verify_identities(&exp));
    if let Some(r) = &report {
        table.meta("identities", pass_fail(r.passed));
    }
    emit(&table.render(args.out)?, args.output.as_deref(), stdout)?;
    if let Some(r) = report {
        identity_summary("xi", &r, stderr)?;
        if !r.passed {
            return Err(CliError::Verification("classical identities".into()));
        }
    }
    Ok(())
}

/// Expands both numbers with `len` quotients each, concurrently.
fn expand_pair(
    xi: &AlgebraicNumber,
    eta: &AlgebraicNumber,
    len: usize,
) -> Result<(Expansion, Expansion), CliError> {
    let (a, b) = std::thread::scope(|scope| {
        let handle = scope.spawn(|| expand(eta, len));
        let a = expand(xi, len);
        (a, handle.join().expect("expansion thread panicked"))
    });
    Ok((a?, b?))
}

/// Parses the specs and builds the ladder with indices `1..=terms`.
pub fn ladder_from_specs(
    xi: &str,
    eta: Option<&str>,
    m: u64,
    terms: usize,
) -> Result<(NumberSpec, String, Ladder), CliError> {
    let xi_spec = parse_number_spec(xi)?;
    let m = BigInt::from(m);
    let (eta_value, eta_label) = match eta {
        Some(text) => {
            let spec = parse_number_spec(text)?;
            let label = spec.canonical();
            (spec.into_value(), label)
        }
        None => (
            xi_spec.value().reciprocal_scale(&m)?,
            format!("{m}/({})", xi_spec.canonical()),
        ),
    };
    if terms == 0 {
        return Err(CliError::Domain(cfladder_core::CfError::Domain(
            "ladder length must be at least 1".into(),
        )));
    }
    // index n needs b_n, so N terms means N + 1 partial quotients
    let (ex, ey) = expand_pair(xi_spec.value(), &eta_value, terms + 1)?;
    let ladder = build_ladder(ex, ey, &m)?;
    Ok((xi_spec, eta_label, ladder))
}

pub fn ladder_table(xi: &NumberSpec, eta_label: &str, ladder: &Ladder, terms: usize) -> Table {
    let mut t = Table::new(&["i", "n", "k", "r", "s", "t", "value", "lower", "upper"]);
    t.meta("xi", xi.canonical());
    t.meta("eta", eta_label);
    t.meta("m", ladder.m());
    t.meta("terms", terms);
    t.meta(
        "length_interpretation",
        format!("n,k in 1..{terms} ({} partial quotients per number)", terms + 1),
    );
    t.meta("connections", ladder.connections().len());
    for (i, c) in ladder.connections().iter().enumerate() {
        t.push(vec![
            (i + 1).into(),
            c.n.into(),
            c.k.into(),
            (&c.r).into(),
            (&c.s).into(),
            (&c.t).into(),
            (&c.value).into(),
            (&c.lower).into(),
            (&c.upper).into(),
        ]);
    }
    t
}

pub fn figure3_table(xi: &NumberSpec, eta_label: &str, ladder: &Ladder, terms: usize) -> Table {
    let mut t = Table::new(&["i", "n_minus_k"]);
    t.meta("xi", xi.canonical());
    t.meta("eta", eta_label);
    t.meta("m", ladder.m());
    t.meta("terms", terms);
    t.meta("connections", ladder.connections().len());
    for (i, d) in figure3_series(ladder) {
        t.push(vec![i.into(), d.into()]);
    }
    t
}

fn ladder_summary(report: &LadderReport, stderr: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        stderr,
        "ladder: {} ({} connections, {} runs, non-crossing {}, coverage {}, prime m {}; {} violations)",
        pass_fail(report.passed),
        report.connections.len(),
        report.runs.len(),
        pass_fail(report.non_crossing),
        match &report.coverage {
            Some(entries) => format!("{} large quotients checked", entries.len()),
            None => "not applicable".to_string(),
        },
        report.m_prime,
        report.violation_count()
    )?;
    for v in report.failed_connections().take(20) {
        writeln!(stderr, "  failed connection #{} (n = {}, k = {}): {v:?}", v.index + 1, v.n, v.k)?;
    }
    for r in report.failed_runs().take(20) {
        writeln!(stderr, "  failed run at position {} (length {}): {r:?}", r.start + 1, r.len)?;
    }
    for c in report.missing_coverage().take(20) {
        writeln!(stderr, "  large quotient b_{} = {} has no connection", c.n, c.b_n)?;
    }
    Ok(())
}

fn run_ladder(args: &LadderArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let (xi, eta_label, ladder) = ladder_from_specs(&args.xi, args.eta.as_deref(), args.m, args.terms)?;
    let mut table = ladder_table(&xi, &eta_label, &ladder, args.terms);
    let verdicts = args.verify.then(|| {
        (
            verify_ladder(&ladder),
            verify_identities(ladder.exp_xi()),
            verify_identities(ladder.exp_eta()),
        )
    });
    if let Some((lr, ix, iy)) = &verdicts {
        table.meta("verify", pass_fail(lr.passed && ix.passed && iy.passed));
    }
    emit(&table.render(args.out)?, args.output.as_deref(), stdout)?;
    if let Some(path) = &args.figure3 {
        let fig = figure3_table(&xi, &eta_label, &ladder, args.terms);
        let json = path.extension().is_some_and(|e| e == "json");
        let format = if json { Format::Json } else { Format::Csv };
        emit(&fig.render(format)?, Some(path), stdout)?;
    }
    if let Some(path) = &args.svg {
        let svg = ladder_svg(&ladder, &xi.canonical(), &eta_label);
        emit(svg.as_bytes(), Some(path), stdout)?;
    }
    if let Some((lr, ix, iy)) = verdicts {
        ladder_summary(&lr, stderr)?;
        identity_summary("xi", &ix, stderr)?;
        identity_summary("eta", &iy, stderr)?;
        if !(lr.passed && ix.passed && iy.passed) {
            return Err(CliError::Verification(format!(
                "{} ladder violations",
                lr.violation_count()
            )));
        }
    }
    Ok(())
}

pub fn stats_table(spec: &NumberSpec, exp: &Expansion, skip_first: usize) -> Result<Table, CliError> {
    let report = kuzmin_report(exp, skip_first)?;
    let mut t = Table::new(&["k", "count", "empirical", "expected", "deviation"]);
    t.meta("number", spec.canonical());
    t.meta("terms", exp.len());
    t.meta("skip_first", skip_first);
    t.meta("sample_size", report.sample_size);
    t.meta("max_abs_deviation", format!("{:.10}", report.max_abs_deviation));
    let (n, b) = &report.largest_quotient;
    t.meta("largest_quotient", format!("b_{n} = {b}"));
    for (bucket, count) in &report.counts {
        let label = match bucket {
            Bucket::Value(k) => k.to_string(),
            Bucket::Tail => bucket.to_string(),
        };
        t.push(vec![
            Cell::Text(label),
            Cell::Int(*count as i64),
            report.empirical[bucket].into(),
            report.expected[bucket].into(),
            report.deviation(*bucket).into(),
        ]);
    }
    Ok(t)
}

fn run_stats(args: &StatsArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let spec = parse_number_spec(&args.number)?;
    let exp = expand(spec.value(), args.terms)?;
    let table = stats_table(&spec, &exp, args.skip_first)?;
    emit(&table.render(args.out)?, args.output.as_deref(), stdout)
}
