//! Command implementations behind the `nmfr` binary.
//!
//! Every command writes its report to the given writer and returns an exit
//! code: 0 on success, 1 when a verification or search fails, 2 on bad
//! input.

pub mod document;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use nmf_rigidity::cpr::{certify_cp_with_budget, cp_necessary_conditions, SymmetricFactor};
use nmf_rigidity::exactlin::format_rational;
use nmf_rigidity::fixtures::{published_fixtures, verify_fixtures, FixtureCheck};
use nmf_rigidity::io::{format_factorization, format_matrix, parse_factorization, parse_matrix};
use nmf_rigidity::patterns::{enumerate_patterns, format_patterns, Filter, FilterSet, ZeroPattern};
use nmf_rigidity::realize::{
    lift_partially_rigid_detailed, realize_pattern, RealizationSearchConfig,
};
use nmf_rigidity::rigidity::{
    certify_with_budget, necessary_conditions_report, Classification, FactorizationPair,
    NecessaryConditionsReport, RigidityCertificate, DEFAULT_KRUSKAL_BUDGET,
};
use nmf_rigidity::Error;

use document::{CertificateDocument, EnumerationDocument, FixtureRow, Shape};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "nmfr",
    version,
    about = "Exact rigidity certificates for nonnegative factorizations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify a factorization file (A, blank line, B).
    Check {
        path: PathBuf,
        /// Read a single factor A and certify M = A A^T instead.
        #[arg(long)]
        symmetric: bool,
        /// Maximum number of column subsets tested for the Kruskal rank.
        #[arg(long, default_value_t = DEFAULT_KRUSKAL_BUDGET)]
        kruskal_budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Certify a symmetric factor file (same as `check --symmetric`).
    CpCheck {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_KRUSKAL_BUDGET)]
        kruskal_budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate canonical zero patterns.
    Enumerate {
        #[arg(long, num_args = 2, value_names = ["M", "N"], required = true)]
        shape: Vec<usize>,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        zeros: usize,
        /// `table1`, `theorem`, `none`, or a comma-separated list of filter names.
        #[arg(long, default_value = "wpoint")]
        filters: String,
        /// Write the patterns here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print a JSON summary instead of the patterns.
        #[arg(long)]
        json: bool,
    },
    /// Search for a rigid factorization with a given zero pattern.
    Realize {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [1u64, 1000])]
        range: Vec<u64>,
        #[arg(long, default_value_t = 10_000)]
        max_samples: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check the embedded published 5x5 factorizations.
    VerifyFixtures {
        #[arg(long)]
        json: bool,
    },
    /// Lift a rigid rank-r factorization to a partially rigid rank-(r+1) one.
    Lift {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Re-verify a JSON certificate document from its embedded factors.
    Reverify { path: PathBuf },
}

/// Applies `NMFR_THREADS` to the global rayon pool. Ignored when unset or
/// unparsable.
pub fn configure_threads() {
    if let Some(n) = std::env::var("NMFR_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // fails only if the pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LiftInfeasible { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs one command. Reports go to `out`, diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Check {
            path,
            symmetric,
            kruskal_budget,
            json,
        } => {
            if symmetric {
                cmd_cp_check(&path, kruskal_budget, json, out)
            } else {
                cmd_check(&path, kruskal_budget, json, out)
            }
        }
        Command::CpCheck {
            path,
            kruskal_budget,
            json,
        } => cmd_cp_check(&path, kruskal_budget, json, out),
        Command::Enumerate {
            shape,
            rank,
            zeros,
            filters,
            out: target,
            json,
        } => cmd_enumerate(
            shape[0],
            shape[1],
            rank,
            zeros,
            &filters,
            target.as_deref(),
            json,
            out,
        ),
        Command::Realize {
            pattern,
            seed,
            range,
            max_samples,
            out: target,
            json,
        } => {
            let cfg = RealizationSearchConfig {
                entry_low: range[0],
                entry_high: range[1],
                max_samples,
                seed,
            };
            cmd_realize(&pattern, &cfg, target.as_deref(), json, out)
        }
        Command::VerifyFixtures { json } => cmd_verify_fixtures(json, out),
        Command::Lift {
            path,
            out: target,
            json,
        } => cmd_lift(&path, target.as_deref(), json, out),
        Command::Reverify { path } => cmd_reverify(&path, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "failed: {msg}");
            EXIT_FAILURE
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn read_factorization(path: &Path) -> nmf_rigidity::Result<FactorizationPair> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    let (a, b) = parse_factorization(&text)?;
    FactorizationPair::new(a, b)
}

fn print_certificate(
    out: &mut dyn Write,
    cert: &RigidityCertificate,
    kruskal_bound: usize,
    conditions: &NecessaryConditionsReport,
) -> io::Result<()> {
    writeln!(out, "classification: {}", cert.classification)?;
    writeln!(out, "generators: {}", cert.generator_count)?;
    writeln!(out, "span rank: {}", cert.span_rank)?;
    writeln!(out, "lineality dim: {}", cert.lineality_dim)?;
    writeln!(out, "dim W: {}", cert.dim_w)?;
    match &cert.relint_witness {
        Some(w) => {
            let coeffs: Vec<String> = w.coefficients.iter().map(format_rational).collect();
            writeln!(out, "witness: {}", coeffs.join(" "))?;
        }
        None => writeln!(out, "witness: none")?,
    }
    match cert.kruskal_rank {
        Some(k) => writeln!(out, "kruskal rank: {k} (bound {kruskal_bound})")?,
        None => writeln!(
            out,
            "kruskal rank: budget exhausted (bound {kruskal_bound})"
        )?,
    }
    let support = cert.classification.v_support();
    if !support.is_empty() {
        let cells: Vec<String> = support.iter().map(|(i, j)| format!("({i},{j})")).collect();
        writeln!(out, "V support: {}", cells.join(" "))?;
    }
    for c in &conditions.results {
        writeln!(out, "condition {}: {}", c.condition.name(), c.status.name())?;
    }
    Ok(())
}

fn cmd_check(path: &Path, budget: u64, json: bool, out: &mut dyn Write) -> Outcome {
    let f = read_factorization(path)?;
    let cert = certify_with_budget(&f, budget);
    let doc = CertificateDocument::nonsymmetric(&f, &cert);
    if json {
        writeln!(out, "{}", doc.to_json())?;
    } else {
        writeln!(
            out,
            "shape: {}x{}, rank {}, {} zeros",
            f.m(),
            f.n(),
            f.r(),
            f.zero_count()
        )?;
        print_certificate(
            out,
            &cert,
            doc.certificate.kruskal_bound,
            &necessary_conditions_report(&f),
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_cp_check(path: &Path, budget: u64, json: bool, out: &mut dyn Write) -> Outcome {
    let a = parse_matrix(&read(path)?)?;
    let f = SymmetricFactor::new(a)?;
    let cert = certify_cp_with_budget(&f, budget);
    let doc = CertificateDocument::symmetric(&f, &cert);
    if json {
        writeln!(out, "{}", doc.to_json())?;
    } else {
        writeln!(
            out,
            "shape: {}x{}, rank {}, {} zeros",
            f.n(),
            f.n(),
            f.r(),
            f.zero_count()
        )?;
        print_certificate(
            out,
            &cert,
            doc.certificate.kruskal_bound,
            &cp_necessary_conditions(&f),
        )?;
    }
    Ok(EXIT_OK)
}

/// Parses `table1`, `theorem`, `none`, or a comma-separated list of names.
pub fn parse_filters(spec: &str, n: usize) -> std::result::Result<FilterSet, String> {
    match spec.trim() {
        "table1" => Ok(FilterSet::table1(n)),
        "theorem" => Ok(FilterSet::theorem()),
        "none" | "" => Ok(FilterSet::new([])),
        list => list
            .split(',')
            .map(|s| {
                let s = s.trim();
                Filter::from_name(s).ok_or_else(|| format!("unknown filter {s:?}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(FilterSet::new),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    m: usize,
    n: usize,
    r: usize,
    zeros: usize,
    filters: &str,
    target: Option<&Path>,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let set = parse_filters(filters, n).map_err(Failure::Input)?;
    let patterns = enumerate_patterns(m, n, r, zeros, &set)?;
    let text = format_patterns(&patterns);
    if let Some(path) = target {
        write_file(path, &text)?;
    }
    if json {
        let doc = EnumerationDocument {
            tool: document::TOOL.into(),
            version: document::VERSION.into(),
            shape: Shape { m, n, r },
            zeros,
            filters: set.iter().map(|f| f.name().to_string()).collect(),
            count: patterns.len(),
        };
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        )?;
    } else {
        if target.is_none() && !patterns.is_empty() {
            write!(out, "{text}")?;
            writeln!(out)?;
        }
        writeln!(out, "count: {}", patterns.len())?;
    }
    Ok(EXIT_OK)
}

fn cmd_realize(
    path: &Path,
    cfg: &RealizationSearchConfig,
    target: Option<&Path>,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let pattern = ZeroPattern::parse(&read(path)?)?;
    let Some(found) = realize_pattern(&pattern, cfg)? else {
        return Err(Failure::Verification(format!(
            "no rigid realization among {} samples (seed {})",
            cfg.max_samples, cfg.seed
        )));
    };
    let f = &found.pair;
    let mut doc = CertificateDocument::nonsymmetric(f, &found.certificate);
    doc.seed = Some(cfg.seed);
    if let Some(path) = target {
        write_file(path, &format_factorization(f.a(), f.b()))?;
    }
    if json {
        writeln!(out, "{}", doc.to_json())?;
    } else {
        writeln!(out, "sample: {} (seed {})", found.sample_index, cfg.seed)?;
        if target.is_none() {
            write!(out, "{}", format_factorization(f.a(), f.b()))?;
        }
        print_certificate(
            out,
            &found.certificate,
            doc.certificate.kruskal_bound,
            &necessary_conditions_report(f),
        )?;
    }
    Ok(EXIT_OK)
}

fn fixture_row(c: &FixtureCheck) -> FixtureRow {
    FixtureRow {
        index: c.index,
        passed: c.passed(),
        zero_count: c.zero_count,
        classification: c.classification.as_ref().map(|k| k.name().to_string()),
        dim_w: c.dim_w,
        kruskal_rank: c.kruskal_rank,
        product_diffs: c
            .product_diffs
            .iter()
            .map(|d| {
                (
                    d.row,
                    d.col,
                    format_rational(&d.printed),
                    format_rational(&d.computed),
                )
            })
            .collect(),
        error: c.invalid.clone(),
    }
}

/// Writes the fixture table and returns whether every row passed.
pub fn report_fixtures(
    checks: &[FixtureCheck],
    json: bool,
    out: &mut dyn Write,
) -> io::Result<bool> {
    let rows: Vec<FixtureRow> = checks.iter().map(fixture_row).collect();
    let all = rows.iter().all(|r| r.passed);
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&rows).expect("serializable")
        )?;
        return Ok(all);
    }
    let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    writeln!(
        out,
        "{:>3}  {:>5}  {:<32}  {:>5}  {:>6}  {:>7}  result",
        "#", "zeros", "classification", "dim W", "kruskal", "product"
    )?;
    for r in &rows {
        let product = if r.product_diffs.is_empty() && r.error.is_none() {
            "exact".to_string()
        } else {
            format!("{} diff", r.product_diffs.len())
        };
        writeln!(
            out,
            "{:>3}  {:>5}  {:<32}  {:>5}  {:>6}  {:>7}  {}",
            r.index,
            r.zero_count,
            r.classification.as_deref().unwrap_or("invalid"),
            opt(r.dim_w),
            opt(r.kruskal_rank),
            product,
            if r.passed { "pass" } else { "FAIL" }
        )?;
        for (i, j, printed, computed) in &r.product_diffs {
            writeln!(
                out,
                "     entry ({i},{j}): printed {printed}, computed {computed}"
            )?;
        }
        if let Some(e) = &r.error {
            writeln!(out, "     {e}")?;
        }
    }
    let passed = rows.iter().filter(|r| r.passed).count();
    writeln!(out, "{passed}/{} passed", rows.len())?;
    Ok(all)
}

fn cmd_verify_fixtures(json: bool, out: &mut dyn Write) -> Outcome {
    let checks = verify_fixtures(&published_fixtures());
    Ok(if report_fixtures(&checks, json, out)? {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

fn cmd_lift(path: &Path, target: Option<&Path>, json: bool, out: &mut dyn Write) -> Outcome {
    let f = read_factorization(path)?;
    let lift = lift_partially_rigid_detailed(&f)?;
    let g = &lift.pair;
    let cert = certify_with_budget(g, DEFAULT_KRUSKAL_BUDGET);
    if let Some(path) = target {
        write_file(path, &format_factorization(g.a(), g.b()))?;
    }
    if json {
        writeln!(
            out,
            "{}",
            CertificateDocument::nonsymmetric(g, &cert).to_json()
        )?;
        return Ok(EXIT_OK);
    }
    let column: Vec<String> = lift.new_column.iter().map(format_rational).collect();
    writeln!(out, "interior point: {:?}", lift.interior_point)?;
    writeln!(out, "new column: {}", column.join(" "))?;
    if target.is_none() {
        write!(out, "{}", format_factorization(g.a(), g.b()))?;
    }
    writeln!(out, "classification: {}", cert.classification)?;
    if let Classification::PartiallyInfinitesimallyRigid { v_basis } = &cert.classification {
        let cells: Vec<String> = cert
            .classification
            .v_support()
            .iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect();
        writeln!(out, "V support: {}", cells.join(" "))?;
        for (k, d) in v_basis.iter().enumerate() {
            write!(out, "V basis {}:\n{}", k + 1, format_matrix(d))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_reverify(path: &Path, out: &mut dyn Write) -> Outcome {
    let doc = CertificateDocument::from_json(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let problems = doc.reverify()?;
    if problems.is_empty() {
        writeln!(
            out,
            "certificate verified: {}",
            doc.certificate.classification
        )?;
        Ok(EXIT_OK)
    } else {
        Err(Failure::Verification(problems.join("; ")))
    }
}
