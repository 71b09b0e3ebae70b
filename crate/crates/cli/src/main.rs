use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jparity::hauptmodul::{Catalog, HauptmodulId};
use jparity::parity::{
    density_stats, required_precision, search, verify_family, verify_lemma, Family, Lemma, Parity,
};
use jparity::suite::{verify_all, SuiteConfig};
use jparity::{Error, Ring};
use serde_json::json;

mod output;
mod run;

use output::{Format, Report};

#[derive(Parser, Debug)]
#[command(
    name = "jparity",
    version,
    about = "Expand hauptmoduln as q-series and verify their parity theorems"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output to PATH instead of standard output.
    #[arg(long, value_name = "PATH", global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, value_name = "K", global = true)]
    threads: Option<usize>,
    /// Expand every eta factor with the naive product.
    #[arg(long, global = true)]
    oracle: bool,
    /// Add version, timestamp and elapsed time to the output.
    #[arg(long, global = true)]
    meta: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RingArg {
    Int,
    Gf2,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Int => Ring::Int,
            RingArg::Gf2 => Ring::Gf2,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump the q-expansion of a series.
    Expand {
        /// Series id: j, inv_delta, j_N, j_N+, f_N+, g_N+ (e.g. j_3+).
        id: String,
        /// Level, substituted for `N` in the id.
        #[arg(short = 'N', long = "level")]
        level: Option<u32>,
        #[arg(long, default_value_t = 10)]
        precision: i64,
        #[arg(long, value_enum, default_value_t = RingArg::Int)]
        ring: RingArg,
    },
    /// Print a single coefficient.
    Coeff {
        id: String,
        n: i64,
        #[arg(short = 'N', long = "level")]
        level: Option<u32>,
        /// Precision of the expansion to read from (default: n).
        #[arg(long)]
        precision: Option<i64>,
        #[arg(long, value_enum, default_value_t = RingArg::Int)]
        ring: RingArg,
    },
    /// Check a shifted-sum identity: a3+, b3+, a7+ or b7+.
    VerifyLemma {
        lemma: String,
        #[arg(long, default_value_t = 50_000)]
        n_max: i64,
        #[arg(long)]
        precision: Option<i64>,
    },
    /// Sweep one claim family over t = 1..t_max.
    VerifyTheorem {
        /// T31A..T42B, COR21_ODD(j_2+), TABLE5_EVEN(13), ...
        family: String,
        #[arg(long, default_value_t = 50)]
        t_max: i64,
        /// Raised automatically to cover the largest interval.
        #[arg(long)]
        precision: Option<i64>,
    },
    /// Run every verification suite.
    VerifyAll {
        #[arg(long, default_value_t = 50)]
        t_max: i64,
        /// Parameter bound for the corollary families.
        #[arg(long, default_value_t = 70)]
        corollary_t_max: i64,
        #[arg(long, default_value_t = 50_000)]
        n_max: i64,
    },
    /// List every n in [lo, hi] on a progression whose coefficient has the given parity.
    Search {
        id: String,
        #[arg(short = 'N', long = "level")]
        level: Option<u32>,
        /// MODULUS:RESIDUE, e.g. 8:7.
        #[arg(long, value_parser = parse_progression)]
        progression: (i64, i64),
        #[arg(long)]
        parity: Parity,
        #[arg(long)]
        lo: i64,
        #[arg(long)]
        hi: i64,
    },
    /// Reproduce the level table: both claim families for each level.
    Table5 {
        #[arg(long, default_value_t = 50)]
        t_max: i64,
    },
    /// Share of odd coefficients on a progression up to n_max.
    Density {
        id: String,
        #[arg(short = 'N', long = "level")]
        level: Option<u32>,
        #[arg(long, value_parser = parse_progression)]
        progression: (i64, i64),
        #[arg(long, default_value_t = 10_000)]
        n_max: i64,
    },
    /// Time the main expansion and multiplication paths.
    Bench {
        #[arg(long, default_value_t = 100_000)]
        precision: i64,
    },
}

fn parse_progression(s: &str) -> Result<(i64, i64), String> {
    let (m, r) = s
        .split_once(':')
        .ok_or("expected MODULUS:RESIDUE, e.g. 8:7")?;
    let m: i64 = m.trim().parse().map_err(|e| format!("modulus: {e}"))?;
    let r: i64 = r.trim().parse().map_err(|e| format!("residue: {e}"))?;
    if m < 1 {
        return Err("modulus must be positive".into());
    }
    Ok((m, r.rem_euclid(m)))
}

/// Failure modes with their exit codes.
enum Failure {
    /// A claim or identity failed; the report is still written.
    Refuted(Report),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = match e {
            Error::QueryBeyondPrecision { n, .. } => {
                format!("{e}; minimum sufficient precision is P={n}")
            }
            other => other.to_string(),
        };
        Failure::Usage(msg)
    }
}

impl Report {
    /// `Ok` when `ok`, otherwise the report wrapped as a refutation.
    fn checked(self, ok: bool) -> Result<Report, Failure> {
        if ok {
            Ok(self)
        } else {
            Err(Failure::Refuted(self))
        }
    }
}

fn resolve_id(id: &str, level: Option<u32>) -> Result<HauptmodulId, Failure> {
    let id = match level {
        Some(n) if id.contains(['N', 'n']) => id.replacen(['N', 'n'], &n.to_string(), 1),
        Some(n) => {
            return Err(Failure::Usage(format!(
                "--level {n} given but id {id:?} has no N placeholder"
            )))
        }
        None => id.to_string(),
    };
    Ok(id.parse()?)
}

fn require_positive(flag: &str, v: i64) -> Result<(), Failure> {
    if v < 1 {
        return Err(Failure::Usage(format!("{flag} must be positive, got {v}")));
    }
    Ok(())
}

fn require_precision(given: Option<i64>, needed: i64) -> Result<i64, Failure> {
    match given {
        Some(p) if p < needed => Err(Failure::Usage(format!(
            "precision {p} does not cover the requested range; minimum sufficient precision is P={needed}"
        ))),
        Some(p) => Ok(p),
        None => Ok(needed),
    }
}

fn execute(command: Command, catalog: &Catalog) -> Result<Report, Failure> {
    match command {
        Command::Expand {
            id,
            level,
            precision,
            ring,
        } => {
            require_positive("--precision", precision)?;
            let id = resolve_id(&id, level)?;
            let series = catalog.series(id, ring.into(), precision)?;
            Ok(run::expand(id, precision, &series))
        }
        Command::Coeff {
            id,
            n,
            level,
            precision,
            ring,
        } => {
            let id = resolve_id(&id, level)?;
            let precision = precision.unwrap_or(n.max(1));
            require_positive("--precision", precision)?;
            let series = catalog
                .series(id, ring.into(), precision)?
                .truncate(precision);
            let c = series.coeff(n)?;
            Ok(run::coeff(id, n, &c))
        }
        Command::VerifyLemma {
            lemma,
            n_max,
            precision,
        } => {
            let lemma = Lemma::parse(&lemma).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown lemma {lemma:?}; expected a3+, b3+, a7+ or b7+"
                ))
            })?;
            require_positive("--n-max", n_max)?;
            require_precision(precision, lemma.max_index(n_max))?;
            let report = verify_lemma(lemma, n_max, catalog)?;
            let ok = report.holds();
            Report::new(
                serde_json::to_value(&report).expect("serializable"),
                run::lemma_rows(&report),
            )
            .checked(ok)
        }
        Command::VerifyTheorem {
            family,
            t_max,
            precision,
        } => {
            let family: Family = family.parse()?;
            require_positive("--t-max", t_max)?;
            let precision = precision
                .unwrap_or(0)
                .max(required_precision(family, t_max));
            catalog.parity_series(family.series(), precision)?;
            let summary = verify_family(family, t_max, catalog)?;
            let ok = summary.ok();
            Report::new(
                serde_json::to_value(&summary).expect("serializable"),
                run::summary_rows(&[&summary]),
            )
            .checked(ok)
        }
        Command::VerifyAll {
            t_max,
            corollary_t_max,
            n_max,
        } => {
            require_positive("--t-max", t_max)?;
            require_positive("--corollary-t-max", corollary_t_max)?;
            require_positive("--n-max", n_max)?;
            let report = verify_all(
                &SuiteConfig {
                    t_max,
                    corollary_t_max,
                    n_max,
                },
                catalog,
            )?;
            let ok = report.ok;
            Report::new(
                serde_json::to_value(&report).expect("serializable"),
                run::suite_rows(&report),
            )
            .checked(ok)
        }
        Command::Search {
            id,
            level,
            progression,
            parity,
            lo,
            hi,
        } => {
            let id = resolve_id(&id, level)?;
            let witnesses = search(id, progression, parity, lo, hi, catalog)?;
            Ok(run::search(id, progression, parity, lo, hi, &witnesses))
        }
        Command::Table5 { t_max } => {
            require_positive("--t-max", t_max)?;
            let rows = Family::table5()
                .into_iter()
                .map(|f| verify_family(f, t_max, catalog).map(|s| (f, s)))
                .collect::<Result<Vec<_>, Error>>()?;
            let ok = rows.iter().all(|(_, s)| s.ok());
            run::table5(t_max, &rows).checked(ok)
        }
        Command::Density {
            id,
            level,
            progression,
            n_max,
        } => {
            let id = resolve_id(&id, level)?;
            let stats = density_stats(id, progression, n_max, catalog)?;
            Ok(run::density(id, progression, n_max, &stats))
        }
        Command::Bench { precision } => {
            require_positive("--precision", precision)?;
            Ok(run::bench(precision, catalog.oracle())?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.global.threads {
        if k == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .expect("thread pool configured once");
    }
    let catalog = Catalog::new(cli.global.oracle);
    let start = Instant::now();
    let (report, code) = match execute(cli.command, &catalog) {
        Ok(report) => (report, 0),
        Err(Failure::Refuted(report)) => (report, 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let meta = cli.global.meta.then(|| {
        let unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        json!({
            "version": env!("CARGO_PKG_VERSION"),
            "timestamp_unix": unix,
            "elapsed_ms": start.elapsed().as_millis() as u64,
            "oracle": cli.global.oracle,
        })
    });
    if let Err(e) = report.write(cli.global.format, cli.global.out.as_deref(), meta) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if code == 1 {
        eprintln!("FAIL: at least one claim or identity was refuted; see the report");
    }
    ExitCode::from(code)
}
