//! Command-line workbench for potential algebras.

use clap::{Args, Parser, Subcommand};
use potalg::analysis::{check_left_injectivity, check_minimal_series, genericity_experiment};
use potalg::field::DEFAULT_PRIME;
use potalg::groebner::brute_force_graded_dims;
use potalg::hilbert::{
    classify_growth, default_degree_bound, empirical_growth, graded_dims, gsv_bound_coeffs,
    rational_series_coeffs, truncation_dims,
};
use potalg::parser::{format_potential, parse_potential};
use potalg::potential::{example_potential_kgen, example_potential_ngtk, random_potential};
use potalg::report::{self, OutputFormat};
use potalg::{Error, FieldSpec, Potential};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "potalg",
    about = "Workbench for potential (Jacobi) algebras: Hilbert series, GSV bounds, growth and genericity experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Ground field: `q` for exact rationals or `fp:<prime>`
    #[arg(long, default_value = "fp:65521", global = true)]
    field: String,
    /// Degree bound D (default depends on the generator count)
    #[arg(long)]
    degree: Option<usize>,
    /// Output format
    #[arg(long, default_value = "plain")]
    format: OutputFormat,
    /// Write the report to this path instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Source {
    /// Potential file in the text grammar (# starts a comment line)
    #[arg(long, conflicts_with_all = ["inline", "builtin", "random"])]
    file: Option<PathBuf>,
    /// Potential given inline, e.g. "(x1*x2^3)~"
    #[arg(long, conflicts_with_all = ["builtin", "random"])]
    inline: Option<String>,
    /// Builtin potential: `kgen:<n>:<k>` or `ngtk:<n>:<k>`
    #[arg(long, conflicts_with = "random")]
    builtin: Option<String>,
    /// Random potential `<n>:<k>:<m>` (requires --seed and a prime field)
    #[arg(long)]
    random: Option<String>,
    /// Seed for randomized sources
    #[arg(long)]
    seed: Option<u64>,
    /// Override the generator count inferred from a file/inline potential
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Graded dimensions (homogeneous) or truncation dimensions of A_F
    Series {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        /// Force truncation dimensions even for a homogeneous potential
        #[arg(long)]
        truncated: bool,
    },
    /// GSV bound and minimal-series expansions for (n, k)
    Bound {
        n: usize,
        k: usize,
        #[arg(name = "D")]
        d: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Growth classification for (n, k) plus the advisory empirical fit
    Classify {
        n: usize,
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Injectivity of left multiplication by x1
    Inject {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
    /// Minimal-series (S-triviality) certificate for a homogeneous potential
    Minimal {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
    /// Genericity experiment over seeded random potentials
    Generic {
        n: usize,
        k: usize,
        m: usize,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Seed is mandatory so every report is reproducible
        #[arg(long)]
        seed: u64,
        /// Acceptance threshold on both summary fractions
        #[arg(long, default_value_t = 0.9)]
        threshold: f64,
    },
    /// Print the builtin potentials for (n, k) in the text grammar
    Examples {
        n: usize,
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force linear-algebra graded dimensions (oracle cross-check)
    Oracle {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Serialize)]
struct FailureRecord {
    command: String,
    failure: String,
}

fn parse_field(spec: &str) -> Result<FieldSpec, Error> {
    if spec == "q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = spec.strip_prefix("fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Precondition(format!("bad modulus in '{spec}'")))?;
        return FieldSpec::prime(p);
    }
    Err(Error::Precondition(format!(
        "bad field spec '{spec}' (use q or fp:<prime>)"
    )))
}

fn parse_triple(spec: &str, what: &str, want: usize) -> Result<Vec<usize>, Error> {
    let parts: Result<Vec<usize>, _> = spec.split(':').map(|s| s.parse::<usize>()).collect();
    match parts {
        Ok(v) if v.len() == want => Ok(v),
        _ => Err(Error::Precondition(format!(
            "bad {what} spec '{spec}'"
        ))),
    }
}

fn load_potential(source: &Source, field: FieldSpec) -> Result<Potential, Error> {
    if let Some(path) = &source.file {
        let text = std::fs::read_to_string(path)?;
        return parse_potential(&text, field, source.n);
    }
    if let Some(text) = &source.inline {
        return parse_potential(text, field, source.n);
    }
    if let Some(spec) = &source.builtin {
        let (kind, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Precondition(format!("bad builtin spec '{spec}'")))?;
        let nk = parse_triple(rest, "builtin", 2)?;
        return match kind {
            "kgen" => example_potential_kgen(nk[0], nk[1], field),
            "ngtk" => example_potential_ngtk(nk[0], nk[1], field),
            other => Err(Error::Precondition(format!("unknown builtin '{other}'"))),
        };
    }
    if let Some(spec) = &source.random {
        let nkm = parse_triple(spec, "random", 3)?;
        let seed = source.seed.ok_or_else(|| {
            Error::Precondition("--random requires an explicit --seed".into())
        })?;
        return random_potential(nkm[0], nkm[1], nkm[2], field, seed);
    }
    Err(Error::Precondition(
        "no potential given: use --file, --inline, --builtin or --random".into(),
    ))
}

fn emit(common: &Common, text: String) -> Result<(), Error> {
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_report<T: Serialize>(
    common: &Common,
    value: &T,
    plain: String,
    csv: Option<String>,
) -> Result<(), Error> {
    let text = match common.format {
        OutputFormat::Json => report::to_json(value) + "\n",
        OutputFormat::Csv => csv.unwrap_or_else(|| plain.clone()),
        OutputFormat::Plain => plain,
    };
    emit(common, text)
}

fn run() -> Result<bool, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Series {
            source,
            common,
            truncated,
        } => {
            let field = parse_field(&common.field)?;
            let f = load_potential(&source, field)?;
            let d = common.degree.unwrap_or_else(|| default_degree_bound(f.n));
            let table = if f.is_homogeneous() && !truncated {
                graded_dims(&f, d)?
            } else {
                truncation_dims(&f, d)?
            };
            let bound = gsv_bound_coeffs(f.n, f.k, table.d)?;
            let csv = report::series_to_csv(&table, Some(&bound));
            let plain = report::series_to_plain(&table) + "\n";
            emit_report(&common, &table, plain, Some(csv))?;
            Ok(true)
        }
        Command::Bound { n, k, d, common } => {
            let bound = gsv_bound_coeffs(n, k, d)?;
            let minimal = rational_series_coeffs(n, k, d)?;
            #[derive(Serialize)]
            struct BoundReport {
                gsv_bound: potalg::hilbert::SeriesTable,
                minimal_series: potalg::hilbert::SeriesTable,
            }
            let rep = BoundReport {
                gsv_bound: bound,
                minimal_series: minimal,
            };
            let plain = format!(
                "{}\n{}\n",
                report::series_to_plain(&rep.minimal_series),
                report::series_to_plain(&rep.gsv_bound)
            );
            let csv = report::series_to_csv(&rep.minimal_series, Some(&rep.gsv_bound));
            emit_report(&common, &rep, plain, Some(csv))?;
            Ok(true)
        }
        Command::Classify { n, k, common } => {
            let class = classify_growth(n, k)?;
            let bound = gsv_bound_coeffs(n, k, 24)?;
            let fit = empirical_growth(&bound)?;
            #[derive(Serialize)]
            struct ClassifyReport {
                n: usize,
                k: usize,
                classification: potalg::hilbert::GrowthClass,
                advisory: potalg::hilbert::GrowthReport,
            }
            let rep = ClassifyReport {
                n,
                k,
                classification: class,
                advisory: fit,
            };
            let plain = report::growth_to_plain(&rep.classification, Some(&rep.advisory));
            emit_report(&common, &rep, plain, None)?;
            Ok(true)
        }
        Command::Inject { source, common } => {
            let field = parse_field(&common.field)?;
            let f = load_potential(&source, field)?;
            let d = common.degree.unwrap_or_else(|| default_degree_bound(f.n));
            let rep = check_left_injectivity(&f, d)?;
            let ok = rep.injective();
            let plain = report::injectivity_to_plain(&rep);
            emit_report(&common, &rep, plain, None)?;
            if !ok {
                let record = FailureRecord {
                    command: "inject".into(),
                    failure: format!(
                        "left multiplication by x1 loses rank at degree {}",
                        rep.first_failure.unwrap()
                    ),
                };
                eprintln!("{}", report::to_json(&record));
            }
            Ok(ok)
        }
        Command::Minimal { source, common } => {
            let field = parse_field(&common.field)?;
            let f = load_potential(&source, field)?;
            let d = common.degree.unwrap_or_else(|| default_degree_bound(f.n));
            let minimal = check_minimal_series(&f, d)?;
            #[derive(Serialize)]
            struct MinimalReport {
                minimal_series: bool,
                s_trivial_by_minimality: bool,
                #[serde(rename = "D")]
                d: usize,
            }
            let rep = MinimalReport {
                minimal_series: minimal,
                s_trivial_by_minimality: minimal,
                d,
            };
            let plain = if minimal {
                format!("minimal series attained up to degree {d}: S-trivial (by minimality criterion)\n")
            } else {
                format!("Hilbert series exceeds the minimal series somewhere up to degree {d}\n")
            };
            emit_report(&common, &rep, plain, None)?;
            if !minimal {
                let record = FailureRecord {
                    command: "minimal".into(),
                    failure: "graded dimensions exceed the minimal series".into(),
                };
                eprintln!("{}", report::to_json(&record));
            }
            Ok(minimal)
        }
        Command::Generic {
            n,
            k,
            m,
            common,
            trials,
            seed,
            threshold,
        } => {
            let field = parse_field(&common.field)?;
            let field = if field.is_prime_field() {
                field
            } else {
                FieldSpec::Prime(DEFAULT_PRIME)
            };
            let d = common.degree.unwrap_or_else(|| default_degree_bound(n));
            let rep = genericity_experiment(n, k, m, d, trials, seed, field)?;
            let plain = report::experiment_to_plain(&rep);
            emit_report(&common, &rep, plain, None)?;
            let ok = match (rep.minimal_series_fraction, rep.injective_fraction) {
                (Some(a), Some(b)) => a >= threshold && b >= threshold,
                _ => true,
            };
            if !ok {
                let record = FailureRecord {
                    command: "generic".into(),
                    failure: format!("summary fractions below threshold {threshold}"),
                };
                eprintln!("{}", report::to_json(&record));
            }
            Ok(ok)
        }
        Command::Examples { n, k, common } => {
            let field = parse_field(&common.field)?;
            let f = if k >= n {
                example_potential_kgen(n, k, field)?
            } else {
                example_potential_ngtk(n, k, field)?
            };
            emit(&common, format_potential(&f) + "\n")?;
            Ok(true)
        }
        Command::Oracle { source, common } => {
            let field = parse_field(&common.field)?;
            let f = load_potential(&source, field)?;
            let d = common.degree.unwrap_or(7);
            let dims = brute_force_graded_dims(&f.relations(), f.n, d)?;
            let table = potalg::hilbert::SeriesTable {
                kind: potalg::hilbert::SeriesKind::GradedDims,
                n: f.n,
                k: f.k,
                m: f.m,
                d,
                coeffs: dims,
            };
            let plain = report::series_to_plain(&table) + "\n";
            let csv = report::series_to_csv(&table, None);
            emit_report(&common, &table, plain, Some(csv))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let record = FailureRecord {
                command: "potalg".into(),
                failure: e.to_string(),
            };
            eprintln!("{}", report::to_json(&record));
            ExitCode::from(2)
        }
    }
}
