//! Output rendering shared by the CLI and the C API: JSON with a stable
//! schema, CSV for series tables, and plain text.

use crate::analysis::{ExperimentReport, InjectivityReport};
use crate::hilbert::{GrowthClass, GrowthReport, SeriesTable};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Plain,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "plain" => Ok(OutputFormat::Plain),
            other => Err(format!("unknown format '{other}' (json|csv|plain)")),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

/// CSV rows: degree, coefficient, bound-coefficient, slack. The bound column
/// is filled when a reference table is supplied and covers the degree.
pub fn series_to_csv(table: &SeriesTable, bound: Option<&SeriesTable>) -> String {
    let mut out = String::from("degree,coefficient,bound_coefficient,slack\n");
    for (j, &c) in table.coeffs.iter().enumerate() {
        match bound.and_then(|b| b.coeffs.get(j)) {
            Some(&b) => {
                out.push_str(&format!("{j},{c},{b},{}\n", c as i128 - b as i128));
            }
            None => out.push_str(&format!("{j},{c},,\n")),
        }
    }
    out
}

pub fn series_to_plain(table: &SeriesTable) -> String {
    let coeffs: Vec<String> = table.coeffs.iter().map(|c| c.to_string()).collect();
    format!(
        "{} (n={}, k={}, m={}, D={}): {}",
        table.kind,
        table.n,
        table.k,
        table.m,
        table.d,
        coeffs.join(", ")
    )
}

pub fn injectivity_to_plain(rep: &InjectivityReport) -> String {
    let mut out = String::new();
    for (j, dim, rank) in &rep.ranks {
        out.push_str(&format!("degree {j}: domain {dim}, rank {rank}\n"));
    }
    match rep.first_failure {
        None => out.push_str(&format!(
            "x1-multiplication injective up to degree {}\n",
            rep.max_degree_checked
        )),
        Some(j) => out.push_str(&format!("FIRST FAILURE at degree {j}\n")),
    }
    out
}

pub fn growth_to_plain(class: &GrowthClass, rep: Option<&GrowthReport>) -> String {
    let mut out = format!("classification: {class}\n");
    if let Some(r) = rep {
        out.push_str(&format!(
            "advisory: tail ratio {:.4}, fitted polynomial degree {}, fit residual {:.3e}\n",
            r.tail_ratio, r.fitted_degree, r.fit_rel_residual
        ));
    }
    out
}

pub fn experiment_to_plain(rep: &ExperimentReport) -> String {
    let p = &rep.params;
    let mut out = format!(
        "genericity experiment: n={} k={} m={} D={} trials={} seed={} modulus={}\n",
        p.n, p.k, p.m, p.d, p.trials, p.seed, p.modulus
    );
    for t in &rep.per_trial {
        out.push_str(&format!(
            "  seed {}: minimal-series={} injective={}\n",
            t.seed, t.minimal_series, t.injective_up_to_d
        ));
    }
    match (rep.minimal_series_fraction, rep.injective_fraction) {
        (Some(a), Some(b)) => {
            out.push_str(&format!(
                "summary: minimal-series fraction {a:.2}, injective fraction {b:.2}\n"
            ));
        }
        _ => out.push_str("summary: no trials, fractions undefined\n"),
    }
    out
}
