//! Structural experiments: injectivity of left multiplication by x1,
//! S-triviality via Hilbert-series minimality, and genericity statistics
//! over seeded random potentials.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::free_algebra::{NCPoly, Word};
use crate::groebner::TruncatedGB;
use crate::hilbert::{
    gsv_bound_coeffs, graded_dims, graded_groebner, rational_series_coeffs, truncation_chain,
    truncation_dims,
};
use crate::linalg;
use crate::potential::{random_potential, Potential};
use serde::{Deserialize, Serialize};

/// Per-degree domain dimension and image rank of a |-> x1 a.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InjectivityReport {
    pub max_degree_checked: usize,
    pub first_failure: Option<usize>,
    /// (degree, domain dim, image rank) per checked degree.
    pub ranks: Vec<(usize, usize, usize)>,
}

impl InjectivityReport {
    pub fn injective(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Matrix of a |-> normal_form(x1 * a) on the normal-word basis: in degree j
/// for a graded basis, in degrees <= j for a mod-J^jj basis (needs j+1 <= jj).
/// Rows are indexed by domain words, columns by codomain words.
pub fn x1_multiplication_matrix(gb: &TruncatedGB, j: usize) -> Result<Vec<Vec<Scalar>>> {
    let (domain, codomain): (Vec<Word>, Vec<Word>) = match gb.truncation {
        None => (gb.normal_words(j)?, gb.normal_words(j + 1)?),
        Some(_) => {
            let gather = |up_to: usize| -> Result<Vec<Word>> {
                let mut ws = Vec::new();
                for d in 0..=up_to {
                    ws.extend(gb.normal_words(d)?);
                }
                Ok(ws)
            };
            (gather(j)?, gather(j + 1)?)
        }
    };
    matrix_of_x1(gb, &domain, &codomain)
}

fn matrix_of_x1(
    reducer: &TruncatedGB,
    domain: &[Word],
    codomain: &[Word],
) -> Result<Vec<Vec<Scalar>>> {
    let field = reducer.field;
    let index: std::collections::HashMap<&Word, usize> =
        codomain.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let x1 = Word::gen(1);
    let mut rows = Vec::with_capacity(domain.len());
    for w in domain {
        let image = reducer.normal_form(&NCPoly::monomial(
            x1.concat(w),
            field.one(),
            field,
        ))?;
        let mut row = vec![field.zero(); codomain.len()];
        for (word, c) in &image.terms {
            let col = index.get(word).ok_or_else(|| {
                Error::Precondition(format!("normal form left the codomain basis at {word}"))
            })?;
            row[*col] = c.clone();
        }
        rows.push(row);
    }
    Ok(rows)
}

/// For each degree j < D, checks that a |-> x1 a has full rank from (A_F)_j
/// (homogeneous F) or from A^(j) to A^(j+1) (nonhomogeneous F, where the
/// domain basis comes from the Groebner basis of I + J^j and images are
/// reduced modulo I + J^{j+1}).
pub fn check_left_injectivity(f: &Potential, d: usize) -> Result<InjectivityReport> {
    let field = f.field();
    let mut ranks = Vec::new();
    let mut first_failure = None;
    if f.is_homogeneous() {
        let gb = graded_groebner(f, d + 1)?;
        for j in 0..d {
            let rows = x1_multiplication_matrix(&gb, j)?;
            let dim = rows.len();
            let rank = linalg::rank(rows, &field);
            ranks.push((j, dim, rank));
            if rank < dim && first_failure.is_none() {
                first_failure = Some(j);
            }
        }
    } else if let FieldSpec::Prime(p) = field {
        let d_report = d.saturating_sub(f.m - f.k);
        let ladder = crate::hilbert::truncation_ladder(&f.relations(), f.n, d_report, p, true)?;
        for (j, dim, rank) in ladder.inj_ranks {
            ranks.push((j, dim, rank));
            if rank < dim && first_failure.is_none() {
                first_failure = Some(j);
            }
        }
    } else {
        let d_report = d.saturating_sub(f.m - f.k);
        let chain = truncation_chain(f, d_report)?;
        for j in 0..d_report {
            let mut domain = Vec::new();
            for deg in 0..=j {
                domain.extend(chain[j].normal_words(deg)?);
            }
            let mut codomain = Vec::new();
            for deg in 0..=j + 1 {
                codomain.extend(chain[j + 1].normal_words(deg)?);
            }
            let rows = matrix_of_x1(&chain[j + 1], &domain, &codomain)?;
            let dim = rows.len();
            let rank = linalg::rank(rows, &field);
            ranks.push((j, dim, rank));
            if rank < dim && first_failure.is_none() {
                first_failure = Some(j);
            }
        }
    }
    let max_degree_checked = ranks.last().map(|&(j, _, _)| j).unwrap_or(0);
    Ok(InjectivityReport {
        max_degree_checked,
        first_failure,
        ranks,
    })
}

/// S-triviality certificate: true iff the graded dimensions match the
/// minimal series (1 - nt + nt^{k-1} - t^k)^{-1} coefficientwise up to D.
pub fn check_minimal_series(f: &Potential, d: usize) -> Result<bool> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let dims = graded_dims(f, d)?;
    let minimal = rational_series_coeffs(f.n, f.k, d)?;
    Ok(dims.coeffs == minimal.coeffs)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentParams {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    #[serde(rename = "D")]
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub modulus: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialResult {
    pub seed: u64,
    pub minimal_series: bool,
    pub injective_up_to_d: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub params: ExperimentParams,
    pub per_trial: Vec<TrialResult>,
    /// None when trials == 0.
    pub minimal_series_fraction: Option<f64>,
    pub injective_fraction: Option<f64>,
}

/// Runs `trials` independent random potentials with per-trial seeds
/// seed, seed+1, ...; each trial tests truncation dims against the GSV
/// bound (minimal-series attainment) and left-multiplication injectivity.
/// Byte-for-byte reproducible for a fixed (params, seed).
pub fn genericity_experiment(
    n: usize,
    k: usize,
    m: usize,
    d: usize,
    trials: usize,
    seed: u64,
    field: FieldSpec,
) -> Result<ExperimentReport> {
    if (n, k) == (2, 3) {
        return Err(Error::Precondition("(n,k) = (2,3) is the excluded case".into()));
    }
    let modulus = match field {
        FieldSpec::Prime(p) => p,
        FieldSpec::Rationals => return Err(Error::NeedPrimeField),
    };
    let d_report = d.saturating_sub(m - k);
    let bound = gsv_bound_coeffs(n, k, d_report)?;
    let mut per_trial = Vec::with_capacity(trials);
    for i in 0..trials {
        let trial_seed = seed.wrapping_add(i as u64);
        let f = random_potential(n, k, m, field, trial_seed)?;
        let dims = truncation_dims(&f, d)?;
        let minimal_series = dims.coeffs == bound.coeffs;
        let inj = check_left_injectivity(&f, d)?;
        per_trial.push(TrialResult {
            seed: trial_seed,
            minimal_series,
            injective_up_to_d: inj.injective(),
        });
    }
    let frac = |pred: fn(&TrialResult) -> bool| -> Option<f64> {
        if trials == 0 {
            None
        } else {
            Some(per_trial.iter().filter(|t| pred(t)).count() as f64 / trials as f64)
        }
    };
    Ok(ExperimentReport {
        minimal_series_fraction: frac(|t| t.minimal_series),
        injective_fraction: frac(|t| t.injective_up_to_d),
        params: ExperimentParams {
            n,
            k,
            m,
            d,
            trials,
            seed,
            modulus,
        },
        per_trial,
    })
}
