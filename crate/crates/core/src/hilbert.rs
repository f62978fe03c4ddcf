//! Graded and truncated Hilbert series, the rational minimal series, the
//! Golod-Shafarevich-Vinberg type lower bound, recurrence and inequality
//! verification, and the growth classification.

use crate::error::{Error, Result};
use crate::groebner::{truncated_groebner, truncated_groebner_mod_j, TruncatedGB};
use crate::potential::Potential;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    GradedDims,
    TruncationDims,
    RationalExpansion,
    GsvBound,
}

impl std::fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SeriesKind::GradedDims => "graded-dims",
            SeriesKind::TruncationDims => "truncation-dims",
            SeriesKind::RationalExpansion => "rational-expansion",
            SeriesKind::GsvBound => "gsv-bound",
        };
        write!(f, "{s}")
    }
}

/// An integer coefficient sequence indexed from 0, with provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTable {
    pub kind: SeriesKind,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    #[serde(rename = "D")]
    pub d: usize,
    pub coeffs: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthClass {
    ExcludedCase23,
    AtLeastCubic,
    Exponential,
}

impl std::fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GrowthClass::ExcludedCase23 => "excluded-case-2-3",
            GrowthClass::AtLeastCubic => "at-least-cubic",
            GrowthClass::Exponential => "exponential",
        };
        write!(f, "{s}")
    }
}

/// Default degree bound per generator count: keeps Groebner bases at desk
/// scale while comfortably exceeding k for all cases of interest.
pub fn default_degree_bound(n: usize) -> usize {
    match n {
        0..=2 => 12,
        3 => 10,
        _ => 8,
    }
}

/// Dimensions of the graded components of A_F for homogeneous F, per degree
/// 0..=D, counted as normal words of the truncated Groebner basis.
pub fn graded_dims(f: &Potential, d: usize) -> Result<SeriesTable> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let gb = graded_groebner(f, d)?;
    let coeffs = (0..=d)
        .map(|j| gb.normal_word_count(j))
        .collect::<Result<Vec<u64>>>()?;
    Ok(SeriesTable {
        kind: SeriesKind::GradedDims,
        n: f.n,
        k: f.k,
        m: f.m,
        d,
        coeffs,
    })
}

/// Groebner basis used for graded dimension and rank computations of a
/// homogeneous potential, complete up to degree `d`.
pub fn graded_groebner(f: &Potential, d: usize) -> Result<TruncatedGB> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let rels = f.relations();
    if rels.iter().all(|r| r.is_zero()) {
        // degenerate: free algebra
        return truncated_groebner_mod_j(&[], f.n, d);
    }
    truncated_groebner(&rels, f.n, d.max(f.m - 1))
}

/// Complete rewriting systems for I + J^j, j = 0..=j_max.
pub fn truncation_chain(f: &Potential, j_max: usize) -> Result<Vec<TruncatedGB>> {
    let rels = f.relations();
    (0..=j_max)
        .map(|j| truncated_groebner_mod_j(&rels, f.n, j))
        .collect()
}

/// dim A^(j) for j = 0..=D_report, where D_report = D - (m - k) covers the
/// degree slack nonhomogeneous reductions can introduce. Equals cumulative
/// sums of graded_dims when F is homogeneous.
pub fn truncation_dims(f: &Potential, d: usize) -> Result<SeriesTable> {
    let d_report = d.saturating_sub(f.m - f.k);
    let coeffs = if f.is_homogeneous() {
        let graded = graded_dims(f, d_report)?;
        cumulative_sums(&graded.coeffs)
    } else if let crate::field::FieldSpec::Prime(p) = f.field() {
        truncation_ladder(&f.relations(), f.n, d_report, p, false)?.dims
    } else {
        let chain = truncation_chain(f, d_report)?;
        let mut out = Vec::with_capacity(d_report + 1);
        for (j, gb) in chain.iter().enumerate() {
            let mut total = 0u64;
            for deg in 0..=j {
                total += gb.normal_word_count(deg)?;
            }
            out.push(total);
        }
        out
    };
    Ok(SeriesTable {
        kind: SeriesKind::TruncationDims,
        n: f.n,
        k: f.k,
        m: f.m,
        d: d_report,
        coeffs,
    })
}

pub(crate) struct LadderOutcome {
    /// dim A^(j) for j = 0..=j_max.
    pub dims: Vec<u64>,
    /// (j, dim A^(j), rank of a |-> x1 a into A^(j+1)) for j = 0..j_max.
    pub inj_ranks: Vec<(usize, usize, usize)>,
}

/// Truncation dimensions (and optionally x1-multiplication ranks) by direct
/// linear algebra over F_p, without rewriting systems. The degree-<= j part
/// of the ideal I is spanned by the projections pi_j(u r v) over all
/// sandwiches with deg(u) + mindeg(r) + deg(v) <= j; an echelon basis is
/// built once at j = j_max and the lower levels are obtained by projection,
/// since columns are ordered by word degree and pi_j is a column prefix.
pub(crate) fn truncation_ladder(
    rels: &[crate::free_algebra::NCPoly],
    n: usize,
    j_max: usize,
    p: u64,
    with_injectivity: bool,
) -> Result<LadderOutcome> {
    const WIDTH_GUARD: usize = 1 << 17;
    if n == 0 {
        return Err(Error::Precondition("need at least one generator".into()));
    }
    // number of words of degree < d
    let offset = |d: usize| -> usize {
        if n == 1 {
            d
        } else {
            (n.pow(d as u32) - 1) / (n - 1)
        }
    };
    let top_width = offset(j_max + 2);
    if top_width > WIDTH_GUARD {
        return Err(Error::GuardExceeded(top_width, j_max + 1, WIDTH_GUARD));
    }

    // terms of each relation as (degree, radix-n value, coefficient)
    let mut rel_terms: Vec<(usize, Vec<(usize, usize, u64)>)> = Vec::new();
    for r in rels {
        if r.is_zero() {
            continue;
        }
        let mindeg = r.min_degree().unwrap();
        if mindeg > j_max {
            continue;
        }
        let mut terms = Vec::with_capacity(r.terms.len());
        for (w, c) in &r.terms {
            let val = w.0.iter().fold(0usize, |acc, &l| acc * n + (l as usize - 1));
            let coeff = match c {
                crate::field::Scalar::Fp(v) => *v % p,
                crate::field::Scalar::Q(_) => {
                    return Err(Error::NeedPrimeField);
                }
            };
            terms.push((w.degree(), val, coeff));
        }
        rel_terms.push((mindeg, terms));
    }

    // echelon basis of pi_{j_max}(I)
    let width = offset(j_max + 1);
    let mut top = crate::linalg::FpEchelon::new(width, p);
    for (mindeg, terms) in &rel_terms {
        for ud in 0..=(j_max - mindeg) {
            for vd in 0..=(j_max - mindeg - ud) {
                let un = n.pow(ud as u32);
                let vn = n.pow(vd as u32);
                for uval in 0..un {
                    for vval in 0..vn {
                        let mut vec = vec![0u64; width];
                        let mut nonzero = false;
                        for &(wd, wval, c) in terms {
                            let deg = ud + wd + vd;
                            if deg > j_max {
                                continue;
                            }
                            let val = (uval * n.pow(wd as u32) + wval) * vn + vval;
                            let col = offset(deg) + val;
                            vec[col] = (vec[col] + c) % p;
                            nonzero = true;
                        }
                        if nonzero {
                            top.insert(vec);
                        }
                    }
                }
            }
        }
    }

    // project downwards: pi_j(I) = pi_j(pi_{j+1}(I))
    let mut echelons: Vec<crate::linalg::FpEchelon> = Vec::with_capacity(j_max + 1);
    echelons.push(top);
    for j in (0..j_max).rev() {
        let w = offset(j + 1);
        let mut e = crate::linalg::FpEchelon::new(w, p);
        for row in echelons.last().unwrap().rows() {
            e.insert(row[..w].to_vec());
        }
        echelons.push(e);
    }
    echelons.reverse(); // echelons[j] spans pi_j(I)

    let dims: Vec<u64> = (0..=j_max)
        .map(|j| (offset(j + 1) - echelons[j].rank()) as u64)
        .collect();

    let mut inj_ranks = Vec::new();
    if with_injectivity {
        // basis of A^(j): non-pivot columns of echelons[j]
        let domains: Vec<Vec<usize>> = (0..j_max)
            .map(|j| {
                (0..offset(j + 1))
                    .filter(|&c| !echelons[j].is_pivot_column(c))
                    .collect()
            })
            .collect();
        for (j, domain) in domains.into_iter().enumerate() {
            // codomain echelon is consumed: ranks are counted by inserting
            // the images of basis words and watching the rank grow
            let e = &mut echelons[j + 1];
            let codomain_width = e.width();
            let mut rank = 0usize;
            for col in domain.iter() {
                // decode (degree, value) and prepend x1 (digit 0): the
                // radix-n value is unchanged, the degree grows by one
                let mut deg = 0usize;
                while offset(deg + 1) <= *col {
                    deg += 1;
                }
                let val = col - offset(deg);
                let image_col = offset(deg + 1) + val;
                let mut vec = vec![0u64; codomain_width];
                vec[image_col] = 1;
                if e.insert(vec) {
                    rank += 1;
                }
            }
            inj_ranks.push((j, domain.len(), rank));
        }
    }

    Ok(LadderOutcome { dims, inj_ranks })
}

fn cumulative_sums(coeffs: &[u64]) -> Vec<u64> {
    let mut acc = 0u64;
    coeffs
        .iter()
        .map(|&c| {
            acc += c;
            acc
        })
        .collect()
}

/// Taylor coefficients of the minimal series (1 - nt + nt^{k-1} - t^k)^{-1}
/// via the linear recurrence c_j = n c_{j-1} - n c_{j-k+1} + c_{j-k}.
pub fn rational_series_coeffs(n: usize, k: usize, d: usize) -> Result<SeriesTable> {
    check_nk(n, k)?;
    let mut c: Vec<i128> = Vec::with_capacity(d + 1);
    let at = |c: &Vec<i128>, idx: i64| -> i128 {
        if idx < 0 {
            0
        } else {
            c[idx as usize]
        }
    };
    for j in 0..=d as i64 {
        let v = if j == 0 {
            1
        } else {
            (n as i128) * at(&c, j - 1) - (n as i128) * at(&c, j - (k as i64) + 1)
                + at(&c, j - k as i64)
        };
        c.push(v);
    }
    Ok(SeriesTable {
        kind: SeriesKind::RationalExpansion,
        n,
        k,
        m: k,
        d,
        coeffs: c.into_iter().map(|v| v as u64).collect(),
    })
}

/// Coefficients of (1-t)^{-1} (1 - nt + nt^{k-1} - t^k)^{-1}: cumulative
/// sums of the minimal series.
pub fn gsv_bound_coeffs(n: usize, k: usize, d: usize) -> Result<SeriesTable> {
    let minimal = rational_series_coeffs(n, k, d)?;
    Ok(SeriesTable {
        kind: SeriesKind::GsvBound,
        n,
        k,
        m: k,
        d,
        coeffs: cumulative_sums(&minimal.coeffs),
    })
}

/// Verifies a_{j+1} >= n a_j - n a_{j+2-k} + a_{j+1-k} + 1 for all
/// k-1 <= j < len-1, with a_s = 0 for s < 0 (the recurrence satisfied with
/// equality by the bound coefficients). Returns the first failing j.
pub fn check_gsv_inequality(
    dims: &SeriesTable,
    n: usize,
    k: usize,
) -> Result<Option<usize>> {
    if !matches!(dims.kind, SeriesKind::TruncationDims | SeriesKind::GsvBound) {
        return Err(Error::WrongSeriesKind {
            expected: "truncation-dims or gsv-bound".into(),
            got: dims.kind.to_string(),
        });
    }
    let a = |idx: i64| -> i128 {
        if idx < 0 {
            0
        } else {
            dims.coeffs[idx as usize] as i128
        }
    };
    let len = dims.coeffs.len() as i64;
    for j in (k as i64 - 1)..(len - 1) {
        let rhs = (n as i128) * a(j) - (n as i128) * a(j + 2 - k as i64) + a(j + 1 - k as i64) + 1;
        if a(j + 1) < rhs {
            return Ok(Some(j as usize));
        }
    }
    Ok(None)
}

/// Pure function of (n, k): the (2,3) case is excluded, (2,4) and (3,3)
/// have at least cubic growth, every other pair is exponential.
pub fn classify_growth(n: usize, k: usize) -> Result<GrowthClass> {
    if n < 2 || k < 3 {
        return Err(Error::Precondition(format!(
            "growth classification needs n >= 2, k >= 3; got ({n},{k})"
        )));
    }
    Ok(match (n, k) {
        (2, 3) => GrowthClass::ExcludedCase23,
        (2, 4) | (3, 3) => GrowthClass::AtLeastCubic,
        _ => GrowthClass::Exponential,
    })
}

/// Advisory numeric growth summary: tail coefficient ratio and the degree
/// of the best small-degree polynomial fit over the last half of the table.
/// The single place floating point appears; never overrides classify_growth.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthReport {
    pub tail_ratio: f64,
    pub fitted_degree: usize,
    pub fit_rel_residual: f64,
}

pub fn empirical_growth(dims: &SeriesTable) -> Result<GrowthReport> {
    let c = &dims.coeffs;
    if c.len() < 8 {
        return Err(Error::TableTooShort {
            got: c.len(),
            need: 8,
        });
    }
    let last = c[c.len() - 1] as f64;
    let prev = c[c.len() - 2] as f64;
    let tail_ratio = if prev == 0.0 { f64::INFINITY } else { last / prev };

    let start = c.len() / 2;
    let points: Vec<(f64, f64)> = (start..c.len()).map(|j| (j as f64, c[j] as f64)).collect();
    let scale = points.iter().map(|&(_, y)| y.abs()).fold(1.0_f64, f64::max);

    let mut best = (usize::MAX, f64::INFINITY);
    for degree in 0..=5usize {
        if degree + 1 > points.len() {
            break;
        }
        let residual = poly_fit_residual(&points, degree) / scale;
        if residual < 1e-3 {
            best = (degree, residual);
            break;
        }
        if residual < best.1 {
            best = (degree, residual);
        }
    }
    Ok(GrowthReport {
        tail_ratio,
        fitted_degree: best.0,
        fit_rel_residual: best.1,
    })
}

/// Max absolute residual of the least-squares degree-d polynomial fit.
fn poly_fit_residual(points: &[(f64, f64)], degree: usize) -> f64 {
    // center and scale the abscissa for conditioning
    let xmid = (points[0].0 + points[points.len() - 1].0) / 2.0;
    let xscale = ((points[points.len() - 1].0 - points[0].0) / 2.0).max(1.0);
    let t: Vec<f64> = points.iter().map(|&(x, _)| (x - xmid) / xscale).collect();
    let y: Vec<f64> = points.iter().map(|&(_, y)| y).collect();

    let m = degree + 1;
    // normal equations: (V^T V) a = V^T y with V_{ij} = t_i^j
    let mut ata = vec![vec![0.0f64; m]; m];
    let mut aty = vec![0.0f64; m];
    for (i, &ti) in t.iter().enumerate() {
        let mut powers = vec![1.0f64; m];
        for p in 1..m {
            powers[p] = powers[p - 1] * ti;
        }
        for r in 0..m {
            aty[r] += powers[r] * y[i];
            for cidx in 0..m {
                ata[r][cidx] += powers[r] * powers[cidx];
            }
        }
    }
    let coeffs = solve_f64(&mut ata, &mut aty);
    points
        .iter()
        .zip(t.iter())
        .map(|(&(_, yi), &ti)| {
            let mut v = 0.0;
            for c in coeffs.iter().rev() {
                v = v * ti + c;
            }
            (v - yi).abs()
        })
        .fold(0.0, f64::max)
}

fn solve_f64(a: &mut [Vec<f64>], b: &mut [f64]) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        let d = a[col][col];
        if d.abs() < 1e-12 {
            continue;
        }
        let pivot_row = a[col].clone();
        let pivot_b = b[col];
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r][col] / d;
            for c in col..n {
                a[r][c] -= f * pivot_row[c];
            }
            b[r] -= f * pivot_b;
        }
    }
    (0..n)
        .map(|i| if a[i][i].abs() < 1e-12 { 0.0 } else { b[i] / a[i][i] })
        .collect()
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n < 2 || k < 3 {
        return Err(Error::Precondition(format!(
            "need n >= 2 and k >= 3; got ({n},{k})"
        )));
    }
    Ok(())
}
