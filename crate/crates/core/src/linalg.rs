//! Exact dense rank computation: Gaussian elimination over prime fields,
//! exact rational elimination (via BigRational, which keeps entries reduced)
//! over Q. No floating point.

use crate::field::{FieldSpec, Scalar};

/// Rank of the row span. Consumes the rows.
pub fn rank(rows: Vec<Vec<Scalar>>, field: &FieldSpec) -> usize {
    match field {
        FieldSpec::Prime(p) => rank_fp(rows, *p),
        FieldSpec::Rationals => rank_generic(rows, field),
    }
}

fn rank_fp(rows: Vec<Vec<Scalar>>, p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|s| match s {
                    Scalar::Fp(v) => v % p,
                    Scalar::Q(_) => panic!("rational scalar in prime-field matrix"),
                })
                .collect()
        })
        .collect();
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let pivot = match (row..m.len()).find(|&r| m[r][col] != 0) {
            Some(r) => r,
            None => continue,
        };
        m.swap(row, pivot);
        let inv = crate::field::pow_mod(m[row][col], p - 2, p);
        for r in row + 1..m.len() {
            if m[r][col] == 0 {
                continue;
            }
            let factor = mul_mod(m[r][col], inv, p);
            for c in col..ncols {
                let sub = mul_mod(factor, m[row][c], p);
                m[r][c] = (m[r][c] + p - sub) % p;
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Incremental row-echelon basis over F_p with dense rows. For p < 2^16 the
/// elimination keeps entries unreduced between pivot steps (lazy reduction),
/// which lets the inner loop run as plain multiply-adds: with at most 2^13
/// pivot steps the accumulated entries stay below 2^45 and cannot overflow.
pub struct FpEchelon {
    p: u64,
    width: usize,
    small: bool,
    rows: Vec<Vec<u64>>,
    /// column -> index of the row whose pivot sits in that column
    pivot_row: Vec<Option<usize>>,
}

impl FpEchelon {
    pub fn new(width: usize, p: u64) -> Self {
        FpEchelon {
            p,
            width,
            small: p < (1 << 16) && width <= (1 << 16),
            rows: Vec::new(),
            pivot_row: vec![None; width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot_column(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    fn eliminate(&self, v: &mut [u64]) {
        debug_assert_eq!(v.len(), self.width);
        for col in 0..self.width {
            if v[col] == 0 {
                continue;
            }
            v[col] %= self.p;
            if v[col] == 0 {
                continue;
            }
            let Some(r) = self.pivot_row[col] else {
                continue;
            };
            let mult = self.p - v[col];
            let row = &self.rows[r];
            v[col] = 0;
            if self.small {
                for k in col + 1..self.width {
                    v[k] += mult * row[k];
                }
            } else {
                for k in col + 1..self.width {
                    v[k] = (v[k] + mul_mod(mult, row[k], self.p)) % self.p;
                }
            }
        }
        for x in v.iter_mut() {
            *x %= self.p;
        }
    }

    /// Reduces v against the basis in place; afterwards every pivot column
    /// of v is zero and all entries are < p.
    pub fn reduce(&self, v: &mut [u64]) {
        self.eliminate(v);
    }

    /// Reduces and, if independent, normalizes and adjoins the vector.
    /// Returns true iff the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.eliminate(&mut v);
        let Some(col) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = crate::field::pow_mod(v[col], self.p - 2, self.p);
        for x in v[col..].iter_mut() {
            *x = mul_mod(*x, inv, self.p);
        }
        self.pivot_row[col] = Some(self.rows.len());
        self.rows.push(v);
        true
    }
}

fn rank_generic(mut m: Vec<Vec<Scalar>>, field: &FieldSpec) -> usize {
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let pivot = match (row..m.len()).find(|&r| !m[r][col].is_zero()) {
            Some(r) => r,
            None => continue,
        };
        m.swap(row, pivot);
        let inv = m[row][col].inv(field);
        for r in row + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].mul(&inv, field);
            for c in col..ncols {
                let sub = factor.mul(&m[row][c], field);
                m[r][c] = m[r][c].sub(&sub, field);
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        FieldSpec::Rationals.from_i64(v)
    }

    #[test]
    fn rank_over_q() {
        let f = FieldSpec::Rationals;
        let rows = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ];
        assert_eq!(rank(rows, &f), 2);
        assert_eq!(rank(Vec::new(), &f), 0);
    }

    #[test]
    fn rank_over_fp() {
        let f = FieldSpec::Prime(5);
        // second row = 2 * first row mod 5
        let rows = vec![
            vec![f.from_i64(1), f.from_i64(3)],
            vec![f.from_i64(2), f.from_i64(6)],
        ];
        assert_eq!(rank(rows, &f), 1);
        // full rank over Q but rank 1 mod 5: [[1,2],[6,12+5]]
        let rows = vec![
            vec![f.from_i64(1), f.from_i64(2)],
            vec![f.from_i64(6), f.from_i64(17)],
        ];
        assert_eq!(rank(rows, &f), 1);
    }
}
