//! Words and sparse noncommutative polynomials over a fixed alphabet x1..xn,
//! ordered by left-to-right degree-lexicographic order with xn > .. > x1.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A monomial of the free algebra: a finite sequence of generator indices
/// in 1..=n. The empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn gen(index: usize) -> Self {
        debug_assert!(index >= 1 && index <= u8::MAX as usize);
        Word(vec![index as u8])
    }

    pub fn from_indices(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&i| i as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Rotation by `r`: moves the first `r` letters to the end.
    pub fn rotate(&self, r: usize) -> Word {
        let d = self.0.len();
        if d == 0 {
            return self.clone();
        }
        let r = r % d;
        let mut v = Vec::with_capacity(d);
        v.extend_from_slice(&self.0[r..]);
        v.extend_from_slice(&self.0[..r]);
        Word(v)
    }

    /// Lexicographically (by index sequence) smallest rotation; canonical
    /// representative of the necklace of this word.
    pub fn canonical_rotation(&self) -> Word {
        let mut best = self.clone();
        for r in 1..self.0.len() {
            let rot = self.rotate(r);
            if rot.0 < best.0 {
                best = rot;
            }
        }
        best
    }

    /// First position where `factor` occurs as a contiguous subword, if any.
    pub fn find_factor(&self, factor: &Word) -> Option<usize> {
        if factor.0.is_empty() {
            return Some(0);
        }
        if factor.0.len() > self.0.len() {
            return None;
        }
        self.0
            .windows(factor.0.len())
            .position(|w| w == factor.0.as_slice())
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|&i| i as usize).max().unwrap_or(0)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }
}

/// Left-to-right degree-lexicographic order: shorter words are smaller;
/// equal lengths compare position by position with the higher generator
/// index larger.
pub fn word_compare(u: &Word, v: &Word) -> Ordering {
    u.degree()
        .cmp(&v.degree())
        .then_with(|| u.0.cmp(&v.0))
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        word_compare(self, other)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut e = 1;
            while i + e < self.0.len() && self.0[i + e] == g {
                e += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{g}^{e}")?;
            }
            i += e;
        }
        Ok(())
    }
}

/// Sparse noncommutative polynomial: a map from words to nonzero scalars.
/// The BTreeMap is keyed by deglex order, so the last entry is the lead term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCPoly {
    pub terms: BTreeMap<Word, Scalar>,
    pub field: FieldSpec,
}

impl NCPoly {
    pub fn zero(field: FieldSpec) -> Self {
        NCPoly {
            terms: BTreeMap::new(),
            field,
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::monomial(Word::one(), field.one(), field)
    }

    pub fn monomial(w: Word, c: Scalar, field: FieldSpec) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NCPoly { terms, field }
    }

    pub fn generator(index: usize, field: FieldSpec) -> Self {
        Self::monomial(Word::gen(index), field.one(), field)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Deglex-largest term, if any.
    pub fn lead(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn lead_word(&self) -> Option<&Word> {
        self.lead().map(|(w, _)| w)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.lead_word().map(|w| w.degree())
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.min_degree(), self.max_degree()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let field = self.field;
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c, &field);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// p + c*q.
    pub fn combine(&self, q: &NCPoly, c: &Scalar) -> Result<NCPoly> {
        self.field.check_same(&q.field)?;
        let mut out = self.clone();
        for (w, a) in &q.terms {
            out.add_term(w.clone(), a.mul(c, &self.field));
        }
        Ok(out)
    }

    pub fn add(&self, q: &NCPoly) -> Result<NCPoly> {
        self.combine(q, &self.field.one())
    }

    pub fn sub(&self, q: &NCPoly) -> Result<NCPoly> {
        let minus_one = self.field.one().neg(&self.field);
        self.combine(q, &minus_one)
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero(self.field);
        }
        let mut out = NCPoly::zero(self.field);
        for (w, a) in &self.terms {
            out.terms.insert(w.clone(), a.mul(c, &self.field));
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        let mut out = NCPoly::zero(self.field);
        for (w, a) in &self.terms {
            out.terms.insert(w.clone(), a.neg(&self.field));
        }
        out
    }

    /// Free-algebra product: word product is concatenation, noncommutative.
    pub fn mul(&self, q: &NCPoly) -> Result<NCPoly> {
        self.field.check_same(&q.field)?;
        let mut out = NCPoly::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &q.terms {
                out.add_term(u.concat(v), a.mul(b, &self.field));
            }
        }
        Ok(out)
    }

    /// u * p * v for words u, v.
    pub fn sandwich(&self, u: &Word, v: &Word) -> NCPoly {
        let mut out = NCPoly::zero(self.field);
        for (w, a) in &self.terms {
            out.add_term(u.concat(w).concat(v), a.clone());
        }
        out
    }

    /// Drop all terms of degree > bound.
    pub fn truncate(&self, bound: usize) -> NCPoly {
        let mut out = NCPoly::zero(self.field);
        for (w, a) in &self.terms {
            if w.degree() <= bound {
                out.terms.insert(w.clone(), a.clone());
            }
        }
        out
    }

    /// Keep only terms of the given degree.
    pub fn homogeneous_component(&self, degree: usize) -> NCPoly {
        let mut out = NCPoly::zero(self.field);
        for (w, a) in &self.terms {
            if w.degree() == degree {
                out.terms.insert(w.clone(), a.clone());
            }
        }
        out
    }

    /// Divide by the lead coefficient so the lead term is 1.
    pub fn monic(&self) -> NCPoly {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => {
                if c.is_one() {
                    self.clone()
                } else {
                    self.scale(&c.inv(&self.field))
                }
            }
        }
    }

    pub fn max_generator_index(&self) -> usize {
        self.terms.keys().map(|w| w.max_index()).max().unwrap_or(0)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Print in decreasing deglex order, lead first.
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if w.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{c} {w}")?;
            }
        }
        Ok(())
    }
}

/// All n^d words of degree d, in increasing deglex order.
pub fn words_of_degree(n: usize, d: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = vec![1u8; d];
    loop {
        out.push(Word(cur.clone()));
        // increment little-endian at the last position w.r.t. lex order:
        // deglex on equal length is plain lex on the index sequence.
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (cur[i] as usize) < n {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 1;
                }
                break;
            }
        }
    }
}

pub fn validate_index(index: usize, n: usize) -> Result<()> {
    if index < 1 || index > n {
        return Err(Error::IndexOutOfRange { index, n });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[usize]) -> Word {
        Word::from_indices(s)
    }

    #[test]
    fn deglex_examples() {
        // degree dominates
        assert_eq!(word_compare(&w(&[2]), &w(&[1, 1])), Ordering::Less);
        // left-to-right lex with x2 > x1
        assert_eq!(word_compare(&w(&[2, 1]), &w(&[1, 2])), Ordering::Greater);
        // reflexivity
        assert_eq!(word_compare(&w(&[1, 2, 1]), &w(&[1, 2, 1])), Ordering::Equal);
    }

    #[test]
    fn words_enumeration() {
        let ws = words_of_degree(2, 3);
        assert_eq!(ws.len(), 8);
        // increasing deglex order
        for pair in ws.windows(2) {
            assert_eq!(word_compare(&pair[0], &pair[1]), Ordering::Less);
        }
        assert_eq!(words_of_degree(3, 0), vec![Word::one()]);
    }

    #[test]
    fn combine_cancellation() {
        let f = FieldSpec::Rationals;
        let p = NCPoly::generator(1, f);
        let minus_one = f.from_i64(-1);
        assert!(p.combine(&p, &minus_one).unwrap().is_zero());
        let q = NCPoly::generator(2, f);
        assert_eq!(p.combine(&q, &f.one()).unwrap().num_terms(), 2);
    }

    #[test]
    fn combine_modular_cancellation() {
        let f = FieldSpec::Prime(5);
        let p = NCPoly::generator(1, f).scale(&f.from_i64(3));
        let q = NCPoly::generator(1, f).scale(&f.from_i64(2));
        assert!(p.combine(&q, &f.one()).unwrap().is_zero());
    }

    #[test]
    fn mul_examples() {
        let f = FieldSpec::Rationals;
        let x1 = NCPoly::generator(1, f);
        let x2 = NCPoly::generator(2, f);
        let p = x1.mul(&x2).unwrap();
        assert_eq!(p.lead_word().unwrap(), &w(&[1, 2]));

        // (x1+x2)(x1-x2) expands noncommutatively into 4 terms
        let s = x1.add(&x2).unwrap();
        let d = x1.sub(&x2).unwrap();
        let prod = s.mul(&d).unwrap();
        assert_eq!(prod.num_terms(), 4);
        assert_eq!(prod.terms[&w(&[2, 1])], f.one());
        assert_eq!(prod.terms[&w(&[1, 2])], f.from_i64(-1));

        // unit law
        assert_eq!(p.mul(&NCPoly::one(f)).unwrap(), p);
        // noncommutativity
        assert_ne!(x1.mul(&x2).unwrap(), x2.mul(&x1).unwrap());
    }

    #[test]
    fn field_mismatch_rejected() {
        let p = NCPoly::generator(1, FieldSpec::Rationals);
        let q = NCPoly::generator(1, FieldSpec::Prime(5));
        assert!(p.add(&q).is_err());
        assert!(p.mul(&q).is_err());
    }

    #[test]
    fn rotations_and_factors() {
        let v = w(&[1, 2, 2, 2]);
        assert_eq!(v.rotate(1), w(&[2, 2, 2, 1]));
        assert_eq!(v.rotate(4), v);
        assert_eq!(v.canonical_rotation(), w(&[1, 2, 2, 2]));
        assert_eq!(w(&[2, 1, 2]).canonical_rotation(), w(&[1, 2, 2]));
        assert_eq!(v.find_factor(&w(&[2, 2])), Some(1));
        assert_eq!(v.find_factor(&w(&[2, 1])), None);
        assert_eq!(v.find_factor(&Word::one()), Some(0));
    }
}
