//! Degree-truncated noncommutative Groebner bases by overlap resolution,
//! normal-form reduction, normal-word enumeration, and a brute-force
//! linear-algebra oracle for graded dimensions.
//!
//! Two completion modes:
//!  * free-algebra mode: all suffix-prefix overlaps of degree <= D are
//!    resolved; for nonhomogeneous relations the counts are reliable only
//!    up to D minus the degree spread of the relations.
//!  * mod-J^j mode: arithmetic is performed modulo the ideal J^j generated
//!    by all monomials of degree > j, so the result is a complete rewriting
//!    system for I + J^j. Besides overlaps this resolves the boundary
//!    ambiguities u*g*v whose lead word leaves degree j but whose tail does
//!    not; those are what produce the genuinely new low-degree relations of
//!    truncated nonhomogeneous ideals.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::free_algebra::{words_of_degree, NCPoly, Word};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(Debug, Clone)]
pub struct GBElem {
    pub poly: NCPoly,
    pub lead: Word,
}

#[derive(Debug, Clone)]
pub struct TruncatedGB {
    pub elems: Vec<GBElem>,
    /// All overlap ambiguities of degree <= degree_bound are resolved.
    pub degree_bound: usize,
    /// Some(j): this is a complete system for I + J^j, arithmetic mod J^j.
    pub truncation: Option<usize>,
    pub homogeneous: bool,
    pub field: FieldSpec,
    pub n: usize,
}

/// Pending S-polynomial between elems i and l: the lead of i overlaps the
/// lead of l with `overlap` letters shared (suffix of lead_i = prefix of
/// lead_l). Keyed by the degree of the ambiguity word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct OverlapTask {
    degree: usize,
    left: usize,
    right: usize,
    overlap: usize,
}

struct Engine {
    elems: Vec<Option<GBElem>>,
    boundary_done: Vec<bool>,
    queue: BinaryHeap<Reverse<OverlapTask>>,
    bound: usize,
    truncation: Option<usize>,
    field: FieldSpec,
    n: usize,
}

impl Engine {
    fn live(&self) -> impl Iterator<Item = (usize, &GBElem)> {
        self.elems
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.as_ref().map(|e| (i, e)))
    }

    fn trunc(&self, p: NCPoly) -> NCPoly {
        match self.truncation {
            Some(j) => p.truncate(j),
            None => p,
        }
    }

    /// Fully reduce p against the current basis. Tie-breaking: rewrite the
    /// deglex-largest reducible term; within it the leftmost occurrence of
    /// any lead word; among elements matching there, the smallest index.
    fn reduce(&self, p: NCPoly) -> NCPoly {
        let mut p = self.trunc(p);
        loop {
            let mut target: Option<(Word, crate::field::Scalar, usize, usize)> = None;
            'terms: for (w, c) in p.terms.iter().rev() {
                let mut best: Option<(usize, usize)> = None;
                for (idx, e) in self.live() {
                    if e.lead.degree() > w.degree() {
                        continue;
                    }
                    if let Some(pos) = w.find_factor(&e.lead) {
                        if best.map_or(true, |b| (pos, idx) < b) {
                            best = Some((pos, idx));
                        }
                    }
                }
                if let Some((pos, idx)) = best {
                    target = Some((w.clone(), c.clone(), pos, idx));
                    break 'terms;
                }
            }
            let (w, c, pos, idx) = match target {
                None => return p,
                Some(t) => t,
            };
            let e = self.elems[idx].as_ref().unwrap();
            let u = w.prefix(pos);
            let v = w.suffix_from(pos + e.lead.degree());
            let sub = self.trunc(e.poly.sandwich(&u, &v)).scale(&c);
            p = p.sub(&sub).expect("same field");
            debug_assert!(!p.terms.contains_key(&w));
        }
    }

    fn overlap_limit(&self) -> usize {
        self.bound
    }

    fn enqueue_overlaps_with(&mut self, idx: usize) {
        let lead = self.elems[idx].as_ref().unwrap().lead.clone();
        let pairs: Vec<(usize, Word)> = self
            .live()
            .map(|(i, e)| (i, e.lead.clone()))
            .collect();
        for (other, olead) in pairs {
            // suffix of `lead` = prefix of `olead`
            for t in 1..lead.degree().min(olead.degree()) {
                let deg = lead.degree() + olead.degree() - t;
                if deg > self.overlap_limit() {
                    continue;
                }
                if lead.0[lead.degree() - t..] == olead.0[..t] {
                    self.queue.push(Reverse(OverlapTask {
                        degree: deg,
                        left: idx,
                        right: other,
                        overlap: t,
                    }));
                }
            }
            if other == idx {
                continue;
            }
            // suffix of `olead` = prefix of `lead`
            for t in 1..lead.degree().min(olead.degree()) {
                let deg = lead.degree() + olead.degree() - t;
                if deg > self.overlap_limit() {
                    continue;
                }
                if olead.0[olead.degree() - t..] == lead.0[..t] {
                    self.queue.push(Reverse(OverlapTask {
                        degree: deg,
                        left: other,
                        right: idx,
                        overlap: t,
                    }));
                }
            }
        }
    }

    /// Reduce h and, if nonzero, adjoin it monic, eagerly inter-reducing any
    /// existing element whose lead word contains the new lead as a factor.
    fn adjoin(&mut self, h: NCPoly) {
        let h = self.reduce(h);
        if h.is_zero() {
            return;
        }
        let h = h.monic();
        let lead = h.lead_word().unwrap().clone();
        let idx = self.elems.len();
        self.elems.push(Some(GBElem { poly: h, lead: lead.clone() }));
        self.boundary_done.push(false);
        self.enqueue_overlaps_with(idx);

        // inclusion ambiguities: displaced elements are re-reduced in place
        let displaced: Vec<usize> = self
            .live()
            .filter(|(i, e)| *i != idx && e.lead.find_factor(&lead).is_some())
            .map(|(i, _)| i)
            .collect();
        for i in displaced {
            // a recursive adjoin may already have displaced this element
            if let Some(old) = self.elems[i].take() {
                self.adjoin(old.poly);
            }
        }
    }

    fn process_queue(&mut self) {
        while let Some(Reverse(task)) = self.queue.pop() {
            let (gl, gr) = match (&self.elems[task.left], &self.elems[task.right]) {
                (Some(a), Some(b)) => (a, b),
                _ => continue,
            };
            // ambiguity word W = lead_l + lead_r[overlap..]
            // reduction via l: -rest_l * suffix ; via r: -prefix * rest_r
            let suffix = gr.lead.suffix_from(task.overlap);
            let prefix = gl.lead.prefix(gl.lead.degree() - task.overlap);
            let rest_l = gl
                .poly
                .sub(&NCPoly::monomial(gl.lead.clone(), self.field.one(), self.field))
                .expect("same field");
            let rest_r = gr
                .poly
                .sub(&NCPoly::monomial(gr.lead.clone(), self.field.one(), self.field))
                .expect("same field");
            let spoly = rest_l
                .sandwich(&Word::one(), &suffix)
                .sub(&rest_r.sandwich(&prefix, &Word::one()))
                .expect("same field");
            let spoly = self.trunc(spoly);
            self.adjoin(spoly);
        }
    }

    /// Resolve boundary ambiguities of element idx in mod-J^j mode: every
    /// u*g*v whose lead word has degree > j but whose lowest term does not.
    fn process_boundary(&mut self, idx: usize) {
        let j = match self.truncation {
            Some(j) => j,
            None => return,
        };
        let g = match &self.elems[idx] {
            Some(e) => e.poly.clone(),
            None => return,
        };
        let lead_deg = g.max_degree().unwrap();
        let min_deg = g.min_degree().unwrap();
        let lo = (j + 1).saturating_sub(lead_deg);
        if min_deg > j {
            return;
        }
        let hi = j - min_deg;
        for s in lo.max(1)..=hi {
            for a in 0..=s {
                for u in words_of_degree(self.n, a) {
                    for v in words_of_degree(self.n, s - a) {
                        let h = self.trunc(g.sandwich(&u, &v));
                        if !h.is_zero() {
                            self.adjoin(h);
                        }
                    }
                }
            }
        }
    }

    fn run(&mut self) {
        loop {
            self.process_queue();
            if self.truncation.is_some() {
                if let Some(idx) = self
                    .boundary_done
                    .iter()
                    .position(|d| !d)
                {
                    self.boundary_done[idx] = true;
                    if self.elems[idx].is_some() {
                        self.process_boundary(idx);
                    }
                    continue;
                }
            }
            break;
        }
    }

    /// Reduce every element's tail against the others and sort by lead word
    /// so identical inputs always produce identical bases.
    fn finish(mut self, homogeneous: bool) -> TruncatedGB {
        let live: Vec<usize> = self.live().map(|(i, _)| i).collect();
        for i in live {
            let e = self.elems[i].take().unwrap();
            let reduced = self.reduce(e.poly);
            // lead cannot change: the lead word is normal w.r.t. the others
            debug_assert_eq!(reduced.lead_word(), Some(&e.lead));
            self.elems[i] = Some(GBElem { poly: reduced, lead: e.lead });
        }
        let mut elems: Vec<GBElem> = self.elems.into_iter().flatten().collect();
        elems.sort_by(|a, b| a.lead.cmp(&b.lead));
        TruncatedGB {
            elems,
            degree_bound: self.bound,
            truncation: self.truncation,
            homogeneous,
            field: self.field,
            n: self.n,
        }
    }
}

fn complete(
    rels: &[NCPoly],
    n: usize,
    bound: usize,
    truncation: Option<usize>,
) -> Result<TruncatedGB> {
    let nonzero: Vec<&NCPoly> = rels.iter().filter(|r| !r.is_zero()).collect();
    let field = match nonzero.first() {
        Some(r) => r.field,
        None => {
            return Ok(TruncatedGB {
                elems: Vec::new(),
                degree_bound: bound,
                truncation,
                homogeneous: true,
                field: FieldSpec::Rationals,
                n,
            })
        }
    };
    for r in &nonzero {
        field.check_same(&r.field)?;
        if truncation.is_none() && r.max_degree().unwrap_or(0) > bound {
            return Err(Error::Precondition(format!(
                "relation degree {} exceeds bound {}",
                r.max_degree().unwrap(),
                bound
            )));
        }
    }
    let homogeneous = nonzero.iter().all(|r| r.is_homogeneous());
    let mut engine = Engine {
        elems: Vec::new(),
        boundary_done: Vec::new(),
        queue: BinaryHeap::new(),
        bound,
        truncation,
        field,
        n,
    };
    for r in nonzero {
        engine.adjoin((*r).clone());
    }
    engine.run();
    Ok(engine.finish(homogeneous))
}

/// Groebner basis of the ideal generated by `rels`, complete for all overlap
/// ambiguities of degree <= `bound`. Errors on an all-zero relation set.
pub fn truncated_groebner(rels: &[NCPoly], n: usize, bound: usize) -> Result<TruncatedGB> {
    if rels.iter().all(|r| r.is_zero()) {
        return Err(Error::Precondition("zero relation set".into()));
    }
    complete(rels, n, bound, None)
}

/// Complete rewriting system for I + J^j, where J^j is generated by all
/// monomials of degree > j. Normal words of degree <= j are a basis of the
/// truncated algebra A^(j). An empty relation set is allowed (free algebra).
pub fn truncated_groebner_mod_j(rels: &[NCPoly], n: usize, j: usize) -> Result<TruncatedGB> {
    complete(rels, n, j, Some(j))
}

impl TruncatedGB {
    /// Largest degree at which normal-word counts are reliable.
    pub fn reliable_degree(&self) -> usize {
        if let Some(j) = self.truncation {
            return j;
        }
        if self.homogeneous {
            return self.degree_bound;
        }
        let spread = self
            .elems
            .iter()
            .map(|e| e.lead.degree() - e.poly.min_degree().unwrap())
            .max()
            .unwrap_or(0);
        self.degree_bound.saturating_sub(spread)
    }

    /// Fully reduce p. Errors when a term degree exceeds the degree bound,
    /// where confluence is not guaranteed.
    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly> {
        if let Some(d) = p.max_degree() {
            if d > self.degree_bound {
                return Err(Error::DegreeOutOfRange {
                    degree: d,
                    max: self.degree_bound,
                });
            }
        }
        Ok(self.reducer().reduce(p.clone()))
    }

    fn reducer(&self) -> Engine {
        Engine {
            elems: self.elems.iter().cloned().map(Some).collect(),
            boundary_done: Vec::new(),
            queue: BinaryHeap::new(),
            bound: self.degree_bound,
            truncation: self.truncation,
            field: self.field,
            n: self.n,
        }
    }

    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.elems.iter().all(|e| w.find_factor(&e.lead).is_none())
    }

    /// All degree-j words containing no lead word as a factor, in increasing
    /// deglex order.
    pub fn normal_words(&self, j: usize) -> Result<Vec<Word>> {
        if j > self.reliable_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: j,
                max: self.reliable_degree(),
            });
        }
        Ok(words_of_degree(self.n, j)
            .into_iter()
            .filter(|w| self.is_normal_word(w))
            .collect())
    }

    pub fn normal_word_count(&self, j: usize) -> Result<u64> {
        Ok(self.normal_words(j)?.len() as u64)
    }

    /// Reduce every S-polynomial of overlap degree <= the bound and return
    /// the first that does not reduce to zero, if any. A complete basis
    /// returns None.
    pub fn confluence_violation(&self) -> Option<(usize, usize, usize)> {
        let engine = self.reducer();
        for (i, a) in self.elems.iter().enumerate() {
            for (l, b) in self.elems.iter().enumerate() {
                for t in 1..a.lead.degree().min(b.lead.degree()) {
                    let deg = a.lead.degree() + b.lead.degree() - t;
                    if deg > self.degree_bound {
                        continue;
                    }
                    if a.lead.0[a.lead.degree() - t..] != b.lead.0[..t] {
                        continue;
                    }
                    let suffix = b.lead.suffix_from(t);
                    let prefix = a.lead.prefix(a.lead.degree() - t);
                    let rest_a = a
                        .poly
                        .sub(&NCPoly::monomial(a.lead.clone(), self.field.one(), self.field))
                        .unwrap();
                    let rest_b = b
                        .poly
                        .sub(&NCPoly::monomial(b.lead.clone(), self.field.one(), self.field))
                        .unwrap();
                    let spoly = rest_a
                        .sandwich(&Word::one(), &suffix)
                        .sub(&rest_b.sandwich(&prefix, &Word::one()))
                        .unwrap();
                    if !engine.reduce(spoly).is_zero() {
                        return Some((i, l, t));
                    }
                }
            }
        }
        None
    }
}

/// Row-reduces the span of {u*r*v : deg(u r v) = d} inside the n^d word
/// space, degree by degree, entirely independent of the Groebner engine.
/// Returns dim of the quotient per degree 0..=bound. Homogeneous input only.
pub fn brute_force_graded_dims(
    rels: &[NCPoly],
    n: usize,
    bound: usize,
) -> Result<Vec<u64>> {
    const GUARD: usize = 200_000;
    let nonzero: Vec<&NCPoly> = rels.iter().filter(|r| !r.is_zero()).collect();
    for r in &nonzero {
        if !r.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
    }
    let field = nonzero.first().map(|r| r.field).unwrap_or(FieldSpec::Rationals);
    let mut dims = Vec::with_capacity(bound + 1);
    for d in 0..=bound {
        let words = words_of_degree(n, d);
        if words.len() > GUARD {
            return Err(Error::GuardExceeded(words.len(), d, GUARD));
        }
        let index: std::collections::HashMap<&Word, usize> =
            words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut rows: Vec<Vec<crate::field::Scalar>> = Vec::new();
        for r in &nonzero {
            let rd = r.max_degree().unwrap();
            if rd > d {
                continue;
            }
            for a in 0..=(d - rd) {
                let b = d - rd - a;
                for u in words_of_degree(n, a) {
                    for v in words_of_degree(n, b) {
                        let p = r.sandwich(&u, &v);
                        let mut row = vec![field.zero(); words.len()];
                        for (w, c) in &p.terms {
                            row[index[w]] = c.clone();
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let rank = crate::linalg::rank(rows, &field);
        dims.push((words.len() - rank) as u64);
    }
    Ok(dims)
}
