//! Cyclic words, the cyclicization operator, cyclic derivatives, the two
//! explicit example potentials, and seeded random sampling of potentials
//! with a prescribed degree window.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::free_algebra::{validate_index, words_of_degree, NCPoly, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// A cyclically invariant polynomial with recorded generator count and
/// degree window [k, m].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    pub poly: NCPoly,
    pub n: usize,
    pub k: usize,
    pub m: usize,
}

impl Potential {
    /// Validates cyclic invariance and the degree window k >= 3.
    pub fn new(poly: NCPoly, n: usize) -> Result<Self> {
        if poly.max_generator_index() > n {
            return Err(Error::IndexOutOfRange {
                index: poly.max_generator_index(),
                n,
            });
        }
        check_cyclic_invariance(&poly)?;
        let (k, m) = match (poly.min_degree(), poly.max_degree()) {
            (Some(k), Some(m)) => (k, m),
            _ => {
                return Err(Error::ZeroPotential);
            }
        };
        if k < 3 {
            return Err(Error::DegreeWindow(format!(
                "minimal term degree {k} < 3"
            )));
        }
        Ok(Potential { poly, n, k, m })
    }

    pub fn field(&self) -> FieldSpec {
        self.poly.field
    }

    pub fn is_homogeneous(&self) -> bool {
        self.k == self.m
    }

    /// The sequence r_1..r_n of cyclic derivatives, in generator order.
    /// Zero derivatives are kept so indices line up.
    pub fn relations(&self) -> Vec<NCPoly> {
        (1..=self.n)
            .map(|j| cyclic_derivative(self, j).expect("index in range"))
            .collect()
    }

    /// The degree-k homogeneous component as a potential with m = k.
    pub fn lowest_homogeneous_part(&self) -> Result<Potential> {
        if self.poly.is_zero() {
            return Err(Error::ZeroPotential);
        }
        let part = self.poly.homogeneous_component(self.k);
        Ok(Potential {
            poly: part,
            n: self.n,
            k: self.k,
            m: self.k,
        })
    }
}

fn check_cyclic_invariance(poly: &NCPoly) -> Result<()> {
    for (w, c) in &poly.terms {
        for r in 1..w.degree() {
            let rot = w.rotate(r);
            match poly.terms.get(&rot) {
                Some(c2) if c2 == c => {}
                _ => {
                    return Err(Error::NotCyclicallyInvariant(
                        w.to_string(),
                        rot.to_string(),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// c times the sum over all |w| rotations of w, rotations counted with
/// multiplicity for periodic words. The result is cyclically invariant.
pub fn cyclic_symmetrize(w: &Word, c: &Scalar, field: FieldSpec) -> Result<NCPoly> {
    if w.is_one() {
        return Err(Error::EmptyWord);
    }
    let mut out = NCPoly::zero(field);
    for r in 0..w.degree() {
        out.add_term(w.rotate(r), c.clone());
    }
    Ok(out)
}

/// Delete-leading-letter derivative: sum of c*u over terms c*(x_j u).
/// On cyclically symmetrized input this is the standard cyclic derivative.
pub fn cyclic_derivative(f: &Potential, j: usize) -> Result<NCPoly> {
    validate_index(j, f.n)?;
    let mut out = NCPoly::zero(f.field());
    for (w, c) in &f.poly.terms {
        if w.0.first() == Some(&(j as u8)) {
            out.add_term(w.suffix_from(1), c.clone());
        }
    }
    Ok(out)
}

/// Sum_j (x_j r_j - r_j x_j). Zero in the free algebra for every cyclically
/// invariant potential; this is the syzygy the GSV argument exploits.
pub fn key_syzygy_defect(f: &Potential) -> NCPoly {
    let field = f.field();
    let mut out = NCPoly::zero(field);
    for (j, r) in f.relations().into_iter().enumerate() {
        let xj = Word::gen(j + 1);
        for (w, c) in &r.terms {
            out.add_term(xj.concat(w), c.clone());
            out.add_term(w.concat(&xj), c.neg(&field));
        }
    }
    out
}

/// The homogeneous degree-k potential
/// sum over permutations s of {1..n-1} of (x_n^{k-n+1} x_{s(1)} .. x_{s(n-1)})
/// cyclically symmetrized with all coefficients 1, except for n = 2 where the
/// cyclic word is x1^2 x2^{k-2}.
/// Requires k >= n >= 2, k >= 3, (n,k) != (2,3).
///
/// The n = 2 case needs the square on x1: with the single cyclic word
/// x1 x2^{k-1} the relation d/dx1 is the pure power x2^{k-1}, which commutes
/// with x2 and contributes a second syzygy in degree k, so that algebra
/// misses the minimal Hilbert series (its dimensions grow like Fibonacci
/// numbers for k = 4). The word x1^2 x2^{k-2} has mixed relations whose
/// two-element Groebner basis is confluent with lead words x2^2 x1 and
/// x2 x1^2 (for k = 4), and the minimal series is attained.
pub fn example_potential_kgen(n: usize, k: usize, field: FieldSpec) -> Result<Potential> {
    if !(k >= n && n >= 2 && k >= 3) || (n, k) == (2, 3) {
        return Err(Error::Precondition(format!(
            "example_potential_kgen needs k >= n >= 2, k >= 3, (n,k) != (2,3); got ({n},{k})"
        )));
    }
    let one = field.one();
    if n == 2 {
        let mut letters = vec![1, 1];
        letters.extend(std::iter::repeat(2).take(k - 2));
        let w = Word::from_indices(&letters);
        return Potential::new(cyclic_symmetrize(&w, &one, field)?, 2);
    }
    let mut poly = NCPoly::zero(field);
    let mut perm: Vec<usize> = (1..n).collect();
    loop {
        let mut letters = vec![n; k - n + 1];
        letters.extend_from_slice(&perm);
        let w = Word::from_indices(&letters);
        let sym = cyclic_symmetrize(&w, &one, field)?;
        poly = poly.add(&sym)?;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Potential::new(poly, n)
}

/// The homogeneous degree-k potential of the n > k case:
/// (x_n x_{n-1} .. x_{n-k+1}) cyclicized, plus for each j != n-k+1 in 1..n-1
/// the cyclicization of x_j x_n m_j, where the m_j are the top degree-(k-2)
/// square-free-in-each-letter monomials in x_1..x_{n-1}. The biggest,
/// x_{n-1}..x_{n-k+2}, is pinned to index n-k+1 and therefore skipped; the
/// remaining top monomials are assigned to the other indices j in increasing
/// j order, in decreasing deglex order.
pub fn example_potential_ngtk(n: usize, k: usize, field: FieldSpec) -> Result<Potential> {
    if !(n > k && k >= 3) {
        return Err(Error::Precondition(format!(
            "example_potential_ngtk needs n > k >= 3; got ({n},{k})"
        )));
    }
    let one = field.one();
    let mut poly = NCPoly::zero(field);

    let mut letters: Vec<usize> = (n - k + 1..=n).rev().collect();
    poly = poly.add(&cyclic_symmetrize(&Word::from_indices(&letters), &one, field)?)?;

    // Top n-1 monomials of M in decreasing deglex order. The largest is
    // x_{n-1} x_{n-2} .. x_{n-k+2}, reserved for index n-k+1.
    let monomials = top_multilinear_monomials(n - 1, k - 2, n - 1);
    let indices: Vec<usize> = (1..n).filter(|&j| j != n - k + 1).collect();
    for (j, m) in indices.into_iter().zip(monomials.into_iter().skip(1)) {
        letters = vec![j, n];
        letters.extend(m.0.iter().map(|&i| i as usize));
        poly = poly.add(&cyclic_symmetrize(&Word::from_indices(&letters), &one, field)?)?;
    }
    Potential::new(poly, n)
}

/// The `count` deglex-largest degree-d monomials in x_1..x_max in which each
/// letter features at most once, listed in decreasing deglex order.
fn top_multilinear_monomials(max: usize, d: usize, count: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    // Depth-first in decreasing lex order yields decreasing deglex order
    // (all candidates share degree d).
    while let Some(cur) = stack.pop() {
        if cur.len() == d {
            out.push(Word::from_indices(&cur));
            if out.len() == count {
                break;
            }
            continue;
        }
        let mut next: Vec<usize> = (1..=max).filter(|i| !cur.contains(i)).collect();
        next.sort_unstable();
        // push smallest first so the largest is popped first
        for i in next {
            let mut ext = cur.clone();
            ext.push(i);
            stack.push(ext);
        }
    }
    out
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Uniform random potential in P_{n,k}^(m): one independent uniform
/// coefficient per necklace of degree in [k, m], then cyclic symmetrization.
/// Deterministic for a fixed seed (ChaCha12 keyed by the seed).
pub fn random_potential(
    n: usize,
    k: usize,
    m: usize,
    field: FieldSpec,
    seed: u64,
) -> Result<Potential> {
    let p = match field {
        FieldSpec::Prime(p) => p,
        FieldSpec::Rationals => return Err(Error::NeedPrimeField),
    };
    if !(n >= 2 && k >= 3 && m >= k) {
        return Err(Error::Precondition(format!(
            "random_potential needs n >= 2, m >= k >= 3; got ({n},{k},{m})"
        )));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut poly = NCPoly::zero(field);
    for d in k..=m {
        for w in words_of_degree(n, d) {
            // draw once per necklace, at its canonical representative
            if w.canonical_rotation() == w {
                let c = Scalar::Fp(rng.gen_range(0..p));
                if !c.is_zero() {
                    poly = poly.add(&cyclic_symmetrize(&w, &c, field)?)?;
                }
            }
        }
    }
    // A draw of all zeros is possible in principle; surface it honestly.
    Potential::new(poly, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: FieldSpec = FieldSpec::Rationals;

    fn w(s: &[usize]) -> Word {
        Word::from_indices(s)
    }

    #[test]
    fn symmetrize_two_rotations() {
        let p = cyclic_symmetrize(&w(&[1, 2]), &F.one(), F).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.terms[&w(&[1, 2])], F.one());
        assert_eq!(p.terms[&w(&[2, 1])], F.one());
    }

    #[test]
    fn symmetrize_periodic_multiplicity() {
        let p = cyclic_symmetrize(&w(&[1, 1]), &F.one(), F).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.terms[&w(&[1, 1])], F.from_i64(2));
    }

    #[test]
    fn symmetrize_four_rotations() {
        let p = cyclic_symmetrize(&w(&[1, 2, 2, 2]), &F.one(), F).unwrap();
        let expected = [
            w(&[1, 2, 2, 2]),
            w(&[2, 1, 2, 2]),
            w(&[2, 2, 1, 2]),
            w(&[2, 2, 2, 1]),
        ];
        assert_eq!(p.num_terms(), 4);
        for e in expected {
            assert_eq!(p.terms[&e], F.one());
        }
    }

    #[test]
    fn symmetrize_empty_word_rejected() {
        assert!(cyclic_symmetrize(&Word::one(), &F.one(), F).is_err());
    }

    fn pot_x1x2cubed() -> Potential {
        let poly = cyclic_symmetrize(&w(&[1, 2, 2, 2]), &F.one(), F).unwrap();
        Potential::new(poly, 2).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let f = pot_x1x2cubed();
        let r1 = cyclic_derivative(&f, 1).unwrap();
        assert_eq!(r1, NCPoly::monomial(w(&[2, 2, 2]), F.one(), F));

        let r2 = cyclic_derivative(&f, 2).unwrap();
        assert_eq!(r2.num_terms(), 3);
        for e in [w(&[1, 2, 2]), w(&[2, 1, 2]), w(&[2, 2, 1])] {
            assert_eq!(r2.terms[&e], F.one());
        }

        // x2 absent from 2*x1^2... not a valid potential (k=2), so use a
        // degree-3 analogue: (x1^3)~ has zero x2-derivative.
        let g = Potential::new(cyclic_symmetrize(&w(&[1, 1, 1]), &F.one(), F).unwrap(), 2).unwrap();
        assert!(cyclic_derivative(&g, 2).unwrap().is_zero());
        assert!(cyclic_derivative(&g, 3).is_err());
    }

    #[test]
    fn euler_identities() {
        // sum_j x_j d_j F = F = sum_j d_j F x_j
        for f in [
            pot_x1x2cubed(),
            example_potential_kgen(3, 3, F).unwrap(),
            example_potential_ngtk(4, 3, F).unwrap(),
        ] {
            let mut left = NCPoly::zero(F);
            let mut right = NCPoly::zero(F);
            for (j, r) in f.relations().into_iter().enumerate() {
                let xj = NCPoly::generator(j + 1, F);
                left = left.add(&xj.mul(&r).unwrap()).unwrap();
                right = right.add(&r.mul(&xj).unwrap()).unwrap();
            }
            assert_eq!(left, f.poly);
            assert_eq!(right, f.poly);
        }
    }

    #[test]
    fn syzygy_defect_vanishes() {
        assert!(key_syzygy_defect(&pot_x1x2cubed()).is_zero());
        assert!(key_syzygy_defect(&example_potential_kgen(3, 3, F).unwrap()).is_zero());
    }

    #[test]
    fn kgen_examples() {
        let f = example_potential_kgen(2, 4, F).unwrap();
        assert_eq!(f.poly.num_terms(), 4);
        assert_eq!((f.k, f.m), (4, 4));
        let expected = cyclic_symmetrize(&w(&[1, 1, 2, 2]), &F.one(), F).unwrap();
        assert_eq!(f.poly, expected);

        let g = example_potential_kgen(3, 3, F).unwrap();
        assert_eq!(g.poly.num_terms(), 6);
        assert_eq!(g.poly.terms[&w(&[3, 1, 2])], F.one());
        assert_eq!(g.poly.terms[&w(&[3, 2, 1])], F.one());

        assert!(example_potential_kgen(2, 3, F).is_err());
    }

    #[test]
    fn ngtk_examples() {
        // (4,3): m2 = x3 reserved, m1 = x2, m3 = x1
        let f = example_potential_ngtk(4, 3, F).unwrap();
        let mut expected = cyclic_symmetrize(&w(&[4, 3, 2]), &F.one(), F).unwrap();
        expected = expected
            .add(&cyclic_symmetrize(&w(&[1, 4, 2]), &F.one(), F).unwrap())
            .unwrap();
        expected = expected
            .add(&cyclic_symmetrize(&w(&[3, 4, 1]), &F.one(), F).unwrap())
            .unwrap();
        assert_eq!(f.poly, expected);

        // (5,3): the reserved monomial m3 = x4 makes x3 x5 m3 a rotation of
        // the leading cyclic word x5 x4 x3, so it appears exactly once.
        let g = example_potential_ngtk(5, 3, F).unwrap();
        assert_eq!(g.poly.terms[&w(&[3, 5, 4])], F.one());
        // m1 = x3 (largest unreserved): term x1 x5 x3 present
        assert!(g.poly.terms.contains_key(&w(&[1, 5, 3])));
        // 4 cyclic words, 3 distinct rotations each
        assert_eq!(g.poly.num_terms(), 12);

        assert!(example_potential_ngtk(3, 3, F).is_err());
    }

    #[test]
    fn random_potential_basics() {
        let fp = FieldSpec::Prime(65521);
        let f = random_potential(2, 4, 4, fp, 7).unwrap();
        // supported on at most 6 necklaces of degree 4 in two letters
        let necklaces: std::collections::BTreeSet<Word> = f
            .poly
            .terms
            .keys()
            .map(|w| w.canonical_rotation())
            .collect();
        assert!(necklaces.len() <= 6);
        assert!(f.is_homogeneous());

        let g = random_potential(2, 4, 5, fp, 7).unwrap();
        assert_eq!((g.k, g.m), (4, 5));
        for t in g.poly.terms.keys() {
            assert!(t.degree() == 4 || t.degree() == 5);
        }

        // determinism
        let g2 = random_potential(2, 4, 5, fp, 7).unwrap();
        assert_eq!(g, g2);

        // sampling over the rationals is undefined
        assert!(random_potential(2, 4, 4, F, 7).is_err());
    }

    #[test]
    fn lowest_part() {
        let fp = FieldSpec::Prime(65521);
        let f = random_potential(2, 4, 6, fp, 42).unwrap();
        let low = f.lowest_homogeneous_part().unwrap();
        assert_eq!((low.k, low.m), (4, 4));
        let homog = example_potential_kgen(2, 4, F).unwrap();
        assert_eq!(homog.lowest_homogeneous_part().unwrap(), homog);
    }

    #[test]
    fn non_invariant_rejected() {
        let p = NCPoly::monomial(w(&[1, 2, 2]), F.one(), F);
        assert!(Potential::new(p, 2).is_err());
    }

    #[test]
    fn low_degree_window_rejected() {
        let p = cyclic_symmetrize(&w(&[1, 2]), &F.one(), F).unwrap();
        assert!(matches!(
            Potential::new(p, 2),
            Err(Error::DegreeWindow(_))
        ));
    }
}
