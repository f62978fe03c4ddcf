//! Randomized structural properties of the word order, free-algebra
//! arithmetic, cyclicization and the parser.

use potalg::free_algebra::{words_of_degree, NCPoly, Word};
use potalg::hilbert::{check_gsv_inequality, gsv_bound_coeffs, truncation_dims};
use potalg::parser::{format_potential, parse_potential};
use potalg::potential::{cyclic_symmetrize, key_syzygy_defect, random_potential};
use potalg::{FieldSpec, Potential};
use proptest::prelude::*;

const Q: FieldSpec = FieldSpec::Rationals;
const FP: FieldSpec = FieldSpec::Prime(65521);

fn word_strategy(n: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 1..=max_len).prop_map(Word)
}

fn poly_strategy(n: u8, max_len: usize, terms: usize) -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((word_strategy(n, max_len), -5i64..=5), 1..=terms).prop_map(|ts| {
        let mut p = NCPoly::zero(Q);
        for (w, c) in ts {
            p.add_term(w, Q.from_i64(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deglex_respects_concatenation(
        u in word_strategy(3, 5),
        v in word_strategy(3, 5),
        w in word_strategy(3, 4),
    ) {
        let ord = u.cmp(&v);
        prop_assume!(u.degree() == v.degree());
        prop_assert_eq!(u.concat(&w).cmp(&v.concat(&w)), ord);
        prop_assert_eq!(w.concat(&u).cmp(&w.concat(&v)), ord);
    }

    #[test]
    fn deglex_shorter_is_smaller(u in word_strategy(3, 4), v in word_strategy(3, 4)) {
        prop_assume!(u.degree() < v.degree());
        prop_assert!(u < v);
    }

    #[test]
    fn multiplication_associative(
        a in poly_strategy(3, 3, 3),
        b in poly_strategy(3, 3, 3),
        c in poly_strategy(3, 3, 3),
    ) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_distributes(
        a in poly_strategy(3, 3, 3),
        b in poly_strategy(3, 3, 3),
        c in poly_strategy(3, 3, 3),
    ) {
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn no_zero_coefficients_survive(a in poly_strategy(3, 3, 4), b in poly_strategy(3, 3, 4)) {
        for p in [a.add(&b).unwrap(), a.sub(&b).unwrap(), a.mul(&b).unwrap()] {
            prop_assert!(p.terms.values().all(|c| !c.is_zero()));
        }
    }

    #[test]
    fn lead_of_product_is_product_of_leads(
        a in poly_strategy(3, 3, 3),
        b in poly_strategy(3, 3, 3),
    ) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let prod = a.mul(&b).unwrap();
        let (wa, _) = a.lead().unwrap();
        let (wb, _) = b.lead().unwrap();
        let (wp, _) = prod.lead().unwrap();
        prop_assert_eq!(wp.clone(), wa.concat(wb));
    }

    #[test]
    fn cyclic_symmetrize_is_rotation_invariant(w in word_strategy(3, 6)) {
        let p = cyclic_symmetrize(&w, &Q.one(), Q).unwrap();
        for (word, c) in &p.terms {
            for r in 1..word.degree() {
                prop_assert_eq!(p.terms.get(&word.rotate(r)).unwrap(), c);
            }
        }
    }

    #[test]
    fn symmetrized_word_total_multiplicity(w in word_strategy(2, 6)) {
        // coefficients of the symmetrization sum to |w|
        let p = cyclic_symmetrize(&w, &Q.one(), Q).unwrap();
        let mut total = Q.zero();
        for c in p.terms.values() {
            total = total.add(c, &Q);
        }
        prop_assert_eq!(total, Q.from_i64(w.degree() as i64));
    }

    #[test]
    fn key_syzygy_vanishes_for_random_potentials(seed in 0u64..1000) {
        let f = random_potential(2, 4, 5, FP, seed).unwrap();
        prop_assert!(key_syzygy_defect(&f).is_zero());
        let g = random_potential(3, 3, 4, FP, seed).unwrap();
        prop_assert!(key_syzygy_defect(&g).is_zero());
    }

    #[test]
    fn parser_roundtrip(seed in 0u64..1000) {
        let f = random_potential(2, 4, 5, FP, seed).unwrap();
        let text = format_potential(&f);
        let g = parse_potential(&text, FP, None).unwrap();
        prop_assert_eq!(f, g);
    }

    #[test]
    fn truncation_dims_dominate_gsv_bound(seed in 0u64..200) {
        let f = random_potential(2, 4, 4, FP, seed).unwrap();
        let dims = truncation_dims(&f, 6).unwrap();
        prop_assert_eq!(check_gsv_inequality(&dims, 2, 4).unwrap(), None);
        let bound = gsv_bound_coeffs(2, 4, 6).unwrap();
        for (a, b) in dims.coeffs.iter().zip(bound.coeffs.iter()) {
            prop_assert!(a >= b);
        }
    }

    #[test]
    fn symmetrized_monomials_are_valid_potentials(w in word_strategy(3, 6)) {
        prop_assume!(w.degree() >= 3);
        let p = cyclic_symmetrize(&w, &Q.one(), Q).unwrap();
        let f = Potential::new(p, 3).unwrap();
        prop_assert_eq!(f.k, w.degree());
        prop_assert_eq!(f.m, w.degree());
        prop_assert!(key_syzygy_defect(&f).is_zero());
    }
}

#[test]
fn words_of_degree_sorted_and_complete() {
    let ws = words_of_degree(3, 3);
    assert_eq!(ws.len(), 27);
    for pair in ws.windows(2) {
        assert!(pair[0] < pair[1]);
    }
}
