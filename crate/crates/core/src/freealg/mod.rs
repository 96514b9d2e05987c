//! Words over an ordered alphabet, the degree-lexicographic order,
//! noncommutative polynomials over GF(p), and the relation-expression parser.

mod parse;
mod poly;
mod word;

pub use parse::{parse_poly, ParseError};
pub use poly::{binomial_mod, factorial_mod, rising, NcPoly};
pub use word::{cmp_deglex, Alphabet, AlphabetError, Word};

#[cfg(test)]
mod prop_tests {
    use super::*;
    use crate::gfp::Fp;
    use proptest::prelude::*;
    use std::cmp::Ordering;

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0u8..3, 0..=max_len).prop_map(|v| Word::from_letters(&v))
    }

    fn arb_poly(max_terms: usize) -> impl Strategy<Value = NcPoly> {
        let field = Fp::new(5).unwrap();
        prop::collection::vec((arb_word(3), 0u64..5), 0..=max_terms).prop_map(move |terms| {
            let mut p = NcPoly::zero(field);
            for (w, c) in terms {
                p.add_term(w, c);
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn deglex_total_order(a in arb_word(6), b in arb_word(6), c in arb_word(6)) {
            // antisymmetry
            prop_assert_eq!(cmp_deglex(&a, &b), cmp_deglex(&b, &a).reverse());
            // totality: equal comparison iff equal words
            prop_assert_eq!(cmp_deglex(&a, &b) == Ordering::Equal, a == b);
            // transitivity
            if cmp_deglex(&a, &b) != Ordering::Greater && cmp_deglex(&b, &c) != Ordering::Greater {
                prop_assert_ne!(cmp_deglex(&a, &c), Ordering::Greater);
            }
        }

        #[test]
        fn product_associative_and_unital(a in arb_poly(4), b in arb_poly(4), c in arb_poly(4)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            let one = NcPoly::one(a.field());
            prop_assert_eq!(a.mul(&one), a.clone());
            prop_assert_eq!(one.mul(&a), a);
        }

        #[test]
        fn product_leading_word_concatenates(a in arb_word(5), b in arb_word(5)) {
            let field = Fp::new(5).unwrap();
            let pa = NcPoly::monomial(field, a.clone(), 2);
            let pb = NcPoly::monomial(field, b.clone(), 3);
            let (lead, c) = pa.mul(&pb).leading().map(|(w, c)| (w.clone(), c)).unwrap();
            prop_assert_eq!(lead, a.concat(&b));
            prop_assert_eq!(c, 1); // 6 mod 5
        }
    }
}
