//! Noncommutative polynomials: finitely supported coefficient functions
//! from words to GF(p), plus the small combinatorial helpers (binomials,
//! factorials, rising factorials) used throughout.

use std::collections::BTreeMap;

use crate::freealg::word::{Alphabet, Word};
use crate::gfp::Fp;

/// Element of the free algebra over GF(p): a map from words to nonzero
/// coefficients. Zero coefficients are never stored, so equality is
/// structural and the leading word is the last key in `BTreeMap` order
/// (words order by deglex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcPoly {
    field: Fp,
    terms: BTreeMap<Word, u64>,
}

impl NcPoly {
    pub fn zero(field: Fp) -> Self {
        NcPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Fp) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: Fp, c: u64) -> Self {
        Self::monomial(field, Word::empty(), c)
    }

    pub fn monomial(field: Fp, word: Word, c: u64) -> Self {
        let mut p = Self::zero(field);
        p.add_term(word, c);
        p
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, u64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coeff(&self, w: &Word) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Leading (deglex-largest) term.
    pub fn leading(&self) -> Option<(&Word, u64)> {
        self.terms.iter().next_back().map(|(w, &c)| (w, c))
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.degree())
    }

    /// Image under the augmentation sending every generator to 0.
    pub fn augmentation(&self) -> u64 {
        self.coeff(&Word::empty())
    }

    /// Adds `c * w`, dropping the entry if the coefficient cancels.
    pub fn add_term(&mut self, word: Word, c: u64) {
        let c = c % self.field.modulus();
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        self.check_field(other);
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NcPoly {
        let mut out = NcPoly::zero(self.field);
        for (w, c) in self.terms() {
            out.add_term(w.clone(), self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: u64) -> NcPoly {
        let mut out = NcPoly::zero(self.field);
        for (w, k) in self.terms() {
            out.add_term(w.clone(), self.field.mul(k, c));
        }
        out
    }

    /// Free-algebra product: bilinear extension of word concatenation.
    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        self.check_field(other);
        let mut out = NcPoly::zero(self.field);
        for (wa, ca) in self.terms() {
            for (wb, cb) in other.terms() {
                out.add_term(wa.concat(wb), self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> NcPoly {
        let mut out = NcPoly::one(self.field);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Transports the polynomial to another alphabet via a letter map.
    pub fn reindex(&self, letter_map: &[u8]) -> NcPoly {
        let mut out = NcPoly::zero(self.field);
        for (w, c) in self.terms() {
            let mapped: Vec<u8> = w.letters().iter().map(|&l| letter_map[l as usize]).collect();
            out.add_term(Word::from_letters(&mapped), c);
        }
        out
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        // leading term first
        let mut parts: Vec<String> = Vec::new();
        for (w, c) in self.terms.iter().rev() {
            let body = if w.is_empty() {
                format!("{}", c)
            } else if *c == 1 {
                w.display(alphabet)
            } else {
                format!("{}*{}", c, w.display(alphabet))
            };
            parts.push(body);
        }
        parts.join(" + ")
    }

    fn check_field(&self, other: &NcPoly) {
        assert_eq!(
            self.field.modulus(),
            other.field.modulus(),
            "mixed characteristics: GF({}) vs GF({})",
            self.field.modulus(),
            other.field.modulus()
        );
    }
}

/// Binomial coefficient C(n, k) reduced mod p. Computed exactly as an
/// integer first; every use here has n small enough to fit u128.
pub fn binomial_mod(field: Fp, n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    for i in 0..k {
        num = num * (n - i) as u128 / (i + 1) as u128;
    }
    (num % field.modulus() as u128) as u64
}

/// n! mod p (zero as soon as n >= p).
pub fn factorial_mod(field: Fp, n: u64) -> u64 {
    let mut acc = 1u64;
    for i in 2..=n {
        acc = field.mul(acc, i % field.modulus());
        if acc == 0 {
            break;
        }
    }
    acc
}

/// Rising factorial l(l+1)(l+2)...(l+t-1) mod p, with the empty product 1
/// when t = 0. `l` may be any integer.
pub fn rising(field: Fp, l: i64, t: u32) -> u64 {
    let mut acc = 1u64;
    for k in 0..t as i64 {
        acc = field.mul(acc, field.reduce(l + k));
        if acc == 0 {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Fp {
        Fp::new(p).unwrap()
    }

    fn w(letters: &[u8]) -> Word {
        Word::from_letters(letters)
    }

    #[test]
    fn rising_examples() {
        assert_eq!(rising(f(5), 4, 0), 1);
        assert_eq!(rising(f(3), 0, 2), 0); // factor 0
        assert_eq!(rising(f(5), 2, 2), 1); // 2*3 = 6 = 1 mod 5
        assert_eq!(rising(f(3), -1, 3), 0); // crosses 0
    }

    #[test]
    fn rising_binomial_convolution() {
        // [l1+l2+1]^[t] = sum_k C(t,k) [l1]^[k] [l2+1]^[t-k]
        for p in [3u64, 5, 7] {
            let field = f(p);
            let bound = 2 * p as i64;
            for l1 in 0..=bound {
                for l2 in 0..=bound {
                    for t in 0..=(2 * p) as u32 {
                        let lhs = rising(field, l1 + l2 + 1, t);
                        let mut rhs = 0u64;
                        for k in 0..=t {
                            let c = binomial_mod(field, t as u64, k as u64);
                            let term = field.mul(
                                field.mul(c, rising(field, l1, k)),
                                rising(field, l2 + 1, t - k),
                            );
                            rhs = field.add(rhs, term);
                        }
                        assert_eq!(lhs, rhs, "p={} l1={} l2={} t={}", p, l1, l2, t);
                    }
                }
            }
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial_mod(f(7), 4, 2), 6);
        assert_eq!(binomial_mod(f(3), 4, 2), 0);
        assert_eq!(binomial_mod(f(5), 3, 5), 0);
        assert_eq!(binomial_mod(f(5), 9, 0), 1);
    }

    #[test]
    fn monomial_product_concatenates() {
        let field = f(5);
        let x = NcPoly::monomial(field, w(&[0]), 1);
        let y = NcPoly::monomial(field, w(&[1]), 1);
        let xy = x.mul(&y);
        assert_eq!(xy.coeff(&w(&[0, 1])), 1);
        assert_eq!(xy.num_terms(), 1);
    }

    #[test]
    fn product_distributes() {
        let field = f(5);
        let x = NcPoly::monomial(field, w(&[0]), 1);
        let y = NcPoly::monomial(field, w(&[1]), 1);
        let sum = x.add(&y);
        let prod = sum.mul(&x); // (x+y)*x = x^2 + yx
        assert_eq!(prod.coeff(&w(&[0, 0])), 1);
        assert_eq!(prod.coeff(&w(&[1, 0])), 1);
        assert_eq!(prod.num_terms(), 2);
    }

    #[test]
    fn coefficients_reduce_mod_p() {
        let field = f(3);
        let a = NcPoly::monomial(field, w(&[0]), 2);
        let b = NcPoly::monomial(field, w(&[1]), 2);
        let ab = a.mul(&b); // 4 = 1 mod 3
        assert_eq!(ab.coeff(&w(&[0, 1])), 1);
    }

    #[test]
    fn cancellation_removes_entries() {
        let field = f(3);
        let a = NcPoly::monomial(field, w(&[0]), 1);
        let b = a.neg();
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn augmentation_reads_constant_term() {
        let field = f(7);
        let mut p = NcPoly::constant(field, 4);
        p.add_term(w(&[1]), 2);
        assert_eq!(p.augmentation(), 4);
        assert_eq!(NcPoly::zero(field).augmentation(), 0);
    }
}
