//! Finitely presented augmented algebras: completion of a relation set to a
//! confluent rewriting system (tips with normal tails), normal-form
//! reduction, and enumeration of the normal-word basis with a
//! finite-dimensionality certificate.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::freealg::{Alphabet, NcPoly, Word};
use crate::gfp::Fp;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("relation {0} has a nonzero constant term; the augmentation is not well-defined")]
    ConstantTerm(usize),
}

#[derive(Debug, Error, Clone)]
pub enum CompleteError {
    #[error(
        "completion inconclusive at degree cap {degree_cap}: {reason} \
         (partial system has {} rules)",
        partial_rules.len()
    )]
    Inconclusive {
        degree_cap: usize,
        reason: String,
        partial_rules: Vec<Rule>,
    },
}

/// Ordered generators, characteristic, and a list of relations (each read as
/// `relation = 0`). The augmentation sends every generator to 0, which is
/// well-defined exactly when every relation has zero constant term.
#[derive(Debug, Clone)]
pub struct Presentation {
    alphabet: Alphabet,
    field: Fp,
    relations: Vec<NcPoly>,
}

impl Presentation {
    pub fn new(
        alphabet: Alphabet,
        field: Fp,
        relations: Vec<NcPoly>,
    ) -> Result<Self, PresentationError> {
        for (i, r) in relations.iter().enumerate() {
            if r.is_zero() {
                return Err(PresentationError::ZeroRelation(i));
            }
            if r.augmentation() != 0 {
                return Err(PresentationError::ConstantTerm(i));
            }
        }
        Ok(Presentation {
            alphabet,
            field,
            relations,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn max_relation_degree(&self) -> usize {
        self.relations
            .iter()
            .filter_map(|r| r.degree())
            .max()
            .unwrap_or(0)
    }

    /// Default completion cap: three times the maximum relation degree.
    pub fn default_degree_cap(&self) -> usize {
        3 * self.max_relation_degree()
    }
}

/// One rewrite rule: `tip -> tail` where the tail is supported on words
/// strictly smaller than the tip.
#[derive(Debug, Clone)]
pub struct Rule {
    tip: Word,
    tail: NcPoly,
}

impl Rule {
    pub fn tip(&self) -> &Word {
        &self.tip
    }

    pub fn tail(&self) -> &NcPoly {
        &self.tail
    }

    /// The relation polynomial `tip - tail`.
    fn relation(&self, field: Fp) -> NcPoly {
        NcPoly::monomial(field, self.tip.clone(), 1).sub(&self.tail)
    }
}

fn rule_from_poly(field: Fp, nf: &NcPoly) -> Rule {
    let (tip, c) = nf.leading().map(|(w, c)| (w.clone(), c)).unwrap();
    let inv_c = field.inv(c).expect("leading coefficient nonzero");
    let mut tail = NcPoly::zero(field);
    for (w, cw) in nf.terms() {
        if *w != tip {
            tail.add_term(w.clone(), field.neg(field.mul(cw, inv_c)));
        }
    }
    Rule { tip, tail }
}

/// Rewrites the leftmost occurrence of the deglex-largest tip occurring in
/// `w`; `None` when `w` is normal. Rules must be sorted ascending by tip.
fn find_reduction(rules: &[Rule], w: &Word) -> Option<(usize, usize)> {
    for (idx, rule) in rules.iter().enumerate().rev() {
        let occ = w.occurrences(&rule.tip);
        if let Some(&pos) = occ.first() {
            return Some((pos, idx));
        }
    }
    None
}

fn reduce_poly(field: Fp, rules: &[Rule], f: &NcPoly) -> NcPoly {
    let mut result = NcPoly::zero(field);
    let mut pending: BTreeMap<Word, u64> = BTreeMap::new();
    for (w, c) in f.terms() {
        pending.insert(w.clone(), c);
    }
    while let Some((w, c)) = pending.pop_last() {
        match find_reduction(rules, &w) {
            None => result.add_term(w, c),
            Some((pos, idx)) => {
                let rule = &rules[idx];
                let prefix = w.slice(0, pos);
                let suffix = w.slice(pos + rule.tip.degree(), w.degree());
                for (t, tc) in rule.tail.terms() {
                    let nw = prefix.concat(t).concat(&suffix);
                    let add = field.mul(c, tc);
                    match pending.entry(nw) {
                        std::collections::btree_map::Entry::Vacant(v) => {
                            if add != 0 {
                                v.insert(add);
                            }
                        }
                        std::collections::btree_map::Entry::Occupied(mut o) => {
                            let s = field.add(*o.get(), add);
                            if s == 0 {
                                o.remove();
                            } else {
                                *o.get_mut() = s;
                            }
                        }
                    }
                }
            }
        }
    }
    result
}

/// S-polynomials of the proper overlaps suffix(t1) = prefix(t2). Overlap
/// words beyond the degree cap are counted in `skipped` instead.
fn overlap_spolys(
    field: Fp,
    r1: &Rule,
    r2: &Rule,
    degree_cap: usize,
    skipped: &mut usize,
) -> Vec<NcPoly> {
    let t1 = &r1.tip;
    let t2 = &r2.tip;
    let mut out = Vec::new();
    let max_k = t1.degree().min(t2.degree());
    for k in 1..max_k {
        let suffix = t1.slice(t1.degree() - k, t1.degree());
        let prefix = t2.slice(0, k);
        if suffix != prefix {
            continue;
        }
        let overlap_degree = t1.degree() + t2.degree() - k;
        if overlap_degree > degree_cap {
            *skipped += 1;
            continue;
        }
        let a = t1.slice(0, t1.degree() - k); // t1 = a . c
        let b = t2.slice(k, t2.degree()); // t2 = c . b
        let left = r1.tail.mul(&NcPoly::monomial(field, b, 1));
        let right = NcPoly::monomial(field, a, 1).mul(&r2.tail);
        out.push(left.sub(&right));
    }
    out
}

/// A completed, certified-finite-dimensional rewriting system.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    field: Fp,
    rules: Vec<Rule>,
    tips: Vec<Word>,
    proper_prefixes: Vec<Word>,
    normal_basis: Vec<Word>,
}

impl RewriteSystem {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// The tip set, deglex-sorted.
    pub fn tips(&self) -> &[Word] {
        &self.tips
    }

    /// All proper prefixes of tips, deglex-sorted and deduplicated.
    pub fn proper_prefixes(&self) -> &[Word] {
        &self.proper_prefixes
    }

    /// The deglex-sorted normal-word basis of the quotient algebra.
    pub fn normal_words(&self) -> &[Word] {
        &self.normal_basis
    }

    pub fn dim(&self) -> usize {
        self.normal_basis.len()
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.rules
            .iter()
            .all(|r| w.occurrences(&r.tip).is_empty())
    }

    /// Every (position, tip index) occurrence of a tip inside `w`.
    pub fn tip_occurrences(&self, w: &Word) -> Vec<(usize, usize)> {
        let mut occ = Vec::new();
        for (idx, rule) in self.rules.iter().enumerate() {
            for pos in w.occurrences(&rule.tip) {
                occ.push((pos, idx));
            }
        }
        occ.sort_unstable();
        occ
    }

    /// Fully reduced representative of `f` modulo the ideal; supported on
    /// normal words only, idempotent.
    pub fn normal_form(&self, f: &NcPoly) -> NcPoly {
        reduce_poly(self.field, &self.rules, f)
    }

    pub fn normal_form_word(&self, w: &Word) -> NcPoly {
        self.normal_form(&NcPoly::monomial(self.field, w.clone(), 1))
    }
}

/// Overlap completion. Resolves all overlap ambiguities among tips whose
/// overlap words stay within `degree_cap`, then certifies the quotient
/// finite-dimensional by enumerating normal words until a degree with none.
pub fn complete(pres: &Presentation, degree_cap: usize) -> Result<RewriteSystem, CompleteError> {
    let field = pres.field();
    let mut rules: Vec<Rule> = Vec::new();
    let mut queue: VecDeque<NcPoly> = pres.relations().iter().cloned().collect();
    let mut skipped = 0usize;

    while let Some(f) = queue.pop_front() {
        let nf = reduce_poly(field, &rules, &f);
        if nf.is_zero() {
            continue;
        }
        if nf.degree().unwrap() > degree_cap {
            return Err(CompleteError::Inconclusive {
                degree_cap,
                reason: format!(
                    "a derived rule has leading degree {} above the cap",
                    nf.degree().unwrap()
                ),
                partial_rules: rules,
            });
        }
        let rule = rule_from_poly(field, &nf);

        // Inter-reduce: any existing tip containing the new tip goes back
        // into the queue as a plain relation.
        let mut kept = Vec::with_capacity(rules.len());
        for r in rules.drain(..) {
            if r.tip.occurrences(&rule.tip).is_empty() {
                kept.push(r);
            } else {
                queue.push_back(r.relation(field));
            }
        }
        rules = kept;

        let mut spolys = Vec::new();
        for r in &rules {
            spolys.extend(overlap_spolys(field, r, &rule, degree_cap, &mut skipped));
            spolys.extend(overlap_spolys(field, &rule, r, degree_cap, &mut skipped));
        }
        spolys.extend(overlap_spolys(field, &rule, &rule, degree_cap, &mut skipped));
        queue.extend(spolys);

        rules.push(rule);
        rules.sort_by(|a, b| a.tip.cmp(&b.tip));
    }

    if skipped > 0 {
        return Err(CompleteError::Inconclusive {
            degree_cap,
            reason: format!(
                "{} overlap ambiguities exceed the degree cap and were not resolved",
                skipped
            ),
            partial_rules: rules,
        });
    }

    // Bring tails to full normal form so they are supported on normal words.
    for i in 0..rules.len() {
        let tail = rules[i].tail.clone();
        rules[i].tail = reduce_poly(field, &rules, &tail);
    }

    // Certify finite-dimensionality: grow the normal basis degree by degree
    // until some degree carries no normal words.
    let alphabet = pres.alphabet().clone();
    let n_gens = alphabet.len() as u8;
    let mut basis = vec![Word::empty()];
    let mut level = vec![Word::empty()];
    let mut degree = 0usize;
    loop {
        degree += 1;
        let mut next = Vec::new();
        for w in &level {
            for g in 0..n_gens {
                let nw = w.concat(&Word::gen(g));
                // only a suffix of nw can be a fresh tip occurrence
                if rules.iter().all(|r| !r.tip.is_suffix_of(&nw)) {
                    next.push(nw);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        if degree >= degree_cap {
            return Err(CompleteError::Inconclusive {
                degree_cap,
                reason: format!(
                    "normal words still present at degree {}; dimension not certified",
                    degree
                ),
                partial_rules: rules,
            });
        }
        basis.extend(next.iter().cloned());
        level = next;
    }

    let tips: Vec<Word> = rules.iter().map(|r| r.tip.clone()).collect();
    let mut prefixes: BTreeSet<Word> = BTreeSet::new();
    for t in &tips {
        for len in 1..t.degree() {
            prefixes.insert(t.slice(0, len));
        }
    }

    Ok(RewriteSystem {
        alphabet,
        field,
        rules,
        tips,
        proper_prefixes: prefixes.into_iter().collect(),
        normal_basis: basis,
    })
}

/// Convenience: completion at the presentation's default cap.
pub fn complete_default(pres: &Presentation) -> Result<RewriteSystem, CompleteError> {
    complete(pres, pres.default_degree_cap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_poly;
    use std::collections::HashMap;

    fn pres(names: Vec<&str>, p: u64, rels: &[&str]) -> Presentation {
        let alphabet = Alphabet::new(names).unwrap();
        let field = Fp::new(p).unwrap();
        let params = HashMap::new();
        let relations = rels
            .iter()
            .map(|r| parse_poly(r, &alphabet, field, &params).unwrap())
            .collect();
        Presentation::new(alphabet, field, relations).unwrap()
    }

    fn jordan_plane(p: u64) -> Presentation {
        pres(
            vec!["x", "y"],
            p,
            &["x^3", "y^3", "y*x - x*y - (1/2)*x^2"],
        )
    }

    fn word(a: &Alphabet, s: &str) -> Word {
        Word::from_letters(
            &s.chars()
                .map(|c| a.index_of(&c.to_string()).unwrap())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rejects_constant_terms() {
        let alphabet = Alphabet::new(vec!["x"]).unwrap();
        let field = Fp::new(3).unwrap();
        let r = parse_poly("x^2 - 1", &alphabet, field, &HashMap::new()).unwrap();
        assert!(matches!(
            Presentation::new(alphabet, field, vec![r]),
            Err(PresentationError::ConstantTerm(0))
        ));
    }

    #[test]
    fn jordan_plane_normal_forms() {
        let p = jordan_plane(3);
        let rs = complete_default(&p).unwrap();
        let a = rs.alphabet().clone();
        // yx reduces to xy + 2x^2
        let nf = rs.normal_form_word(&word(&a, "yx"));
        assert_eq!(nf.coeff(&word(&a, "xy")), 1);
        assert_eq!(nf.coeff(&word(&a, "xx")), 2);
        assert_eq!(nf.num_terms(), 2);
        // yx^2 reduces to x^2*y since x^3 = 0
        let nf = rs.normal_form_word(&word(&a, "yxx"));
        assert_eq!(nf.coeff(&word(&a, "xxy")), 1);
        assert_eq!(nf.num_terms(), 1);
    }

    #[test]
    fn jordan_plane_normal_basis_is_pbw() {
        let rs = complete_default(&jordan_plane(3)).unwrap();
        let mut expected = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                expected.push(Word::power(0, i).concat(&Word::power(1, j)));
            }
        }
        expected.sort();
        assert_eq!(rs.normal_words(), expected.as_slice());
    }

    #[test]
    fn jordan_plane_dimension_is_p_squared() {
        for p in [3u64, 5] {
            let mut rels = vec![format!("x^{}", p), format!("y^{}", p)];
            rels.push("y*x - x*y - (1/2)*x^2".to_string());
            let refs: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
            let pr = pres(vec!["x", "y"], p, &refs);
            let rs = complete_default(&pr).unwrap();
            assert_eq!(rs.dim(), (p * p) as usize);
            let a = rs.alphabet().clone();
            let tips: Vec<String> = rs.tips().iter().map(|t| t.display(&a)).collect();
            // deglex order puts the degree-2 tip first
            assert_eq!(
                tips,
                vec!["y*x".to_string(), format!("x^{}", p), format!("y^{}", p)]
            );
        }
    }

    #[test]
    fn truncated_ring_tips() {
        let pr = pres(
            vec!["w", "x", "y"],
            3,
            &[
                "w^2",
                "x^3",
                "y^4",
                "x*w - w*x",
                "y*w - w*y",
                "y*x - x*y",
            ],
        );
        let rs = complete_default(&pr).unwrap();
        let a = rs.alphabet().clone();
        let tips: Vec<String> = rs.tips().iter().map(|t| t.display(&a)).collect();
        assert_eq!(tips, vec!["w^2", "x*w", "y*w", "y*x", "x^3", "y^4"]);
        assert_eq!(rs.dim(), 2 * 3 * 4);
    }

    #[test]
    fn normal_form_is_idempotent_and_multiplicative() {
        let p = jordan_plane(3);
        let rs = complete_default(&p).unwrap();
        let a = rs.alphabet().clone();
        let f = rs.normal_form_word(&word(&a, "yxyx"));
        assert_eq!(rs.normal_form(&f), f);
        // ring homomorphism property on a sample pair
        let g1 = NcPoly::monomial(rs.field(), word(&a, "yx"), 2);
        let g2 = NcPoly::monomial(rs.field(), word(&a, "xy"), 1);
        let lhs = rs.normal_form(&g1.mul(&g2));
        let rhs = rs.normal_form(&rs.normal_form(&g1).mul(&rs.normal_form(&g2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn completed_systems_are_confluent() {
        // every overlap word of two tips reduces to the same normal form
        // along both one-step rewrites
        for pres in [
            jordan_plane(3),
            pres(
                vec!["w", "x", "y"],
                3,
                &["w^3", "x^3", "y^3", "x*w - w*x", "y*w - w*y - w*x - x", "y*x - x*y - (1/2)*x^2"],
            ),
        ] {
            let rs = complete_default(&pres).unwrap();
            let field = rs.field();
            for r1 in rs.rules() {
                for r2 in rs.rules() {
                    let t1 = r1.tip();
                    let t2 = r2.tip();
                    for k in 1..t1.degree().min(t2.degree()) {
                        if t1.slice(t1.degree() - k, t1.degree()) != t2.slice(0, k) {
                            continue;
                        }
                        let a = t1.slice(0, t1.degree() - k);
                        let b = t2.slice(k, t2.degree());
                        let via1 = r1.tail().mul(&NcPoly::monomial(field, b, 1));
                        let via2 = NcPoly::monomial(field, a, 1).mul(r2.tail());
                        assert_eq!(rs.normal_form(&via1), rs.normal_form(&via2));
                    }
                }
            }
        }
    }

    #[test]
    fn normal_word_products_stay_in_basis() {
        let rs = complete_default(&jordan_plane(3)).unwrap();
        for a in rs.normal_words() {
            for b in rs.normal_words() {
                let prod = rs.normal_form(
                    &NcPoly::monomial(rs.field(), a.concat(b), 1),
                );
                for (w, _) in prod.terms() {
                    assert!(rs.is_normal(w));
                }
            }
        }
    }

    #[test]
    fn inconclusive_on_free_algebra() {
        let pr = pres(vec!["x", "y"], 3, &["x^2"]);
        // y is free: normal words never stop growing
        match complete(&pr, 6) {
            Err(CompleteError::Inconclusive { .. }) => {}
            other => panic!("expected inconclusive, got {:?}", other.map(|r| r.dim())),
        }
    }

    #[test]
    fn overlap_completion_adds_rules() {
        // x*y - y reduces x^2*y two ways; completion must reconcile with x^2 = 0:
        // the overlap of x^2 with xy forces y = 0 into the system.
        let pr = pres(vec!["x", "y"], 3, &["x^2", "x*y - y"]);
        let rs = complete_default(&pr).unwrap();
        let a = rs.alphabet().clone();
        let nf = rs.normal_form_word(&word(&a, "y"));
        assert!(nf.is_zero());
        assert_eq!(rs.dim(), 2); // {1, x}
    }
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use crate::freealg::parse_poly;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn system() -> RewriteSystem {
        let alphabet = Alphabet::new(vec!["w", "x", "y"]).unwrap();
        let field = Fp::new(3).unwrap();
        let params = HashMap::new();
        let rels = [
            "w^3",
            "x^3 - x",
            "y^3 + y^2 + y",
            "y*w - w*y - w*x - x + 2*(w^2 + w)",
            "x*w - w*x - (w^2 + w)",
            "y*x - x*y + x^2 - x - y - 2*(w^2 - w)",
        ]
        .iter()
        .map(|r| parse_poly(r, &alphabet, field, &params).unwrap())
        .collect();
        complete_default(&Presentation::new(alphabet, field, rels).unwrap()).unwrap()
    }

    fn arb_poly() -> impl Strategy<Value = NcPoly> {
        let field = Fp::new(3).unwrap();
        prop::collection::vec(
            (prop::collection::vec(0u8..3, 0..=6), 1u64..3),
            0..=4,
        )
        .prop_map(move |terms| {
            let mut p = NcPoly::zero(field);
            for (letters, c) in terms {
                p.add_term(Word::from_letters(&letters), c);
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn normal_form_idempotent(f in arb_poly()) {
            let rs = system();
            let once = rs.normal_form(&f);
            prop_assert_eq!(rs.normal_form(&once), once);
        }

        #[test]
        fn normal_form_is_multiplicative(f in arb_poly(), g in arb_poly()) {
            let rs = system();
            let lhs = rs.normal_form(&f.mul(&g));
            let rhs = rs.normal_form(&rs.normal_form(&f).mul(&rs.normal_form(&g)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
