//! Free resolution of the trivial module over a completed presentation,
//! built recursively: the quiver of chains on generators and tips, the
//! n-chain bases, differentials d_n, and the contracting homotopy s_n that
//! drives their construction.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::freealg::{cmp_deglex, NcPoly, Word};
use crate::rewrite::RewriteSystem;

/// Safety valve for the homotopy recursion; the well-ordering of basis
/// terms guarantees termination, the cap turns a latent bug into a
/// diagnosable error instead of a hang.
const HOMOTOPY_ITERATION_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone)]
pub enum AnickError {
    #[error("tip `{0}` has degree 1; re-present the algebra on a minimal generating set")]
    DegreeOneTip(String),
    #[error("generator `{0}` is not a prefix of any tip; the chain quiver is undefined")]
    GeneratorNotInQuiver(String),
    #[error("element is not in the kernel: leading term {0} admits no tip factorization")]
    NotInKernel(String),
    #[error("homotopy recursion exceeded {0} iterations")]
    IterationCap(usize),
    #[error("degree mismatch: element has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// The quiver whose paths from the distinguished vertex `1` index the free
/// generators of the resolution. Vertex 0 is `1` (the empty word); the
/// remaining vertices are the proper prefixes of tips, restricted to the
/// component reachable from `1`.
#[derive(Debug, Clone)]
pub struct ChainQuiver {
    vertices: Vec<Word>,
    arrows: Vec<Vec<u32>>,
}

impl ChainQuiver {
    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn arrows_from(&self, v: usize) -> &[u32] {
        &self.arrows[v]
    }

    pub fn vertex_index(&self, w: &Word) -> Option<u32> {
        self.vertices.iter().position(|v| v == w).map(|i| i as u32)
    }

    /// True when `f -> g` is an arrow.
    pub fn has_arrow(&self, f: &Word, g: &Word) -> bool {
        match (self.vertex_index(f), self.vertex_index(g)) {
            (Some(fi), Some(gi)) => self.arrows[fi as usize].contains(&gi),
            _ => false,
        }
    }
}

/// Builds the chain quiver for a completed system: arrows `1 -> v` for each
/// generator v, and `f -> g` exactly when the word `gf` contains a single
/// tip occurrence sitting as a prefix. Only the part reachable from `1` is
/// kept.
pub fn build_quiver(rs: &RewriteSystem) -> Result<ChainQuiver, AnickError> {
    let alphabet = rs.alphabet();
    for t in rs.tips() {
        if t.degree() <= 1 {
            return Err(AnickError::DegreeOneTip(t.display(alphabet)));
        }
    }

    let mut vertices = vec![Word::empty()];
    vertices.extend(rs.proper_prefixes().iter().cloned());
    let vidx: HashMap<Word, u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i as u32))
        .collect();

    let mut arrows: Vec<Vec<u32>> = vec![Vec::new(); vertices.len()];
    for g in 0..alphabet.len() as u8 {
        let gen = Word::gen(g);
        let idx = vidx
            .get(&gen)
            .copied()
            .ok_or_else(|| AnickError::GeneratorNotInQuiver(gen.display(alphabet)))?;
        arrows[0].push(idx);
    }
    arrows[0].sort_unstable();

    for f in 1..vertices.len() {
        for g in 1..vertices.len() {
            let word = vertices[g].concat(&vertices[f]);
            let occ = rs.tip_occurrences(&word);
            if occ.len() == 1 && occ[0].0 == 0 {
                arrows[f].push(g as u32);
            }
        }
        arrows[f].sort_unstable();
    }

    // restrict to the component reachable from 1
    let mut seen = vec![false; vertices.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &t in &arrows[v] {
            if !seen[t as usize] {
                seen[t as usize] = true;
                stack.push(t as usize);
            }
        }
    }
    let mut remap: Vec<Option<u32>> = vec![None; vertices.len()];
    let mut new_vertices = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        if seen[i] {
            remap[i] = Some(new_vertices.len() as u32);
            new_vertices.push(v.clone());
        }
    }
    let mut new_arrows = vec![Vec::new(); new_vertices.len()];
    for (i, ts) in arrows.iter().enumerate() {
        if let Some(ni) = remap[i] {
            for &t in ts {
                if let Some(nt) = remap[t as usize] {
                    new_arrows[ni as usize].push(nt);
                }
            }
        }
    }

    Ok(ChainQuiver {
        vertices: new_vertices,
        arrows: new_arrows,
    })
}

/// An n-chain: a path of length n from `1`, stored as its vertex indices.
/// The canonical word is the product of the vertex words right-to-left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    verts: Vec<u32>,
    word: Word,
}

impl Chain {
    pub fn degree(&self) -> usize {
        self.verts.len()
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts
    }

    pub fn word(&self) -> &Word {
        &self.word
    }
}

/// Element of the degree-n free module: a finitely supported map from the
/// degree-n chains to normal-form coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModElem {
    degree: usize,
    terms: BTreeMap<usize, NcPoly>,
}

impl ModElem {
    pub fn zero(degree: usize) -> Self {
        ModElem {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &NcPoly)> {
        self.terms.iter().map(|(&i, p)| (i, p))
    }

    pub fn coeff(&self, chain: usize) -> Option<&NcPoly> {
        self.terms.get(&chain)
    }

    pub fn add_poly(&mut self, chain: usize, p: &NcPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(chain) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(p);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn sub(&self, other: &ModElem) -> ModElem {
        let mut out = self.clone();
        for (c, p) in other.terms() {
            out.add_poly(c, &p.neg());
        }
        out
    }

    pub fn add(&self, other: &ModElem) -> ModElem {
        let mut out = self.clone();
        for (c, p) in other.terms() {
            out.add_poly(c, p);
        }
        out
    }
}

/// The resolution itself: chains and differential values are built lazily
/// by degree and memoized; once the wanted degrees exist the object can be
/// treated as frozen. One instance is single-threaded by construction.
pub struct AnickResolution {
    rs: RewriteSystem,
    quiver: ChainQuiver,
    chains: Vec<Vec<Chain>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
    d_memo: Vec<Vec<Option<ModElem>>>,
}

impl AnickResolution {
    pub fn new(rs: RewriteSystem) -> Result<Self, AnickError> {
        let quiver = build_quiver(&rs)?;
        let c0 = Chain {
            verts: Vec::new(),
            word: Word::empty(),
        };
        let mut index0 = HashMap::new();
        index0.insert(Vec::new(), 0usize);
        Ok(AnickResolution {
            rs,
            quiver,
            chains: vec![vec![c0]],
            index: vec![index0],
            d_memo: vec![vec![None]],
        })
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.rs
    }

    pub fn quiver(&self) -> &ChainQuiver {
        &self.quiver
    }

    /// Builds chain bases up to and including degree n.
    pub fn ensure_degree(&mut self, n: usize) {
        while self.chains.len() <= n {
            let prev = self.chains.last().unwrap();
            let mut next = Vec::new();
            let mut idx = HashMap::new();
            for chain in prev {
                let last = chain.verts.last().map(|&v| v as usize).unwrap_or(0);
                for &t in &self.quiver.arrows[last] {
                    let mut verts = chain.verts.clone();
                    verts.push(t);
                    let word = self.quiver.vertices[t as usize].concat(&chain.word);
                    idx.insert(verts.clone(), next.len());
                    next.push(Chain { verts, word });
                }
            }
            self.d_memo.push(vec![None; next.len()]);
            self.chains.push(next);
            self.index.push(idx);
        }
    }

    /// The ordered basis of n-chains (deterministic: lex on vertex
    /// sequences).
    pub fn chains(&mut self, n: usize) -> &[Chain] {
        self.ensure_degree(n);
        &self.chains[n]
    }

    pub fn chain_count(&mut self, n: usize) -> usize {
        self.chains(n).len()
    }

    pub fn find_chain_by_word(&mut self, n: usize, w: &Word) -> Option<usize> {
        self.ensure_degree(n);
        self.chains[n].iter().position(|c| c.word() == w)
    }

    pub fn find_chain(&mut self, n: usize, verts: &[u32]) -> Option<usize> {
        self.ensure_degree(n);
        self.index[n].get(verts).copied()
    }

    /// d_n applied to the free generator indexed by `chain`; memoized.
    pub fn differential(&mut self, n: usize, chain: usize) -> Result<ModElem, AnickError> {
        self.ensure_degree(n);
        if let Some(d) = &self.d_memo[n][chain] {
            return Ok(d.clone());
        }
        let value = if n == 1 {
            let word = self.chains[1][chain].word.clone();
            let mut out = ModElem::zero(0);
            out.add_poly(0, &NcPoly::monomial(self.rs.field(), word, 1));
            out
        } else {
            // u = r . u' with r the last vertex of the path
            let u = &self.chains[n][chain];
            let r_vert = *u.verts.last().unwrap() as usize;
            let prefix_verts: Vec<u32> = u.verts[..n - 1].to_vec();
            let r_word = self.quiver.vertices[r_vert].clone();
            let u_prime = self.index[n - 1][&prefix_verts];
            let mut lead = ModElem::zero(n - 1);
            lead.add_poly(u_prime, &NcPoly::monomial(self.rs.field(), r_word, 1));
            let delta = self.apply_differential(&lead)?;
            let correction = self.homotopy(n - 1, &delta)?;
            lead.sub(&correction)
        };
        self.d_memo[n][chain] = Some(value.clone());
        Ok(value)
    }

    /// Extends d linearly over module elements (coefficients reduced to
    /// normal form). The element must have degree >= 1.
    pub fn apply_differential(&mut self, elem: &ModElem) -> Result<ModElem, AnickError> {
        let n = elem.degree;
        if n == 0 {
            return Err(AnickError::DegreeMismatch { expected: 1, got: 0 });
        }
        let mut out = ModElem::zero(n - 1);
        let terms: Vec<(usize, NcPoly)> = elem.terms().map(|(c, p)| (c, p.clone())).collect();
        for (chain, coeff) in terms {
            let d = self.differential(n, chain)?;
            for (target, poly) in d.terms() {
                let prod = self.rs.normal_form(&coeff.mul(poly));
                out.add_poly(target, &prod);
            }
        }
        Ok(out)
    }

    /// Compares basis terms (r1 (x) u1) vs (r2 (x) u2): deglex on the
    /// concatenated word, then shorter r first, then lex on the vertex
    /// sequence. Distinct basis terms may concatenate to equal words, so
    /// the refinements make the highest term unique.
    fn cmp_basis_terms(
        &self,
        n: usize,
        a: (&Word, usize),
        b: (&Word, usize),
    ) -> std::cmp::Ordering {
        let (ra, ua) = a;
        let (rb, ub) = b;
        let wa = ra.concat(self.chains[n][ua].word());
        let wb = rb.concat(self.chains[n][ub].word());
        cmp_deglex(&wa, &wb)
            .then_with(|| rb.degree().cmp(&ra.degree()))
            .then_with(|| self.chains[n][ua].verts.cmp(&self.chains[n][ub].verts))
    }

    fn leading_basis_term(&self, elem: &ModElem) -> Option<(usize, Word, u64)> {
        let n = elem.degree;
        let mut best: Option<(usize, Word, u64)> = None;
        for (chain, poly) in elem.terms() {
            let (w, c) = poly.leading().map(|(w, c)| (w.clone(), c))?;
            best = match best {
                None => Some((chain, w, c)),
                Some((bc, bw, bcoef)) => {
                    if self.cmp_basis_terms(n, (&w, chain), (&bw, bc))
                        == std::cmp::Ordering::Greater
                    {
                        Some((chain, w, c))
                    } else {
                        Some((bc, bw, bcoef))
                    }
                }
            };
        }
        best
    }

    /// The contracting homotopy: for `xi` of degree n-1 in the kernel of
    /// d_{n-1} (in the kernel of the augmentation when n = 1), returns an
    /// element of degree n whose differential is `xi`.
    ///
    /// Repeatedly extracts the highest basis term a r (x) u, factors
    /// r u' = v' t u' with t the shortest suffix of r such that t u'
    /// contains a tip (necessarily unique and a prefix), emits
    /// a v' (x) tu, and continues on the strictly smaller remainder.
    pub fn homotopy(&mut self, n: usize, xi: &ModElem) -> Result<ModElem, AnickError> {
        if xi.degree != n - 1 {
            return Err(AnickError::DegreeMismatch {
                expected: n - 1,
                got: xi.degree,
            });
        }
        self.ensure_degree(n);
        if n == 1 {
            return self.homotopy_base(xi);
        }

        let field = self.rs.field();
        let mut acc = ModElem::zero(n);
        let mut rest = xi.clone();
        let mut steps = 0usize;
        while !rest.is_zero() {
            steps += 1;
            if steps > HOMOTOPY_ITERATION_CAP {
                return Err(AnickError::IterationCap(HOMOTOPY_ITERATION_CAP));
            }
            let (u1, r1, a1) = self.leading_basis_term(&rest).unwrap();
            let u_prime_vert = *self.chains[n - 1][u1].verts.last().unwrap() as usize;
            let u_prime_word = self.quiver.vertices[u_prime_vert].clone();

            let mut found: Option<(Word, Word)> = None; // (v', t)
            for len in 1..=r1.degree() {
                let t = r1.slice(r1.degree() - len, r1.degree());
                let tu = t.concat(&u_prime_word);
                let occ = self.rs.tip_occurrences(&tu);
                if !occ.is_empty() {
                    if occ.len() != 1 || occ[0].0 != 0 {
                        return Err(AnickError::Internal(format!(
                            "minimal tip factorization of {} is not a unique prefix",
                            tu.display(self.rs.alphabet())
                        )));
                    }
                    let v = r1.slice(0, r1.degree() - len);
                    found = Some((v, t));
                    break;
                }
            }
            let (v_prime, t) = match found {
                Some(f) => f,
                None => {
                    return Err(AnickError::NotInKernel(format!(
                        "{} (x) {}",
                        r1.display(self.rs.alphabet()),
                        self.chains[n - 1][u1].word().display(self.rs.alphabet())
                    )))
                }
            };

            let t_vert = self.quiver.vertex_index(&t).ok_or_else(|| {
                AnickError::Internal(format!(
                    "suffix {} is not a quiver vertex",
                    t.display(self.rs.alphabet())
                ))
            })?;
            let mut new_verts = self.chains[n - 1][u1].verts.clone();
            new_verts.push(t_vert);
            let new_chain = self
                .index[n]
                .get(&new_verts)
                .copied()
                .ok_or_else(|| AnickError::Internal("extended path is not a chain".to_string()))?;

            acc.add_poly(new_chain, &NcPoly::monomial(field, v_prime.clone(), a1));
            let d_new = self.differential(n, new_chain)?;
            let scaled = NcPoly::monomial(field, v_prime, a1);
            for (target, poly) in d_new.terms() {
                let prod = self.rs.normal_form(&scaled.mul(poly)).neg();
                rest.add_poly(target, &prod);
            }
        }
        Ok(acc)
    }

    /// Degree-0 rule: 1 maps to 0 and a normal word u v (v a generator)
    /// maps to u (x) v. Defined on the kernel of the augmentation.
    fn homotopy_base(&mut self, xi: &ModElem) -> Result<ModElem, AnickError> {
        let field = self.rs.field();
        let mut out = ModElem::zero(1);
        let gen_chain: HashMap<u8, usize> = self.chains[1]
            .iter()
            .enumerate()
            .map(|(i, c)| (c.word().letters()[0], i))
            .collect();
        for (_, poly) in xi.terms() {
            for (w, c) in poly.terms() {
                let (u, v) = match w.split_last() {
                    Some(s) => s,
                    None => {
                        return Err(AnickError::NotInKernel(
                            "constant term survives the augmentation".to_string(),
                        ))
                    }
                };
                let chain = gen_chain[&v];
                out.add_poly(chain, &NcPoly::monomial(field, u, c));
            }
        }
        Ok(out)
    }

    /// Renders an element as `coeff (x) chain` terms for diagnostics.
    pub fn display_elem(&self, elem: &ModElem) -> String {
        if elem.is_zero() {
            return "0".to_string();
        }
        let alphabet = self.rs.alphabet();
        elem.terms()
            .map(|(c, p)| {
                format!(
                    "[{}] (x) {}",
                    p.display(alphabet),
                    self.chains[elem.degree][c].word().display(alphabet)
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Draws pseudorandom degree-n elements (seeded, reproducible), pushes them
/// through d, and checks the homotopy contract d(s(d(eta))) = d(eta).
/// Returns the number of failures.
pub fn homotopy_contract_failures(
    res: &mut AnickResolution,
    max_degree: usize,
    per_degree: usize,
    seed: u64,
) -> Result<usize, AnickError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = res.system().field();
    let small_words: Vec<Word> = res
        .system()
        .normal_words()
        .iter()
        .filter(|w| w.degree() <= 3)
        .cloned()
        .collect();
    let mut failures = 0;
    for n in 1..=max_degree {
        let chain_count = res.chain_count(n);
        for _ in 0..per_degree {
            let mut eta = ModElem::zero(n);
            let terms = rng.gen_range(1..=3);
            for _ in 0..terms {
                let chain = rng.gen_range(0..chain_count);
                let word = small_words[rng.gen_range(0..small_words.len())].clone();
                let scalar = rng.gen_range(1..field.modulus());
                eta.add_poly(chain, &NcPoly::monomial(field, word, scalar));
            }
            let xi = res.apply_differential(&eta)?;
            let sigma = res.homotopy(n, &xi)?;
            let back = res.apply_differential(&sigma)?;
            if back != xi {
                failures += 1;
            }
        }
    }
    Ok(failures)
}
