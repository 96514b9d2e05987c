//! Dualizing resolutions against the trivial module: coboundary matrices
//! over GF(p), Betti numbers by exact rank computation, index-shift chain
//! maps and the even-index cup products they realize, and the isomorphism
//! between the recursive resolution and the tensor-product complex on
//! truncated polynomial rings.

use thiserror::Error;

use crate::anick::{AnickError, AnickResolution, Chain, ModElem};
use crate::freealg::{NcPoly, Word};
use crate::gfp::Fp;
use crate::presets;
use crate::rewrite::complete_default;
use crate::ttp::Ttp;

#[derive(Debug, Error)]
pub enum CohomError {
    #[error(transparent)]
    Anick(#[from] AnickError),
    #[error("cup products are defined here only for even index triples")]
    OddIndex,
    #[error("construction failed: {0}")]
    Construction(String),
}

/// Dense matrix over GF(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(field: Fp, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.field.modulus();
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Rank by fraction-free Gaussian elimination with positional pivoting;
    /// deterministic, no divisions.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0usize;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot_row) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            if pivot_row != rank {
                for c in col..cols {
                    m.swap(rank * cols + c, pivot_row * cols + c);
                }
            }
            let piv = m[rank * cols + col];
            for r in rank + 1..rows {
                let factor = m[r * cols + col];
                if factor == 0 {
                    continue;
                }
                for c in col..cols {
                    let a = f.mul(piv, m[r * cols + c]);
                    let b = f.mul(factor, m[rank * cols + c]);
                    m[r * cols + c] = f.sub(a, b);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Matrix product, used to confirm consecutive coboundaries compose to 0.
    pub fn matmul(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows);
        let f = self.field;
        let mut out = FpMatrix::zero(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = f.add(out.get(r, c), f.mul(a, rhs.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }
}

/// The complex Hom(-, k) of a resolution: per-degree dual basis labels and
/// the coboundary matrices between consecutive degrees.
pub struct CochainComplex {
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    mats: Vec<FpMatrix>,
}

impl CochainComplex {
    /// Dualizes the recursive resolution through `max_degree` (inclusive).
    pub fn from_anick(res: &mut AnickResolution, max_degree: usize) -> Result<Self, CohomError> {
        let field = res.system().field();
        let alphabet = res.system().alphabet().clone();
        let mut dims = Vec::new();
        let mut labels = Vec::new();
        for n in 0..=max_degree {
            let chains = res.chains(n);
            dims.push(chains.len());
            labels.push(
                chains
                    .iter()
                    .map(|c: &Chain| c.word().display(&alphabet))
                    .collect(),
            );
        }
        let mut mats = Vec::new();
        for n in 0..max_degree {
            let mut mat = FpMatrix::zero(field, dims[n + 1], dims[n]);
            for v in 0..dims[n + 1] {
                let d = res.differential(n + 1, v)?;
                for (u, poly) in d.terms() {
                    mat.set(v, u, poly.augmentation());
                }
            }
            mats.push(mat);
        }
        Ok(CochainComplex { dims, labels, mats })
    }

    /// Dualizes the two-index twisted complex over R.
    pub fn from_k(ttp: &Ttp, max_degree: usize) -> Self {
        let field = ttp.field();
        let gens = |n: usize| -> Vec<(i64, i64)> {
            (0..=n as i64).map(|i| (i, n as i64 - i)).collect()
        };
        let mut dims = Vec::new();
        let mut labels = Vec::new();
        for n in 0..=max_degree {
            let g = gens(n);
            dims.push(g.len());
            labels.push(g.iter().map(|(i, j)| format!("phi[{},{}]", i, j)).collect());
        }
        let mut mats = Vec::new();
        for n in 0..max_degree {
            let source = gens(n + 1);
            let target = gens(n);
            let mut mat = FpMatrix::zero(field, source.len(), target.len());
            for (row, &(i, j)) in source.iter().enumerate() {
                let d = ttp.k_differential(i, j);
                for ((a, b), poly) in d.terms() {
                    let col = target.iter().position(|&t| t == (a, b)).unwrap();
                    mat.set(row, col, poly.augmentation());
                }
            }
            mats.push(mat);
        }
        CochainComplex { dims, labels, mats }
    }

    /// Dualizes the three-index twisted complex over the bosonization.
    pub fn from_y(ttp: &Ttp, max_degree: usize) -> Self {
        let field = ttp.field();
        let mut dims = Vec::new();
        let mut labels = Vec::new();
        for n in 0..=max_degree {
            let g = y_generators(n);
            dims.push(g.len());
            labels.push(
                g.iter()
                    .map(|(i, j, k)| format!("phi[{},{},{}]", i, j, k))
                    .collect(),
            );
        }
        let mut mats = Vec::new();
        for n in 0..max_degree {
            let source = y_generators(n + 1);
            let target = y_generators(n);
            let mut mat = FpMatrix::zero(field, source.len(), target.len());
            for (row, &(i, j, k)) in source.iter().enumerate() {
                let d = ttp.y_differential(i, j, k);
                for ((a, b, c), poly) in d.terms() {
                    let col = target.iter().position(|&t| t == (a, b, c)).unwrap();
                    mat.set(row, col, poly.augmentation());
                }
            }
            mats.push(mat);
        }
        CochainComplex { dims, labels, mats }
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.labels[n]
    }

    /// The coboundary matrix dual(n) -> dual(n+1): entry (v, u) is the
    /// augmentation of the coefficient of generator u in d(generator v).
    pub fn dual_matrix(&self, n: usize) -> &FpMatrix {
        &self.mats[n]
    }

    pub fn d_star_squared_is_zero(&self) -> bool {
        self.mats
            .windows(2)
            .all(|w| w[1].matmul(&w[0]).is_zero())
    }

    /// dim ker(d*_n) - rank(d*_{n-1}); requires n < max_degree.
    pub fn betti(&self, n: usize) -> usize {
        let out_rank = self.mats[n].rank();
        let in_rank = if n == 0 { 0 } else { self.mats[n - 1].rank() };
        self.dims[n] - out_rank - in_rank
    }

    pub fn betti_table(&self, up_to: usize) -> Vec<usize> {
        (0..=up_to).map(|n| self.betti(n)).collect()
    }
}

pub fn y_generators(n: usize) -> Vec<(i64, i64, i64)> {
    let n = n as i64;
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=(n - i) {
            out.push((i, j, n - i - j));
        }
    }
    out
}

/// A degree -2 self-map of the Y complex sending phi_{i,j,k} to
/// phi_{i-a,j-b,k-c} (zero on negative targets), optionally twisted by
/// (-1)^i as a deliberately broken control.
#[derive(Debug, Clone, Copy)]
pub struct IndexShiftMap {
    shift: [i64; 3],
    alternate_sign_in_first: bool,
}

impl IndexShiftMap {
    pub fn xi_x() -> Self {
        Self::shift([2, 0, 0])
    }

    pub fn xi_y() -> Self {
        Self::shift([0, 2, 0])
    }

    pub fn xi_g() -> Self {
        Self::shift([0, 0, 2])
    }

    pub fn shift(shift: [i64; 3]) -> Self {
        IndexShiftMap {
            shift,
            alternate_sign_in_first: false,
        }
    }

    /// The ill-signed variant phi_{i,j,k} -> (-1)^i phi_{i-a,j-b,k-c}.
    pub fn ill_signed(shift: [i64; 3]) -> Self {
        IndexShiftMap {
            shift,
            alternate_sign_in_first: true,
        }
    }

    pub fn compose(&self, other: &IndexShiftMap) -> IndexShiftMap {
        IndexShiftMap {
            shift: [
                self.shift[0] + other.shift[0],
                self.shift[1] + other.shift[1],
                self.shift[2] + other.shift[2],
            ],
            alternate_sign_in_first: self.alternate_sign_in_first
                ^ other.alternate_sign_in_first,
        }
    }

    /// Image of the generator (i,j,k): target indices and scalar, or None
    /// when the target falls off the first quadrant.
    pub fn apply(&self, field: Fp, gen: (i64, i64, i64)) -> Option<((i64, i64, i64), u64)> {
        let (i, j, k) = gen;
        let t = (i - self.shift[0], j - self.shift[1], k - self.shift[2]);
        if t.0 < 0 || t.1 < 0 || t.2 < 0 {
            return None;
        }
        let sign = if self.alternate_sign_in_first && i % 2 == 1 {
            field.neg(1)
        } else {
            1
        };
        Some((t, sign))
    }
}

/// Checks f(d(phi)) = d(f(phi)) on every Y generator of total degree at
/// most `max_degree`, with f acting as the identity on coefficients.
pub fn verify_chain_map(ttp: &Ttp, f: &IndexShiftMap, max_degree: usize) -> bool {
    let field = ttp.field();
    for n in 1..=max_degree {
        for &(i, j, k) in &y_generators(n) {
            // f applied to d(phi_{i,j,k}), term by term
            let mut lhs = crate::ttp::YElem::zero();
            for ((a, b, c), poly) in ttp.y_differential(i, j, k).terms() {
                if let Some(((ta, tb, tc), sign)) = f.apply(field, (a, b, c)) {
                    lhs.add_poly(ta, tb, tc, &poly.scale(sign));
                }
            }
            // d applied to f(phi_{i,j,k})
            let rhs = match f.apply(field, (i, j, k)) {
                None => crate::ttp::YElem::zero(),
                Some(((ta, tb, tc), sign)) => {
                    let mut out = crate::ttp::YElem::zero();
                    for ((a, b, c), poly) in ttp.y_differential(ta, tb, tc).terms() {
                        out.add_poly(a, b, c, &poly.scale(sign));
                    }
                    out
                }
            };
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Componentwise sum of even dual index triples; the cup product of the
/// corresponding classes.
pub fn cup_even(a: [u64; 3], b: [u64; 3]) -> Result<[u64; 3], CohomError> {
    if a.iter().chain(b.iter()).any(|v| v % 2 != 0) {
        return Err(CohomError::OddIndex);
    }
    Ok([a[0] + b[0], a[1] + b[1], a[2] + b[2]])
}

/// Verifies that every even-index product of total degree at most
/// `total_degree_cap` is realized on the cochain level: the composite of
/// basic index shifts equals the single shift, that shift is a chain map
/// through the relevant degrees, and composing a dual generator with it
/// lands on the summed index.
pub fn verify_cup_structure(ttp: &Ttp, total_degree_cap: usize) -> Result<bool, CohomError> {
    let field = ttp.field();
    let even_triples: Vec<[u64; 3]> = {
        let mut v = Vec::new();
        let cap = total_degree_cap as u64;
        let mut a = 0;
        while a <= cap {
            let mut b = 0;
            while a + b <= cap {
                let mut c = 0;
                while a + b + c <= cap {
                    v.push([a, b, c]);
                    c += 2;
                }
                b += 2;
            }
            a += 2;
        }
        v
    };
    // each distinct shift is a chain map through the full degree range;
    // verified once, not per product pair
    for b in &even_triples {
        let single = IndexShiftMap::shift([b[0] as i64, b[1] as i64, b[2] as i64]);
        if !verify_chain_map(ttp, &single, total_degree_cap) {
            return Ok(false);
        }
    }
    for a in &even_triples {
        for b in &even_triples {
            let ta: u64 = a.iter().sum();
            let tb: u64 = b.iter().sum();
            if ta + tb > total_degree_cap as u64 {
                continue;
            }
            let sum = cup_even(*a, *b)?;
            // composite of basic shifts = single shift by b
            let mut comp = IndexShiftMap::shift([0, 0, 0]);
            for _ in 0..b[0] / 2 {
                comp = comp.compose(&IndexShiftMap::xi_x());
            }
            for _ in 0..b[1] / 2 {
                comp = comp.compose(&IndexShiftMap::xi_y());
            }
            for _ in 0..b[2] / 2 {
                comp = comp.compose(&IndexShiftMap::xi_g());
            }
            let single = IndexShiftMap::shift([b[0] as i64, b[1] as i64, b[2] as i64]);
            for n in 0..=(ta + tb) as usize {
                for &gen in &y_generators(n) {
                    if comp.apply(field, gen) != single.apply(field, gen) {
                        return Ok(false);
                    }
                }
            }
            // (dual of a) composed with the shift picks out exactly the sum
            for &gen in &y_generators((ta + tb) as usize) {
                let picked = match single.apply(field, gen) {
                    Some((t, _)) => t == (a[0] as i64, a[1] as i64, a[2] as i64),
                    None => false,
                };
                let is_sum = gen == (sum[0] as i64, sum[1] as i64, sum[2] as i64);
                if picked != is_sum {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn sigma(m: usize, l: i64) -> u64 {
    if l % 2 == 1 {
        1
    } else {
        (m - 1) as u64
    }
}

/// Classifies a chain of the truncated-ring quiver by the generator powering
/// each vertex; valid paths visit a (possibly empty) w block, then an x
/// block, then a y block.
fn classify_chain(res: &AnickResolution, chain: &Chain) -> Option<(i64, i64, i64)> {
    let mut counts = [0i64; 3];
    let mut current: i64 = -1;
    for &v in chain.vertices() {
        let word = &res.quiver().vertices()[v as usize];
        let letters = word.letters();
        let letter = letters[0];
        if letters.iter().any(|&l| l != letter) {
            return None;
        }
        if (letter as i64) < current {
            return None;
        }
        current = letter as i64;
        counts[letter as usize] += 1;
    }
    Some((counts[0], counts[1], counts[2]))
}

/// The inverse map: vertex sequence of the chain with i vertices in the w
/// block, j in the x block, k in the y block. Block entries alternate
/// between the generator and its (m-1)-st power, starting at the generator.
fn chain_verts_from_triple(
    res: &AnickResolution,
    m: [usize; 3],
    triple: (i64, i64, i64),
) -> Option<Vec<u32>> {
    let q = res.quiver();
    let mut verts = Vec::new();
    let blocks = [triple.0, triple.1, triple.2];
    for (letter, &count) in blocks.iter().enumerate() {
        for t in 1..=count {
            let power = if t % 2 == 1 { 1 } else { m[letter] - 1 };
            let word = Word::power(letter as u8, power);
            verts.push(q.vertex_index(&word)?);
        }
    }
    Some(verts)
}

/// Checks that relabeling chains by their index triples identifies the
/// recursive resolution of k[w,x,y]/(w^m1, x^m2, y^m3) with the total
/// complex of the three periodic one-variable resolutions, through degree
/// `max_degree`. The tensor-side differential is built from the per-factor
/// maps and the alternating-sign totalization rule.
pub fn chain_iso_check(
    m: [usize; 3],
    p: u64,
    max_degree: usize,
) -> Result<bool, CohomError> {
    let pres = presets::truncated(m, p).map_err(|e| CohomError::Construction(e.to_string()))?;
    let rs = complete_default(&pres).map_err(|e| CohomError::Construction(e.to_string()))?;
    let field = rs.field();
    let mut res = AnickResolution::new(rs)?;

    for n in 1..=max_degree {
        let count = res.chain_count(n);
        if count != y_generators(n).len() {
            return Ok(false);
        }
        for idx in 0..count {
            let chain = res.chains(n)[idx].clone();
            let Some((i, j, k)) = classify_chain(&res, &chain) else {
                return Ok(false);
            };
            let computed = res.differential(n, idx)?;

            // tensor-side differential: d_y (x) 1 (x) 1 + (-1)^k 1 (x) d_x (x) 1
            // + (-1)^(j+k) 1 (x) 1 (x) d_w, each factor two-periodic
            let mut expected = ModElem::zero(n - 1);
            let parts: [(usize, (i64, i64, i64), u64); 3] = [
                (2, (i, j, k - 1), sigma(m[2], k)),
                (1, (i, j - 1, k), sigma(m[1], j)),
                (0, (i - 1, j, k), sigma(m[0], i)),
            ];
            for (letter, target, power) in parts {
                if target.0 < 0 || target.1 < 0 || target.2 < 0 {
                    continue;
                }
                let sign_exp = match letter {
                    2 => 0,
                    1 => k,
                    _ => j + k,
                };
                let coeff_word = Word::power(letter as u8, power as usize);
                let mut coeff = NcPoly::monomial(field, coeff_word, 1);
                if sign_exp % 2 == 1 {
                    coeff = coeff.neg();
                }
                let Some(verts) = chain_verts_from_triple(&res, m, target) else {
                    return Ok(false);
                };
                let Some(tgt_idx) = res.find_chain(n - 1, &verts) else {
                    return Ok(false);
                };
                expected.add_poly(tgt_idx, &coeff);
            }

            if computed != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The full k-linear matrix of d_n on the free module bases (normal word,
/// chain); rows index degree n-1, columns degree n.
pub fn full_differential_matrix(
    res: &mut AnickResolution,
    n: usize,
) -> Result<FpMatrix, CohomError> {
    let field = res.system().field();
    let words: Vec<Word> = res.system().normal_words().to_vec();
    let word_index: std::collections::HashMap<Word, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let dim = words.len();
    let rows = dim * res.chain_count(n - 1);
    let cols = dim * res.chain_count(n);
    let mut mat = FpMatrix::zero(field, rows, cols);
    for u in 0..res.chain_count(n) {
        let d = res.differential(n, u)?;
        for (a_idx, a) in words.iter().enumerate() {
            let col = a_idx * res.chain_count(n) + u;
            let a_poly = NcPoly::monomial(field, a.clone(), 1);
            for (v, poly) in d.terms() {
                let prod = res.system().normal_form(&a_poly.mul(poly));
                for (w, c) in prod.terms() {
                    let row = word_index[w] * res.chain_count(n - 1) + v;
                    let cur = mat.get(row, col);
                    mat.set(row, col, field.add(cur, c));
                }
            }
        }
    }
    Ok(mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ttp::TwistParams;

    fn ttp(p: u64, q: u64) -> Ttp {
        Ttp::new(TwistParams::new(p, q).unwrap()).unwrap()
    }

    #[test]
    fn rank_of_small_matrices() {
        let f = Fp::new(3).unwrap();
        let mut m = FpMatrix::zero(f, 2, 3);
        m.set(0, 0, 1);
        m.set(0, 1, 2);
        m.set(1, 0, 2);
        m.set(1, 1, 1); // row2 = 2*row1
        assert_eq!(m.rank(), 1);
        m.set(1, 2, 1);
        assert_eq!(m.rank(), 2);
        assert_eq!(FpMatrix::zero(f, 4, 4).rank(), 0);
    }

    #[test]
    fn k_complex_has_zero_coboundaries() {
        // every K coefficient augments to zero, so the dual differential
        // vanishes and the Betti number in degree n is n+1
        for p in [3u64, 5] {
            let t = ttp(p, p);
            let cc = CochainComplex::from_k(&t, 7);
            assert!(cc.d_star_squared_is_zero());
            for n in 0..=6 {
                assert!(cc.dual_matrix(n).is_zero());
                assert_eq!(cc.betti(n), n + 1);
            }
        }
    }

    #[test]
    fn y_complex_betti_numbers() {
        let t = ttp(3, 3);
        let cc = CochainComplex::from_y(&t, 5);
        assert!(cc.d_star_squared_is_zero());
        assert_eq!(cc.betti_table(4), vec![1, 2, 5, 7, 12]);
    }

    #[test]
    fn y_dual_support_pattern() {
        // nonzero dual entries are exactly phi*[i,j,k] -> phi*[i-1,j+1,k+1]
        // with i odd and j, k even
        let t = ttp(3, 3);
        let cc = CochainComplex::from_y(&t, 6);
        for n in 0..6 {
            let mat = cc.dual_matrix(n);
            let src = y_generators(n);
            let tgt = y_generators(n + 1);
            for (col, &(i, j, k)) in src.iter().enumerate() {
                for (row, &(a, b, c)) in tgt.iter().enumerate() {
                    let v = mat.get(row, col);
                    let expected_nonzero = i % 2 == 1
                        && j % 2 == 0
                        && k % 2 == 0
                        && (a, b, c) == (i - 1, j + 1, k + 1);
                    assert_eq!(v != 0, expected_nonzero, "({},{},{}) -> ({},{},{})", i, j, k, a, b, c);
                }
            }
        }
    }

    #[test]
    fn named_shift_maps_are_chain_maps() {
        let t = ttp(3, 3);
        for f in [
            IndexShiftMap::xi_x(),
            IndexShiftMap::xi_y(),
            IndexShiftMap::xi_g(),
        ] {
            assert!(verify_chain_map(&t, &f, 6));
        }
        // the zero map: shifting by more than the degree annihilates all
        // generators we test, and trivially commutes
        assert!(verify_chain_map(&t, &IndexShiftMap::shift([20, 0, 0]), 6));
    }

    #[test]
    fn ill_signed_shift_is_not_a_chain_map() {
        let t = ttp(3, 3);
        let bad = IndexShiftMap::ill_signed([2, 0, 0]);
        assert!(!verify_chain_map(&t, &bad, 6));
    }

    #[test]
    fn cup_even_arithmetic() {
        assert_eq!(cup_even([2, 0, 0], [0, 2, 0]).unwrap(), [2, 2, 0]);
        assert_eq!(cup_even([2, 0, 0], [2, 0, 0]).unwrap(), [4, 0, 0]);
        assert_eq!(cup_even([2, 2, 0], [0, 0, 0]).unwrap(), [2, 2, 0]);
        assert!(cup_even([1, 0, 0], [0, 0, 0]).is_err());
    }

    #[test]
    fn cup_even_commutative_and_associative() {
        let triples = [[0u64, 0, 0], [2, 0, 0], [0, 2, 0], [0, 0, 2], [2, 2, 0], [4, 0, 2]];
        for a in triples {
            for b in triples {
                assert_eq!(cup_even(a, b).unwrap(), cup_even(b, a).unwrap());
                for c in triples {
                    assert_eq!(
                        cup_even(cup_even(a, b).unwrap(), c).unwrap(),
                        cup_even(a, cup_even(b, c).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn chain_iso_on_small_truncated_rings() {
        assert!(chain_iso_check([3, 3, 3], 3, 4).unwrap());
        assert!(chain_iso_check([2, 3, 4], 3, 4).unwrap());
        assert!(chain_iso_check([2, 2, 2], 5, 4).unwrap());
    }

    #[test]
    fn truncated_anick_dual_vanishes() {
        let pres = presets::truncated([3, 3, 3], 3).unwrap();
        let mut res = AnickResolution::new(complete_default(&pres).unwrap()).unwrap();
        let cc = CochainComplex::from_anick(&mut res, 5).unwrap();
        for n in 0..=4 {
            assert_eq!(cc.betti(n), (n + 1) * (n + 2) / 2);
        }
    }

    #[test]
    fn exactness_ranks_on_nichols() {
        // rank d_n + rank d_{n+1} = dim(A) * |C_n| certifies exactness at n
        let pres = presets::nichols(3).unwrap();
        let mut res = AnickResolution::new(complete_default(&pres).unwrap()).unwrap();
        let dim = res.system().dim();
        for n in 1..=3 {
            let r1 = full_differential_matrix(&mut res, n).unwrap().rank();
            let r2 = full_differential_matrix(&mut res, n + 1).unwrap().rank();
            assert_eq!(r1 + r2, dim * res.chain_count(n), "degree {}", n);
        }
    }
}
