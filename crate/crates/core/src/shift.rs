//! Subshift-of-finite-type specifications and their transition matrices.
//!
//! Forbidden words of common length `n` are re-encoded on length-`(n-1)`
//! blocks so that every forbidden word becomes a forbidden transition; the
//! resulting `q^(n-1) x q^(n-1)` matrix drives entropy, Parry measures and
//! escape rates. Product systems come in through Kronecker products with
//! the row/column ordering induced by the mixed-radix index bijection.

use crate::words::{Word, WordSet};
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use petgraph::graph::DiGraph;

/// Default cap on dense higher-block dimensions (`q^(n-1)`).
pub const DEFAULT_MAX_DIM: usize = 20_000;

/// Dense 0/1 transition matrix with self-describing row/column labels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransitionMatrix {
    dim: usize,
    entries: Vec<u8>,
    labels: Vec<Word>,
}

impl TransitionMatrix {
    pub fn new(dim: usize, entries: Vec<u8>, labels: Vec<Word>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::InvalidParameter(format!(
                "expected {} entries for dim {dim}, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if labels.len() != dim {
            return Err(Error::InvalidParameter(format!(
                "expected {dim} labels, got {}",
                labels.len()
            )));
        }
        if entries.iter().any(|&e| e > 1) {
            return Err(Error::InvalidParameter("entries must be 0 or 1".into()));
        }
        Ok(Self { dim, entries, labels })
    }

    /// All-ones `q x q` matrix labelled by the base symbols.
    pub fn full(q: u32) -> Self {
        let dim = q as usize;
        let labels = (0..q).map(|s| Word::new(q, vec![s]).unwrap()).collect();
        Self {
            dim,
            entries: vec![1; dim * dim],
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[Word] {
        &self.labels
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.dim + j] == 1
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.entries.iter().filter(|&&e| e == 1).count()
    }

    /// Strongly connected components (each as a sorted list of indices).
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let mut graph = DiGraph::<(), ()>::with_capacity(self.dim, self.count_ones());
        let nodes: Vec<_> = (0..self.dim).map(|_| graph.add_node(())).collect();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self.entry(i, j) {
                    graph.add_edge(nodes[i], nodes[j], ());
                }
            }
        }
        let mut comps: Vec<Vec<usize>> = petgraph::algo::tarjan_scc(&graph)
            .into_iter()
            .map(|comp| {
                let mut ids: Vec<usize> = comp.into_iter().map(|n| n.index()).collect();
                ids.sort_unstable();
                ids
            })
            .collect();
        comps.sort();
        comps
    }

    /// True iff the directed graph is strongly connected (a single vertex
    /// needs a self-loop).
    pub fn is_irreducible(&self) -> bool {
        if self.dim == 0 {
            return false;
        }
        if self.dim == 1 {
            return self.entry(0, 0);
        }
        self.sccs().len() == 1
    }

    /// True when some power of the matrix is nonzero forever (the graph has
    /// a cycle); false means the matrix is nilpotent.
    pub fn has_cycle(&self) -> bool {
        (0..self.dim).any(|i| self.entry(i, i))
            || self.sccs().iter().any(|c| c.len() > 1)
    }

    /// Sum of all entries of the `k`-th power, exactly.
    pub fn entry_sum_power(&self, k: usize) -> BigUint {
        let mut w = vec![BigUint::one(); self.dim];
        for _ in 0..k {
            let mut next = vec![BigUint::zero(); self.dim];
            for (i, slot) in next.iter_mut().enumerate() {
                let row = self.row(i);
                let mut acc = BigUint::zero();
                for (j, &e) in row.iter().enumerate() {
                    if e == 1 {
                        acc += &w[j];
                    }
                }
                *slot = acc;
            }
            w = next;
        }
        w.into_iter().sum()
    }

    /// Kronecker product; the label alphabet becomes the product symbols.
    pub fn kron(&self, other: &TransitionMatrix) -> TransitionMatrix {
        let dim = self.dim * other.dim;
        let mut entries = vec![0u8; dim * dim];
        for i1 in 0..self.dim {
            for j1 in 0..self.dim {
                if !self.entry(i1, j1) {
                    continue;
                }
                for i2 in 0..other.dim {
                    for j2 in 0..other.dim {
                        if other.entry(i2, j2) {
                            let i = i1 * other.dim + i2;
                            let j = j1 * other.dim + j2;
                            entries[i * dim + j] = 1;
                        }
                    }
                }
            }
        }
        let labels = (0..dim)
            .map(|s| Word::new(dim as u32, vec![s as u32]).unwrap())
            .collect();
        TransitionMatrix { dim, entries, labels }
    }

    /// Text format: first line `dim=<int>`, then `dim` rows of
    /// space-separated 0/1.
    pub fn to_text(&self) -> String {
        let mut out = format!("dim={}\n", self.dim);
        for i in 0..self.dim {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<TransitionMatrix> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::ParseInput("missing dim=<int> header".into()))?;
        let dim = header
            .strip_prefix("dim=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::ParseInput(format!("bad header {header:?}, expected dim=<int>")))?;
        let mut entries = Vec::with_capacity(dim * dim);
        for _ in 0..dim {
            let line = lines
                .next()
                .ok_or_else(|| Error::ParseInput("missing matrix row".into()))?;
            let row: Vec<u8> = line
                .split_whitespace()
                .map(|t| match t {
                    "0" => Ok(0u8),
                    "1" => Ok(1u8),
                    _ => Err(Error::ParseInput(format!("bad entry {t:?}"))),
                })
                .collect::<Result<_>>()?;
            if row.len() != dim {
                return Err(Error::ParseInput(format!(
                    "expected {dim} entries per row, got {}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        let labels = (0..dim)
            .map(|s| Word::new(dim as u32, vec![s as u32]).unwrap())
            .collect();
        TransitionMatrix::new(dim, entries, labels)
    }
}

/// Factors of a product system, one transition matrix per coordinate map.
#[derive(Clone, Debug)]
pub struct ProductSpec {
    pub factors: Vec<TransitionMatrix>,
}

/// Kronecker product of all factors, ordered by the index bijection.
pub fn tensor_product(spec: &ProductSpec) -> Result<TransitionMatrix> {
    let mut iter = spec.factors.iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::InvalidParameter("product of zero factors".into()))?;
    let mut acc = first.clone();
    for f in iter {
        acc = acc.kron(f);
    }
    // relabel with product symbols in case of a single factor
    let dim = acc.dim;
    acc.labels = (0..dim)
        .map(|s| Word::new(dim as u32, vec![s as u32]).unwrap())
        .collect();
    Ok(acc)
}

/// Mixed-radix digits of `n` for factor sizes `(N_1, .., N_k)`, the last
/// factor least significant.
pub fn phi_index(n: usize, sizes: &[usize]) -> Result<Vec<usize>> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::InvalidParameter("factor sizes must be positive".into()));
    }
    let total: usize = sizes.iter().product();
    if n >= total {
        return Err(Error::InvalidParameter(format!(
            "index {n} out of range for product size {total}"
        )));
    }
    let mut digits = vec![0usize; sizes.len()];
    let mut rem = n;
    for (slot, &size) in digits.iter_mut().zip(sizes).rev() {
        *slot = rem % size;
        rem /= size;
    }
    Ok(digits)
}

/// Inverse of [`phi_index`].
pub fn phi_inverse(digits: &[usize], sizes: &[usize]) -> Result<usize> {
    if digits.len() != sizes.len() || sizes.is_empty() {
        return Err(Error::InvalidParameter("digit/size length mismatch".into()));
    }
    let mut acc = 0usize;
    for (&d, &s) in digits.iter().zip(sizes) {
        if d >= s {
            return Err(Error::InvalidParameter(format!("digit {d} out of range {s}")));
        }
        acc = acc * s + d;
    }
    Ok(acc)
}

/// Subshift of finite type over `{0, .., q-1}` given by a forbidden word
/// set, normalized to a common length at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubshiftSpec {
    q: u32,
    forbidden: WordSet,
}

impl SubshiftSpec {
    pub fn full_shift(q: u32) -> Self {
        Self {
            q,
            forbidden: WordSet::empty(q),
        }
    }

    pub fn new(q: u32, forbidden: WordSet) -> Result<Self> {
        if forbidden.q() != q {
            return Err(Error::AlphabetMismatch {
                expected: q,
                found: forbidden.q(),
            });
        }
        let forbidden = match forbidden.max_length() {
            Some(n) => forbidden.normalize_equal_length(n)?,
            None => forbidden,
        };
        Ok(Self { q, forbidden })
    }

    /// Reads a subshift off a square 0/1 matrix: symbol `j` may follow `i`
    /// exactly when the entry is 1.
    pub fn from_matrix(matrix: &TransitionMatrix) -> Result<Self> {
        let q = matrix.dim() as u32;
        let mut forbidden = WordSet::empty(q);
        for i in 0..matrix.dim() {
            for j in 0..matrix.dim() {
                if !matrix.entry(i, j) {
                    forbidden.push(Word::new(q, vec![i as u32, j as u32])?)?;
                }
            }
        }
        Self::new(q, forbidden)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn forbidden(&self) -> &WordSet {
        &self.forbidden
    }

    pub fn is_full(&self) -> bool {
        self.forbidden.is_empty()
    }

    /// Common forbidden-word length; `None` for the full shift.
    pub fn word_length(&self) -> Option<usize> {
        self.forbidden.common_length()
    }

    /// Adds further forbidden words, normalizing everything to one length.
    pub fn union_with(&self, extra: &WordSet) -> Result<SubshiftSpec> {
        if extra.q() != self.q {
            return Err(Error::AlphabetMismatch {
                expected: self.q,
                found: extra.q(),
            });
        }
        let n = self
            .word_length()
            .unwrap_or(1)
            .max(extra.max_length().unwrap_or(1));
        let mut combined = self.forbidden.normalize_equal_length(n)?;
        for w in &extra.normalize_equal_length(n)? {
            if !combined.contains(w) {
                combined.push(w.clone())?;
            }
        }
        SubshiftSpec::new(self.q, combined)
    }

    /// True when `w` contains no forbidden word.
    pub fn is_word_allowed(&self, w: &Word) -> bool {
        self.forbidden.iter().all(|f| !f.is_subword_of(w))
    }

    /// All allowed words of a given length, lexicographically.
    pub fn enumerate_allowed(&self, len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut symbols = vec![0u32; len];
        if len == 0 {
            return out;
        }
        loop {
            let w = Word::new(self.q, symbols.clone()).unwrap();
            if self.is_word_allowed(&w) {
                out.push(w);
            }
            let mut pos = len;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                symbols[pos] += 1;
                if symbols[pos] < self.q {
                    break;
                }
                symbols[pos] = 0;
            }
            if symbols.iter().all(|&s| s == 0) {
                return out;
            }
        }
    }

    /// Higher-block transition matrix.
    ///
    /// For forbidden words of length `n >= 2` the states are the `q^(n-1)`
    /// blocks in lexicographic order, and block `j` may follow block `i`
    /// when the `(n-2)`-overlap matches and the glued `n`-word is allowed
    /// (for `n = 2` this is the base `q x q` matrix with forbidden pairs
    /// zeroed). Forbidden single symbols are handled by deleting them from
    /// the alphabet first. The full shift uses the base `q x q` matrix.
    pub fn higher_block_matrix(&self, max_dim: usize) -> Result<TransitionMatrix> {
        let q = self.q as usize;
        let n = match self.word_length() {
            None => return Ok(TransitionMatrix::full(self.q)),
            Some(n) => n,
        };
        if n == 1 {
            let deleted: Vec<u32> = self.forbidden.iter().map(|w| w.symbols()[0]).collect();
            let keep: Vec<u32> = (0..self.q).filter(|s| !deleted.contains(s)).collect();
            if keep.is_empty() {
                return Err(Error::InvalidParameter(
                    "every symbol is forbidden; the subshift is empty".into(),
                ));
            }
            let dim = keep.len();
            let labels = keep
                .iter()
                .map(|&s| Word::new(self.q, vec![s]).unwrap())
                .collect();
            return TransitionMatrix::new(dim, vec![1; dim * dim], labels);
        }
        let dim = q
            .checked_pow((n - 1) as u32)
            .filter(|&d| d <= max_dim)
            .ok_or(Error::DimensionCap {
                required: q.checked_pow((n - 1) as u32).unwrap_or(usize::MAX),
                cap: max_dim,
            })?;
        let glue_table = forbidden_table(&self.forbidden);
        let tail_mod = dim / q; // q^(n-2)
        let mut entries = vec![0u8; dim * dim];
        for i in 0..dim {
            let base = (i % tail_mod) * q;
            for s in 0..q {
                let glue = (i as u64) * q as u64 + s as u64;
                if !glue_table[glue as usize] {
                    entries[i * dim + (base + s)] = 1;
                }
            }
        }
        let labels = block_labels(self.q, n - 1);
        TransitionMatrix::new(dim, entries, labels)
    }
}

/// Lookup table over base-q encodings of length-`n` words; `true` marks a
/// forbidden word. All words in the set must have equal length.
pub(crate) fn forbidden_table(set: &WordSet) -> Vec<bool> {
    let n = set.common_length().expect("equal-length set");
    let size = (set.q() as u64).pow(n as u32) as usize;
    let mut table = vec![false; size];
    for w in set {
        table[w.encode() as usize] = true;
    }
    table
}

/// Length-`len` blocks over `{0,..,q-1}` in lexicographic order.
pub(crate) fn block_labels(q: u32, len: usize) -> Vec<Word> {
    let dim = (q as usize).pow(len as u32);
    (0..dim)
        .map(|idx| {
            let mut symbols = vec![0u32; len];
            let mut rem = idx;
            for slot in symbols.iter_mut().rev() {
                *slot = (rem % q as usize) as u32;
                rem /= q as usize;
            }
            Word::new(q, symbols).unwrap()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(q: u32, s: &str) -> Word {
        Word::parse(q, s).unwrap()
    }

    fn spec(q: u32, words: &[&str]) -> SubshiftSpec {
        let set = WordSet::new(q, words.iter().map(|t| w(q, t)).collect()).unwrap();
        SubshiftSpec::new(q, set).unwrap()
    }

    #[test]
    fn higher_block_known_rows() {
        // q = 6, forbidden {00, 01}: row 0 = (0,0,1,1,1,1), others all ones
        let m = spec(6, &["00", "01"]).higher_block_matrix(DEFAULT_MAX_DIM).unwrap();
        assert_eq!(m.dim(), 6);
        assert_eq!(m.row(0), &[0, 0, 1, 1, 1, 1]);
        for i in 1..6 {
            assert!(m.row(i).iter().all(|&e| e == 1));
        }

        // q = 6, forbidden {04, 05}: row 0 = (1,1,1,1,0,0)
        let m = spec(6, &["04", "05"]).higher_block_matrix(DEFAULT_MAX_DIM).unwrap();
        assert_eq!(m.row(0), &[1, 1, 1, 1, 0, 0]);

        // full shift normalizes to the all-ones base matrix
        let m = SubshiftSpec::full_shift(2).higher_block_matrix(DEFAULT_MAX_DIM).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.row(0).iter().all(|&e| e == 1));
    }

    #[test]
    fn higher_block_length_three() {
        // q = 2, forbidden {010}: 4 blocks 00,01,10,11
        let m = spec(2, &["010"]).higher_block_matrix(DEFAULT_MAX_DIM).unwrap();
        assert_eq!(m.dim(), 4);
        // block 01 -> 10 glues 010, forbidden
        assert!(!m.entry(0b01, 0b10));
        // block 01 -> 11 glues 011, allowed
        assert!(m.entry(0b01, 0b11));
        // overlap mismatch is never allowed
        assert!(!m.entry(0b01, 0b00));
        // walks of length k-2 count allowed words of length k
        assert_eq!(m.entry_sum_power(3), BigUint::from(21u32)); // 32 - 11 with 010
    }

    #[test]
    fn single_symbol_deletion() {
        let m = spec(3, &["2"]).higher_block_matrix(DEFAULT_MAX_DIM).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.is_irreducible());
        assert_eq!(m.labels()[1].symbols(), &[1]);
    }

    #[test]
    fn dimension_cap_enforced() {
        let err = spec(6, &["00000000"]).higher_block_matrix(DEFAULT_MAX_DIM);
        assert!(matches!(err, Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn tensor_product_matches_worked_example() {
        let a1 = TransitionMatrix::new(
            2,
            vec![1, 1, 1, 0],
            vec![w(2, "0"), w(2, "1")],
        )
        .unwrap();
        let a2 = TransitionMatrix::new(
            2,
            vec![0, 1, 1, 1],
            vec![w(2, "0"), w(2, "1")],
        )
        .unwrap();
        let prod = tensor_product(&ProductSpec {
            factors: vec![a1.clone(), a2],
        })
        .unwrap();
        let want = [
            [0, 1, 0, 1],
            [1, 1, 1, 1],
            [0, 1, 0, 0],
            [1, 1, 0, 0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(prod.entry(i, j), want[i][j] == 1);
            }
        }

        // golden mean squared
        let prod = tensor_product(&ProductSpec {
            factors: vec![a1.clone(), a1.clone()],
        })
        .unwrap();
        let want = [
            [1, 1, 1, 1],
            [1, 0, 1, 0],
            [1, 1, 0, 0],
            [1, 0, 0, 0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(prod.entry(i, j), want[i][j] == 1);
            }
        }
        assert!(prod.is_irreducible());

        // identity factor
        let one = TransitionMatrix::new(1, vec![1], vec![w(1, "0")]).unwrap();
        let same = tensor_product(&ProductSpec {
            factors: vec![a1.clone(), one],
        })
        .unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(same.entry(i, j), a1.entry(i, j));
            }
        }
    }

    #[test]
    fn phi_bijection_examples() {
        assert_eq!(phi_index(0, &[2, 2]).unwrap(), vec![0, 0]);
        assert_eq!(phi_index(3, &[2, 2]).unwrap(), vec![1, 1]);
        assert_eq!(phi_index(5, &[2, 2, 2]).unwrap(), vec![1, 0, 1]);
        assert!(phi_index(4, &[2, 2]).is_err());
        for n in 0..12 {
            let digits = phi_index(n, &[3, 2, 2]).unwrap();
            assert_eq!(phi_inverse(&digits, &[3, 2, 2]).unwrap(), n);
        }
    }

    #[test]
    fn irreducibility_and_sccs() {
        let full = TransitionMatrix::full(3);
        assert!(full.is_irreducible());

        let tri = TransitionMatrix::new(
            2,
            vec![1, 1, 0, 1],
            vec![w(2, "0"), w(2, "1")],
        )
        .unwrap();
        assert!(!tri.is_irreducible());
        assert_eq!(tri.sccs(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = spec(6, &["00", "01"]).higher_block_matrix(DEFAULT_MAX_DIM).unwrap();
        let text = m.to_text();
        assert!(text.starts_with("dim=6\n"));
        let back = TransitionMatrix::parse_text(&text).unwrap();
        assert_eq!(back.dim(), 6);
        for i in 0..6 {
            assert_eq!(back.row(i), m.row(i));
        }
    }

    #[test]
    fn union_normalizes_to_common_length() {
        let ambient = spec(4, &["11", "13", "22", "23", "31", "32", "33"]);
        let hole = WordSet::new(4, vec![w(4, "000")]).unwrap();
        let union = ambient.union_with(&hole).unwrap();
        assert_eq!(union.word_length(), Some(3));
        // 7 pairs * 4 extensions + the hole word
        assert_eq!(union.forbidden().len(), 29);
    }
}
