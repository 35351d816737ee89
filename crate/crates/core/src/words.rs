//! Words over a finite alphabet, word sets, and correlation polynomials.
//!
//! The correlation polynomial `(uw)_z` records the shifts at which a copy of
//! `w` placed under `u` matches on the overlap: sliding `w` right by `l`
//! digits contributes `z^(|u|-1-l)` when the overlapping parts agree. The
//! autocorrelation `(ww)_z` is always monic of degree `|w| - 1`.

use crate::algebra::IntPolynomial;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Finite word over the alphabet `{0, .., q-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    q: u32,
    symbols: Vec<u32>,
}

impl Word {
    pub fn new(q: u32, symbols: Vec<u32>) -> Result<Self> {
        if q < 1 {
            return Err(Error::InvalidParameter("alphabet size must be >= 1".into()));
        }
        if symbols.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s >= q) {
            return Err(Error::InvalidWord(format!("symbol {s} >= q ({q})")));
        }
        Ok(Self { q, symbols })
    }

    /// Parses either comma-separated symbols (`0,4,1`) or, for `q <= 10`, a
    /// compact digit string (`041`).
    pub fn parse(q: u32, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        let symbols = if text.contains(',') {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidWord(format!("bad symbol {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else if q > 10 {
            // comma-separated is the only multi-symbol form here, so a bare
            // token is a single symbol
            vec![text
                .parse::<u32>()
                .map_err(|_| Error::InvalidWord(format!("bad symbol {text:?}")))?]
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::InvalidWord(format!("bad digit {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(q, symbols)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// Base-q encoding with the first symbol most significant.
    pub fn encode(&self) -> u64 {
        self.symbols
            .iter()
            .fold(0u64, |acc, &s| acc * u64::from(self.q) + u64::from(s))
    }

    /// True when `self` occurs as a contiguous block of `other`.
    pub fn is_subword_of(&self, other: &Word) -> bool {
        let n = self.len();
        other.len() >= n
            && other
                .symbols
                .windows(n)
                .any(|win| win == self.symbols.as_slice())
    }

    /// True when `symbols[i + l] == symbols[i]` for every valid `i`.
    pub fn has_period(&self, l: usize) -> bool {
        l >= 1 && (l >= self.len() || (0..self.len() - l).all(|i| self.symbols[i + l] == self.symbols[i]))
    }

    /// Serialization used by word-set files: comma-separated symbols.
    pub fn to_csv_symbols(&self) -> String {
        self.symbols
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q <= 10 {
            for s in &self.symbols {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.to_csv_symbols())
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({}; q={})", self, self.q)
    }
}

/// Ordered, duplicate-free collection of words over one alphabet.
///
/// Insertion order is preserved: matrix layouts and CSV output follow it.
#[derive(Clone, Debug, Default)]
pub struct WordSet {
    q: u32,
    words: Vec<Word>,
    index: std::collections::HashSet<Word>,
}

impl PartialEq for WordSet {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.words == other.words
    }
}

impl Eq for WordSet {}

impl WordSet {
    pub fn empty(q: u32) -> Self {
        Self {
            q,
            words: Vec::new(),
            index: std::collections::HashSet::new(),
        }
    }

    pub fn new(q: u32, words: Vec<Word>) -> Result<Self> {
        let mut set = Self::empty(q);
        for w in words {
            set.push(w)?;
        }
        Ok(set)
    }

    pub fn push(&mut self, w: Word) -> Result<()> {
        if w.q() != self.q {
            return Err(Error::AlphabetMismatch {
                expected: self.q,
                found: w.q(),
            });
        }
        if !self.index.insert(w.clone()) {
            return Err(Error::DuplicateWord(w.to_string()));
        }
        self.words.push(w);
        Ok(())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.words.iter()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.index.contains(w)
    }

    /// Common length when all words agree, `None` otherwise or when empty.
    pub fn common_length(&self) -> Option<usize> {
        let first = self.words.first()?.len();
        self.words.iter().all(|w| w.len() == first).then_some(first)
    }

    pub fn max_length(&self) -> Option<usize> {
        self.words.iter().map(Word::len).max()
    }

    /// No word is a subword of another.
    pub fn is_reduced(&self) -> bool {
        for (i, u) in self.words.iter().enumerate() {
            for (j, w) in self.words.iter().enumerate() {
                if i != j && u.is_subword_of(w) {
                    return false;
                }
            }
        }
        true
    }

    /// Replaces each word of length `< n` by all of its length-`n`
    /// extensions; the generated subshift is unchanged. Duplicate
    /// extensions (possible when the input is not reduced) are dropped.
    pub fn normalize_equal_length(&self, n: usize) -> Result<WordSet> {
        if let Some(max) = self.max_length() {
            if n < max {
                return Err(Error::InvalidParameter(format!(
                    "target length {n} is below the longest word ({max})"
                )));
            }
        }
        const EXTENSION_BUDGET: u128 = 10_000_000;
        let total = self
            .words
            .iter()
            .try_fold(0u128, |acc, w| {
                u128::from(self.q)
                    .checked_pow((n - w.len()) as u32)
                    .and_then(|e| acc.checked_add(e))
            })
            .unwrap_or(u128::MAX);
        if total > EXTENSION_BUDGET {
            return Err(Error::EnumerationBudget {
                required: total,
                budget: EXTENSION_BUDGET as u64,
            });
        }
        let mut out = WordSet::empty(self.q);
        for w in &self.words {
            let pad = n - w.len();
            let mut suffix = vec![0u32; pad];
            loop {
                let mut symbols = w.symbols().to_vec();
                symbols.extend_from_slice(&suffix);
                let ext = Word::new(self.q, symbols)?;
                if !out.contains(&ext) {
                    out.push(ext)?;
                }
                // odometer over the free suffix
                let mut pos = pad;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    suffix[pos] += 1;
                    if suffix[pos] < self.q {
                        break;
                    }
                    suffix[pos] = 0;
                }
                if suffix.iter().all(|&s| s == 0) {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Parses the word-set text format: a mandatory `q=<int>` header, one
    /// word per line with comma-separated symbols, `#` comments ignored.
    pub fn parse_text(text: &str) -> Result<WordSet> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| {
            Error::ParseInput("missing q=<int> header".into())
        })?;
        let q = header
            .strip_prefix("q=")
            .and_then(|v| v.trim().parse::<u32>().ok())
            .ok_or_else(|| Error::ParseInput(format!("bad header {header:?}, expected q=<int>")))?;
        let mut set = WordSet::empty(q);
        for line in lines {
            set.push(Word::parse(q, line)?)?;
        }
        Ok(set)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("q={}\n", self.q);
        for w in &self.words {
            out.push_str(&w.to_csv_symbols());
            out.push('\n');
        }
        out
    }
}

impl<'a> IntoIterator for &'a WordSet {
    type Item = &'a Word;
    type IntoIter = std::slice::Iter<'a, Word>;
    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

/// Correlation polynomial `(uw)_z`: place a copy of `w` under `u`, shift it
/// right by `l` digits, and record `z^(|u|-1-l)` whenever the overlapping
/// parts match.
pub fn correlation_polynomial(u: &Word, w: &Word) -> Result<IntPolynomial> {
    if u.q() != w.q() {
        return Err(Error::AlphabetMismatch {
            expected: u.q(),
            found: w.q(),
        });
    }
    let n1 = u.len();
    let n2 = w.len();
    let mut coeffs = vec![BigInt::zero(); n1];
    for shift in 0..n1 {
        let overlap = (n1 - shift).min(n2);
        let matches = (0..overlap).all(|i| u.symbols()[shift + i] == w.symbols()[i]);
        if matches {
            coeffs[n1 - 1 - shift] = BigInt::one();
        }
    }
    Ok(IntPolynomial::from_coeffs(coeffs))
}

/// Correlation matrix with entry `(i, j) = (w_j w_i)_z` (column index names
/// the word that is slid underneath).
pub fn correlation_matrix(set: &WordSet) -> Result<Vec<Vec<IntPolynomial>>> {
    if set.is_empty() {
        return Err(Error::EmptyWordSet);
    }
    set.iter()
        .map(|wi| {
            set.iter()
                .map(|wj| correlation_polynomial(wj, wi))
                .collect()
        })
        .collect()
}
