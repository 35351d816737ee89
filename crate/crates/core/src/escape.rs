//! Escape rates by two independent methods, plus the recurrence-time
//! statistics of holes.
//!
//! A hole is a union of cylinders over equal-length words inside an ambient
//! subshift. The spectral method compares the entropies of the ambient
//! shift and the shift with the hole words also forbidden. The
//! combinatorial method builds the correlation matrix of the hole words,
//! forms the generating function of hole-avoiding word counts, and isolates
//! the dominant root of its recurrence exactly; it applies to full-shift
//! ambients. The two share no code past the word set, which is what makes
//! their agreement a meaningful check.

use crate::algebra::{
    largest_positive_root, rational_matrix_inverse_sum, recurrence_from_rational, IntPolynomial,
    RationalFunction, Recurrence, DEFAULT_ROOT_TOL,
};
use crate::shift::{forbidden_table, SubshiftSpec, DEFAULT_MAX_DIM};
use crate::spectral::{self, power_iteration};
use crate::words::{correlation_matrix, correlation_polynomial, Word, WordSet};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::HashMap;

/// Tolerance at which the two methods are required to agree.
pub const METHOD_AGREEMENT_TOL: f64 = 1e-9;

/// Dense higher-block matrices are used up to this dimension for full-shift
/// ambients; above it the de Bruijn structure is applied implicitly.
const IMPLICIT_THRESHOLD: usize = 4096;

/// Hard ceiling on implicit-operator state count (`q^n` table entries).
const IMPLICIT_TABLE_CAP: u128 = 1 << 31;

/// Which escape-rate pipeline produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Spectral,
    Combinatorial,
}

/// Outcome of one escape-rate computation. `rho` is `+inf` when nothing
/// survives the hole (zero spectral radius); it serializes as `"inf"`.
#[derive(Clone, Debug)]
pub struct EscapeResult {
    pub rho: f64,
    pub method: Method,
    pub lambda_ambient: f64,
    pub lambda_with_hole: f64,
    pub details: EscapeDetails,
}

#[derive(Clone, Debug)]
pub enum EscapeDetails {
    Spectral {
        ambient_dim: usize,
        hole_dim: usize,
        /// Set when the with-hole matrix is reducible (entropy then means
        /// spectral radius); `None` when the implicit path cannot tell.
        reducible_with_hole: Option<bool>,
        implicit: bool,
    },
    Combinatorial {
        correlation_inverse_sum: RationalFunction,
        generating_function: RationalFunction,
        recurrence: Recurrence,
    },
}

fn rho_from_lambdas(lambda_ambient: f64, lambda_with_hole: f64) -> f64 {
    if lambda_with_hole <= 0.0 {
        return f64::INFINITY;
    }
    (lambda_ambient.ln() - lambda_with_hole.ln()).max(0.0)
}

/// A hole (union of cylinders) carved out of an ambient subshift.
///
/// Hole words are normalized to share one length with the ambient forbidden
/// words; normalized words that leave the ambient subshift are dropped
/// (they carry no ambient measure).
#[derive(Clone, Debug)]
pub struct HoleSpec {
    ambient: SubshiftSpec,
    hole: WordSet,
    word_length: usize,
    dropped: Vec<Word>,
}

impl HoleSpec {
    pub fn new(ambient: SubshiftSpec, hole: WordSet) -> Result<Self> {
        if hole.q() != ambient.q() {
            return Err(Error::AlphabetMismatch {
                expected: ambient.q(),
                found: hole.q(),
            });
        }
        let n = ambient
            .word_length()
            .unwrap_or(0)
            .max(hole.max_length().unwrap_or(0))
            .max(2);
        let normalized = hole.normalize_equal_length(n)?;
        let mut kept = WordSet::empty(ambient.q());
        let mut dropped = Vec::new();
        for w in &normalized {
            if ambient.is_word_allowed(w) {
                kept.push(w.clone())?;
            } else {
                dropped.push(w.clone());
            }
        }
        Ok(Self {
            ambient,
            hole: kept,
            word_length: n,
            dropped,
        })
    }

    pub fn full_shift(q: u32, hole: WordSet) -> Result<Self> {
        Self::new(SubshiftSpec::full_shift(q), hole)
    }

    pub fn ambient(&self) -> &SubshiftSpec {
        &self.ambient
    }

    pub fn hole(&self) -> &WordSet {
        &self.hole
    }

    pub fn q(&self) -> u32 {
        self.ambient.q()
    }

    /// Common normalized length of ambient forbidden and hole words.
    pub fn word_length(&self) -> usize {
        self.word_length
    }

    /// Normalized hole words that fell outside the ambient subshift.
    pub fn dropped(&self) -> &[Word] {
        &self.dropped
    }

    /// Parry measure of the hole: sum over its (disjoint) cylinders.
    pub fn measure(&self, max_dim: usize) -> Result<f64> {
        let mut total = 0.0;
        for w in &self.hole {
            total += spectral::parry_cylinder_measure(&self.ambient, w, max_dim)?;
        }
        Ok(total)
    }
}

/// De Bruijn-structured transition operator for a full shift minus a set of
/// forbidden words, applied without materializing the matrix.
pub(crate) struct FullShiftOperator {
    q: usize,
    dim: usize,
    tail_mod: usize,
    forbidden: Vec<bool>,
}

impl FullShiftOperator {
    pub(crate) fn new(q: u32, words: &WordSet) -> Result<Self> {
        let n = words.common_length().ok_or(Error::UnequalWordLengths)?;
        let q = q as usize;
        let states = (q as u128).pow(n as u32);
        if states > IMPLICIT_TABLE_CAP {
            return Err(Error::DimensionCap {
                required: usize::MAX,
                cap: IMPLICIT_TABLE_CAP as usize,
            });
        }
        let dim = (q as u128).pow((n - 1) as u32) as usize;
        Ok(Self {
            q,
            dim,
            tail_mod: dim / q,
            forbidden: forbidden_table(words),
        })
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn apply(&self, input: &[f64], out: &mut [f64]) {
        for i in 0..self.dim {
            let base = (i % self.tail_mod) * self.q;
            let glue = i * self.q;
            let mut acc = 0.0;
            for s in 0..self.q {
                if !self.forbidden[glue + s] {
                    acc += input[base + s];
                }
            }
            out[i] = acc;
        }
    }

    pub(crate) fn apply_transpose(&self, input: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|s| *s = 0.0);
        for i in 0..self.dim {
            let x = input[i];
            if x == 0.0 {
                continue;
            }
            let base = (i % self.tail_mod) * self.q;
            let glue = i * self.q;
            for s in 0..self.q {
                if !self.forbidden[glue + s] {
                    out[base + s] += x;
                }
            }
        }
    }

    pub(crate) fn dominant_eigenvalue(&self) -> (f64, usize) {
        // de Bruijn survivor graphs have a clear spectral gap; a couple of
        // thousand iterations bounds the cost even if convergence stalls
        let (lambda, _, _, iterations) = power_iteration(
            self.dim,
            |input, out| self.apply(input, out),
            |input, out| self.apply_transpose(input, out),
            2_000,
            false,
        );
        // a 0/1 matrix has spectral radius 0 or >= 1; estimates below 1 can
        // only be the slow decay of a nilpotent (empty-survivor) operator
        if lambda < 0.9 {
            (0.0, iterations)
        } else {
            (lambda, iterations)
        }
    }
}

/// Escape rate as an entropy difference between the ambient shift and the
/// shift with the hole words also forbidden.
pub fn escape_rate_spectral(h: &HoleSpec, max_dim: usize) -> Result<EscapeResult> {
    let ambient_t = h.ambient().higher_block_matrix(max_dim)?;
    if !ambient_t.is_irreducible() {
        return Err(Error::ReducibleAmbient);
    }
    let lambda_ambient = spectral::perron(&ambient_t)?.lambda;
    if h.hole().is_empty() {
        return Ok(EscapeResult {
            rho: 0.0,
            method: Method::Spectral,
            lambda_ambient,
            lambda_with_hole: lambda_ambient,
            details: EscapeDetails::Spectral {
                ambient_dim: ambient_t.dim(),
                hole_dim: ambient_t.dim(),
                reducible_with_hole: Some(false),
                implicit: false,
            },
        });
    }
    let union = h.ambient().union_with(h.hole())?;
    let n = union.word_length().unwrap_or(1);
    let q = h.q() as u128;
    let dim_b = q.pow(n.saturating_sub(1) as u32);
    let use_implicit = h.ambient().is_full() && dim_b > IMPLICIT_THRESHOLD as u128;
    let (lambda_with_hole, hole_dim, reducible, implicit) = if use_implicit {
        let op = FullShiftOperator::new(h.q(), union.forbidden())?;
        let (lambda, _) = op.dominant_eigenvalue();
        (lambda, op.dim(), None, true)
    } else {
        let b = union.higher_block_matrix(max_dim)?;
        if b.is_zero() || !b.has_cycle() {
            (0.0, b.dim(), Some(true), false)
        } else {
            let pd = spectral::perron(&b)?;
            (pd.lambda, b.dim(), Some(!pd.irreducible), false)
        }
    };
    Ok(EscapeResult {
        rho: rho_from_lambdas(lambda_ambient, lambda_with_hole),
        method: Method::Spectral,
        lambda_ambient,
        lambda_with_hole,
        details: EscapeDetails::Spectral {
            ambient_dim: ambient_t.dim(),
            hole_dim,
            reducible_with_hole: reducible,
            implicit,
        },
    })
}

/// Escape rate from hole-avoiding word counts over a full shift.
///
/// Builds the correlation matrix of the (reduced, equal-length) hole words,
/// the generating function `z / ((z - q) + a(z))` with `a(z)` the entry sum
/// of the inverse correlation matrix, and isolates the dominant root of the
/// recurrence denominator exactly.
pub fn escape_rate_combinatorial(q: u32, hole: &WordSet) -> Result<EscapeResult> {
    if hole.q() != q {
        return Err(Error::AlphabetMismatch {
            expected: q,
            found: hole.q(),
        });
    }
    let a = if hole.is_empty() {
        RationalFunction::zero()
    } else {
        if hole.common_length().is_none() {
            return Err(Error::UnequalWordLengths);
        }
        if !hole.is_reduced() {
            return Err(Error::NotReduced(format!("{} words overlap as subwords", hole.len())));
        }
        rational_matrix_inverse_sum(&correlation_matrix(hole)?)?
    };
    let z = IntPolynomial::monomial(1, 1);
    let z_minus_q = IntPolynomial::from_coeffs(vec![BigInt::from(-i64::from(q)), BigInt::from(1)]);
    let generating = RationalFunction::new(
        &z * a.denominator(),
        &(&z_minus_q * a.denominator()) + a.numerator(),
    )?;
    let recurrence = recurrence_from_rational(&generating)?;
    let hi = BigRational::from(BigInt::from(q));
    let lambda = largest_positive_root(recurrence.characteristic(), &hi, DEFAULT_ROOT_TOL)?
        .unwrap_or(0.0);
    Ok(EscapeResult {
        rho: rho_from_lambdas(f64::from(q), lambda),
        method: Method::Combinatorial,
        lambda_ambient: f64::from(q),
        lambda_with_hole: lambda,
        details: EscapeDetails::Combinatorial {
            correlation_inverse_sum: a,
            generating_function: generating,
            recurrence,
        },
    })
}

/// Solves the linear system tying the avoiding-count generating function
/// `F` to the end-with-`w_i` generating functions `F_i`, over the field of
/// rational functions. Returns `(F, [F_1, .., F_k])`.
pub fn solve_generating_system(
    q: u32,
    words: &WordSet,
) -> Result<(RationalFunction, Vec<RationalFunction>)> {
    let z = RationalFunction::from_poly(IntPolynomial::monomial(1, 1));
    let z_minus_q = RationalFunction::from_poly(IntPolynomial::from_coeffs(vec![
        BigInt::from(-i64::from(q)),
        BigInt::from(1),
    ]));
    if words.is_empty() {
        return Ok((z.div(&z_minus_q)?, Vec::new()));
    }
    if !words.is_reduced() {
        return Err(Error::NotReduced("system requires a reduced collection".into()));
    }
    let k = words.len();
    // unknowns: F, F_1 .. F_k; rows: the count identity, then one row per word
    let mut rows: Vec<Vec<RationalFunction>> = Vec::with_capacity(k + 1);
    let mut first = vec![z_minus_q];
    first.extend(std::iter::repeat_n(z.clone(), k));
    first.push(z.clone()); // rhs
    rows.push(first);
    for wi in words {
        let mut row = vec![RationalFunction::from_poly(IntPolynomial::one())];
        for wj in words {
            let corr = correlation_polynomial(wj, wi)?;
            row.push(z.mul(&RationalFunction::from_poly(corr)).neg());
        }
        row.push(RationalFunction::zero()); // rhs
        rows.push(row);
    }
    let unknowns = k + 1;
    for col in 0..unknowns {
        let pivot = (col..unknowns)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        rows.swap(col, pivot);
        let pivot_val = rows[col][col].clone();
        for r in 0..unknowns {
            if r == col || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].div(&pivot_val)?;
            for c in col..=unknowns {
                let delta = factor.mul(&rows[col][c]);
                rows[r][c] = rows[r][c].sub(&delta);
            }
        }
    }
    let mut solution = Vec::with_capacity(unknowns);
    for r in 0..unknowns {
        solution.push(rows[r][unknowns].div(&rows[r][r])?);
    }
    let f = solution.remove(0);
    Ok((f, solution))
}

/// Minimal period over the periodic points of the ambient shift that lie in
/// the hole, searched up to the hole word length `n`.
///
/// A period `l <= n` qualifies when some hole word is `l`-periodic as far
/// as it reaches and the `l`-periodic extension of its prefix stays inside
/// the ambient subshift. Errs when no period `<= n` works (the hole meets
/// no short periodic orbit).
pub fn minimal_period(h: &HoleSpec) -> Result<usize> {
    if h.hole().is_empty() {
        return Err(Error::EmptyWordSet);
    }
    let n = h.word_length();
    for l in 1..=n {
        for u in h.hole() {
            if u.has_period(l) && periodic_extension_allowed(h.ambient(), &u.symbols()[..l]) {
                return Ok(l);
            }
        }
    }
    Err(Error::NoPeriodicPoint { limit: n })
}

fn periodic_extension_allowed(ambient: &SubshiftSpec, prefix: &[u32]) -> bool {
    let nf = match ambient.word_length() {
        None => return true,
        Some(nf) => nf,
    };
    // every forbidden-length window of the periodic sequence shows up in the
    // first l + nf - 1 symbols
    let len = prefix.len() + nf - 1;
    let symbols: Vec<u32> = (0..len).map(|i| prefix[i % prefix.len()]).collect();
    let w = Word::new(ambient.q(), symbols).expect("prefix symbols are valid");
    ambient.is_word_allowed(&w)
}

/// Poincare recurrence time of the hole: least `l >= 1` such that the hole
/// meets its `l`-th preimage in positive measure, i.e. some pair of hole
/// words glues at offset `l` into a word of the ambient subshift.
pub fn poincare_recurrence_time(h: &HoleSpec, max_dim: usize) -> Result<usize> {
    if h.hole().is_empty() {
        return Err(Error::EmptyWordSet);
    }
    let n = h.word_length();
    let q = h.q();
    for l in 1..n {
        for u in h.hole() {
            for v in h.hole() {
                let overlap = n - l;
                if u.symbols()[l..] != v.symbols()[..overlap] {
                    continue;
                }
                let mut symbols = u.symbols().to_vec();
                symbols.extend_from_slice(&v.symbols()[overlap..]);
                let glued = Word::new(q, symbols)?;
                if h.ambient().is_word_allowed(&glued) {
                    return Ok(l);
                }
            }
        }
    }
    if h.ambient().is_full() {
        // u followed directly by v is always admissible
        return Ok(n);
    }
    // bridge search: u, then l - n free symbols, then v
    let t = h.ambient().higher_block_matrix(max_dim)?;
    let dim = t.dim();
    let block_len = t.labels()[0].len();
    let index: HashMap<&[u32], usize> = t
        .labels()
        .iter()
        .enumerate()
        .map(|(i, w)| (w.symbols(), i))
        .collect();
    let mut reach = vec![false; dim];
    for u in h.hole() {
        let suffix = &u.symbols()[u.len() - block_len..];
        if let Some(&i) = index.get(suffix) {
            reach[i] = true;
        }
    }
    let limit = n + dim + 1;
    for l in n..=limit {
        for v in h.hole() {
            if forced_walk(&t, &index, &reach, v) {
                return Ok(l);
            }
        }
        let mut next = vec![false; dim];
        for i in 0..dim {
            if reach[i] {
                for j in 0..dim {
                    if t.entry(i, j) {
                        next[j] = true;
                    }
                }
            }
        }
        if next.iter().all(|&b| !b) {
            break;
        }
        reach = next;
    }
    Err(Error::NoRecurrenceFound { limit })
}

fn forced_walk(
    t: &crate::shift::TransitionMatrix,
    index: &HashMap<&[u32], usize>,
    from: &[bool],
    v: &Word,
) -> bool {
    let mut cur = from.to_vec();
    for &s in v.symbols() {
        let mut next = vec![false; t.dim()];
        let mut any = false;
        for (i, &active) in cur.iter().enumerate() {
            if !active {
                continue;
            }
            // shift the block left by one and append s
            let mut target = t.labels()[i].symbols()[1..].to_vec();
            target.push(s);
            if let Some(&j) = index.get(target.as_slice()) {
                if t.entry(i, j) {
                    next[j] = true;
                    any = true;
                }
            }
        }
        if !any {
            return false;
        }
        cur = next;
    }
    true
}

/// Both escape rates plus their intermediate data; errs (with both values)
/// when they disagree beyond [`METHOD_AGREEMENT_TOL`].
#[derive(Clone, Debug)]
pub struct MethodComparison {
    pub spectral: EscapeResult,
    pub combinatorial: EscapeResult,
    pub difference: f64,
}

pub fn compare_methods(q: u32, hole: &WordSet) -> Result<MethodComparison> {
    let h = HoleSpec::full_shift(q, hole.clone())?;
    let spectral = escape_rate_spectral(&h, DEFAULT_MAX_DIM)?;
    let combinatorial = escape_rate_combinatorial(q, h.hole())?;
    let difference = match (spectral.rho.is_finite(), combinatorial.rho.is_finite()) {
        (true, true) => (spectral.rho - combinatorial.rho).abs(),
        (false, false) => 0.0,
        _ => f64::INFINITY,
    };
    if difference > METHOD_AGREEMENT_TOL {
        return Err(Error::MethodDisagreement {
            spectral: spectral.rho,
            combinatorial: combinatorial.rho,
        });
    }
    Ok(MethodComparison {
        spectral,
        combinatorial,
        difference,
    })
}
