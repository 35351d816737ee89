//! Families of equal-length words with trivial autocorrelation and
//! vanishing cross-correlations, and the root machinery for the escape
//! rates of the holes they carve out.
//!
//! Three constructions are provided. Variant 1 appends a fixed terminal
//! symbol to every word over the remaining alphabet; variant 2 generalizes
//! the terminal symbol to a reserved set; variant 3 additionally allows a
//! reserved suffix of length `r`. A hole made of `k = q^(m-n)` such words
//! of length `m` has avoiding-count characteristic polynomial
//! `r^m - q r^(m-1) + k`, whose dominant root in `(q-1, q)` yields the
//! escape rate.

use crate::algebra::{isolate_dominant_positive_root, IntPolynomial, DEFAULT_ROOT_TOL};
use crate::words::{correlation_polynomial, Word, WordSet};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

/// Which of the three word-set constructions to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    One,
    Two,
    Three,
}

impl Variant {
    pub fn from_index(idx: u32) -> Result<Self> {
        match idx {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            _ => Err(Error::InvalidParameter(format!("unknown variant {idx}"))),
        }
    }
}

/// Validated parameters for a construction run.
#[derive(Clone, Debug)]
pub struct ConstructionParams {
    pub q: u32,
    pub m: usize,
    pub variant: Variant,
    pub ell: u32,
    pub r: usize,
    pub reserved: Vec<u32>,
}

impl ConstructionParams {
    /// `ell`, `r` and `reserved` may be omitted where the variant fixes
    /// them; `reserved` defaults to the top `ell` symbols.
    pub fn new(
        q: u32,
        m: usize,
        variant: Variant,
        ell: Option<u32>,
        r: Option<usize>,
        reserved: Option<Vec<u32>>,
    ) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter("alphabet size must be >= 2".into()));
        }
        if m < 1 {
            return Err(Error::InvalidParameter("word length must be >= 1".into()));
        }
        let ell = match variant {
            Variant::One => {
                if ell.is_some_and(|l| l != 1) {
                    return Err(Error::InvalidParameter("variant 1 fixes ell = 1".into()));
                }
                1
            }
            _ => ell.unwrap_or(1),
        };
        let r = match variant {
            Variant::One | Variant::Two => {
                if r.is_some_and(|r| r != 1) {
                    return Err(Error::InvalidParameter(
                        "variants 1 and 2 fix the suffix length r = 1".into(),
                    ));
                }
                1
            }
            Variant::Three => r.unwrap_or(1),
        };
        if !(1..q).contains(&ell) || (variant != Variant::One && ell >= q - 1 && q > 2) {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= ell < q-1, got ell={ell}, q={q}"
            )));
        }
        if r < 1 || (r >= m && m > 1) {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= r < m, got r={r}, m={m}"
            )));
        }
        let reserved = match reserved {
            Some(rs) => {
                if rs.len() != ell as usize {
                    return Err(Error::InvalidParameter(format!(
                        "expected {ell} reserved symbols, got {}",
                        rs.len()
                    )));
                }
                let mut sorted = rs.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != rs.len() || rs.iter().any(|&s| s >= q) {
                    return Err(Error::InvalidParameter("reserved symbols must be distinct and < q".into()));
                }
                rs
            }
            None => ((q - ell)..q).collect(),
        };
        Ok(Self {
            q,
            m,
            variant,
            ell,
            r,
            reserved,
        })
    }

    /// Number of words the construction yields: `ell^r * (q-ell)^(m-r)`.
    pub fn cardinality(&self) -> BigUint {
        let free = BigUint::from(self.q - self.ell);
        let res = BigUint::from(self.ell);
        free.pow((self.m - self.r) as u32) * res.pow(self.r as u32)
    }
}

/// Builds the word set: every word is a free-symbol prefix of length
/// `m - r` followed by a reserved-symbol suffix of length `r`, enumerated
/// lexicographically.
pub fn build(params: &ConstructionParams) -> Result<WordSet> {
    let free: Vec<u32> = (0..params.q)
        .filter(|s| !params.reserved.contains(s))
        .collect();
    let mut set = WordSet::empty(params.q);
    let prefix_len = params.m - params.r;
    let mut prefix_idx = vec![0usize; prefix_len];
    loop {
        let mut suffix_idx = vec![0usize; params.r];
        loop {
            let mut symbols: Vec<u32> = prefix_idx.iter().map(|&i| free[i]).collect();
            symbols.extend(suffix_idx.iter().map(|&i| params.reserved[i]));
            set.push(Word::new(params.q, symbols)?)?;
            if !odometer(&mut suffix_idx, params.reserved.len()) {
                break;
            }
        }
        if !odometer(&mut prefix_idx, free.len()) {
            break;
        }
    }
    Ok(set)
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// True when every autocorrelation is `z^(m-1)` and every ordered
/// cross-correlation vanishes.
pub fn is_correlation_free(set: &WordSet) -> Result<bool> {
    let m = match set.common_length() {
        Some(m) => m,
        None if set.is_empty() => return Ok(true),
        None => return Err(Error::UnequalWordLengths),
    };
    let trivial = IntPolynomial::monomial(1, m - 1);
    for (i, u) in set.iter().enumerate() {
        for (j, w) in set.iter().enumerate() {
            let corr = correlation_polynomial(u, w)?;
            let ok = if i == j { corr == trivial } else { corr.is_zero() };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest word length `m` for which the construction still yields at least
/// `q^(m-n)` words, computed in exact integer arithmetic (the closed-form
/// logarithmic bound is floor-sensitive at grid points).
pub fn max_word_length(q: u32, n: usize, ell: u32, r: usize) -> Result<usize> {
    if ell >= q {
        return Err(Error::InvalidParameter(format!("need ell < q, got {ell} >= {q}")));
    }
    if ell < 1 || n < 1 || r < 1 {
        return Err(Error::InvalidParameter("n, ell, r must be >= 1".into()));
    }
    let q_big = BigUint::from(q);
    let free = BigUint::from(q - ell);
    let res = BigUint::from(ell);
    let mut m = n.max(r);
    let mut best = None;
    loop {
        let cardinality = free.pow((m - r) as u32) * res.pow(r as u32);
        let needed = q_big.pow((m - n) as u32);
        if cardinality >= needed {
            best = Some(m);
            m += 1;
        } else {
            break;
        }
    }
    best.ok_or_else(|| {
        Error::InvalidParameter(format!("no feasible length for q={q}, n={n}, ell={ell}, r={r}"))
    })
}

/// Dominant root of `r^m - q r^(m-1) + q^(m-n)` in `(q-1, q)` and the
/// escape rate it induces.
#[derive(Clone, Copy, Debug)]
pub struct DominantRoot {
    pub m: usize,
    pub n: usize,
    pub root: f64,
    pub escape_rate: f64,
}

/// Characteristic polynomial `r^m - q r^(m-1) + k` with `k = q^(m-n)`.
pub fn hole_characteristic(q: u32, m: usize, n: usize) -> Result<IntPolynomial> {
    if n < 1 || m < n {
        return Err(Error::InvalidParameter(format!("need 1 <= n <= m, got n={n}, m={m}")));
    }
    let k = BigInt::from(q).pow((m - n) as u32);
    let mut coeffs = vec![BigInt::ZERO; m + 1];
    coeffs[0] = k;
    coeffs[m - 1] = BigInt::from(-i64::from(q));
    coeffs[m] += BigInt::one(); // m = 1 folds the two leading terms together
    Ok(IntPolynomial::from_coeffs(coeffs))
}

/// Isolates the dominant root in `(q-1, q)`.
///
/// The bracket endpoints are sign-checked exactly at run time rather than
/// trusting a symbolic bound on `m`; outside the regime (no sign change at
/// `q-1`) this errs.
pub fn dominant_root(q: u32, m: usize, n: usize) -> Result<DominantRoot> {
    let p = hole_characteristic(q, m, n)?;
    let lo = BigRational::from(BigInt::from(q) - BigInt::one());
    let hi = BigRational::from(BigInt::from(q));
    if p.sign_at(&lo) >= 0 {
        return Err(Error::OutsideRootRegime(format!(
            "p(q-1) = {} >= 0 for q={q}, m={m}, n={n}",
            p.eval_int(&(BigInt::from(q) - BigInt::one()))
        )));
    }
    // p(q) = q^(m-n) > 0 always, so the bracket is strict
    let root = isolate_dominant_positive_root(&p, &lo, &hi, DEFAULT_ROOT_TOL)?;
    Ok(DominantRoot {
        m,
        n,
        root,
        escape_rate: f64::from(q).ln() - root.ln(),
    })
}

/// Escape rates of the uniform holes for `m` across a range; checks the
/// strict growth of the rate in `m`.
#[derive(Clone, Debug)]
pub struct MonotonicityReport {
    pub q: u32,
    pub n: usize,
    pub rows: Vec<(usize, Option<DominantRoot>)>,
    pub all_in_regime: bool,
    pub strictly_increasing: bool,
}

pub fn monotonicity_report(q: u32, n: usize, m_range: std::ops::RangeInclusive<usize>) -> MonotonicityReport {
    let mut rows = Vec::new();
    let mut all_in_regime = true;
    let mut strictly_increasing = true;
    let mut prev: Option<f64> = None;
    for m in m_range {
        match dominant_root(q, m, n) {
            Ok(root) => {
                if let Some(p) = prev {
                    if root.escape_rate <= p {
                        strictly_increasing = false;
                    }
                }
                prev = Some(root.escape_rate);
                rows.push((m, Some(root)));
            }
            Err(_) => {
                all_in_regime = false;
                rows.push((m, None));
            }
        }
    }
    MonotonicityReport {
        q,
        n,
        rows,
        all_in_regime,
        strictly_increasing,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: u32, m: usize, variant: Variant, ell: Option<u32>, r: Option<usize>) -> ConstructionParams {
        ConstructionParams::new(q, m, variant, ell, r, None).unwrap()
    }

    #[test]
    fn variant_one_reference_set() {
        let set = build(&params(6, 3, Variant::One, None, None)).unwrap();
        assert_eq!(set.len(), 25);
        assert!(set.iter().all(|w| w.symbols()[2] == 5));
        assert!(set.iter().all(|w| w.symbols()[..2].iter().all(|&s| s < 5)));
        assert!(is_correlation_free(&set).unwrap());
    }

    #[test]
    fn variant_two_reference_set() {
        let p = params(6, 2, Variant::Two, Some(2), None);
        assert_eq!(p.reserved, vec![4, 5]);
        let set = build(&p).unwrap();
        assert_eq!(set.len(), 8);
        assert_eq!(p.cardinality(), BigUint::from(8u32));
        assert!(is_correlation_free(&set).unwrap());
    }

    #[test]
    fn variant_three_specializes_to_two() {
        let a = build(&params(6, 3, Variant::Three, Some(2), Some(1))).unwrap();
        let b = build(&params(6, 3, Variant::Two, Some(2), None)).unwrap();
        assert_eq!(a, b);
        // and variant 2 with ell = 1 equals variant 1
        let c = build(&params(6, 2, Variant::Three, Some(1), Some(1))).unwrap();
        let d = build(&params(6, 2, Variant::One, None, None)).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn correlation_free_detects_failures() {
        let set = WordSet::new(
            6,
            vec![Word::parse(6, "00").unwrap(), Word::parse(6, "01").unwrap()],
        )
        .unwrap();
        assert!(!is_correlation_free(&set).unwrap());
        let single = WordSet::new(6, vec![Word::parse(6, "01").unwrap()]).unwrap();
        assert!(is_correlation_free(&single).unwrap());
    }

    #[test]
    fn bound_reference_cells() {
        assert_eq!(max_word_length(6, 2, 1, 1).unwrap(), 10);
        assert_eq!(max_word_length(6, 9, 4, 1).unwrap(), 15);
        assert_eq!(max_word_length(6, 1, 2, 1).unwrap(), 2);
        assert!(max_word_length(6, 2, 6, 1).is_err());
    }

    #[test]
    fn dominant_root_examples() {
        // m = n = 2, k = 1: root of r^2 - 6r + 1 in (5, 6)
        let root = dominant_root(6, 2, 2).unwrap();
        assert!((root.root - (3.0 + 2.0 * 2.0f64.sqrt())).abs() < 1e-12);

        // m = 3, n = 2, k = 6: bracketed root of r^3 - 6r^2 + 6
        let root = dominant_root(6, 3, 2).unwrap();
        let p = hole_characteristic(6, 3, 2).unwrap();
        assert!(p.eval_f64(root.root).abs() < 1e-9);
        assert!(root.root > 5.0 && root.root < 6.0);

        // m = 2, n = 1, k = 6: p(5) = 1 > 0, outside the regime
        assert!(matches!(
            dominant_root(6, 2, 1),
            Err(Error::OutsideRootRegime(_))
        ));
    }

    #[test]
    fn monotone_escape_rates() {
        let report = monotonicity_report(6, 2, 2..=9);
        assert!(report.all_in_regime);
        assert!(report.strictly_increasing);
        let single = monotonicity_report(6, 2, 3..=3);
        assert!(single.strictly_increasing);
    }

    #[test]
    fn construction_one_is_maximal_small_cases() {
        // m = 1 is excluded: any set of distinct single symbols is
        // correlation-free, so the singleton is not maximal there
        for q in 2..=4u32 {
            for m in 2..=4usize {
                let p = params(q, m, Variant::One, None, None);
                let set = build(&p).unwrap();
                assert!(is_correlation_free(&set).unwrap());
                // no outside word can be added
                let mut idx = vec![0usize; m];
                loop {
                    let symbols: Vec<u32> = idx.iter().map(|&s| s as u32).collect();
                    let cand = Word::new(q, symbols.clone()).unwrap();
                    if !set.contains(&cand) {
                        let mut bigger = set.clone();
                        bigger.push(cand).unwrap();
                        assert!(
                            !is_correlation_free(&bigger).unwrap(),
                            "candidate {symbols:?} extends q={q}, m={m}"
                        );
                    }
                    if !odometer(&mut idx, q as usize) {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn cardinality_comparison_beyond_q() {
        // for m > q, variant 1 beats variant 2 with ell >= 2
        for q in 4..=6u32 {
            for m in (q as usize + 1)..=(q as usize + 3) {
                let one = BigUint::from(q - 1).pow((m - 1) as u32);
                for ell in 2..(q - 1) {
                    let two = BigUint::from(ell) * BigUint::from(q - ell).pow((m - 1) as u32);
                    assert!(one > two, "q={q}, m={m}, ell={ell}");
                }
            }
        }
    }
}
