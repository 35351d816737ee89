//! Geometry of the expanding product map `(x, y) -> (Mx, Ny) mod 1` on the
//! 2-torus.
//!
//! The map is conjugate to the full shift on `q = M*N` symbols through the
//! digit pairing `symbol = N*a + b`, where `a` and `b` are the base-`M` and
//! base-`N` digits of `x` and `y`. Basic rectangles (products of an
//! `M`-adic and an `N`-adic interval) translate into unions of cylinders;
//! all interval arithmetic is exact rational so boundary cells classify
//! deterministically. Intervals are half-open `[lo, hi)`, the endpoint
//! identifications on the circle being of measure zero.

use crate::words::{Word, WordSet};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// The expanding product map, determined by its two expansion factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusMapSpec {
    /// Expansion factor of the first circle coordinate.
    pub x_factor: u32,
    /// Expansion factor of the second circle coordinate.
    pub y_factor: u32,
}

impl TorusMapSpec {
    pub fn new(x_factor: u32, y_factor: u32) -> Result<Self> {
        if x_factor < 2 || y_factor < 2 {
            return Err(Error::InvalidParameter("expansion factors must be >= 2".into()));
        }
        Ok(Self { x_factor, y_factor })
    }

    /// Product alphabet size `q = M * N`.
    pub fn alphabet_size(&self) -> u32 {
        self.x_factor * self.y_factor
    }

    /// Digit pairing `(a, b) -> N*a + b`.
    pub fn pair(&self, a: u32, b: u32) -> u32 {
        self.y_factor * a + b
    }

    /// Inverse digit pairing.
    pub fn split(&self, symbol: u32) -> (u32, u32) {
        (symbol / self.y_factor, symbol % self.y_factor)
    }
}

/// Basic rectangle: cell `(i, j)` of the partition into `M^m x N^n` boxes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rectangle {
    pub i: u64,
    pub j: u64,
    pub m: u32,
    pub n: u32,
}

impl Rectangle {
    pub fn new(spec: &TorusMapSpec, i: u64, j: u64, m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter("resolutions must be >= 1".into()));
        }
        let i_cap = BigUint::from(spec.x_factor).pow(m);
        let j_cap = BigUint::from(spec.y_factor).pow(n);
        if BigUint::from(i) >= i_cap || BigUint::from(j) >= j_cap {
            return Err(Error::InvalidParameter(format!(
                "cell ({i}, {j}) out of range for levels ({m}, {n})"
            )));
        }
        Ok(Self { i, j, m, n })
    }

    /// Lebesgue measure `M^-m * N^-n`, exact.
    pub fn measure(&self, spec: &TorusMapSpec) -> BigRational {
        let den = BigInt::from(spec.x_factor).pow(self.m) * BigInt::from(spec.y_factor).pow(self.n);
        BigRational::new(BigInt::one(), den)
    }
}

fn digits(mut value: u64, base: u32, len: u32) -> Vec<u32> {
    let mut out = vec![0u32; len as usize];
    for slot in out.iter_mut().rev() {
        *slot = (value % u64::from(base)) as u32;
        value /= u64::from(base);
    }
    out
}

/// The words whose cylinders exactly cover the rectangle.
///
/// At matched levels this is a single word of length `m`; a coarser level
/// on one side frees the corresponding digits, one cylinder per completion,
/// enumerated lexicographically over the free digits.
pub fn rectangle_to_words(spec: &TorusMapSpec, rect: &Rectangle) -> Result<WordSet> {
    let len = rect.m.max(rect.n);
    let a = digits(rect.i, spec.x_factor, rect.m);
    let b = digits(rect.j, spec.y_factor, rect.n);
    let q = spec.alphabet_size();
    let mut set = WordSet::empty(q);
    // free positions: x digits beyond m, y digits beyond n
    let free_x = (len - rect.m) as usize;
    let free_y = (len - rect.n) as usize;
    let mut fill = vec![0u32; free_x + free_y];
    loop {
        let mut symbols = Vec::with_capacity(len as usize);
        for t in 0..len as usize {
            let at = if t < a.len() { a[t] } else { fill[t - a.len()] };
            let bt = if t < b.len() { b[t] } else { fill[free_x + (t - b.len())] };
            symbols.push(spec.pair(at, bt));
        }
        set.push(Word::new(q, symbols)?)?;
        // odometer over the free digits, x block then y block
        let mut pos = fill.len();
        let mut done = true;
        while pos > 0 {
            pos -= 1;
            let base = if pos < free_x { spec.x_factor } else { spec.y_factor };
            fill[pos] += 1;
            if fill[pos] < base {
                done = false;
                break;
            }
            fill[pos] = 0;
        }
        if done {
            break;
        }
    }
    Ok(set)
}

/// Exact half-open interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

/// The rectangle of points whose symbol sequence starts with `prefix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalPair {
    pub x: Interval,
    pub y: Interval,
}

/// Splits each prefix symbol into digit pairs and accumulates the exact
/// dyadic-style intervals the prefix pins down.
pub fn encode_point(spec: &TorusMapSpec, prefix: &[u32]) -> Result<IntervalPair> {
    let q = spec.alphabet_size();
    if let Some(&s) = prefix.iter().find(|&&s| s >= q) {
        return Err(Error::InvalidWord(format!("symbol {s} >= q ({q})")));
    }
    let mut x_lo = BigRational::zero();
    let mut y_lo = BigRational::zero();
    let mut x_scale = BigRational::one();
    let mut y_scale = BigRational::one();
    let x_base = BigRational::from(BigInt::from(spec.x_factor));
    let y_base = BigRational::from(BigInt::from(spec.y_factor));
    for &s in prefix {
        let (a, b) = spec.split(s);
        x_scale /= &x_base;
        y_scale /= &y_base;
        x_lo += &x_scale * BigRational::from(BigInt::from(a));
        y_lo += &y_scale * BigRational::from(BigInt::from(b));
    }
    Ok(IntervalPair {
        x: Interval {
            hi: &x_lo + &x_scale,
            lo: x_lo,
        },
        y: Interval {
            hi: &y_lo + &y_scale,
            lo: y_lo,
        },
    })
}

/// Verdict on whether two resolution pairs give equal rectangle measure,
/// and whether the two factors are multiplicatively dependent at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureComparison {
    pub equal: bool,
    /// Coprime `(alpha, beta)` with `M^alpha = N^beta`, when one exists.
    pub power_relation: Option<(u32, u32)>,
}

fn prime_factors(mut value: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= value {
        if value.is_multiple_of(p) {
            let mut e = 0;
            while value.is_multiple_of(p) {
                value /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if value > 1 {
        out.push((value, 1));
    }
    out
}

/// Detects coprime `(alpha, beta)` with `M^alpha = N^beta`, if any.
pub fn power_relation(spec: &TorusMapSpec) -> Option<(u32, u32)> {
    let fm = prime_factors(spec.x_factor);
    let fn_ = prime_factors(spec.y_factor);
    if fm.len() != fn_.len() {
        return None;
    }
    let mut ratio: Option<(u32, u32)> = None; // (alpha, beta) reduced
    for ((pm, em), (pn, en)) in fm.iter().zip(&fn_) {
        if pm != pn {
            return None;
        }
        let g = num_integer::gcd(*em, *en);
        let (alpha, beta) = (en / g, em / g);
        match ratio {
            None => ratio = Some((alpha, beta)),
            Some(r) if r != (alpha, beta) => return None,
            _ => {}
        }
    }
    let (alpha, beta) = ratio?;
    let lhs = BigUint::from(spec.x_factor).pow(alpha);
    let rhs = BigUint::from(spec.y_factor).pow(beta);
    (lhs == rhs).then_some((alpha, beta))
}

/// Decides `M^-m N^-n = M^-m' N^-n'` exactly and reports the power relation
/// between the factors.
pub fn equal_measure_classes(
    spec: &TorusMapSpec,
    first: (u32, u32),
    second: (u32, u32),
) -> MeasureComparison {
    let m_base = BigUint::from(spec.x_factor);
    let n_base = BigUint::from(spec.y_factor);
    let lhs = m_base.pow(second.0) * n_base.pow(second.1);
    let rhs = m_base.pow(first.0) * n_base.pow(first.1);
    MeasureComparison {
        equal: lhs == rhs,
        power_relation: power_relation(spec),
    }
}

/// Sum of full-shift cylinder measures `q^-len` over the rectangle's words;
/// equals the rectangle measure exactly.
pub fn word_measure_total(spec: &TorusMapSpec, set: &WordSet) -> BigRational {
    let q = BigInt::from(spec.alphabet_size());
    let mut total = BigRational::zero();
    for w in set {
        total += BigRational::new(BigInt::one(), q.pow(w.len() as u32));
    }
    total
}

/// Convenience for display: exact measure alongside a float.
pub fn measure_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t32() -> TorusMapSpec {
        TorusMapSpec::new(3, 2).unwrap()
    }

    fn texts(set: &WordSet) -> Vec<String> {
        set.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn matched_levels_give_one_word() {
        let spec = t32();
        let r = Rectangle::new(&spec, 5, 2, 2, 2).unwrap();
        assert_eq!(texts(&rectangle_to_words(&spec, &r).unwrap()), vec!["34"]);
    }

    #[test]
    fn coarser_y_level_frees_digits() {
        let spec = t32();
        let r = Rectangle::new(&spec, 0, 0, 2, 1).unwrap();
        assert_eq!(texts(&rectangle_to_words(&spec, &r).unwrap()), vec!["00", "01"]);
        let r = Rectangle::new(&spec, 6, 1, 2, 1).unwrap();
        assert_eq!(texts(&rectangle_to_words(&spec, &r).unwrap()), vec!["50", "51"]);
    }

    #[test]
    fn coarser_x_level_frees_digits() {
        let spec = t32();
        let r = Rectangle::new(&spec, 0, 0, 1, 2).unwrap();
        assert_eq!(texts(&rectangle_to_words(&spec, &r).unwrap()), vec!["00", "02", "04"]);
        let r = Rectangle::new(&spec, 0, 1, 1, 2).unwrap();
        assert_eq!(texts(&rectangle_to_words(&spec, &r).unwrap()), vec!["01", "03", "05"]);
    }

    #[test]
    fn encode_point_reference_cells() {
        let spec = t32();
        let pair = encode_point(&spec, &[3, 4]).unwrap();
        assert_eq!(pair.x.lo, BigRational::new(BigInt::from(5), BigInt::from(9)));
        assert_eq!(pair.x.hi, BigRational::new(BigInt::from(6), BigInt::from(9)));
        assert_eq!(pair.y.lo, BigRational::new(BigInt::from(2), BigInt::from(4)));
        assert_eq!(pair.y.hi, BigRational::new(BigInt::from(3), BigInt::from(4)));

        let full = encode_point(&spec, &[]).unwrap();
        assert_eq!(full.x.lo, BigRational::zero());
        assert_eq!(full.x.hi, BigRational::one());

        let first = encode_point(&spec, &[0]).unwrap();
        assert_eq!(first.x.hi, BigRational::new(BigInt::from(1), BigInt::from(3)));
        assert_eq!(first.y.hi, BigRational::new(BigInt::from(1), BigInt::from(2)));

        assert!(encode_point(&spec, &[6]).is_err());
    }

    #[test]
    fn words_cover_rectangle_exactly() {
        let spec = t32();
        for (i, j, m, n) in [(0u64, 0u64, 2u32, 1u32), (6, 1, 2, 1), (0, 3, 1, 2), (5, 2, 2, 2)] {
            let rect = Rectangle::new(&spec, i, j, m, n).unwrap();
            let set = rectangle_to_words(&spec, &rect).unwrap();
            // disjoint sub-rectangles (distinct equal-length words) inside
            // the rectangle whose exact measures sum to its area cover it
            assert_eq!(word_measure_total(&spec, &set), rect.measure(&spec));
            let x_lo = BigRational::new(BigInt::from(i), BigInt::from(3).pow(m));
            let x_hi = BigRational::new(BigInt::from(i + 1), BigInt::from(3).pow(m));
            let y_lo = BigRational::new(BigInt::from(j), BigInt::from(2).pow(n));
            let y_hi = BigRational::new(BigInt::from(j + 1), BigInt::from(2).pow(n));
            for w in &set {
                let pair = encode_point(&spec, w.symbols()).unwrap();
                assert!(pair.x.lo >= x_lo && pair.x.hi <= x_hi);
                assert!(pair.y.lo >= y_lo && pair.y.hi <= y_hi);
            }
        }
    }

    #[test]
    fn measure_comparisons() {
        let spec = t32();
        let cmp = equal_measure_classes(&spec, (2, 1), (1, 2));
        assert!(!cmp.equal);
        assert_eq!(cmp.power_relation, None);

        let cmp = equal_measure_classes(&spec, (2, 1), (2, 1));
        assert!(cmp.equal);

        let spec42 = TorusMapSpec::new(4, 2).unwrap();
        let cmp = equal_measure_classes(&spec42, (1, 2), (2, 0));
        assert!(cmp.equal);
        assert_eq!(cmp.power_relation, Some((1, 2)));

        assert_eq!(power_relation(&TorusMapSpec::new(8, 4).unwrap()), Some((2, 3)));
        assert_eq!(power_relation(&TorusMapSpec::new(6, 2).unwrap()), None);
    }
}
