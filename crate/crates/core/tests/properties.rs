//! Property tests for the structural invariants the modules promise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;
use sft_escape::algebra::{IntPolynomial, RationalFunction, RootBracket};
use sft_escape::oracle::{count_avoiding_words, DEFAULT_ENUMERATION_BUDGET};
use sft_escape::shift::{phi_index, phi_inverse, tensor_product, ProductSpec, SubshiftSpec, TransitionMatrix, DEFAULT_MAX_DIM};
use sft_escape::spectral::perron;
use sft_escape::words::{correlation_polynomial, Word, WordSet};

fn poly_strategy() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-6i64..=6, 0..5).prop_map(|cs| IntPolynomial::from_i64(&cs))
}

fn nonzero_poly() -> impl Strategy<Value = IntPolynomial> {
    poly_strategy().prop_filter("nonzero", |p| !p.is_zero())
}

fn word_strategy(q: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..q, 1..6).prop_map(move |s| Word::new(q, s).unwrap())
}

fn reduced_after(f: &RationalFunction) -> bool {
    let g = f.numerator().gcd(f.denominator());
    g.degree() == Some(0)
        && f.denominator().leading().is_some_and(|c| c.is_positive())
}

proptest! {
    #[test]
    fn rational_arithmetic_stays_reduced(
        a in poly_strategy(),
        b in nonzero_poly(),
        c in poly_strategy(),
        d in nonzero_poly(),
    ) {
        let f = RationalFunction::new(a, b).unwrap();
        let g = RationalFunction::new(c, d).unwrap();
        for h in [f.add(&g), f.sub(&g), f.mul(&g)] {
            prop_assert!(reduced_after(&h));
        }
        if !g.is_zero() {
            prop_assert!(reduced_after(&f.div(&g).unwrap()));
        }
    }

    #[test]
    fn series_is_additive(
        a in prop::collection::vec(-5i64..=5, 0..3),
        c in prop::collection::vec(-5i64..=5, 0..3),
    ) {
        // denominators chosen monic of degree 2 so both series exist
        let den = IntPolynomial::from_i64(&[1, -3, 1]);
        let f = RationalFunction::new(IntPolynomial::from_i64(&a), den.clone()).unwrap();
        let g = RationalFunction::new(IntPolynomial::from_i64(&c), den).unwrap();
        let sum = f.add(&g);
        let fs = f.series(20).unwrap();
        let gs = g.series(20).unwrap();
        let ss = sum.series(20).unwrap();
        for k in 0..20 {
            prop_assert_eq!(&fs[k] + &gs[k], ss[k].clone());
        }
    }

    #[test]
    fn autocorrelation_is_monic_of_full_degree(w in word_strategy(4)) {
        let p = correlation_polynomial(&w, &w).unwrap();
        prop_assert_eq!(p.degree(), Some(w.len() - 1));
        prop_assert!(p.is_monic());
    }

    #[test]
    fn normalization_shifts_avoiding_counts_by_free_extensions(
        len in 1usize..3,
        extend in 0usize..2,
        seeds in prop::collection::vec(0u64..100, 1..4),
    ) {
        // the generated subshift is unchanged; on finite words the boundary
        // contributes exactly the free suffix factor:
        // f_norm(k) = f_W(k - (n - len)) * q^(n - len) for k >= n
        let q = 3u32;
        let mut set = WordSet::empty(q);
        for seed in seeds {
            let symbols: Vec<u32> = (0..len).map(|i| ((seed >> (2 * i)) % u64::from(q)) as u32).collect();
            let _ = set.push(Word::new(q, symbols).unwrap());
        }
        let n = len + extend;
        let pad = n - len;
        let normalized = set.normalize_equal_length(n).unwrap();
        for k in n..=6 {
            let direct = count_avoiding_words(q, &set, k - pad, DEFAULT_ENUMERATION_BUDGET).unwrap();
            let through = count_avoiding_words(q, &normalized, k, DEFAULT_ENUMERATION_BUDGET).unwrap();
            prop_assert_eq!(direct * u64::from(q).pow(pad as u32), through, "k = {}", k);
        }
    }

    #[test]
    fn phi_round_trip(sizes in prop::collection::vec(1usize..5, 1..4), pick in 0usize..1000) {
        let total: usize = sizes.iter().product();
        let idx = pick % total;
        let digits = phi_index(idx, &sizes).unwrap();
        prop_assert_eq!(phi_inverse(&digits, &sizes).unwrap(), idx);
    }

    #[test]
    fn kronecker_eigenvalue_is_multiplicative(
        bits_a in prop::collection::vec(prop::bool::ANY, 9),
        bits_b in prop::collection::vec(prop::bool::ANY, 4),
    ) {
        let a_entries: Vec<u8> = bits_a.iter().map(|&b| u8::from(b)).collect();
        let b_entries: Vec<u8> = bits_b.iter().map(|&b| u8::from(b)).collect();
        let labels3: Vec<Word> = (0..3).map(|s| Word::new(3, vec![s]).unwrap()).collect();
        let labels2: Vec<Word> = (0..2).map(|s| Word::new(2, vec![s]).unwrap()).collect();
        let a = TransitionMatrix::new(3, a_entries, labels3).unwrap();
        let b = TransitionMatrix::new(2, b_entries, labels2).unwrap();
        prop_assume!(!a.is_zero() && !b.is_zero());
        let prod = tensor_product(&ProductSpec { factors: vec![a.clone(), b.clone()] }).unwrap();
        let la = if a.has_cycle() { perron(&a).unwrap().lambda } else { 0.0 };
        let lb = if b.has_cycle() { perron(&b).unwrap().lambda } else { 0.0 };
        let lab = if prod.has_cycle() { perron(&prod).unwrap().lambda } else { 0.0 };
        prop_assert!((lab - la * lb).abs() <= 1e-10 * (la * lb).max(1.0),
            "{} vs {} * {}", lab, la, lb);
    }

    #[test]
    fn word_set_text_round_trips(
        words in prop::collection::vec(prop::collection::vec(0u32..12, 1..5), 0..6),
    ) {
        let mut set = WordSet::empty(12);
        for symbols in words {
            let _ = set.push(Word::new(12, symbols).unwrap());
        }
        let text = set.to_text();
        prop_assert_eq!(WordSet::parse_text(&text).unwrap(), set);
    }

    #[test]
    fn bracket_isolation_stays_within_tolerance(c in 2i64..40) {
        // p = z^2 - c has its positive root between 0 and c
        let p = IntPolynomial::from_i64(&[-c, 0, 1]);
        let bracket = RootBracket::new(
            p.clone(),
            BigRational::from(BigInt::one()),
            BigRational::from(BigInt::from(c)),
        );
        prop_assume!(bracket.is_ok());
        let tol = 1e-13;
        let root = bracket.unwrap().isolate(tol).unwrap();
        let exact = (c as f64).sqrt();
        prop_assert!((root - exact).abs() <= tol.max(1e-12 * exact));
        prop_assert!(p.eval_f64(root - tol) * p.eval_f64(root + tol) <= 0.0);
    }
}

#[test]
fn full_shift_higher_block_is_all_ones() {
    for q in 2..=6u32 {
        let t = SubshiftSpec::full_shift(q).higher_block_matrix(DEFAULT_MAX_DIM).unwrap();
        assert_eq!(t.dim(), q as usize);
        assert_eq!(t.count_ones(), (q * q) as usize);
    }
}

#[test]
fn correlation_is_asymmetric_in_general() {
    let u = Word::parse(2, "101001").unwrap();
    let w = Word::parse(2, "10010").unwrap();
    let uw = correlation_polynomial(&u, &w).unwrap();
    let wu = correlation_polynomial(&w, &u).unwrap();
    assert_ne!(uw, wu);
}
