//! Acceptance suite: one test per criterion, each printing a pass line with
//! the measured values (visible under `--nocapture`).
//!
//! Numeric comparisons against reference prints use the printed-precision
//! rule (half an ulp of the print plus rounding slack, `2.5 * 10^-d` for
//! `d` printed decimals) unless a tighter explicit tolerance is stated.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sft_escape::algebra::{IntPolynomial, RationalFunction};
use sft_escape::cli::tables::{self, Cell, TableId};
use sft_escape::constructions::{self, ConstructionParams, Variant};
use sft_escape::escape::{
    compare_methods, escape_rate_combinatorial, escape_rate_spectral, minimal_period,
    EscapeDetails, HoleSpec,
};
use sft_escape::oracle::{
    count_avoiding_words, fit_escape_rate, simulate_survival, DEFAULT_ENUMERATION_BUDGET,
};
use sft_escape::shift::{
    phi_index, phi_inverse, tensor_product, ProductSpec, SubshiftSpec, TransitionMatrix,
    DEFAULT_MAX_DIM,
};
use sft_escape::spectral::{parry_cylinder_measure, perron, topological_entropy};
use sft_escape::words::{Word, WordSet};
use std::time::Instant;

fn words(q: u32, texts: &[&str]) -> WordSet {
    WordSet::new(q, texts.iter().map(|t| Word::parse(q, t).unwrap()).collect()).unwrap()
}

fn golden_mean() -> TransitionMatrix {
    TransitionMatrix::new(
        2,
        vec![1, 1, 1, 0],
        vec![Word::new(2, vec![0]).unwrap(), Word::new(2, vec![1]).unwrap()],
    )
    .unwrap()
}

fn golden_squared_spec() -> SubshiftSpec {
    let g = golden_mean();
    let prod = tensor_product(&ProductSpec { factors: vec![g.clone(), g] }).unwrap();
    SubshiftSpec::from_matrix(&prod).unwrap()
}

/// `|value - printed| <= 2.5 * 10^-d` for a reference print with d decimals.
fn matches_print(value: f64, printed: &str) -> bool {
    let d = printed.split('.').nth(1).map_or(0, str::len) as i32;
    let target: f64 = printed.parse().unwrap();
    (value - target).abs() <= 2.5 * 10f64.powi(-d)
}

fn table_cell_num(table: &tables::Table, row: usize, column: &str) -> f64 {
    let c = table.columns.iter().position(|n| n == column).unwrap();
    match &table.rows[row][c] {
        Cell::Num(v) => *v,
        other => panic!("cell {row}/{column} is not numeric: {other:?}"),
    }
}

fn table_cell_text(table: &tables::Table, row: usize, column: &str) -> String {
    let c = table.columns.iter().position(|n| n == column).unwrap();
    table.rows[row][c].render(6)
}

#[test]
fn criterion_01_closed_form_length_two_holes() {
    let start = Instant::now();
    let rho_repeat = -((5.0 + 3.0 * 5.0f64.sqrt()) / 12.0).ln();
    let rho_distinct = -((3.0 + 2.0 * 2.0f64.sqrt()) / 6.0).ln();
    for a in 0..6u32 {
        for b in 0..6u32 {
            let set = WordSet::new(6, vec![Word::new(6, vec![a, b]).unwrap()]).unwrap();
            let cmp = compare_methods(6, &set).unwrap();
            let want = if a == b { rho_repeat } else { rho_distinct };
            assert!(
                (cmp.spectral.rho - want).abs() < 1e-9,
                "spectral rho for {a}{b}: {} vs {want}",
                cmp.spectral.rho
            );
            assert!(
                (cmp.combinatorial.rho - want).abs() < 1e-9,
                "combinatorial rho for {a}{b}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!(
        "criterion 1 PASS: all 36 length-2 holes match the closed forms ({rho_repeat:.6} / {rho_distinct:.6}) in {elapsed:?}"
    );
}

#[test]
fn criterion_02_two_cylinder_worked_example() {
    let h1 = HoleSpec::full_shift(6, words(6, &["00", "01"])).unwrap();
    let r1 = escape_rate_spectral(&h1, DEFAULT_MAX_DIM).unwrap();
    let want1 = -((5.0 + 41.0f64.sqrt()) / 12.0).ln();
    assert!((r1.rho - want1).abs() < 1e-9);
    assert!((r1.lambda_with_hole - (5.0 + 41.0f64.sqrt()) / 2.0).abs() < 1e-10);
    let c1 = escape_rate_combinatorial(6, h1.hole()).unwrap();
    assert!((c1.rho - want1).abs() < 1e-9);

    let h2 = HoleSpec::full_shift(6, words(6, &["04", "05"])).unwrap();
    let r2 = escape_rate_spectral(&h2, DEFAULT_MAX_DIM).unwrap();
    let want2 = -((3.0 + 7.0f64.sqrt()) / 6.0).ln();
    assert!((r2.rho - want2).abs() < 1e-9);
    assert!((r2.lambda_with_hole - (3.0 + 7.0f64.sqrt())).abs() < 1e-10);
    let c2 = escape_rate_combinatorial(6, h2.hole()).unwrap();
    assert!((c2.rho - want2).abs() < 1e-9);

    // exact generating functions
    let f_expected = RationalFunction::new(
        IntPolynomial::from_i64(&[0, 1, 1]),
        IntPolynomial::from_i64(&[-4, -5, 1]),
    )
    .unwrap();
    let g_expected = RationalFunction::new(
        IntPolynomial::from_i64(&[0, 0, 1]),
        IntPolynomial::from_i64(&[2, -6, 1]),
    )
    .unwrap();
    let EscapeDetails::Combinatorial { generating_function: f, .. } = c1.details else {
        panic!("combinatorial details")
    };
    let EscapeDetails::Combinatorial { generating_function: g, .. } = c2.details else {
        panic!("combinatorial details")
    };
    assert_eq!(f, f_expected);
    assert_eq!(g, g_expected);
    println!(
        "criterion 2 PASS: rho = {:.9} / {:.9}, lambda = {:.9} / {:.9}, F(z) and G(z) exact",
        r1.rho, r2.rho, r1.lambda_with_hole, r2.lambda_with_hole
    );
}

#[test]
fn criterion_03_recurrence_and_counts() {
    let c = escape_rate_combinatorial(6, &words(6, &["00", "01"])).unwrap();
    let EscapeDetails::Combinatorial { recurrence, .. } = &c.details else {
        panic!("combinatorial details")
    };
    // exactly f[k+2] = 5 f[k+1] + 4 f[k] with f0 = 1, f1 = 6
    assert_eq!(recurrence.order, 2);
    assert_eq!(recurrence.start, 0);
    let coeffs: Vec<i64> = recurrence
        .coeffs
        .iter()
        .map(|c| c.to_integer().to_i64().unwrap())
        .collect();
    assert_eq!(coeffs, vec![4, 5]);
    let initial: Vec<i64> = recurrence
        .initial
        .iter()
        .map(|c| c.to_integer().to_i64().unwrap())
        .collect();
    assert_eq!(initial, vec![1, 6]);
    let f2 = recurrence.iterate(3)[2].to_integer().to_u64().unwrap();
    let brute = count_avoiding_words(6, &words(6, &["00", "01"]), 2, DEFAULT_ENUMERATION_BUDGET)
        .unwrap();
    assert_eq!(f2, 34);
    assert_eq!(brute, 34);
    println!("criterion 3 PASS: recurrence f[k+2] = 5 f[k+1] + 4 f[k], f2 = {f2} = brute count");
}

#[test]
fn criterion_04_table_1() {
    let start = Instant::now();
    let table = tables::compute(TableId::T1, DEFAULT_MAX_DIM).unwrap();
    assert_eq!(table.rows.len(), 12);
    let mismatches = tables::check(&table).unwrap();
    assert!(mismatches.is_empty(), "{mismatches:?}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5 s");
    println!("criterion 4 PASS: table 1 words, tau_min and rates match in {elapsed:?}");
}

#[test]
fn criterion_05_table_2() {
    let start = Instant::now();
    let table = tables::compute(TableId::T2, DEFAULT_MAX_DIM).unwrap();
    assert_eq!(table.rows.len(), 24);
    let mismatches = tables::check(&table).unwrap();
    assert!(mismatches.is_empty(), "{mismatches:?}");
    // rates fall in the printed three-class pattern
    for row in 0..24 {
        let rho = table_cell_num(&table, row, "rho");
        assert!(
            matches_print(rho, "0.036") || matches_print(rho, "0.042") || matches_print(rho, "0.047"),
            "row {row}: rho {rho}"
        );
    }
    // the with-hole matrices are 36 x 36
    let h = HoleSpec::full_shift(
        6,
        words(6, &["000", "002", "004", "020", "022", "024", "040", "042", "044"]),
    )
    .unwrap();
    let r = escape_rate_spectral(&h, DEFAULT_MAX_DIM).unwrap();
    let EscapeDetails::Spectral { hole_dim, .. } = r.details else {
        panic!("spectral details")
    };
    assert_eq!(hole_dim, 36);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!("criterion 5 PASS: table 2 (24 rows, 36x36 matrices) matches in {elapsed:?}");
}

#[test]
fn criterion_06_table_2a() {
    let table = tables::compute(TableId::T2a, DEFAULT_MAX_DIM).unwrap();
    assert_eq!(table.rows.len(), 9);
    let mismatches = tables::check(&table).unwrap();
    assert!(mismatches.is_empty(), "{mismatches:?}");
    // five-decimal prints are reproduced to 5e-6; the 4- and 3-decimal
    // prints (0.0028, 0.003) are held to their own printed precision
    let expected = [
        ("0.0028", false),
        ("0.00312", true),
        ("0.00309", true),
        ("0.00303", true),
        ("0.00301", true),
        ("0.00312", true),
        ("0.00309", true),
        ("0.00303", true),
        ("0.003", false),
    ];
    for (row, (printed, tight)) in expected.iter().enumerate() {
        let rho = table_cell_num(&table, row, "rho");
        if *tight {
            let target: f64 = printed.parse().unwrap();
            assert!(
                (rho - target).abs() <= 5e-6,
                "row {row}: rho {rho:.7} vs {printed} (5e-6)"
            );
        } else {
            assert!(matches_print(rho, printed), "row {row}: rho {rho:.7} vs {printed}");
        }
    }
    // the stress case: higher-block dimension 6^3 = 216
    let h = HoleSpec::full_shift(6, words(6, &["0000", "0001", "0010", "0011"])).unwrap();
    let r = escape_rate_spectral(&h, DEFAULT_MAX_DIM).unwrap();
    let EscapeDetails::Spectral { hole_dim, .. } = r.details else {
        panic!("spectral details")
    };
    assert_eq!(hole_dim, 216);
    println!("criterion 6 PASS: table 2a tau_min exact; rates at stated tolerances on 216-dim matrices");
}

#[test]
fn criterion_07_table_3() {
    let table = tables::compute(TableId::T3, DEFAULT_MAX_DIM).unwrap();
    let mismatches = tables::check(&table).unwrap();
    assert!(mismatches.is_empty(), "{mismatches:?}");
    println!("criterion 7 PASS: the 9x4 feasibility grid is reproduced exactly");
}

#[test]
fn criterion_08_tables_4_and_5() {
    let spec = golden_squared_spec();
    let t = spec.higher_block_matrix(DEFAULT_MAX_DIM).unwrap();
    let h_top = topological_entropy(&t).unwrap();
    assert!((h_top - 0.962).abs() <= 5e-4, "h_top = {h_top}");

    for id in [TableId::T4, TableId::T5] {
        let table = tables::compute(id, DEFAULT_MAX_DIM).unwrap();
        let mismatches = tables::check(&table).unwrap();
        assert!(mismatches.is_empty(), "table {id}: {mismatches:?}");
    }

    // counterexample pair: equal measure, different rates
    let t5 = tables::compute(TableId::T5, DEFAULT_MAX_DIM).unwrap();
    let row_of = |hole: &str| {
        (0..t5.rows.len())
            .find(|&r| table_cell_text(&t5, r, "hole") == hole)
            .unwrap()
    };
    let (r010, r000) = (row_of("010"), row_of("000"));
    let mu010 = table_cell_num(&t5, r010, "measure");
    let mu000 = table_cell_num(&t5, r000, "measure");
    let rho010 = table_cell_num(&t5, r010, "rho");
    let rho000 = table_cell_num(&t5, r000, "rho");
    assert!((mu010 - mu000).abs() < 1e-10);
    assert!(matches_print(mu010, "0.076"));
    assert!(matches_print(rho010, "0.081"));
    assert!(matches_print(rho000, "0.057"));
    assert!(rho010 > rho000);
    println!(
        "criterion 8 PASS: h_top = {h_top:.4}; tables 4-5 match; rho(010) = {rho010:.4} > rho(000) = {rho000:.4} at equal measure {mu010:.4}"
    );
}

#[test]
fn criterion_09_table_5bis() {
    let table = tables::compute(TableId::T5bis, DEFAULT_MAX_DIM).unwrap();
    let mismatches = tables::check(&table).unwrap();
    assert!(mismatches.is_empty(), "{mismatches:?}");
    for (row, printed) in [(0usize, "0.0251"), (1, "0.0176"), (2, "0.0293")] {
        let rho = table_cell_num(&table, row, "rho");
        assert!(matches_print(rho, printed), "row {row}: {rho} vs {printed}");
    }
    // tau_min(R_00) < tau_min(R_01) yet rho(R_00) > rho(R_01)
    assert_eq!(table_cell_text(&table, 0, "tau_min"), "1");
    assert_eq!(table_cell_text(&table, 1, "tau_min"), "2");
    let rho_aa = table_cell_num(&table, 0, "rho");
    let rho_ab = table_cell_num(&table, 1, "rho");
    assert!(rho_aa > rho_ab);
    println!(
        "criterion 9 PASS: classes 0.0251 / 0.0176 / 0.0293; tau 1 < 2 with rho {rho_aa:.4} > {rho_ab:.4}"
    );
}

#[test]
fn criterion_10_tables_6_and_7() {
    for id in [TableId::T6, TableId::T7] {
        let table = tables::compute(id, DEFAULT_MAX_DIM).unwrap();
        let mismatches = tables::check(&table).unwrap();
        assert!(mismatches.is_empty(), "table {id}: {mismatches:?}");
    }
    // the a(z) column as exact rational functions (canonical reduced form)
    let t6 = tables::compute(TableId::T6, DEFAULT_MAX_DIM).unwrap();
    assert_eq!(table_cell_text(&t6, 0, "a_z"), "2/(z + 1)");
    assert_eq!(table_cell_text(&t6, 6, "a_z"), "(2z + 1)/(z^2 + z)");
    assert_eq!(table_cell_text(&t6, 0, "a_at_3"), "1/2");
    assert_eq!(table_cell_text(&t6, 6, "a_at_3"), "7/12");
    let t7 = tables::compute(TableId::T7, DEFAULT_MAX_DIM).unwrap();
    assert_eq!(table_cell_text(&t7, 2, "a_z"), "2/z");
    assert_eq!(table_cell_text(&t7, 4, "a_z"), "(2z - 1)/z^2");
    assert_eq!(table_cell_text(&t7, 4, "a_at_3"), "5/9");
    println!("criterion 10 PASS: tables 6-7 exact a(z), a(3) and printed measures/rates");
}

#[test]
fn criterion_11_cross_method_random_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5f7e_11aa);
    let mut done = 0usize;
    while done < 100 {
        let q: u32 = rng.gen_range(2..=6);
        let len: usize = rng.gen_range(1..=4);
        let max_words = ((q as u64).pow(len as u32) as usize).min(8);
        let count = rng.gen_range(1..=max_words);
        let mut set = WordSet::empty(q);
        for _ in 0..count {
            let symbols: Vec<u32> = (0..len).map(|_| rng.gen_range(0..q)).collect();
            let _ = set.push(Word::new(q, symbols).unwrap()); // duplicates skipped
        }
        let h = HoleSpec::full_shift(q, set).unwrap();
        if h.hole().is_empty() {
            continue;
        }
        done += 1;
        let cmp = compare_methods(q, h.hole()).unwrap(); // enforces 1e-9 agreement
        let EscapeDetails::Combinatorial { recurrence, .. } = &cmp.combinatorial.details else {
            panic!("combinatorial details")
        };
        let n = h.word_length();
        let terms = recurrence.iterate(10);
        let union = h.ambient().union_with(h.hole()).unwrap();
        let b = union.higher_block_matrix(DEFAULT_MAX_DIM).unwrap();
        for k in 0..=9usize {
            let brute = count_avoiding_words(q, h.hole(), k, DEFAULT_ENUMERATION_BUDGET).unwrap();
            let from_recurrence = &terms[k];
            assert!(
                from_recurrence.is_integer(),
                "f_{k} not an integer for {:?}",
                h.hole()
            );
            assert_eq!(
                from_recurrence.to_integer().to_u64().unwrap(),
                brute,
                "recurrence vs enumeration at k={k} for {:?}",
                h.hole()
            );
            if k + 1 >= n {
                let matrix_count = b.entry_sum_power(k - (n - 1));
                assert_eq!(
                    BigUint::from(brute),
                    matrix_count,
                    "matrix power vs enumeration at k={k}"
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}, budget 2 min");
    println!("criterion 11 PASS: 100 random holes, methods within 1e-9, counts exact for k <= 9 in {elapsed:?}");
}

#[test]
fn criterion_12_uniform_hole_linkage() {
    let q = 6u32;
    let n = 2usize;
    let mut prev = f64::NEG_INFINITY;
    for m in 2..=9usize {
        let root = constructions::dominant_root(q, m, n).unwrap();
        // construction-1 subset of q^(m-n) words
        let params = ConstructionParams::new(q, m, Variant::One, None, None, None).unwrap();
        let full_set = constructions::build(&params).unwrap();
        let k = (q as u64).pow((m - n) as u32) as usize;
        assert!(full_set.len() >= k, "construction too small at m={m}");
        let subset =
            WordSet::new(q, full_set.words()[..k].to_vec()).unwrap();
        let h = HoleSpec::full_shift(q, subset).unwrap();
        let spectral = escape_rate_spectral(&h, DEFAULT_MAX_DIM).unwrap();
        assert!(
            (spectral.rho - root.escape_rate).abs() < 1e-8,
            "m={m}: spectral {} vs root {}",
            spectral.rho,
            root.escape_rate
        );
        assert!(
            root.escape_rate > prev,
            "rates not strictly increasing at m={m}"
        );
        prev = root.escape_rate;
    }
    println!("criterion 12 PASS: root isolation matches the spectral method for m = 2..9, strictly increasing");
}

#[test]
fn criterion_13_monte_carlo() {
    let start = Instant::now();
    let full = SubshiftSpec::full_shift(6);
    let hole = words(6, &["00", "01"]);
    let samples = 1_000_000;
    let steps = 100;
    let seed = 20_240_817;
    let curve = simulate_survival(&full, &hole, samples, steps, seed, DEFAULT_MAX_DIM).unwrap();
    let (rho_hat, stderr) = fit_escape_rate(&curve).unwrap();
    let target = 0.051293;
    let tol = (3.0 * stderr).max(0.05 * target);
    assert!(
        (rho_hat - target).abs() <= tol,
        "fitted {rho_hat} vs {target} (tol {tol})"
    );
    let rerun = simulate_survival(&full, &hole, samples, steps, seed, DEFAULT_MAX_DIM).unwrap();
    assert_eq!(curve.to_csv(), rerun.to_csv(), "rerun is not byte-identical");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 60 s");
    println!(
        "criterion 13 PASS: fitted rho = {rho_hat:.6} +/- {stderr:.6} vs {target} in {elapsed:?}, rerun byte-identical"
    );
}

#[test]
fn criterion_14_property_invariants() {
    // Parry normalization over allowed words of the forbidden-word length
    for spec in [
        golden_squared_spec(),
        SubshiftSpec::full_shift(6),
        SubshiftSpec::new(3, words(3, &["00"])).unwrap(),
    ] {
        let n = spec.word_length().unwrap_or(2);
        let mut total = 0.0;
        for w in spec.enumerate_allowed(n) {
            total += parry_cylinder_measure(&spec, &w, DEFAULT_MAX_DIM).unwrap();
        }
        assert!((total - 1.0).abs() < 1e-9, "normalization failed: {total}");
    }

    // survival-curve monotonicity
    let curve = simulate_survival(
        &SubshiftSpec::full_shift(6),
        &words(6, &["00", "01"]),
        20_000,
        60,
        7,
        DEFAULT_MAX_DIM,
    )
    .unwrap();
    assert!(curve.is_monotone());

    // index bijection round-trip
    for sizes in [vec![2usize, 2], vec![3, 2], vec![2, 3, 2], vec![4, 3]] {
        let total: usize = sizes.iter().product();
        for idx in 0..total {
            let digits = phi_index(idx, &sizes).unwrap();
            assert_eq!(phi_inverse(&digits, &sizes).unwrap(), idx);
        }
    }

    // every construction output is correlation-free (q <= 6, m <= 6)
    let mut construction_cases = 0;
    for q in 2..=6u32 {
        for m in 1..=6usize {
            let mut params_list = vec![ConstructionParams::new(q, m, Variant::One, None, None, None)];
            for ell in 1..q.saturating_sub(1).max(2) {
                if ell >= q - 1 && q > 2 {
                    continue;
                }
                for r in 1..m.max(2) {
                    if r >= m && m > 1 {
                        continue;
                    }
                    params_list.push(ConstructionParams::new(q, m, Variant::Three, Some(ell), Some(r), None));
                }
            }
            for params in params_list.into_iter().flatten() {
                let set = constructions::build(&params).unwrap();
                assert_eq!(BigUint::from(set.len()), params.cardinality());
                assert!(
                    constructions::is_correlation_free(&set).unwrap(),
                    "construction failed for {params:?}"
                );
                construction_cases += 1;
            }
        }
    }
    assert!(construction_cases > 50);

    // maximality of construction 1 (q <= 4, 2 <= m <= 4): no outside word
    // can be added (any set of distinct single symbols qualifies, so m = 1
    // is excluded)
    for q in 2..=4u32 {
        for m in 2..=4usize {
            let params = ConstructionParams::new(q, m, Variant::One, None, None, None).unwrap();
            let set = constructions::build(&params).unwrap();
            let full = SubshiftSpec::full_shift(q);
            for cand in full.enumerate_allowed(m) {
                if set.contains(&cand) {
                    continue;
                }
                let mut bigger = set.clone();
                bigger.push(cand.clone()).unwrap();
                assert!(
                    !constructions::is_correlation_free(&bigger).unwrap(),
                    "{cand:?} extends construction 1 at q={q}, m={m}"
                );
            }
        }
    }
    println!(
        "criterion 14 PASS: normalization, monotonicity, bijection round-trip, {construction_cases} construction cases, maximality"
    );
}

#[test]
fn rate_orderings_follow_minimal_period_on_full_shifts() {
    // single-word holes of one length sort the same way by minimal period
    // and by escape rate (weak order)
    for len in [2usize, 3] {
        let full = SubshiftSpec::full_shift(6);
        let mut rows: Vec<(usize, f64)> = Vec::new();
        for w in full.enumerate_allowed(len) {
            let set = WordSet::new(6, vec![w]).unwrap();
            let h = HoleSpec::full_shift(6, set).unwrap();
            let tau = minimal_period(&h).unwrap();
            let rho = escape_rate_spectral(&h, DEFAULT_MAX_DIM).unwrap().rho;
            rows.push((tau, rho));
        }
        for (t1, r1) in &rows {
            for (t2, r2) in &rows {
                if t1 < t2 {
                    assert!(
                        r1 < r2,
                        "period order violated at length {len}: tau {t1} rho {r1} vs tau {t2} rho {r2}"
                    );
                }
            }
        }
    }
    println!("extra PASS: period/rate weak orders agree for single-word holes of lengths 2 and 3");
}

#[test]
fn counterexample_pair_survives_in_product_ambient() {
    // in the triple product, a hole with smaller minimal period can have
    // the larger escape rate
    let full2 = TransitionMatrix::full(2);
    let prod = tensor_product(&ProductSpec {
        factors: vec![full2.clone(), full2, golden_mean()],
    })
    .unwrap();
    let ambient = SubshiftSpec::from_matrix(&prod).unwrap();
    let h1 = HoleSpec::new(ambient.clone(), words(8, &["00"])).unwrap();
    let h2 = HoleSpec::new(ambient, words(8, &["01"])).unwrap();
    let tau1 = minimal_period(&h1).unwrap();
    let tau2 = minimal_period(&h2).unwrap();
    let rho1 = escape_rate_spectral(&h1, DEFAULT_MAX_DIM).unwrap().rho;
    let rho2 = escape_rate_spectral(&h2, DEFAULT_MAX_DIM).unwrap().rho;
    assert!(tau1 < tau2);
    assert!(rho1 > rho2);
    println!("extra PASS: tau {tau1} < {tau2} with rho {rho1:.4} > {rho2:.4}");
}

#[test]
fn adding_hole_words_never_decreases_rate() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let q: u32 = rng.gen_range(2..=5);
        let len: usize = rng.gen_range(2..=3);
        let mut set = WordSet::empty(q);
        let mut prev_rho = 0.0f64;
        for _ in 0..4 {
            let symbols: Vec<u32> = (0..len).map(|_| rng.gen_range(0..q)).collect();
            if set.push(Word::new(q, symbols).unwrap()).is_err() {
                continue;
            }
            let h = HoleSpec::full_shift(q, set.clone()).unwrap();
            let rho = escape_rate_spectral(&h, DEFAULT_MAX_DIM).unwrap().rho;
            assert!(
                rho >= prev_rho - 1e-12,
                "rate decreased after adding a word: {prev_rho} -> {rho}"
            );
            prev_rho = rho;
        }
    }
    println!("extra PASS: monotonicity in the hole under word addition");
}

#[test]
fn exact_eigenvalue_cross_check_small_dims() {
    for spec in [
        SubshiftSpec::full_shift(5),
        golden_squared_spec(),
        SubshiftSpec::new(3, words(3, &["00"])).unwrap(),
        SubshiftSpec::new(2, words(2, &["110"])).unwrap(),
    ] {
        let t = spec.higher_block_matrix(DEFAULT_MAX_DIM).unwrap();
        let power = perron(&t).unwrap().lambda;
        let exact = sft_escape::spectral::perron_exact_lambda(&t).unwrap();
        assert!(
            (power - exact).abs() <= 1e-10 * exact.max(1.0),
            "power {power} vs exact {exact}"
        );
    }
    println!("extra PASS: power iteration matches exact characteristic-polynomial roots");
}
