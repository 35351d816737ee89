//! Correlation-free word families and the escape rates of uniform holes.
//!
//! A family is correlation-free when every autocorrelation is the bare
//! `z^(m-1)` and all cross-correlations vanish; a hole built from
//! `k = q^(m-n)` such words has characteristic polynomial
//! `r^m - q r^(m-1) + k` and its escape rate grows strictly with `m`.
//!
//! ```bash
//! cargo run --example correlation_free_sets
//! ```

use sft_escape::constructions::{
    build, dominant_root, is_correlation_free, max_word_length, monotonicity_report,
    ConstructionParams, Variant,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // variant 1: fixed terminal symbol
    let params = ConstructionParams::new(6, 3, Variant::One, None, None, None)?;
    let set = build(&params)?;
    println!(
        "variant 1, q = 6, m = 3: {} words, correlation-free: {}",
        set.len(),
        is_correlation_free(&set)?
    );
    let sample: Vec<String> = set.iter().take(6).map(|w| w.to_string()).collect();
    println!("  first words: {} ...", sample.join(", "));

    // variant 2: several reserved terminal symbols
    let params = ConstructionParams::new(6, 3, Variant::Two, Some(2), None, None)?;
    let set = build(&params)?;
    println!(
        "variant 2, ell = 2: {} words (cardinality formula {})",
        set.len(),
        params.cardinality()
    );

    // variant 3: reserved suffix of length r
    let params = ConstructionParams::new(6, 4, Variant::Three, Some(2), Some(2), None)?;
    let set = build(&params)?;
    println!(
        "variant 3, ell = 2, r = 2: {} words, correlation-free: {}",
        set.len(),
        is_correlation_free(&set)?
    );

    // feasibility bounds: largest m with at least q^(m-n) words
    println!("\nlargest feasible m over q = 6 (rows n, columns ell):");
    for n in 1..=9 {
        let row: Vec<String> = (1..=4)
            .map(|ell| max_word_length(6, n, ell, 1).unwrap().to_string())
            .collect();
        println!("  n = {n}: {}", row.join("  "));
    }

    // dominant roots and monotone escape rates
    println!("\nuniform-hole escape rates for n = 2:");
    let report = monotonicity_report(6, 2, 2..=9);
    for (m, root) in &report.rows {
        match root {
            Some(r) => println!("  m = {m}: root = {:.9}, rho = {:.9}", r.root, r.escape_rate),
            None => println!("  m = {m}: outside the bracketing regime"),
        }
    }
    println!(
        "strictly increasing: {}, all in regime: {}",
        report.strictly_increasing, report.all_in_regime
    );

    // outside the regime the bracket check fails loudly
    match dominant_root(6, 2, 1) {
        Err(err) => println!("\nm = 2, n = 1 is rejected: {err}"),
        Ok(_) => unreachable!("p(q-1) > 0 here"),
    }
    Ok(())
}
