//! Correlation polynomials, correlation matrices, and the linear system
//! behind the avoiding-count generating function.
//!
//! ```bash
//! cargo run --example word_correlations
//! ```

use sft_escape::algebra::rational_matrix_inverse_sum;
use sft_escape::escape::solve_generating_system;
use sft_escape::words::{correlation_matrix, correlation_polynomial, Word, WordSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // sliding one word under another records the overlaps as a polynomial
    let u = Word::parse(2, "101001")?;
    let w = Word::parse(2, "10010")?;
    println!("(uw)_z for u = {u}, w = {w}: {}", correlation_polynomial(&u, &w)?);
    println!("(wu)_z for the reverse order:  {}", correlation_polynomial(&w, &u)?);
    println!("(uu)_z: {}", correlation_polynomial(&u, &u)?);

    // the correlation matrix of a word set drives everything downstream
    let set = WordSet::new(6, vec![Word::parse(6, "00")?, Word::parse(6, "01")?])?;
    let matrix = correlation_matrix(&set)?;
    println!("\ncorrelation matrix of {{00, 01}}:");
    for row in &matrix {
        let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
        println!("  [ {} ]", cells.join(" , "));
    }
    println!("entry sum of its inverse: a(z) = {}", rational_matrix_inverse_sum(&matrix)?);

    // the full linear system also yields the end-with-word counts
    let (f, fs) = solve_generating_system(6, &set)?;
    println!("\nF(z) = {f}");
    for (i, fi) in fs.iter().enumerate() {
        println!("F_{}(z) = {fi}", i + 1);
    }

    // first few coefficients of F count the words avoiding the set
    let series = f.series(7)?;
    let rendered: Vec<String> = series.iter().map(|v| v.to_string()).collect();
    println!("avoiding-word counts: {}", rendered.join(", "));
    Ok(())
}
