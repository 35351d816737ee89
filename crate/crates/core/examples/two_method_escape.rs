//! Escape rate of a union-of-cylinders hole, computed twice.
//!
//! The rectangle `[0, 1/9) x [0, 1/2)` under the (3, 2) torus map turns
//! into the hole `{00, 01}` on six symbols; `[2/9, 1/3) x [0, 1/2)` turns
//! into `{04, 05}`. Same measure, different escape rates, and the spectral
//! and combinatorial pipelines must agree to more than nine digits.
//!
//! ```bash
//! cargo run --example two_method_escape
//! ```

use sft_escape::escape::{compare_methods, EscapeDetails};
use sft_escape::words::{Word, WordSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for texts in [&["00", "01"], &["04", "05"]] {
        let hole = WordSet::new(6, texts.iter().map(|t| Word::parse(6, t).unwrap()).collect())?;
        let cmp = compare_methods(6, &hole)?;
        println!("hole {{{}}} over q = 6", texts.join(", "));
        println!(
            "  spectral:      rho = {:.12} (lambda = {:.12})",
            cmp.spectral.rho, cmp.spectral.lambda_with_hole
        );
        println!(
            "  combinatorial: rho = {:.12} (lambda = {:.12})",
            cmp.combinatorial.rho, cmp.combinatorial.lambda_with_hole
        );
        println!("  difference:    {:.2e}", cmp.difference);
        if let EscapeDetails::Combinatorial {
            correlation_inverse_sum,
            generating_function,
            recurrence,
        } = &cmp.combinatorial.details
        {
            println!("  a(z) = {correlation_inverse_sum}");
            println!("  F(z) = {generating_function}");
            println!("  recurrence: {recurrence}");
            let counts = recurrence.iterate(8);
            let rendered: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
            println!("  avoiding-word counts: {}", rendered.join(", "));
        }
        println!();
    }
    Ok(())
}
