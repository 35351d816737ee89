//! Recomputes every built-in reference table and verifies it against the
//! embedded expected values.
//!
//! ```bash
//! cargo run --example reference_tables
//! ```

use sft_escape::cli::tables::{check, compute, TableId};
use sft_escape::shift::DEFAULT_MAX_DIM;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for id in TableId::all() {
        let table = compute(id, DEFAULT_MAX_DIM)?;
        let mismatches = check(&table)?;
        println!("table {id}: {}", table.title);
        print!("{}", table.to_csv(6));
        if mismatches.is_empty() {
            println!("-> matches the embedded expected values\n");
        } else {
            for m in &mismatches {
                println!("-> MISMATCH: {m}");
            }
            println!();
        }
    }
    Ok(())
}
