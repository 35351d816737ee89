//! Basic rectangles of the expanding torus map and their cylinder words.
//!
//! Every rectangle `R_{i,j,m,n}` is a product of an `M`-adic and an
//! `N`-adic interval; under the digit pairing it becomes a union of
//! equal-length cylinders. Mismatched levels free the digits of the
//! coarser side, one cylinder per completion.
//!
//! ```bash
//! cargo run --example torus_rectangles
//! ```

use sft_escape::escape::{compare_methods, minimal_period, poincare_recurrence_time, HoleSpec};
use sft_escape::shift::DEFAULT_MAX_DIM;
use sft_escape::torus::{
    encode_point, equal_measure_classes, measure_to_f64, rectangle_to_words, Rectangle,
    TorusMapSpec,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = TorusMapSpec::new(3, 2)?;
    println!("torus map (x, y) -> (3x, 2y) mod 1, q = {}", spec.alphabet_size());

    for (i, j, m, n) in [(5u64, 2u64, 2u32, 2u32), (0, 0, 2, 1), (6, 1, 2, 1), (0, 1, 1, 2)] {
        let rect = Rectangle::new(&spec, i, j, m, n)?;
        let words = rectangle_to_words(&spec, &rect)?;
        let rendered: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        let hole = HoleSpec::full_shift(spec.alphabet_size(), words)?;
        let cmp = compare_methods(spec.alphabet_size(), hole.hole())?;
        println!(
            "R_{{{i},{j},{m},{n}}}: words {{{}}}, measure {} ({:.6})",
            rendered.join(", "),
            rect.measure(&spec),
            measure_to_f64(&rect.measure(&spec)),
        );
        println!(
            "  tau_min = {}, poincare = {}, rho = {:.6}",
            minimal_period(&hole)?,
            poincare_recurrence_time(&hole, DEFAULT_MAX_DIM)?,
            cmp.spectral.rho
        );
    }

    // a word prefix pins down an exact rectangle
    let pair = encode_point(&spec, &[3, 4])?;
    println!(
        "\nprefix 34 occupies x in [{}, {}), y in [{}, {})",
        pair.x.lo, pair.x.hi, pair.y.lo, pair.y.hi
    );

    // measure coincidences across levels need multiplicatively dependent factors
    let dependent = TorusMapSpec::new(4, 2)?;
    let cmp = equal_measure_classes(&dependent, (1, 2), (2, 0));
    println!(
        "\nfactors (4, 2): levels (1,2) vs (2,0) equal measure: {}, relation: {:?}",
        cmp.equal, cmp.power_relation
    );
    let independent = equal_measure_classes(&spec, (2, 1), (1, 2));
    println!(
        "factors (3, 2): levels (2,1) vs (1,2) equal measure: {}, relation: {:?}",
        independent.equal, independent.power_relation
    );
    Ok(())
}
