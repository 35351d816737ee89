//! Product systems: tensor-product transition matrices, Parry measures,
//! and holes whose escape rate defies the minimal-period ordering.
//!
//! ```bash
//! cargo run --example product_shifts
//! ```

use sft_escape::escape::{escape_rate_spectral, minimal_period, HoleSpec};
use sft_escape::shift::{
    phi_index, tensor_product, ProductSpec, SubshiftSpec, TransitionMatrix, DEFAULT_MAX_DIM,
};
use sft_escape::spectral::{parry_cylinder_measure, perron, topological_entropy};
use sft_escape::words::{Word, WordSet};

fn golden() -> TransitionMatrix {
    TransitionMatrix::new(
        2,
        vec![1, 1, 1, 0],
        vec![Word::new(2, vec![0]).unwrap(), Word::new(2, vec![1]).unwrap()],
    )
    .unwrap()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // the square of the golden-mean shift
    let prod = tensor_product(&ProductSpec {
        factors: vec![golden(), golden()],
    })?;
    println!("golden-mean squared: {} states", prod.dim());
    for i in 0..prod.dim() {
        let digits = phi_index(i, &[2, 2])?;
        println!("  symbol {i} = factors {digits:?}, row {:?}", prod.row(i));
    }
    let pd = perron(&prod)?;
    println!(
        "lambda = {:.9}, h_top = {:.6}, right eigenvector {:?}",
        pd.lambda,
        topological_entropy(&prod)?,
        pd.right.iter().map(|v| (v * 1e4).round() / 1e4).collect::<Vec<_>>()
    );

    let ambient = SubshiftSpec::from_matrix(&prod)?;
    println!("\ncylinder measures and escape rates (length-2 holes):");
    for text in ["00", "01", "03"] {
        let w = Word::parse(4, text)?;
        let mu = parry_cylinder_measure(&ambient, &w, DEFAULT_MAX_DIM)?;
        let h = HoleSpec::new(ambient.clone(), WordSet::new(4, vec![w])?)?;
        let rho = escape_rate_spectral(&h, DEFAULT_MAX_DIM)?.rho;
        println!("  hole {text}: measure = {mu:.6}, rho = {rho:.6}, tau_min = {}", minimal_period(&h)?);
    }

    // equal measure, different escape rate
    for text in ["000", "010"] {
        let w = Word::parse(4, text)?;
        let mu = parry_cylinder_measure(&ambient, &w, DEFAULT_MAX_DIM)?;
        let h = HoleSpec::new(ambient.clone(), WordSet::new(4, vec![w])?)?;
        let rho = escape_rate_spectral(&h, DEFAULT_MAX_DIM)?.rho;
        println!("  hole {text}: measure = {mu:.6}, rho = {rho:.6}");
    }

    // a triple product where a shorter minimal period loses
    let full2 = TransitionMatrix::full(2);
    let triple = tensor_product(&ProductSpec {
        factors: vec![full2.clone(), full2, golden()],
    })?;
    let ambient = SubshiftSpec::from_matrix(&triple)?;
    println!("\ntriple product on {} symbols:", ambient.q());
    for text in ["00", "01", "02"] {
        let w = Word::parse(8, text)?;
        let h = HoleSpec::new(ambient.clone(), WordSet::new(8, vec![w])?)?;
        let rho = escape_rate_spectral(&h, DEFAULT_MAX_DIM)?.rho;
        println!("  hole {text}: tau_min = {}, rho = {rho:.6}", minimal_period(&h)?);
    }
    println!("the hole with the smaller minimal period escapes slower here");
    Ok(())
}
