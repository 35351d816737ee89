//! Built-in reference tables and the `--check` comparison against the
//! expected values embedded under `data/`.
//!
//! A computed value matches an expected value printed with `d` decimals iff
//! `|computed - printed| <= 2.5 * 10^-d` (half an ulp of the print plus
//! slack for the reference's own rounding style; adjacent entries there sit
//! three units of the last place apart). Words, periods and exact symbolic
//! cells must match verbatim.

use crate::algebra::rational_matrix_inverse_sum;
use crate::constructions;
use crate::escape::{escape_rate_spectral, minimal_period, HoleSpec};
use crate::shift::{tensor_product, ProductSpec, SubshiftSpec, TransitionMatrix};
use crate::spectral::parry_cylinder_measure;
use crate::torus::{rectangle_to_words, Rectangle, TorusMapSpec};
use crate::words::{correlation_matrix, Word, WordSet};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

/// One table cell; the kind decides how `--check` compares it.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    /// Free text, compared verbatim.
    Text(String),
    /// Exact value (integer, rational, polynomial, period), compared verbatim.
    Exact(String),
    /// Floating value, compared at the expected print's precision.
    Num(f64),
}

impl Cell {
    pub fn render(&self, precision: usize) -> String {
        match self {
            Cell::Text(s) | Cell::Exact(s) => s.clone(),
            Cell::Num(v) => format_float(*v, precision),
        }
    }
}

pub fn format_float(v: f64, precision: usize) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{v:.precision$}")
}

/// A computed reference table.
#[derive(Clone, Debug)]
pub struct Table {
    pub id: TableId,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| csv_quote(&c.render(precision))).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn csv_quote(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn csv_split(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if quoted && chars.peek() == Some(&'"') => {
                cur.push('"');
                chars.next();
            }
            '"' => quoted = !quoted,
            ',' if !quoted => out.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    out.push(cur);
    out
}

/// Identifiers of the built-in tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableId {
    T1,
    T2,
    T2a,
    T3,
    T4,
    T5,
    T5bis,
    T6,
    T7,
}

impl TableId {
    pub fn parse(text: &str) -> Result<Self> {
        match text.to_ascii_lowercase().as_str() {
            "1" => Ok(Self::T1),
            "2" => Ok(Self::T2),
            "2a" => Ok(Self::T2a),
            "3" => Ok(Self::T3),
            "4" => Ok(Self::T4),
            "5" => Ok(Self::T5),
            "5bis" | "5-bis" => Ok(Self::T5bis),
            "6" => Ok(Self::T6),
            "7" => Ok(Self::T7),
            _ => Err(Error::InvalidParameter(format!(
                "unknown table id {text:?} (known: 1, 2, 2a, 3, 4, 5, 5bis, 6, 7)"
            ))),
        }
    }

    pub fn all() -> [TableId; 9] {
        [
            Self::T1,
            Self::T2,
            Self::T2a,
            Self::T3,
            Self::T4,
            Self::T5,
            Self::T5bis,
            Self::T6,
            Self::T7,
        ]
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::T1 => "1",
            Self::T2 => "2",
            Self::T2a => "2a",
            Self::T3 => "3",
            Self::T4 => "4",
            Self::T5 => "5",
            Self::T5bis => "5bis",
            Self::T6 => "6",
            Self::T7 => "7",
        }
    }

    /// Embedded expected values for `--check`.
    pub fn expected_csv(&self) -> &'static str {
        match self {
            Self::T1 => include_str!("../../data/table1.csv"),
            Self::T2 => include_str!("../../data/table2.csv"),
            Self::T2a => include_str!("../../data/table2a.csv"),
            Self::T3 => include_str!("../../data/table3.csv"),
            Self::T4 => include_str!("../../data/table4.csv"),
            Self::T5 => include_str!("../../data/table5.csv"),
            Self::T5bis => include_str!("../../data/table5bis.csv"),
            Self::T6 => include_str!("../../data/table6.csv"),
            Self::T7 => include_str!("../../data/table7.csv"),
        }
    }
}

impl std::fmt::Display for TableId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// Computes a table from scratch.
pub fn compute(id: TableId, max_dim: usize) -> Result<Table> {
    match id {
        TableId::T1 => torus_table(id, 1, 2, &grid_rows(3, 4)),
        TableId::T2 => torus_table(id, 1, 3, &grid_rows(3, 8)),
        TableId::T2a => torus_table(
            id,
            4,
            2,
            &[
                (0, 0),
                (1, 0),
                (3, 0),
                (10, 0),
                (0, 1),
                (1, 1),
                (3, 1),
                (10, 1),
                (0, 2),
            ],
        ),
        TableId::T3 => bounds_table(id),
        TableId::T4 => product_hole_table(
            id,
            &golden_squared_spec()?,
            &["00", "01", "02", "10", "20", "03", "12", "21", "30"],
            max_dim,
        ),
        TableId::T5 => product_hole_table(
            id,
            &golden_squared_spec()?,
            &[
                "010", "020", "030", "000", "001", "002", "012", "021", "100", "120", "200",
                "210", "003", "102", "201", "300", "101", "121", "202", "212", "103", "203",
                "301", "302", "303",
            ],
            max_dim,
        ),
        TableId::T5bis => triple_product_table(id, max_dim),
        TableId::T6 => one_dim_table(id, "00", &["01", "02", "10", "20", "11", "22", "12", "21"], max_dim),
        TableId::T7 => one_dim_table(id, "02", &["00", "22", "01", "12", "10", "21", "11", "20"], max_dim),
    }
}

fn grid_rows(ni: u64, nj: u64) -> Vec<(u64, u64)> {
    let mut rows = Vec::new();
    for i in 0..ni {
        for j in 0..nj {
            rows.push((i, j));
        }
    }
    rows
}

fn torus_table(id: TableId, m: u32, n: u32, cells: &[(u64, u64)]) -> Result<Table> {
    let spec = TorusMapSpec::new(3, 2)?;
    let q = spec.alphabet_size();
    let mut rows = Vec::new();
    for &(i, j) in cells {
        let rect = Rectangle::new(&spec, i, j, m, n)?;
        let set = rectangle_to_words(&spec, &rect)?;
        let words: Vec<String> = set.iter().map(|w| w.to_string()).collect();
        let h = HoleSpec::full_shift(q, set)?;
        let tau = minimal_period(&h)
            .map(|t| t.to_string())
            .unwrap_or_else(|_| "-".into());
        // the higher-block dimension here is at most 6^3 = 216
        let rho = escape_rate_spectral(&h, 20_000)?.rho;
        rows.push(vec![
            Cell::Text(format!("R_{{{i},{j},{m},{n}}}")),
            Cell::Text(words.join(" ")),
            Cell::Exact(tau),
            Cell::Num(rho),
        ]);
    }
    Ok(Table {
        id,
        title: format!("torus factors (3,2), rectangle levels m={m}, n={n}"),
        columns: vec!["rect".into(), "words".into(), "tau_min".into(), "rho".into()],
        rows,
    })
}

fn bounds_table(id: TableId) -> Result<Table> {
    let mut rows = Vec::new();
    for n in 1..=9usize {
        let mut row = vec![Cell::Exact(n.to_string())];
        for ell in 1..=4u32 {
            let m = constructions::max_word_length(6, n, ell, 1)?;
            row.push(Cell::Exact(m.to_string()));
        }
        rows.push(row);
    }
    Ok(Table {
        id,
        title: "largest word length with at least q^(m-n) construction words, q=6".into(),
        columns: vec!["n".into(), "ell=1".into(), "ell=2".into(), "ell=3".into(), "ell=4".into()],
        rows,
    })
}

fn golden_mean_factor() -> TransitionMatrix {
    TransitionMatrix::new(
        2,
        vec![1, 1, 1, 0],
        vec![Word::new(2, vec![0]).unwrap(), Word::new(2, vec![1]).unwrap()],
    )
    .unwrap()
}

fn golden_squared_spec() -> Result<SubshiftSpec> {
    let g = golden_mean_factor();
    let prod = tensor_product(&ProductSpec {
        factors: vec![g.clone(), g],
    })?;
    SubshiftSpec::from_matrix(&prod)
}

fn product_hole_table(
    id: TableId,
    ambient: &SubshiftSpec,
    holes: &[&str],
    max_dim: usize,
) -> Result<Table> {
    let mut rows = Vec::new();
    for text in holes {
        let w = Word::parse(ambient.q(), text)?;
        let mu = parry_cylinder_measure(ambient, &w, max_dim)?;
        let set = WordSet::new(ambient.q(), vec![w])?;
        let h = HoleSpec::new(ambient.clone(), set)?;
        let tau = minimal_period(&h)
            .map(|t| t.to_string())
            .unwrap_or_else(|_| "-".into());
        let rho = escape_rate_spectral(&h, max_dim)?.rho;
        rows.push(vec![
            Cell::Text((*text).into()),
            Cell::Num(mu),
            Cell::Num(rho),
            Cell::Exact(tau),
        ]);
    }
    Ok(Table {
        id,
        title: "golden-mean product shift, single-cylinder holes".into(),
        columns: vec!["hole".into(), "measure".into(), "rho".into(), "tau_min".into()],
        rows,
    })
}

fn triple_product_table(id: TableId, max_dim: usize) -> Result<Table> {
    let full2 = TransitionMatrix::full(2);
    let prod = tensor_product(&ProductSpec {
        factors: vec![full2.clone(), full2, golden_mean_factor()],
    })?;
    let ambient = SubshiftSpec::from_matrix(&prod)?;
    let q = ambient.q();
    // classes over allowed two-symbol words ab: both symbols odd is forbidden
    let classify = |a: u32, b: u32| -> usize {
        let even = (a.is_multiple_of(2), b.is_multiple_of(2));
        match even {
            (true, true) if a == b => 0,
            (true, true) => 2,
            (true, false) | (false, true) => 1,
            (false, false) => usize::MAX, // forbidden, never reached
        }
    };
    let names = ["a = b even", "exactly one of a b even", "a != b both even"];
    let mut class_values: [Option<(f64, f64, String)>; 3] = [None, None, None];
    let mut counts = [0usize; 3];
    for a in 0..q {
        for b in 0..q {
            if a % 2 == 1 && b % 2 == 1 {
                continue;
            }
            let class = classify(a, b);
            let w = Word::new(q, vec![a, b])?;
            let mu = parry_cylinder_measure(&ambient, &w, max_dim)?;
            let set = WordSet::new(q, vec![w])?;
            let h = HoleSpec::new(ambient.clone(), set)?;
            let tau = minimal_period(&h)
                .map(|t| t.to_string())
                .unwrap_or_else(|_| "-".into());
            let rho = escape_rate_spectral(&h, max_dim)?.rho;
            counts[class] += 1;
            match &class_values[class] {
                None => class_values[class] = Some((mu, rho, tau)),
                Some((mu0, rho0, tau0)) => {
                    if (mu - mu0).abs() > 1e-9 || (rho - rho0).abs() > 1e-9 || tau != *tau0 {
                        return Err(Error::InternalCheck(format!(
                            "hole class {:?} is not uniform: word {a}{b} gives ({mu}, {rho}, {tau})",
                            names[class]
                        )));
                    }
                }
            }
        }
    }
    let mut rows = Vec::new();
    for (class, name) in names.iter().enumerate() {
        let (mu, rho, tau) = class_values[class].clone().expect("every class is populated");
        rows.push(vec![
            Cell::Text((*name).into()),
            Cell::Exact(counts[class].to_string()),
            Cell::Num(mu),
            Cell::Num(rho),
            Cell::Exact(tau),
        ]);
    }
    Ok(Table {
        id,
        title: "product of two doubling factors and a golden-mean factor, length-2 holes".into(),
        columns: vec![
            "class".into(),
            "count".into(),
            "measure".into(),
            "rho".into(),
            "tau_min".into(),
        ],
        rows,
    })
}

fn one_dim_table(id: TableId, forbidden: &str, holes: &[&str], max_dim: usize) -> Result<Table> {
    let q = 3;
    let f_word = Word::parse(q, forbidden)?;
    let ambient = SubshiftSpec::new(q, WordSet::new(q, vec![f_word.clone()])?)?;
    let three = BigRational::from(BigInt::from(3));
    let mut rows = Vec::new();
    for text in holes {
        let w = Word::parse(q, text)?;
        let mu = parry_cylinder_measure(&ambient, &w, max_dim)?;
        let pair = WordSet::new(q, vec![f_word.clone(), w.clone()])?;
        let a = rational_matrix_inverse_sum(&correlation_matrix(&pair)?)?;
        let a_at_3 = a
            .eval_rational(&three)
            .map(|v| v.to_string())
            .unwrap_or_else(|| "undefined".into());
        let set = WordSet::new(q, vec![w])?;
        let h = HoleSpec::new(ambient.clone(), set)?;
        let rho = escape_rate_spectral(&h, max_dim)?.rho;
        rows.push(vec![
            Cell::Text((*text).into()),
            Cell::Num(mu),
            Cell::Exact(a.to_string()),
            Cell::Exact(a_at_3),
            Cell::Num(rho),
        ]);
    }
    Ok(Table {
        id,
        title: format!("one-dimensional subshift on 3 symbols, {forbidden} forbidden"),
        columns: vec![
            "hole".into(),
            "measure".into(),
            "a_z".into(),
            "a_at_3".into(),
            "rho".into(),
        ],
        rows,
    })
}

/// Parses an expected-values CSV (comments allowed) into header + rows.
fn parse_expected(csv: &str) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut lines = csv
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = csv_split(
        lines
            .next()
            .ok_or_else(|| Error::ParseInput("empty expected table".into()))?,
    );
    let rows = lines.map(csv_split).collect();
    Ok((header, rows))
}

fn decimals(text: &str) -> usize {
    text.split('.').nth(1).map_or(0, str::len)
}

/// Compares a computed table against its embedded expected values; returns
/// one message per mismatch (empty means the check passed).
pub fn check(table: &Table) -> Result<Vec<String>> {
    let (header, expected_rows) = parse_expected(table.id.expected_csv())?;
    let mut mismatches = Vec::new();
    if header != table.columns {
        mismatches.push(format!(
            "table {}: column mismatch: computed {:?}, expected {:?}",
            table.id, table.columns, header
        ));
        return Ok(mismatches);
    }
    if expected_rows.len() != table.rows.len() {
        mismatches.push(format!(
            "table {}: row count {} differs from expected {}",
            table.id,
            table.rows.len(),
            expected_rows.len()
        ));
        return Ok(mismatches);
    }
    for (r, (computed, expected)) in table.rows.iter().zip(&expected_rows).enumerate() {
        for (c, (cell, want)) in computed.iter().zip(expected).enumerate() {
            let column = &table.columns[c];
            match cell {
                Cell::Text(got) | Cell::Exact(got) => {
                    if got != want {
                        mismatches.push(format!(
                            "table {} row {r} column {column}: got {got:?}, expected {want:?}",
                            table.id
                        ));
                    }
                }
                Cell::Num(got) => {
                    let printed: f64 = want.parse().map_err(|_| {
                        Error::ParseInput(format!("bad expected number {want:?}"))
                    })?;
                    let tol = 2.5 * 10f64.powi(-(decimals(want) as i32));
                    if (got - printed).abs() > tol {
                        mismatches.push(format!(
                            "table {} row {r} column {column}: got {got:.6}, expected {want} (tol {tol:.1e})",
                            table.id
                        ));
                    }
                }
            }
        }
    }
    Ok(mismatches)
}
