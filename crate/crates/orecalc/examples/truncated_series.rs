//! Truncated series arithmetic: finite sections of power series multiply
//! consistently because the rewrite rules never raise the grading, so a
//! discarded tail cannot influence retained monomials.
//!
//! ```bash
//! cargo run --example truncated_series
//! ```

use orecalc::algebra::{builtin, normal_order, BuiltinName};
use orecalc::expr::FreeTerm;
use orecalc::ore::TruncatedSeries;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = builtin(BuiltinName::Jordanian, None)?;
    let parse = |s: &str| normal_order(&FreeTerm::parse(s, &p).unwrap(), &p).unwrap();

    // two exact polynomials below the cap multiply exactly
    let a = TruncatedSeries::from_element(parse("1 + y"), 8);
    let b = TruncatedSeries::from_element(parse("x + y^2"), 8);
    let ab = a.series_mul(&b)?;
    println!(
        "(1 + y)(x + y^2) = {}   [exact: {}]",
        ab.element(),
        ab.is_exact()
    );

    // a section of the geometric series 1 + y + y^2 + ... times x: the
    // product is re-truncated and flagged inexact
    let section = TruncatedSeries::inexact(parse("1 + y + y^2 + y^3"), 3);
    let x = TruncatedSeries::from_element(parse("x"), 3);
    let sx = section.series_mul(&x)?;
    println!(
        "(1 + y + y^2 + y^3) * x, cap 3 = {}   [exact: {}]",
        sx.element(),
        sx.is_exact()
    );

    // caps combine as the minimum
    let tight = TruncatedSeries::from_element(parse("y"), 2);
    let loose = TruncatedSeries::from_element(parse("x"), 9);
    let prod = tight.series_mul(&loose)?;
    println!(
        "cap(y @ 2) * cap(x @ 9) -> cap {} = {}   [exact: {}]",
        prod.degree_cap(),
        prod.element(),
        prod.is_exact()
    );

    Ok(())
}
