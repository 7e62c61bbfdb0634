//! Define an algebra from a JSON document and run it through the same
//! engine as the built-ins. The document below presents the quantum plane
//! x*y = q*y*x at q = i as a rewrite system.
//!
//! ```bash
//! cargo run --example custom_presentation
//! ```

use orecalc::algebra::{normal_order, presentation_from_json};
use orecalc::expr::FreeTerm;

const QUANTUM_PLANE_AT_I: &str = r#"{
    "name": "qplane_i",
    "q": "i",
    "generators": [
        {"symbol": "x"},
        {"symbol": "y"}
    ],
    "rules": [
        {
            "lhs": ["y", "x"],
            "rhs": [{"coeff": "-i", "word": [["x", 1], ["y", 1]]}]
        }
    ],
    "grading": {"x": 1, "y": 1}
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = presentation_from_json(QUANTUM_PLANE_AT_I)?;
    println!(
        "loaded `{}` with {} generators",
        p.name(),
        p.num_generators()
    );
    assert!(p.missing_rules().is_empty(), "rule set covers every pair");

    for input in ["y*x", "y^2*x^2", "x*y - i*y*x"] {
        let el = normal_order(&FreeTerm::parse(input, &p)?, &p)?;
        println!("  {input:>12}  =  {el}");
    }

    // a rule whose right side raises the grading is rejected up front
    let bad = r#"{
        "name": "inflating",
        "generators": [{"symbol": "a"}, {"symbol": "b"}],
        "rules": [{"lhs": ["b", "a"], "rhs": [{"coeff": "1", "word": [["a", 3]]}]}]
    }"#;
    match presentation_from_json(bad) {
        Err(e) => println!("\ninflating rule rejected: {e}"),
        Ok(_) => unreachable!("grading audit must fail"),
    }

    Ok(())
}
