//! The commutation formula z^n r = sum_k S_{n,k}(r) z^(n-k), computed two
//! independent ways: by enumerating operator compositions and by the rewriting
//! engine of the combined presentation.
//!
//! ```bash
//! cargo run --example commutation_formula
//! ```

use orecalc::algebra::PBWElement;
use orecalc::ore::{
    commute_zn, commute_zn_vs_rewriter, jordanian_tower, snk_enumerate_counted, snk_pascal,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tower = jordanian_tower();
    let base = tower.base();
    let y = PBWElement::from_word(base, &[(0, 1)])?;

    // S_{n,k}(y): all C(n,k) compositions of k deltas and n-k alphas
    println!("S_(n,k)(y) over the Jordanian tower (alpha = id, delta = -y^2 d/dy):");
    for n in 0..=4u32 {
        for k in 0..=n {
            let (value, summands) = snk_enumerate_counted(n, k, &y, &tower)?;
            let pascal = snk_pascal(n, k, &y, &tower)?;
            assert_eq!(value, pascal, "the two implementations agree");
            println!("  S_({n},{k})(y) = {value}   [{summands} summands]");
        }
    }

    // x^n * y expanded into (coefficient in C[y]) * x^power
    println!("\nx^n * y as sum_k S_(n,k)(y) x^(n-k):");
    for n in 1..=3u32 {
        let rows = commute_zn(n, &y, &tower)?;
        let rendered: Vec<String> = rows
            .iter()
            .map(|(coeff, pow)| match pow {
                0 => format!("({coeff})"),
                1 => format!("({coeff})*x"),
                _ => format!("({coeff})*x^{pow}"),
            })
            .collect();
        println!("  x^{n}*y = {}", rendered.join(" + "));
    }

    // the same expansion from the rewriting engine, for a spread of inputs
    let ext = tower.extended_presentation("jordanian_ore")?;
    for d in 1..=4i64 {
        let r = PBWElement::from_word(base, &[(0, d)])?;
        for n in 0..=6u32 {
            let (formula, engine) = commute_zn_vs_rewriter(n, &r, &tower, &ext)?;
            assert_eq!(formula, engine);
        }
    }
    println!("\nformula == rewriting engine for r = y^d (d <= 4), n <= 6");

    Ok(())
}
