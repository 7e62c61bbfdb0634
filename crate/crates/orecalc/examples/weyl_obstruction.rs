//! The Weyl algebra collapse: [d, x^n] = n x^(n-1) forces n <= 2 |x| |d| in
//! any normed algebra, so no submultiplicative seminorm sees the relation
//! [d, x] = 1 nontrivially.
//!
//! ```bash
//! cargo run --example weyl_obstruction
//! ```

use orecalc::algebra::weyl_commutator_check;
use orecalc::seminorm::weyl_obstruction_report;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [1u32, 2, 5, 12, 30] {
        let c = weyl_commutator_check(n)?;
        println!("[d, x^{n}] = {c}");
    }

    println!();
    for (nx, nd) in [(1.0, 1.0), (10.0, 10.0), (0.1, 0.1), (2.5, 4.0)] {
        let report = weyl_obstruction_report(nx, nd);
        println!(
            "|x| = {nx}, |d| = {nd}: any submultiplicative seminorm dies at n = {} (bound 2|x||d| = {})",
            report.parameters["minimal_n"], report.parameters["bound"],
        );
    }

    Ok(())
}
