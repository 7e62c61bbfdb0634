//! Parse expressions over the built-in presentations and normal-order them
//! into their PBW bases.
//!
//! ```bash
//! cargo run --example normal_ordering
//! ```

use orecalc::algebra::{builtin, normal_order, BuiltinName};
use orecalc::coeff::GaussianRational;
use orecalc::expr::FreeTerm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The Jordanian plane: y*x = x*y + y^2, PBW basis x^i y^j.
    let jordanian = builtin(BuiltinName::Jordanian, None)?;
    for input in ["y*x", "y^2*x", "x^0 + y*x*y"] {
        let term = FreeTerm::parse(input, &jordanian)?;
        let pbw = normal_order(&term, &jordanian)?;
        println!("jordanian   {input:>20}  =  {pbw}");
    }

    // U_q(sl(2)) at the unit-modulus q = (3+4i)/5, PBW basis K^i F^n E^m.
    let q: GaussianRational = "3/5+4/5i".parse()?;
    let uq = builtin(BuiltinName::UqSl2, Some(q))?;
    for input in ["E*F", "K*K^-1", "E*K", "E*(K*F^2) - F^2*K*E"] {
        let term = FreeTerm::parse(input, &uq)?;
        let pbw = normal_order(&term, &uq)?;
        println!("uq_sl2      {input:>20}  =  {pbw}");
    }

    // The Weyl algebra [d, x] = 1 collapses commutators to lower degree.
    let weyl = builtin(BuiltinName::Weyl, None)?;
    for input in ["d*x", "d*x^5 - x^5*d"] {
        let term = FreeTerm::parse(input, &weyl)?;
        let pbw = normal_order(&term, &weyl)?;
        println!("weyl        {input:>20}  =  {pbw}");
    }

    // The free algebra has no rules: every word is already normal.
    let free = builtin(BuiltinName::Free(2), None)?;
    let term = FreeTerm::parse("y*x*y - 2*x", &free)?;
    println!(
        "free2       {:>20}  =  {}",
        "y*x*y - 2*x",
        normal_order(&term, &free)?
    );

    Ok(())
}
