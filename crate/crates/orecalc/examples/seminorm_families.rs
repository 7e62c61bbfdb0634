//! The weighted seminorm families and their evaluation on PBW elements.
//!
//! ```bash
//! cargo run --example seminorm_families
//! ```

use num::rational::BigRational;
use orecalc::algebra::{builtin, normal_order, BuiltinName, Presentation};
use orecalc::coeff::GaussianRational;
use orecalc::expr::FreeTerm;
use orecalc::seminorm::{eval, eval_exact, Family, SeminormSpec};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // rho^(i+j)/j! on the Jordanian plane
    let jordanian = builtin(BuiltinName::Jordanian, None)?;
    let spec = SeminormSpec::plain(Family::JordanianFull, rat(2, 1))?;
    for input in ["y^3", "x*y", "y*x", "x^2 + 3*y"] {
        let el = normal_order(&FreeTerm::parse(input, &jordanian)?, &jordanian)?;
        let value = eval(&spec, &el)?;
        match eval_exact(&spec, &el)? {
            Some(exact) => println!("||{input}||_(full, rho=2) = {value}   (exactly {exact})"),
            None => println!("||{input}||_(full, rho=2) = {value}"),
        }
    }

    // the one-variable families P (rho^i/(i-1)!) and Q (rho^i/i!) on C[y]
    let poly_y = Presentation::free_on("poly_y", &["y"]);
    let p_spec = SeminormSpec::plain(Family::JordanianP, rat(1, 1))?;
    let q_spec = SeminormSpec::plain(Family::JordanianQ, rat(1, 1))?;
    let y5 = normal_order(&FreeTerm::parse("y^5", &poly_y)?, &poly_y)?;
    println!(
        "\n||y^5||_P = {}   ||y^5||_Q = {}",
        eval(&p_spec, &y5)?,
        eval(&q_spec, &y5)?
    );

    // rho^(i+n+m) with a signed Laurent exponent on U_q(sl(2))
    let q: GaussianRational = "3/5+4/5i".parse()?;
    let uq = builtin(BuiltinName::UqSl2, Some(q))?;
    let spec3 = SeminormSpec::plain(Family::UqFull, rat(3, 1))?;
    for input in ["K^-2*F*E", "E*F", "K^4"] {
        let el = normal_order(&FreeTerm::parse(input, &uq)?, &uq)?;
        println!("||{input}||_(uq_full, rho=3) = {}", eval(&spec3, &el)?);
    }

    // rho^i with i in Z on the Laurent ring C[K, K^-1]
    let a0 = Presentation::laurent_ring("a0", "K");
    let laurent = SeminormSpec::plain(Family::A0Laurent, rat(1, 2))?;
    let el = normal_order(&FreeTerm::parse("K^-1 + K^2", &a0)?, &a0)?;
    println!(
        "\n||K^-1 + K^2||_(a0_laurent, rho=1/2) = {}",
        eval(&laurent, &el)?
    );

    // the level family on U(g): only y-degrees <= n contribute
    let ug = builtin(BuiltinName::UgSolvable, None)?;
    let level = SeminormSpec::new(Family::UgLevel, rat(2, 1), None, Some(1))?;
    let el = normal_order(&FreeTerm::parse("x^3*y + x^3*y^4", &ug)?, &ug)?;
    println!(
        "||x^3*y + x^3*y^4||_(ug_level, n=1, rho=2) = {}",
        eval(&level, &el)?
    );

    Ok(())
}
