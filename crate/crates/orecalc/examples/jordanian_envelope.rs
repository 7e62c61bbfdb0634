//! The seminorm analysis behind the Jordanian plane: submultiplicativity of
//! the base family, the exact delta-stability bound, and the P ~ Q
//! equivalence that simplifies the weights.
//!
//! ```bash
//! cargo run --example jordanian_envelope
//! ```

use num::rational::BigRational;
use orecalc::algebra::PBWElement;
use orecalc::coeff::ratio_to_f64;
use orecalc::ore::jordanian_tower;
use orecalc::seminorm::{
    check_domination_ingredients, check_equivalence_pq, check_p_monomial_submultiplicative,
    check_stability, check_submultiplicative, Family, Sampler, SeminormSpec,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tower = jordanian_tower();
    let base = tower.base();

    // ||y^(k+l)|| <= ||y^k|| ||y^l|| for the weight rho^i/(i-1)!: decided
    // exactly in rationals up to power 20
    for rho in [rat(1, 2), rat(1, 1), rat(2, 1)] {
        let report = check_p_monomial_submultiplicative(&rho, 20);
        println!(
            "monomial submultiplicativity at rho = {rho}: {} (max ratio {:.6})",
            if report.passed { "ok" } else { "VIOLATED" },
            report.max_ratio
        );
    }

    // the same property on random polynomials, in floating point
    let spec = SeminormSpec::plain(Family::JordanianP, rat(1, 1))?;
    let mut sampler = Sampler::new(1);
    let pairs: Vec<(PBWElement, PBWElement)> = (0..200)
        .map(|_| {
            (
                sampler.element(base, 4, &[(0, 6)]),
                sampler.element(base, 4, &[(0, 6)]),
            )
        })
        .collect();
    let report = check_submultiplicative(&spec, pairs, 1e-9)?;
    println!(
        "sampled submultiplicativity: {} over {} pairs",
        if report.passed { "ok" } else { "VIOLATED" },
        report.trials
    );

    // delta = -y^2 d/dy stretches the rho-seminorm by at most rho; on
    // monomials the ratio is exactly rho
    for rho in [rat(1, 2), rat(1, 1), rat(3, 1)] {
        let spec = SeminormSpec::plain(Family::JordanianP, rho.clone())?;
        let elements: Vec<PBWElement> = (0..200)
            .map(|_| sampler.element(base, 6, &[(0, 12)]))
            .collect();
        let report = check_stability(&spec, tower.delta_map(), ratio_to_f64(&rho), elements, 1e-9)?;
        println!(
            "delta-stability at rho = {rho}: {} (worst stretch/bound = {:.9})",
            if report.passed { "ok" } else { "VIOLATED" },
            report.max_ratio
        );
    }

    // P and Q generate the same topology: Q <= P at equal rho, P(rho) <= Q(2 rho)
    let report = check_equivalence_pq(&[rat(1, 10), rat(1, 1), rat(10, 1)], 30);
    println!(
        "P ~ Q equivalence on monomials to degree 30: {}",
        if report.passed { "ok" } else { "VIOLATED" }
    );

    // the two ingredient inequalities of the domination argument, for a
    // user-supplied stability constant and generator norm
    let report = check_domination_ingredients(&rat(3, 1), &rat(5, 2), 25)?;
    println!(
        "domination ingredients (C = 3, |y| = 5/2): {} [rho = {}]",
        if report.passed { "ok" } else { "VIOLATED" },
        report.parameters["rho"]
    );

    Ok(())
}
