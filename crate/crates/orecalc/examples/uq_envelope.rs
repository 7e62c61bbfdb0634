//! The seminorm analysis behind U_q(sl(2)) at |q| = 1: the exact q-power law,
//! the isometry of the twisting endomorphisms, and the explicit bound on the
//! derivation.
//!
//! ```bash
//! cargo run --example uq_envelope
//! ```

use num::rational::BigRational;
use orecalc::algebra::{builtin, BuiltinName, PBWElement};
use orecalc::coeff::{ratio_to_f64, GaussianRational};
use orecalc::ore::uq_tower;
use orecalc::seminorm::{check_isometry, check_stability, Family, Sampler, SeminormSpec};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: GaussianRational = "3/5+4/5i".parse()?;
    let uq = builtin(BuiltinName::UqSl2, Some(q.clone()))?;

    // K^i F^n = q^(-2in) F^n K^i with |q^(-2in)| = 1 exactly
    let k = uq.gen_index("K").unwrap();
    let f = uq.gen_index("F").unwrap();
    for (i, n) in [(1i64, 1i64), (2, 3), (-3, 2)] {
        let engine = PBWElement::from_word(&uq, &[(f, n), (k, i)])?;
        let expected =
            PBWElement::from_word(&uq, &[(k, i), (f, n)])?.scalar_mul(&q.pow(2 * i * n)?);
        assert_eq!(engine, expected);
        let (_, c) = engine.support().next().unwrap();
        println!(
            "F^{n} K^{i} = q^({}) K^{i} F^{n},   |phase|^2 = {}",
            2 * i * n,
            c.abs_sq()
        );
    }

    let (stage1, stage2) = uq_tower(&q)?;
    let mut sampler = Sampler::new(3);

    // alpha0 and alpha1 preserve every coefficient modulus, hence the seminorm
    let spec0 = SeminormSpec::plain(Family::A0Laurent, rat(1, 2))?;
    let samples: Vec<PBWElement> = (0..200)
        .map(|_| sampler.element(stage1.base(), 4, &[(-6, 6)]))
        .collect();
    let report = check_isometry(&spec0, stage1.alpha_map(), samples, 1e-12)?;
    println!(
        "\nalpha0 isometry on C[K, K^-1]: {} over {} samples",
        if report.passed { "ok" } else { "VIOLATED" },
        report.trials
    );

    let spec1 = SeminormSpec::plain(Family::UqFull, rat(2, 1))?;
    let samples: Vec<PBWElement> = (0..200)
        .map(|_| sampler.element(stage2.base(), 4, &[(-3, 3), (0, 5)]))
        .collect();
    let report = check_isometry(&spec1, stage2.alpha_map(), samples, 1e-12)?;
    println!(
        "alpha1 isometry on A1: {} over {} samples",
        if report.passed { "ok" } else { "VIOLATED" },
        report.trials
    );

    // the derivation is bounded by C + C/rho^2 with C = 2/|(q - q^-1)(1 - q^-2)|
    let denom = &(q.clone() - q.inv()?) * &(GaussianRational::one() - q.pow(-2)?);
    let c = 2.0 / denom.abs_approx();
    println!("\nC = 2/|(q - q^-1)(1 - q^-2)| = {c}");
    for rho in [rat(1, 2), rat(1, 1), rat(2, 1)] {
        let spec = SeminormSpec::plain(Family::UqFull, rho.clone())?;
        let rho_f = ratio_to_f64(&rho);
        let samples: Vec<PBWElement> = (0..200)
            .map(|_| sampler.element(stage2.base(), 5, &[(-4, 4), (0, 4)]))
            .collect();
        let report = check_stability(
            &spec,
            stage2.delta_map(),
            c + c / (rho_f * rho_f),
            samples,
            1e-9,
        )?;
        println!(
            "delta bound at rho = {rho}: {} (worst stretch/bound = {:.9})",
            if report.passed { "ok" } else { "VIOLATED" },
            report.max_ratio
        );
    }

    Ok(())
}
