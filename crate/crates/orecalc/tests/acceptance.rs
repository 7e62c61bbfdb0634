//! Acceptance suite: every headline property of the kernel, one test per
//! criterion, each printing a PASS/FAIL line (visible with
//! `cargo test --test acceptance -- --nocapture`).
//!
//! Exact claims are asserted in rational arithmetic; floating claims use the
//! stated tolerances (1e-9 for inequality suites, 1e-12 for isometry sums).

use num::rational::BigRational;
use orecalc::algebra::{builtin, BuiltinName, PBWElement};
use orecalc::cli::{run_suite, SuiteConfig};
use orecalc::coeff::GaussianRational;
use orecalc::ore::{commute_zn_vs_rewriter, jordanian_tower, uq_tower, OreData};
use orecalc::seminorm::VerificationReport;
use std::sync::Arc;
use std::time::Instant;

fn verdict(n: u32, name: &str, ok: bool) {
    println!(
        "criterion {n:02} ({name}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n:02} ({name}) failed");
}

fn suite(name: &str) -> VerificationReport {
    run_suite(name, &SuiteConfig::default()).expect("suite runs")
}

#[test]
fn criterion_01_jordanian_delta_powers() {
    // delta^j(y) = (-1)^j j! y^(j+1) exactly for 1 <= j <= 20, in under a second
    let start = Instant::now();
    let tower = jordanian_tower();
    let base = tower.base();
    let y = PBWElement::from_word(base, &[(0, 1)]).unwrap();
    let mut acc = y;
    let mut factorial: i64 = 1;
    let mut ok = true;
    for j in 1..=20i64 {
        acc = tower.apply_delta(&acc).unwrap();
        factorial *= j;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let expected = PBWElement::from_word(base, &[(0, j + 1)])
            .unwrap()
            .scalar_mul(&GaussianRational::from_int(sign * factorial));
        ok &= acc == expected;
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs_f64() < 1.0;
    println!("  delta powers up to j = 20 in {elapsed:?}");
    verdict(1, "jordanian delta powers", ok);
}

#[test]
fn criterion_02_jordanian_delta_stability() {
    // eval_P(delta(a)) <= rho * eval_P(a) on 500 seeded samples of degree <= 12,
    // rho in {1/2, 1, 3}, tol 1e-9, plus the exact monomial ratio; under 5 s
    let start = Instant::now();
    let report = suite("jordanian_stability");
    let elapsed = start.elapsed();
    println!("  {} trials in {elapsed:?}", report.trials);
    verdict(
        2,
        "jordanian delta stability",
        report.passed && elapsed.as_secs_f64() < 5.0,
    );
}

#[test]
fn criterion_03_jordanian_submultiplicativity() {
    // monomial pairs to degree 6 plus 500 random pairs, rho in {1/2,1,2,5},
    // ratio <= 1 + 1e-9; the factorial inequality exact in rationals to 20
    let report = suite("jordanian_submult");
    println!("  {} trials, max ratio {}", report.trials, report.max_ratio);
    verdict(3, "jordanian submultiplicativity", report.passed);
}

#[test]
fn criterion_04_pq_equivalence() {
    // Q(rho) <= P(rho) and P(rho) <= Q(2 rho) for all monomials to degree 30,
    // rho in {0.1, 1, 10}, decided exactly
    let report = suite("pq_equivalence");
    println!("  {} exact comparisons", report.trials);
    verdict(4, "P~Q equivalence", report.passed);
}

#[test]
fn criterion_05_snk_double_implementation() {
    // enumerate == pascal for n <= 10 and all k over Jordanian and U_q tower
    // bases, with C(n,k) summands before collection; under 30 s
    let start = Instant::now();
    let report = suite("snk_consistency");
    let elapsed = start.elapsed();
    println!("  {} comparisons in {elapsed:?}", report.trials);
    verdict(
        5,
        "S_{n,k} double implementation",
        report.passed && elapsed.as_secs_f64() < 30.0,
    );
}

#[test]
fn criterion_06_commutation_formula_vs_rewriting_engine() {
    // sum_k S_{n,k}(r) z^(n-k) == normal_order(z^n r) exactly for n <= 8 and
    // base monomials of degree <= 4 (|i| <= 3 on the Laurent slot), in both
    // the Jordanian and the U_q E-over-A1 extensions
    let mut ok = true;
    let mut checked = 0u32;

    let mut run = |tower: &OreData, ext_name: &str, basis: Vec<PBWElement>| {
        let ext = tower.extended_presentation(ext_name).unwrap();
        for r in &basis {
            for n in 0..=8u32 {
                let (formula, engine) = commute_zn_vs_rewriter(n, r, tower, &ext).unwrap();
                ok &= formula == engine;
                checked += 1;
            }
        }
    };

    let jt = jordanian_tower();
    let jbasis: Vec<PBWElement> = (0..=4i64)
        .map(|d| {
            if d == 0 {
                PBWElement::one(jt.base())
            } else {
                PBWElement::from_word(jt.base(), &[(0, d)]).unwrap()
            }
        })
        .collect();
    run(&jt, "jordanian_ore", jbasis);

    let q = GaussianRational::from_parts(3, 5, 4, 5);
    let (_, stage2) = uq_tower(&q).unwrap();
    let a1 = Arc::clone(stage2.base());
    let mut uq_basis = Vec::new();
    for i in -3..=3i64 {
        for d in 0..=4i64 {
            let mut word: Vec<(usize, i64)> = Vec::new();
            if i != 0 {
                word.push((0, i));
            }
            if d != 0 {
                word.push((1, d));
            }
            uq_basis.push(PBWElement::from_word(&a1, &word).unwrap());
        }
    }
    run(&stage2, "uq_a2", uq_basis);

    println!("  {checked} (tower, monomial, n) triples compared");
    verdict(6, "commutation formula vs rewriter", ok);
}

#[test]
fn criterion_07_uq_q_power_law() {
    // normal_order(K^i F^n) = q^(-2in) F^n K^i exactly, |i| <= 6, n <= 8,
    // q = (3+4i)/5, with unit-modulus phases
    let report = suite("uq_qpower");
    println!("  {} exponent pairs", report.trials);
    verdict(7, "U_q q-power law", report.passed);
}

#[test]
fn criterion_08_uq_delta_closed_form() {
    // closed form == defining sum == full-rewriter route, n <= 15, |i| <= 5,
    // q in {(3+4i)/5, (5+12i)/13}, all exact
    let report = suite("uq_delta_closed_form");
    println!("  {} grid cells, three routes each", report.trials);
    verdict(8, "U_q delta closed form", report.passed);
}

#[test]
fn criterion_09_uq_alpha_isometry() {
    // alpha0 and alpha1 preserve coefficient moduli exactly and seminorm sums
    // to 1e-12, on 500 samples each
    let report = suite("uq_alpha_isometry");
    println!("  {} sample evaluations", report.trials);
    verdict(9, "U_q alpha isometry", report.passed);
}

#[test]
fn criterion_10_uq_delta_bound() {
    // eval(delta(b)) <= (C + C/rho^2) eval(b), C = 2/|(q-q^-1)(1-q^-2)|,
    // 500 samples, rho in {1/2, 1, 2}, tol 1e-9
    let report = suite("uq_delta_bound");
    println!(
        "  {} sample evaluations, max normalized ratio {}",
        report.trials, report.max_ratio
    );
    verdict(10, "U_q delta bound", report.passed);
}

#[test]
fn criterion_11_sl2_irreps_and_envelope_map() {
    // exact relations for d <= 10; envelope map multiplicative on 200 random
    // pairs at lambda_max = 6; defining relations map to zero blocks
    let irreps = suite("sl2_irreps");
    let envelope = suite("envelope_homomorphism");
    println!(
        "  irreps: {} dims, envelope: {} checks",
        irreps.trials, envelope.trials
    );
    verdict(
        11,
        "sl(2) irreps and envelope map",
        irreps.passed && envelope.passed,
    );
}

#[test]
fn criterion_12_weyl_identity_and_obstruction() {
    // [d, x^n] = n x^(n-1) exactly for n <= 30; minimal n > 2|x||d| for three
    // parameter choices
    let report = suite("weyl_identity");
    println!("  {} identity and obstruction checks", report.trials);
    verdict(12, "Weyl identity and obstruction", report.passed);
}

#[test]
fn criterion_13_engine_self_consistency() {
    // associativity on 1000 random word triples per built-in presentation,
    // idempotence, and >= 1000 parse/render round trips
    let report = suite("associativity_fuzz");
    println!("  {} fuzz checks", report.trials);
    verdict(13, "engine self-consistency", report.passed);
}

#[test]
fn spot_check_pq_equivalence_numbers() {
    // i = 5, rho = 1: weight_Q = 1/120 <= weight_P = 1/24 <= 2^5/120
    let rho = BigRational::from_integer(1.into());
    let report = orecalc::seminorm::check_equivalence_pq(&[rho], 5);
    assert!(report.passed);
}

#[test]
fn spot_check_uq_defining_relation() {
    // E*F - F*E = (K - K^-1)/(q - q^-1) survives the whole pipeline
    let q = GaussianRational::from_parts(3, 5, 4, 5);
    let p = builtin(BuiltinName::UqSl2, Some(q.clone())).unwrap();
    let parse = |s: &str| {
        orecalc::algebra::normal_order(&orecalc::expr::FreeTerm::parse(s, &p).unwrap(), &p).unwrap()
    };
    let lhs = parse("E*F - F*E");
    let c = GaussianRational::one()
        .checked_div(&(q.clone() - q.inv().unwrap()))
        .unwrap();
    let rhs = parse("K - K^-1").scalar_mul(&c);
    assert_eq!(lhs, rhs);
}
