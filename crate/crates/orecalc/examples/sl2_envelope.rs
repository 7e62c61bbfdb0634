//! Finite-dimensional sl(2) irreducibles and the truncated matrix-product
//! envelope map, including the C[K]/(K^2 - 1) factor that appears at q = 1.
//!
//! ```bash
//! cargo run --example sl2_envelope
//! ```

use orecalc::algebra::normal_order;
use orecalc::coeff::GaussianRational;
use orecalc::expr::FreeTerm;
use orecalc::rep::{envelope_map, irrep, usl2_presentation, KPoly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // the defining 2-dimensional representation
    let rep = irrep(2)?;
    println!("d = 2:");
    println!("  E = {:?}", rep.e);
    println!("  F = {:?}", rep.f);
    println!("  H = {:?}", rep.h);
    for d in 1..=10 {
        irrep(d)?.check_relations()?;
    }
    println!("relations [E,F] = H, [H,E] = 2E, [H,F] = -2F hold exactly for d <= 10");

    let p = usl2_presentation();
    let parse = |s: &str| normal_order(&FreeTerm::parse(s, &p).unwrap(), &p).unwrap();

    // defining relations die in every block
    let rel = parse("E*F - F*E - H");
    let img = envelope_map(&rel, 6, None)?;
    assert!(img.blocks.iter().all(|b| b.is_zero()));
    println!("\nE*F - F*E - H maps to the zero block for every lambda <= 6");

    // the Casimir acts as a scalar in each block
    let casimir = parse("E*F + F*E + 1/2*H^2");
    let img = envelope_map(&casimir, 6, None)?;
    print!("Casimir eigenvalues by block:");
    for block in &img.blocks {
        let c = block.as_scalar().expect("central element acts as a scalar");
        print!("  {c}");
    }
    println!();

    // the homomorphism property, with the K factor riding along
    let u = parse("F*E + 2*H");
    let v = parse("E^2 - F");
    let ku = KPoly::new(GaussianRational::from_int(1), GaussianRational::from_int(2));
    let kv = KPoly::new(GaussianRational::zero(), GaussianRational::one());
    let lhs = envelope_map(&u.mul(&v)?, 5, Some(&ku.mul(&kv)))?;
    let rhs = envelope_map(&u, 5, Some(&ku))?.blockwise_mul(&envelope_map(&v, 5, Some(&kv))?);
    assert_eq!(lhs, rhs);
    println!("envelope_map(u*v) == envelope_map(u) * envelope_map(v), blocks and K-characters");

    // the two characters of C[K]/(K^2-1)
    let (at_plus, at_minus) = ku.characters();
    println!("K-characters of 1 + 2K: ({at_plus}, {at_minus})");

    Ok(())
}
