//! Finite-dimensional sl(2) irreducibles and the truncated matrix-product
//! envelope map for the q = 1 case.
//!
//! Every d-dimensional irreducible representation extends to an algebra map
//! U(sl(2)) -> M_d(C); collecting the maps for d = 1..=lambda_max+1 gives a
//! finite section of the product-of-matrix-algebras picture, and the
//! two-point evaluation K |-> (+1, -1) realizes the C[K]/(K^2 - 1) tensor
//! factor. All matrix entries stay exact Gaussian rationals.

use crate::algebra::{same_presentation, AlgebraError, Generator, PBWElement, Presentation, Rule};
use crate::coeff::GaussianRational;
use serde_json::json;
use std::fmt;
use std::sync::Arc;

/// A dense square matrix over the Gaussian rationals. Dimensions here are
/// tiny (irreps up to d ~ 10), so nothing clever is needed.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    entries: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zero(dim: usize) -> Self {
        Matrix {
            dim,
            entries: vec![GaussianRational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zero(dim);
        for k in 0..dim {
            m[(k, k)] = GaussianRational::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            dim: self.dim,
            entries,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scalar_mul(&GaussianRational::from_int(-1)))
    }

    pub fn scalar_mul(&self, c: &GaussianRational) -> Matrix {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| c * e).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let mut out = Matrix::zero(self.dim);
        for r in 0..self.dim {
            for k in 0..self.dim {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..self.dim {
                    let add = a * &other[(k, c)];
                    out[(r, c)] = &out[(r, c)] + &add;
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.dim);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Some(c) when the matrix is c times the identity.
    pub fn as_scalar(&self) -> Option<GaussianRational> {
        let c = self[(0, 0)].clone();
        for r in 0..self.dim {
            for k in 0..self.dim {
                let expect = if r == k {
                    c.clone()
                } else {
                    GaussianRational::zero()
                };
                if self[(r, k)] != expect {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self[(r, c)].to_string()).collect())
            .collect();
        json!(rows)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (r, c): (usize, usize)) -> &GaussianRational {
        &self.entries[r * self.dim + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut GaussianRational {
        &mut self.entries[r * self.dim + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix{}x{} [", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// The d-dimensional irreducible representation of sl(2) in the highest-weight
/// basis e_0, ..., e_(d-1):
/// H e_k = (d-1-2k) e_k, F e_k = e_(k+1), E e_k = k(d-k) e_(k-1).
#[derive(Clone, Debug)]
pub struct Irrep {
    pub dim: usize,
    pub e: Matrix,
    pub f: Matrix,
    pub h: Matrix,
}

pub fn irrep(d: usize) -> Result<Irrep, AlgebraError> {
    if d < 1 {
        return Err(AlgebraError::InvalidWord(
            "irrep dimension must be >= 1".into(),
        ));
    }
    let mut e = Matrix::zero(d);
    let mut f = Matrix::zero(d);
    let mut h = Matrix::zero(d);
    for k in 0..d {
        h[(k, k)] = GaussianRational::from_int(d as i64 - 1 - 2 * k as i64);
        if k + 1 < d {
            // F e_k = e_(k+1): column k feeds row k+1
            f[(k + 1, k)] = GaussianRational::one();
        }
        if k >= 1 {
            // E e_k = k (d - k) e_(k-1)
            e[(k - 1, k)] = GaussianRational::from_int((k as i64) * (d as i64 - k as i64));
        }
    }
    let rep = Irrep { dim: d, e, f, h };
    rep.check_relations()?;
    Ok(rep)
}

impl Irrep {
    /// [E,F] = H, [H,E] = 2E, [H,F] = -2F, H diagonal with d-1, d-3, ..., -(d-1).
    pub fn check_relations(&self) -> Result<(), AlgebraError> {
        let two = GaussianRational::from_int(2);
        if self.e.commutator(&self.f) != self.h {
            return Err(AlgebraError::IdentityViolation("[E,F] != H".into()));
        }
        if self.h.commutator(&self.e) != self.e.scalar_mul(&two) {
            return Err(AlgebraError::IdentityViolation("[H,E] != 2E".into()));
        }
        if self.h.commutator(&self.f)
            != self
                .f
                .scalar_mul(&two)
                .scalar_mul(&GaussianRational::from_int(-1))
        {
            return Err(AlgebraError::IdentityViolation("[H,F] != -2F".into()));
        }
        Ok(())
    }
}

/// U(sl(2)) presented on E, F, H with PBW order F^a H^b E^c (lowering, Cartan,
/// raising — matching the K, F, E convention of the q-deformed side).
pub fn usl2_presentation() -> Arc<Presentation> {
    let one = GaussianRational::one;
    const F: usize = 0;
    const H: usize = 1;
    const E: usize = 2;
    let rules = vec![
        // [H,F] = -2F: H F = F H - 2F
        Rule {
            lhs: ((H, 1), (F, 1)),
            rhs: vec![
                (one(), vec![(F, 1), (H, 1)]),
                (GaussianRational::from_int(-2), vec![(F, 1)]),
            ],
        },
        // [E,F] = H: E F = F E + H
        Rule {
            lhs: ((E, 1), (F, 1)),
            rhs: vec![(one(), vec![(F, 1), (E, 1)]), (one(), vec![(H, 1)])],
        },
        // [H,E] = 2E: E H = H E - 2E
        Rule {
            lhs: ((E, 1), (H, 1)),
            rhs: vec![
                (one(), vec![(H, 1), (E, 1)]),
                (GaussianRational::from_int(-2), vec![(E, 1)]),
            ],
        },
    ];
    Presentation::new(
        "usl2",
        vec![
            Generator {
                symbol: "F".into(),
                laurent: false,
            },
            Generator {
                symbol: "H".into(),
                laurent: false,
            },
            Generator {
                symbol: "E".into(),
                laurent: false,
            },
        ],
        None,
        rules,
        vec![1, 1, 1],
    )
    .expect("valid usl2 presentation")
}

/// An element of C[K]/(K^2 - 1): c0 + c1 K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPoly {
    pub c0: GaussianRational,
    pub c1: GaussianRational,
}

impl KPoly {
    pub fn new(c0: GaussianRational, c1: GaussianRational) -> Self {
        KPoly { c0, c1 }
    }

    pub fn one() -> Self {
        KPoly::new(GaussianRational::one(), GaussianRational::zero())
    }

    /// Multiplication with K^2 = 1.
    pub fn mul(&self, other: &KPoly) -> KPoly {
        KPoly {
            c0: &(&self.c0 * &other.c0) + &(&self.c1 * &other.c1),
            c1: &(&self.c0 * &other.c1) + &(&self.c1 * &other.c0),
        }
    }

    /// The two characters of C[K]/(K^2-1): evaluation at K = 1 and K = -1.
    pub fn characters(&self) -> (GaussianRational, GaussianRational) {
        (&self.c0 + &self.c1, &self.c0 - &self.c1)
    }
}

/// The image of an element under the truncated product of irreps, one block
/// per lambda = 0..=lambda_max (block lambda has dimension lambda + 1), plus
/// the optional pair of K-characters.
#[derive(Clone, Debug)]
pub struct EnvelopeImage {
    pub lambda_max: u32,
    pub blocks: Vec<Matrix>,
    pub k_component: Option<(GaussianRational, GaussianRational)>,
}

impl EnvelopeImage {
    pub fn blockwise_mul(&self, other: &EnvelopeImage) -> EnvelopeImage {
        assert_eq!(self.lambda_max, other.lambda_max);
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.mul(b))
            .collect();
        let k_component = match (&self.k_component, &other.k_component) {
            (Some((a1, a2)), Some((b1, b2))) => Some((a1 * b1, a2 * b2)),
            _ => None,
        };
        EnvelopeImage {
            lambda_max: self.lambda_max,
            blocks,
            k_component,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lambda_max": self.lambda_max,
            "blocks": self.blocks.iter().map(Matrix::to_json).collect::<Vec<_>>(),
            "k_component": self.k_component.as_ref().map(|(a, b)| {
                json!([a.to_string(), b.to_string()])
            }),
        })
    }
}

impl PartialEq for EnvelopeImage {
    fn eq(&self, other: &Self) -> bool {
        self.lambda_max == other.lambda_max
            && self.blocks == other.blocks
            && self.k_component == other.k_component
    }
}
impl Eq for EnvelopeImage {}

/// Substitute the irrep matrices for the generators of a U(sl(2)) element
/// monomial by monomial. `k_poly`, when given, rides along as the value of the
/// C[K]/(K^2 - 1) tensor factor.
pub fn envelope_map(
    u: &PBWElement,
    lambda_max: u32,
    k_poly: Option<&KPoly>,
) -> Result<EnvelopeImage, AlgebraError> {
    let usl2 = usl2_presentation();
    if !same_presentation(u.presentation(), &usl2) {
        return Err(AlgebraError::PresentationMismatch);
    }
    let mut blocks = Vec::with_capacity(lambda_max as usize + 1);
    for lambda in 0..=lambda_max {
        let d = lambda as usize + 1;
        let rep = irrep(d)?;
        let mut block = Matrix::zero(d);
        for (m, c) in u.support() {
            let mut mat = Matrix::identity(d);
            for &(g, e) in m.word() {
                let gen_mat = match u.presentation().symbol(g) {
                    "F" => &rep.f,
                    "H" => &rep.h,
                    "E" => &rep.e,
                    other => {
                        return Err(AlgebraError::UnknownGenerator(other.to_string()));
                    }
                };
                mat = mat.mul(&gen_mat.pow(e as u32));
            }
            block = block.add(&mat.scalar_mul(c));
        }
        blocks.push(block);
    }
    Ok(EnvelopeImage {
        lambda_max,
        blocks,
        k_component: k_poly.map(KPoly::characters),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::normal_order;
    use crate::expr::FreeTerm;
    use crate::seminorm::Sampler;

    fn parse(s: &str) -> PBWElement {
        let p = usl2_presentation();
        normal_order(&FreeTerm::parse(s, &p).unwrap(), &p).unwrap()
    }

    #[test]
    fn trivial_and_defining_reps() {
        let r1 = irrep(1).unwrap();
        assert!(r1.e.is_zero() && r1.f.is_zero() && r1.h.is_zero());
        let r2 = irrep(2).unwrap();
        assert_eq!(r2.e[(0, 1)], GaussianRational::one());
        assert_eq!(r2.f[(1, 0)], GaussianRational::one());
        assert_eq!(r2.h[(0, 0)], GaussianRational::one());
        assert_eq!(r2.h[(1, 1)], GaussianRational::from_int(-1));
        assert!(irrep(0).is_err());
    }

    #[test]
    fn relations_hold_up_to_d10() {
        for d in 1..=10 {
            irrep(d).unwrap().check_relations().unwrap();
        }
    }

    #[test]
    fn envelope_of_unit_and_h() {
        let one = PBWElement::one(&usl2_presentation());
        let img = envelope_map(&one, 4, Some(&KPoly::one())).unwrap();
        for (lambda, block) in img.blocks.iter().enumerate() {
            assert_eq!(*block, Matrix::identity(lambda + 1));
        }
        assert_eq!(
            img.k_component,
            Some((GaussianRational::one(), GaussianRational::one()))
        );
        let h = parse("H");
        let img = envelope_map(&h, 1, None).unwrap();
        assert_eq!(img.blocks[1][(0, 0)], GaussianRational::one());
        assert_eq!(img.blocks[1][(1, 1)], GaussianRational::from_int(-1));
    }

    #[test]
    fn defining_relations_map_to_zero_blocks() {
        for expr in ["E*F - F*E - H", "H*E - E*H - 2*E", "H*F - F*H + 2*F"] {
            let u = parse(expr);
            let img = envelope_map(&u, 8, None).unwrap();
            for (lambda, block) in img.blocks.iter().enumerate() {
                assert!(block.is_zero(), "{expr} at lambda = {lambda}");
            }
        }
    }

    #[test]
    fn envelope_map_is_multiplicative() {
        let p = usl2_presentation();
        let mut sampler = Sampler::new(17);
        for _ in 0..30 {
            let u = sampler.element(&p, 3, &[(0, 2), (0, 2), (0, 2)]);
            let v = sampler.element(&p, 3, &[(0, 2), (0, 2), (0, 2)]);
            let uv = u.mul(&v).unwrap();
            let lhs = envelope_map(&uv, 5, None).unwrap();
            let rhs = envelope_map(&u, 5, None)
                .unwrap()
                .blockwise_mul(&envelope_map(&v, 5, None).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn casimir_acts_as_scalar() {
        // Omega = EF + FE + H^2/2 lands in the center, so every block is scalar
        let omega = parse("E*F + F*E + 1/2*H^2");
        let img = envelope_map(&omega, 6, None).unwrap();
        for (lambda, block) in img.blocks.iter().enumerate() {
            let c = block
                .as_scalar()
                .unwrap_or_else(|| panic!("block {lambda} not scalar"));
            // not asserted from anywhere: just record that d=1 gives 0
            if lambda == 0 {
                assert!(c.is_zero());
            }
        }
    }

    #[test]
    fn k_characters_are_multiplicative() {
        let mut sampler = Sampler::new(9);
        for _ in 0..40 {
            let a = KPoly::new(sampler.coefficient(), sampler.coefficient());
            let b = KPoly::new(sampler.coefficient(), sampler.coefficient());
            let prod = a.mul(&b).characters();
            let (a1, a2) = a.characters();
            let (b1, b2) = b.characters();
            assert_eq!(prod.0, &a1 * &b1);
            assert_eq!(prod.1, &a2 * &b2);
        }
    }

    #[test]
    fn envelope_json_has_exact_entries() {
        let img = envelope_map(
            &parse("H"),
            1,
            Some(&KPoly::new(
                GaussianRational::zero(),
                GaussianRational::one(),
            )),
        )
        .unwrap();
        let v = img.to_json();
        assert_eq!(v["blocks"][1][0][0], "1");
        assert_eq!(v["k_component"][0], "1");
        assert_eq!(v["k_component"][1], "-1");
    }
}
