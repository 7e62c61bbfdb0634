//! The Ore-extension calculus.
//!
//! An Ore extension R[z; alpha, delta] twists the polynomial multiplication by
//! `z*r = alpha(r)*z + delta(r)`, where alpha is an algebra endomorphism of R
//! and delta an alpha-derivation. Iterating the relation gives
//!
//! ```text
//! z^n * r = sum_{k=0}^{n} S_{n,k}(r) * z^(n-k)
//! ```
//!
//! where S_{n,k} sums all C(n,k) compositions of k deltas and n-k alphas.
//! [`snk_enumerate`] computes the operator literally from that definition,
//! [`snk_pascal`] through the recursion S_{n,k} = alpha∘S_{n-1,k} + delta∘S_{n-1,k-1};
//! the two implementations are independent and are checked against each other
//! and against [`OreData::extended_presentation`]'s rewriting engine.
//!
//! The iterated tower for U_q(sl(2)) lives here as well: A0 = C[K, K^-1],
//! A1 = A0[F; alpha0, 0], A2 = A1[E; alpha1, delta], together with the closed
//! form and the defining sum for delta(K^i F^n).

use crate::algebra::{
    builtin, same_presentation, validate_uq_q, AlgebraError, BuiltinName, Generator, LinearMap,
    PBWElement, Presentation, Rule, Word,
};
use crate::coeff::GaussianRational;
use std::sync::Arc;

/// The data of a single Ore extension layer: the base algebra R, the new
/// generator z, and the twisting maps.
#[derive(Clone, Debug)]
pub struct OreData {
    base: Arc<Presentation>,
    z_symbol: String,
    z_weight: u32,
    alpha: LinearMap,
    delta: LinearMap,
}

impl OreData {
    /// `alpha` must be an endomorphism and `delta` a derivation, both over
    /// `base`. The endomorphism/Leibniz laws are sampled in [`OreData::audit_maps`],
    /// not proved.
    pub fn new(
        base: &Arc<Presentation>,
        z_symbol: impl Into<String>,
        z_weight: u32,
        alpha: LinearMap,
        delta: LinearMap,
    ) -> Result<Self, AlgebraError> {
        if !same_presentation(alpha.presentation(), base)
            || !same_presentation(delta.presentation(), base)
        {
            return Err(AlgebraError::PresentationMismatch);
        }
        if alpha.is_derivation() {
            return Err(AlgebraError::InvalidPresentation(
                "alpha must be an endomorphism".into(),
            ));
        }
        if !delta.is_derivation() {
            return Err(AlgebraError::InvalidPresentation(
                "delta must be a derivation".into(),
            ));
        }
        let z_symbol = z_symbol.into();
        if base.gen_index(&z_symbol).is_some() {
            return Err(AlgebraError::InvalidPresentation(format!(
                "`{z_symbol}` already names a base generator"
            )));
        }
        Ok(OreData {
            base: Arc::clone(base),
            z_symbol,
            z_weight,
            alpha,
            delta,
        })
    }

    pub fn base(&self) -> &Arc<Presentation> {
        &self.base
    }

    pub fn z_symbol(&self) -> &str {
        &self.z_symbol
    }

    pub fn alpha_map(&self) -> &LinearMap {
        &self.alpha
    }

    pub fn delta_map(&self) -> &LinearMap {
        &self.delta
    }

    pub fn apply_alpha(&self, r: &PBWElement) -> Result<PBWElement, AlgebraError> {
        self.alpha.apply(r)
    }

    pub fn apply_delta(&self, r: &PBWElement) -> Result<PBWElement, AlgebraError> {
        self.delta.apply(r)
    }

    /// Sampled verification that alpha is multiplicative and delta satisfies
    /// the twisted Leibniz rule delta(ab) = delta(a)b + alpha(a)delta(b).
    pub fn audit_maps<'a>(
        &self,
        pairs: impl IntoIterator<Item = (&'a PBWElement, &'a PBWElement)>,
    ) -> Result<(), AlgebraError> {
        for (a, b) in pairs {
            let ab = a.mul(b)?;
            if self.apply_alpha(&ab)? != self.apply_alpha(a)?.mul(&self.apply_alpha(b)?)? {
                return Err(AlgebraError::IdentityViolation(format!(
                    "alpha not multiplicative on ({a}, {b})"
                )));
            }
            let leibniz = self
                .apply_delta(a)?
                .mul(b)?
                .add(&self.apply_alpha(a)?.mul(&self.apply_delta(b)?)?)?;
            if self.apply_delta(&ab)? != leibniz {
                return Err(AlgebraError::IdentityViolation(format!(
                    "delta violates the Leibniz rule on ({a}, {b})"
                )));
            }
        }
        Ok(())
    }

    /// The combined presentation on `base generators + z` (z ordered last),
    /// whose rewrite rule for z past a base generator is the defining relation
    /// `z*g = alpha(g)*z + delta(g)`.
    ///
    /// Note the orientation: normal forms put base coefficients *left* of z
    /// powers. For the U_q tower this is exactly the displayed K^i F^n E^m
    /// basis; for the Jordanian plane it is the opposite of the x^i y^j
    /// display, and [`PBWElement::convert_to`] translates between the two.
    pub fn extended_presentation(
        &self,
        name: impl Into<String>,
    ) -> Result<Arc<Presentation>, AlgebraError> {
        let n = self.base.num_generators();
        let mut gens: Vec<Generator> = self.base.generators().to_vec();
        gens.push(Generator {
            symbol: self.z_symbol.clone(),
            laurent: false,
        });
        let mut grading = self.base.grading_weights().to_vec();
        grading.push(self.z_weight);
        let mut rules: Vec<Rule> = self
            .base
            .rules()
            .iter()
            .map(|(lhs, rhs)| Rule {
                lhs: *lhs,
                rhs: rhs.clone(),
            })
            .collect();
        for g in 0..n {
            let signs: &[i8] = if self.base.is_laurent(g) {
                &[1, -1]
            } else {
                &[1]
            };
            for &s in signs {
                let letter = PBWElement::from_word(&self.base, &[(g, s as i64)])?;
                let alpha_img = self.alpha.apply(&letter)?;
                let delta_img = self.delta.apply(&letter)?;
                let mut rhs = Vec::new();
                for (m, c) in alpha_img.support() {
                    let mut w: Word = m.word().to_vec();
                    w.push((n, 1));
                    rhs.push((c.clone(), w));
                }
                for (m, c) in delta_img.support() {
                    rhs.push((c.clone(), m.word().to_vec()));
                }
                rules.push(Rule {
                    lhs: ((n, 1), (g, s)),
                    rhs,
                });
            }
        }
        Presentation::new(name, gens, self.base.q().cloned(), rules, grading)
    }
}

fn check_base(r: &PBWElement, d: &OreData) -> Result<(), AlgebraError> {
    if same_presentation(r.presentation(), &d.base) {
        Ok(())
    } else {
        Err(AlgebraError::PresentationMismatch)
    }
}

/// S_{n,k}(r) from the definition: the sum over all C(n,k) words in
/// {alpha, delta} with exactly k deltas, each word acting by composition
/// (rightmost letter applied first). Also returns the number of summands.
pub fn snk_enumerate_counted(
    n: u32,
    k: u32,
    r: &PBWElement,
    d: &OreData,
) -> Result<(PBWElement, u64), AlgebraError> {
    if k > n {
        return Err(AlgebraError::InvalidWord(format!(
            "k = {k} out of range 0..={n}"
        )));
    }
    if n > 62 {
        return Err(AlgebraError::InvalidWord(
            "n too large for enumeration".into(),
        ));
    }
    check_base(r, d)?;
    let mut total = PBWElement::zero(&d.base);
    let mut count = 0u64;
    // Gosper's hack: iterate all n-bit masks with exactly k ones; bit t set
    // means letter t (from the right) is a delta.
    let mut mask: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    loop {
        let mut acc = r.clone();
        for t in 0..n {
            acc = if mask >> t & 1 == 1 {
                d.apply_delta(&acc)?
            } else {
                d.apply_alpha(&acc)?
            };
        }
        total = total.add(&acc)?;
        count += 1;
        if k == 0 {
            break;
        }
        let c = mask & mask.wrapping_neg();
        let r_bits = mask + c;
        mask = (((r_bits ^ mask) >> 2) / c) | r_bits;
        if mask >= 1u64 << n {
            break;
        }
    }
    Ok((total, count))
}

/// S_{n,k}(r) from the definitional enumeration; see [`snk_enumerate_counted`].
pub fn snk_enumerate(
    n: u32,
    k: u32,
    r: &PBWElement,
    d: &OreData,
) -> Result<PBWElement, AlgebraError> {
    Ok(snk_enumerate_counted(n, k, r, d)?.0)
}

/// S_{n,k}(r) through the Pascal-style recursion obtained by splitting every
/// composition on its first letter:
/// S_{n,k} = alpha∘S_{n-1,k} + delta∘S_{n-1,k-1}, S_{0,0} = id.
pub fn snk_pascal(n: u32, k: u32, r: &PBWElement, d: &OreData) -> Result<PBWElement, AlgebraError> {
    if k > n {
        return Err(AlgebraError::InvalidWord(format!(
            "k = {k} out of range 0..={n}"
        )));
    }
    check_base(r, d)?;
    Ok(snk_pascal_row(n, r, d)?.swap_remove(k as usize))
}

/// The whole row [S_{n,0}(r), ..., S_{n,n}(r)].
fn snk_pascal_row(n: u32, r: &PBWElement, d: &OreData) -> Result<Vec<PBWElement>, AlgebraError> {
    let mut row = vec![r.clone()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(d.apply_alpha(&row[0])?);
        for j in 1..row.len() {
            next.push(d.apply_alpha(&row[j])?.add(&d.apply_delta(&row[j - 1])?)?);
        }
        next.push(d.apply_delta(row.last().unwrap())?);
        row = next;
    }
    Ok(row)
}

/// Expand z^n * r as sum_k S_{n,k}(r) z^(n-k): the returned list pairs each
/// base coefficient with its z power, for k = 0..=n.
pub fn commute_zn(
    n: u32,
    r: &PBWElement,
    d: &OreData,
) -> Result<Vec<(PBWElement, u32)>, AlgebraError> {
    check_base(r, d)?;
    let row = snk_pascal_row(n, r, d)?;
    Ok(row
        .into_iter()
        .enumerate()
        .map(|(k, coeff)| (coeff, n - k as u32))
        .collect())
}

/// Evaluate both sides of the commutation formula in the combined presentation:
/// the formula side assembled from [`commute_zn`], and z^n * r normal-ordered by
/// the rewriting engine. The two are independent implementations of the same
/// multiplication.
pub fn commute_zn_vs_rewriter(
    n: u32,
    r: &PBWElement,
    d: &OreData,
    extended: &Arc<Presentation>,
) -> Result<(PBWElement, PBWElement), AlgebraError> {
    check_base(r, d)?;
    let z = extended
        .gen_index(&d.z_symbol)
        .ok_or_else(|| AlgebraError::UnknownGenerator(d.z_symbol.clone()))?;
    let mut formula = PBWElement::zero(extended);
    for (coeff, z_pow) in commute_zn(n, r, d)? {
        let lifted = coeff.convert_to(extended)?;
        let z_mono = if z_pow == 0 {
            PBWElement::one(extended)
        } else {
            PBWElement::from_word(extended, &[(z, z_pow as i64)])?
        };
        formula = formula.add(&lifted.mul(&z_mono)?)?;
    }
    let mut engine = PBWElement::zero(extended);
    for (m, c) in r.support() {
        let mut word: Word = Vec::with_capacity(m.word().len() + 1);
        if n > 0 {
            word.push((z, n as i64));
        }
        for &(g, e) in m.word() {
            let idx = extended
                .gen_index(d.base.symbol(g))
                .ok_or_else(|| AlgebraError::UnknownGenerator(d.base.symbol(g).into()))?;
            word.push((idx, e));
        }
        engine = engine.add(&PBWElement::from_word(extended, &word)?.scalar_mul(c))?;
    }
    Ok((formula, engine))
}

// --- the built-in towers ----------------------------------------------------

/// The Jordanian plane as C[y][x; id, -y^2 d/dy].
pub fn jordanian_tower() -> OreData {
    let base = Presentation::free_on("jordanian_base", &["y"]);
    let y2 = PBWElement::from_word(&base, &[(0, 2)]).expect("y^2");
    let alpha = LinearMap::identity(&base);
    let delta = LinearMap::derivation(LinearMap::identity(&base), vec![y2.neg()])
        .expect("valid derivation");
    OreData::new(&base, "x", 1, alpha, delta).expect("valid tower")
}

/// The quantum plane as C[x][y; alpha, 0] with alpha(x) = q^-1 x
/// (so y*x = q^-1 x*y, i.e. x*y = q*y*x).
pub fn quantum_plane_tower(q: &GaussianRational) -> Result<OreData, AlgebraError> {
    if !q.is_unit_modulus() {
        return Err(AlgebraError::InvalidQ("|q| = 1 required".into()));
    }
    let base = Presentation::free_on("qplane_base", &["x"]);
    let x = PBWElement::from_word(&base, &[(0, 1)])?;
    let alpha = LinearMap::endomorphism(&base, vec![x.scalar_mul(&q.inv()?)])?;
    let delta = LinearMap::derivation(LinearMap::identity(&base), vec![PBWElement::zero(&base)])?;
    OreData::new(&base, "y", 1, alpha, delta)
}

/// U(g) for the solvable algebra [x, y] = y, as C[y][x; id, y d/dy].
pub fn ug_solvable_tower() -> OreData {
    let base = Presentation::free_on("ug_base", &["y"]);
    let y = PBWElement::from_word(&base, &[(0, 1)]).expect("y");
    let alpha = LinearMap::identity(&base);
    let delta =
        LinearMap::derivation(LinearMap::identity(&base), vec![y]).expect("valid derivation");
    OreData::new(&base, "x", 1, alpha, delta).expect("valid tower")
}

/// The Weyl algebra as C[x][d; id, d/dx].
pub fn weyl_tower() -> OreData {
    let base = Presentation::free_on("weyl_base", &["x"]);
    let alpha = LinearMap::identity(&base);
    let delta = LinearMap::derivation(LinearMap::identity(&base), vec![PBWElement::one(&base)])
        .expect("valid derivation");
    OreData::new(&base, "d", 1, alpha, delta).expect("valid tower")
}

/// The two-stage tower for U_q(sl(2)):
/// A0 = C[K, K^-1] with alpha0(K) = q^2 K,
/// A1 = A0[F; alpha0, 0] with alpha1(K) = q^-2 K, alpha1(F) = F,
/// delta(K) = 0, delta(F) = (K - K^-1)/(q - q^-1),
/// A2 = A1[E; alpha1, delta] = U_q(sl(2)).
pub fn uq_tower(q: &GaussianRational) -> Result<(OreData, OreData), AlgebraError> {
    validate_uq_q(q)?;
    let a0 = Presentation::new(
        "uq_a0",
        vec![Generator {
            symbol: "K".into(),
            laurent: true,
        }],
        Some(q.clone()),
        Vec::new(),
        vec![0],
    )?;
    let k0 = PBWElement::from_word(&a0, &[(0, 1)])?;
    let alpha0 = LinearMap::endomorphism(&a0, vec![k0.scalar_mul(&q.pow(2)?)])?;
    let delta0 = LinearMap::derivation(LinearMap::identity(&a0), vec![PBWElement::zero(&a0)])?;
    let stage1 = OreData::new(&a0, "F", 1, alpha0, delta0)?;

    let a1 = stage1.extended_presentation("uq_a1")?;
    let k = a1.gen_index("K").expect("K in A1");
    let f = a1.gen_index("F").expect("F in A1");
    let k1 = PBWElement::from_word(&a1, &[(k, 1)])?;
    let f1 = PBWElement::from_word(&a1, &[(f, 1)])?;
    let alpha1 = LinearMap::endomorphism(&a1, vec![k1.scalar_mul(&q.pow(-2)?), f1])?;
    // delta(F) = (K - K^-1)/(q - q^-1)
    let c = GaussianRational::one().checked_div(&(q - &q.inv()?))?;
    let delta_f = PBWElement::from_word(&a1, &[(k, 1)])?
        .sub(&PBWElement::from_word(&a1, &[(k, -1)])?)?
        .scalar_mul(&c);
    let delta1 = LinearMap::derivation(
        LinearMap::endomorphism(
            &a1,
            vec![
                PBWElement::from_word(&a1, &[(k, 1)])?.scalar_mul(&q.pow(-2)?),
                PBWElement::from_word(&a1, &[(f, 1)])?,
            ],
        )?,
        vec![PBWElement::zero(&a1), delta_f],
    )?;
    let stage2 = OreData::new(&a1, "E", 1, alpha1, delta1)?;
    Ok((stage1, stage2))
}

/// Coefficient 1/(q - q^-1).
fn uq_c(q: &GaussianRational) -> Result<GaussianRational, AlgebraError> {
    Ok(GaussianRational::one().checked_div(&(q - &q.inv()?))?)
}

/// The A1 presentation (K Laurent, then F) for a given q, built through the
/// first tower stage.
pub fn uq_a1_presentation(q: &GaussianRational) -> Result<Arc<Presentation>, AlgebraError> {
    let (stage1, _) = uq_tower(q)?;
    stage1.extended_presentation("uq_a1")
}

/// delta(K^i F^n) by summing the geometric series:
///
/// ```text
/// q^(-2in) F^(n-1) K^i / (q - q^-1) *
///     [ K (1 - q^(-2n))/(1 - q^(-2)) - K^-1 (1 - q^(2n))/(1 - q^2) ]
/// ```
///
/// Defined for every admissible q (|q| = 1, q != +-1): the geometric-sum
/// denominators 1 - q^(+-2) vanish only at q = +-1, which is already excluded.
/// Returns zero for n = 0 since delta kills K-monomials.
pub fn uq_delta_closed_form(
    i: i64,
    n: u32,
    q: &GaussianRational,
) -> Result<PBWElement, AlgebraError> {
    let a1 = uq_a1_presentation(q)?;
    uq_delta_closed_form_in(&a1, i, n, q)
}

/// Same as [`uq_delta_closed_form`] against a prebuilt A1 presentation.
pub fn uq_delta_closed_form_in(
    a1: &Arc<Presentation>,
    i: i64,
    n: u32,
    q: &GaussianRational,
) -> Result<PBWElement, AlgebraError> {
    validate_uq_q(q)?;
    if n == 0 {
        return Ok(PBWElement::zero(a1));
    }
    let c = uq_c(q)?;
    let one = GaussianRational::one();
    let q2 = q.pow(2)?;
    let q2i = q.pow(-2)?;
    let ratio_plus = (&one - &q.pow(-2 * n as i64)?).checked_div(&(&one - &q2i))?;
    let ratio_minus = (&one - &q.pow(2 * n as i64)?).checked_div(&(&one - &q2))?;
    let scale = q.pow(-2 * i * n as i64)?;
    let k = a1.gen_index("K").expect("K");
    let f = a1.gen_index("F").expect("F");
    let term = |k_exp: i64, coeff: GaussianRational| -> Result<PBWElement, AlgebraError> {
        let mut word: Word = Vec::new();
        if n > 1 {
            word.push((f, n as i64 - 1));
        }
        if k_exp != 0 {
            word.push((k, k_exp));
        }
        Ok(PBWElement::from_word(a1, &word)?.scalar_mul(&coeff))
    };
    let plus = term(i + 1, &(&scale * &c) * &ratio_plus)?;
    let minus = term(i - 1, -&(&(&scale * &c) * &ratio_minus))?;
    plus.add(&minus)
}

/// delta(K^i F^n) from the defining sum, term by term and with no
/// geometric-series summation:
///
/// ```text
/// q^(-2in) * sum_{j=0}^{n-1} F^(n-1) * (q^(-2j) K - q^(2j) K^-1)/(q - q^-1) * K^i
/// ```
pub fn uq_delta_bruteforce(
    i: i64,
    n: u32,
    q: &GaussianRational,
) -> Result<PBWElement, AlgebraError> {
    let a1 = uq_a1_presentation(q)?;
    uq_delta_bruteforce_in(&a1, i, n, q)
}

/// Same as [`uq_delta_bruteforce`] against a prebuilt A1 presentation.
pub fn uq_delta_bruteforce_in(
    a1: &Arc<Presentation>,
    i: i64,
    n: u32,
    q: &GaussianRational,
) -> Result<PBWElement, AlgebraError> {
    validate_uq_q(q)?;
    let k = a1.gen_index("K").expect("K");
    let f = a1.gen_index("F").expect("F");
    let c = uq_c(q)?;
    let scale = q.pow(-2 * i * n as i64)?;
    let mut total = PBWElement::zero(a1);
    for j in 0..n as i64 {
        for (sign_coeff, k_offset) in [(q.pow(-2 * j)?, 1i64), (-&q.pow(2 * j)?, -1i64)] {
            let mut word: Word = Vec::new();
            if n > 1 {
                word.push((f, n as i64 - 1));
            }
            word.push((k, k_offset));
            if i != 0 {
                word.push((k, i));
            }
            let coeff = &(&scale * &c) * &sign_coeff;
            total = total.add(&PBWElement::from_word(a1, &word)?.scalar_mul(&coeff))?;
        }
    }
    Ok(total)
}

/// The third, fully independent route to the same element:
/// delta(b) = E*b - alpha1(b)*E computed by the complete U_q(sl(2)) rewriter,
/// then read back in A1.
pub fn uq_delta_via_rewriter(
    i: i64,
    n: u32,
    q: &GaussianRational,
) -> Result<PBWElement, AlgebraError> {
    let full = builtin(BuiltinName::UqSl2, Some(q.clone()))?;
    let a1 = uq_a1_presentation(q)?;
    uq_delta_via_rewriter_in(&full, &a1, i, n, q)
}

/// Same as [`uq_delta_via_rewriter`] against prebuilt presentations.
pub fn uq_delta_via_rewriter_in(
    full: &Arc<Presentation>,
    a1: &Arc<Presentation>,
    i: i64,
    n: u32,
    q: &GaussianRational,
) -> Result<PBWElement, AlgebraError> {
    validate_uq_q(q)?;
    let k = full.gen_index("K").expect("K");
    let f = full.gen_index("F").expect("F");
    let e = full.gen_index("E").expect("E");
    let mut word: Word = vec![(e, 1)];
    if i != 0 {
        word.push((k, i));
    }
    if n != 0 {
        word.push((f, n as i64));
    }
    let left = PBWElement::from_word(full, &word)?;
    let mut rword: Word = Vec::new();
    if i != 0 {
        rword.push((k, i));
    }
    if n != 0 {
        rword.push((f, n as i64));
    }
    rword.push((e, 1));
    // alpha1(K^i F^n) = q^(-2i) K^i F^n
    let right = PBWElement::from_word(full, &rword)?.scalar_mul(&q.pow(-2 * i)?);
    left.sub(&right)?.convert_to(a1)
}

// --- truncated series -------------------------------------------------------

/// A finite section of a series: a PBW element all of whose monomials have
/// grading at most `degree_cap`, plus a flag recording whether it is an exact
/// polynomial or the truncation of something longer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    element: PBWElement,
    degree_cap: u64,
    exact: bool,
}

impl TruncatedSeries {
    /// Truncate an element to the cap; the result is flagged exact iff nothing
    /// was discarded.
    pub fn from_element(element: PBWElement, degree_cap: u64) -> Self {
        let (element, discarded) = element.truncate_grading(degree_cap);
        TruncatedSeries {
            element,
            degree_cap,
            exact: !discarded,
        }
    }

    /// Wrap an element known to be a truncation of a longer series.
    pub fn inexact(element: PBWElement, degree_cap: u64) -> Self {
        let (element, _) = element.truncate_grading(degree_cap);
        TruncatedSeries {
            element,
            degree_cap,
            exact: false,
        }
    }

    pub fn element(&self) -> &PBWElement {
        &self.element
    }

    pub fn degree_cap(&self) -> u64 {
        self.degree_cap
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Multiply and re-truncate to the smaller cap. Grading monotonicity of
    /// the rewrite rules guarantees discarded tails cannot influence retained
    /// monomials, so sections multiply consistently.
    pub fn series_mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, AlgebraError> {
        let cap = self.degree_cap.min(other.degree_cap);
        let product = self.element.mul(&other.element)?;
        let (element, discarded) = product.truncate_grading(cap);
        Ok(TruncatedSeries {
            element,
            degree_cap: cap,
            exact: self.exact && other.exact && !discarded,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::FreeTerm;

    fn q35() -> GaussianRational {
        GaussianRational::from_parts(3, 5, 4, 5)
    }

    /// K^i F^n as an element of A1 (either exponent may be zero).
    fn a1_monomial(a1: &Arc<Presentation>, i: i64, n: i64) -> Result<PBWElement, AlgebraError> {
        let k = a1.gen_index("K").expect("K");
        let f = a1.gen_index("F").expect("F");
        let mut word: Word = Vec::new();
        if i != 0 {
            word.push((k, i));
        }
        if n != 0 {
            word.push((f, n));
        }
        PBWElement::from_word(a1, &word)
    }

    fn y_power(base: &Arc<Presentation>, j: i64) -> PBWElement {
        if j == 0 {
            PBWElement::one(base)
        } else {
            PBWElement::from_word(base, &[(0, j)]).unwrap()
        }
    }

    #[test]
    fn snk_all_alpha_is_identity_for_jordanian() {
        let d = jordanian_tower();
        let y = y_power(d.base(), 1);
        let (s, count) = snk_enumerate_counted(5, 0, &y, &d).unwrap();
        assert_eq!(s, y);
        assert_eq!(count, 1);
    }

    #[test]
    fn snk_two_one_on_y() {
        // S_{2,1}(y) = (alpha∘delta + delta∘alpha)(y) = 2 delta(y) = -2 y^2
        let d = jordanian_tower();
        let y = y_power(d.base(), 1);
        let (s, count) = snk_enumerate_counted(2, 1, &y, &d).unwrap();
        assert_eq!(
            s,
            y_power(d.base(), 2).scalar_mul(&GaussianRational::from_int(-2))
        );
        assert_eq!(count, 2);
    }

    #[test]
    fn snk_all_delta_is_delta_power() {
        // S_{3,3}(y) = delta^3(y) = (-1)^3 3! y^4 = -6 y^4
        let d = jordanian_tower();
        let y = y_power(d.base(), 1);
        let s = snk_enumerate(3, 3, &y, &d).unwrap();
        assert_eq!(
            s,
            y_power(d.base(), 4).scalar_mul(&GaussianRational::from_int(-6))
        );
    }

    #[test]
    fn snk_base_cases() {
        let d = jordanian_tower();
        let r = y_power(d.base(), 2)
            .add(&PBWElement::one(d.base()))
            .unwrap();
        assert_eq!(snk_enumerate(0, 0, &r, &d).unwrap(), r);
        assert_eq!(snk_pascal(0, 0, &r, &d).unwrap(), r);
        // S_{1,1}(y) = delta(y) = -y^2
        let y = y_power(d.base(), 1);
        assert_eq!(
            snk_pascal(1, 1, &y, &d).unwrap(),
            y_power(d.base(), 2).neg()
        );
        assert!(snk_enumerate(2, 3, &y, &d).is_err());
    }

    #[test]
    fn pascal_agrees_with_enumeration() {
        let d = jordanian_tower();
        for r in [
            y_power(d.base(), 1),
            y_power(d.base(), 2),
            y_power(d.base(), 1)
                .add(&PBWElement::one(d.base()))
                .unwrap(),
        ] {
            for n in 0..=8u32 {
                for k in 0..=n {
                    let (e, count) = snk_enumerate_counted(n, k, &r, &d).unwrap();
                    let p = snk_pascal(n, k, &r, &d).unwrap();
                    assert_eq!(e, p, "n={n} k={k}");
                    assert_eq!(count, binomial(n, k), "count n={n} k={k}");
                }
            }
        }
    }

    fn binomial(n: u32, k: u32) -> u64 {
        let mut acc = 1u64;
        for j in 0..k as u64 {
            acc = acc * (n as u64 - j) / (j + 1);
        }
        acc
    }

    #[test]
    fn commute_base_cases() {
        let d = jordanian_tower();
        let y = y_power(d.base(), 1);
        let n0 = commute_zn(0, &y, &d).unwrap();
        assert_eq!(n0, vec![(y.clone(), 0)]);
        let n1 = commute_zn(1, &y, &d).unwrap();
        assert_eq!(n1.len(), 2);
        assert_eq!(n1[0], (y.clone(), 1)); // alpha = id
        assert_eq!(n1[1], (y_power(d.base(), 2).neg(), 0)); // delta(y) = -y^2
    }

    #[test]
    fn commute_z2_y_matches_hand_expansion() {
        // x^2 y = y x^2 - 2 y^2 x + 2 y^3 in the Ore orientation
        let d = jordanian_tower();
        let y = y_power(d.base(), 1);
        let rows = commute_zn(2, &y, &d).unwrap();
        assert_eq!(rows[0], (y.clone(), 2));
        assert_eq!(
            rows[1],
            (
                y_power(d.base(), 2).scalar_mul(&GaussianRational::from_int(-2)),
                1
            )
        );
        assert_eq!(
            rows[2],
            (
                y_power(d.base(), 3).scalar_mul(&GaussianRational::from_int(2)),
                0
            )
        );
        let ext = d.extended_presentation("jordanian_ore").unwrap();
        let (formula, engine) = commute_zn_vs_rewriter(2, &y, &d, &ext).unwrap();
        assert_eq!(formula, engine);
    }

    #[test]
    fn jordanian_delta_powers_small() {
        let d = jordanian_tower();
        let mut acc = y_power(d.base(), 1);
        let mut factorial = 1i64;
        for j in 1..=8i64 {
            acc = d.apply_delta(&acc).unwrap();
            factorial *= j;
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let expect =
                y_power(d.base(), j + 1).scalar_mul(&GaussianRational::from_int(sign * factorial));
            assert_eq!(acc, expect, "delta^{j}(y)");
        }
    }

    #[test]
    fn uq_tower_generator_images() {
        let q = q35();
        let (stage1, stage2) = uq_tower(&q).unwrap();
        // alpha0(K) = q^2 K
        let k0 = PBWElement::from_word(stage1.base(), &[(0, 1)]).unwrap();
        assert_eq!(
            stage1.apply_alpha(&k0).unwrap(),
            k0.scalar_mul(&q.pow(2).unwrap())
        );
        // delta(F) = (K - K^-1)/(q - q^-1)
        let a1 = stage2.base();
        let f = PBWElement::from_word(a1, &[(1, 1)]).unwrap();
        let c = uq_c(&q).unwrap();
        let expect = PBWElement::from_word(a1, &[(0, 1)])
            .unwrap()
            .sub(&PBWElement::from_word(a1, &[(0, -1)]).unwrap())
            .unwrap()
            .scalar_mul(&c);
        assert_eq!(stage2.apply_delta(&f).unwrap(), expect);
        // alpha1(F K^2) = q^-4 F K^2
        let fk2 = a1_monomial(a1, 2, 1).unwrap();
        assert_eq!(
            stage2.apply_alpha(&fk2).unwrap(),
            fk2.scalar_mul(&q.pow(-4).unwrap())
        );
    }

    #[test]
    fn tower_rewriting_matches_builtin() {
        let q = q35();
        let (_, stage2) = uq_tower(&q).unwrap();
        let a2 = stage2.extended_presentation("uq_a2").unwrap();
        let reference = builtin(BuiltinName::UqSl2, Some(q)).unwrap();
        assert_eq!(a2.generators(), reference.generators());
        assert_eq!(a2.grading_weights(), reference.grading_weights());
        assert_eq!(a2.rules(), reference.rules());
    }

    #[test]
    fn delta_closed_form_matches_defining_sum() {
        for q in [q35(), GaussianRational::from_parts(5, 13, 12, 13)] {
            for i in -3..=3i64 {
                for n in 0..=6u32 {
                    let closed = uq_delta_closed_form(i, n, &q).unwrap();
                    let brute = uq_delta_bruteforce(i, n, &q).unwrap();
                    assert_eq!(closed, brute, "i={i} n={n} q={q}");
                }
            }
        }
    }

    #[test]
    fn delta_closed_form_defined_at_q_equals_i() {
        // 1 - q^(+-2) = 2 at q = +-i, so the closed form is perfectly regular
        // there and still matches the defining sum.
        for q in [GaussianRational::i(), -&GaussianRational::i()] {
            for i in -2..=2i64 {
                for n in 0..=5u32 {
                    let closed = uq_delta_closed_form(i, n, &q).unwrap();
                    let brute = uq_delta_bruteforce(i, n, &q).unwrap();
                    assert_eq!(closed, brute, "i={i} n={n} q={q}");
                }
            }
        }
    }

    #[test]
    fn delta_n1_matches_delta_f() {
        let q = q35();
        let (stage1, stage2) = uq_tower(&q).unwrap();
        let a1 = stage1.extended_presentation("uq_a1").unwrap();
        let f = PBWElement::from_word(&a1, &[(1, 1)]).unwrap();
        let direct = stage2
            .apply_delta(&f.convert_to(stage2.base()).unwrap())
            .unwrap();
        let closed = uq_delta_closed_form(0, 1, &q).unwrap();
        assert_eq!(closed.convert_to(stage2.base()).unwrap(), direct);
    }

    #[test]
    fn delta_against_full_rewriter() {
        let q = q35();
        for (i, n) in [(0i64, 1u32), (1, 2), (-2, 3), (3, 1)] {
            let brute = uq_delta_bruteforce(i, n, &q).unwrap();
            let via_engine = uq_delta_via_rewriter(i, n, &q).unwrap();
            assert_eq!(brute, via_engine, "i={i} n={n}");
        }
    }

    #[test]
    fn leibniz_audit_on_uq_tower() {
        let q = q35();
        let (_, stage2) = uq_tower(&q).unwrap();
        let a1 = stage2.base();
        let samples = [
            a1_monomial(a1, 1, 2).unwrap(),
            a1_monomial(a1, -2, 1).unwrap(),
            a1_monomial(a1, 0, 3).unwrap(),
            a1_monomial(a1, 2, 0)
                .unwrap()
                .add(&a1_monomial(a1, -1, 1).unwrap())
                .unwrap(),
        ];
        let pairs: Vec<_> = samples
            .iter()
            .flat_map(|a| samples.iter().map(move |b| (a, b)))
            .collect();
        stage2.audit_maps(pairs).unwrap();
    }

    #[test]
    fn series_mul_truncates_consistently() {
        let p = builtin(BuiltinName::Jordanian, None).unwrap();
        let parse =
            |s: &str| crate::algebra::normal_order(&FreeTerm::parse(s, &p).unwrap(), &p).unwrap();
        // exact polynomials below the cap multiply exactly
        let a = TruncatedSeries::from_element(parse("1 + y"), 5);
        let b = TruncatedSeries::from_element(parse("x"), 5);
        let ab = a.series_mul(&b).unwrap();
        assert!(ab.is_exact());
        assert_eq!(*ab.element(), parse("x + x*y + y^2"));
        // a truncating product drops the flag
        let c = TruncatedSeries::from_element(parse("1 + y + y^2 + y^3"), 3);
        let d = TruncatedSeries::from_element(parse("x"), 3);
        let cd = c.series_mul(&d).unwrap();
        assert!(!cd.is_exact());
        let full = parse("1 + y + y^2 + y^3").mul(&parse("x")).unwrap();
        let (filtered, _) = full.truncate_grading(3);
        assert_eq!(*cd.element(), filtered);
        // cap 0: 1 * 1 = 1
        let one = TruncatedSeries::from_element(PBWElement::one(&p), 0);
        assert_eq!(
            *one.series_mul(&one).unwrap().element(),
            PBWElement::one(&p)
        );
    }
}
