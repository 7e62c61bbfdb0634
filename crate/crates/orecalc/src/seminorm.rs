//! Weighted seminorm families on PBW elements and sampled verification of
//! their submultiplicativity, stability, and equivalence bounds.
//!
//! Each family assigns a positive weight to every basis monomial; the seminorm
//! of an element is the weighted sum of its coefficient moduli. Weight sums are
//! evaluated in floating point (sums of square roots are irrational in
//! general), but every inequality that can be restated over the rationals —
//! single-monomial comparisons, factorial inequalities, squared-modulus
//! identities — is additionally checked exactly.
//!
//! Families:
//!
//! | id              | algebra shape          | weight of a monomial            |
//! |-----------------|------------------------|---------------------------------|
//! | `free_rho`      | any                    | rho^(word length)               |
//! | `qplane_big`    | two generators         | rho^(i+j)                       |
//! | `qplane_small`  | two generators         | qabs^(i*j) rho^(i+j)            |
//! | `ug_level`      | two generators         | [j <= n] rho^i                  |
//! | `jordanian_P`   | one generator          | rho^i / (i-1)!   ((-1)! := 1)   |
//! | `jordanian_Q`   | one generator          | rho^i / i!                      |
//! | `jordanian_full`| two generators         | rho^(i+j) / j!                  |
//! | `a0_laurent`    | one Laurent generator  | rho^i, i in Z                   |
//! | `uq_full`       | K^i F^n (E^m)          | rho^(i+n+m), i in Z             |

use crate::algebra::{AlgebraError, LinearMap, Monomial, PBWElement, Presentation, Word};
use crate::coeff::{ratio_to_f64, GaussianRational};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeminormError {
    #[error("family `{family}` does not fit presentation `{presentation}`: {msg}")]
    ShapeMismatch {
        family: String,
        presentation: String,
        msg: String,
    },
    #[error("invalid seminorm parameters: {0}")]
    InvalidSpec(String),
    #[error("unknown seminorm family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    FreeRho,
    QplaneBig,
    QplaneSmall,
    UgLevel,
    JordanianP,
    JordanianQ,
    JordanianFull,
    A0Laurent,
    UqFull,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::FreeRho => "free_rho",
            Family::QplaneBig => "qplane_big",
            Family::QplaneSmall => "qplane_small",
            Family::UgLevel => "ug_level",
            Family::JordanianP => "jordanian_P",
            Family::JordanianQ => "jordanian_Q",
            Family::JordanianFull => "jordanian_full",
            Family::A0Laurent => "a0_laurent",
            Family::UqFull => "uq_full",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Family {
    type Err = SeminormError;
    fn from_str(s: &str) -> Result<Self, SeminormError> {
        Ok(match s {
            "free_rho" => Family::FreeRho,
            "qplane_big" => Family::QplaneBig,
            "qplane_small" => Family::QplaneSmall,
            "ug_level" => Family::UgLevel,
            "jordanian_P" => Family::JordanianP,
            "jordanian_Q" => Family::JordanianQ,
            "jordanian_full" => Family::JordanianFull,
            "a0_laurent" => Family::A0Laurent,
            "uq_full" => Family::UqFull,
            _ => return Err(SeminormError::UnknownFamily(s.to_string())),
        })
    }
}

/// A seminorm family together with its parameters. `rho` is kept as an exact
/// rational so monomial-level inequalities can be decided without rounding;
/// the float image is derived on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct SeminormSpec {
    pub family: Family,
    pub rho: BigRational,
    pub q_abs: Option<BigRational>,
    pub level_n: Option<u32>,
}

impl SeminormSpec {
    pub fn new(
        family: Family,
        rho: BigRational,
        q_abs: Option<BigRational>,
        level_n: Option<u32>,
    ) -> Result<Self, SeminormError> {
        if rho <= BigRational::zero() {
            return Err(SeminormError::InvalidSpec("rho must be positive".into()));
        }
        if (family == Family::QplaneSmall) != q_abs.is_some() {
            return Err(SeminormError::InvalidSpec(
                "q_abs is required exactly for qplane_small".into(),
            ));
        }
        if let Some(t) = &q_abs {
            if t.is_negative() {
                return Err(SeminormError::InvalidSpec("q_abs must be >= 0".into()));
            }
        }
        if (family == Family::UgLevel) != level_n.is_some() {
            return Err(SeminormError::InvalidSpec(
                "level_n is required exactly for ug_level".into(),
            ));
        }
        Ok(SeminormSpec {
            family,
            rho,
            q_abs,
            level_n,
        })
    }

    /// Shorthand for families with no extra parameters.
    pub fn plain(family: Family, rho: BigRational) -> Result<Self, SeminormError> {
        SeminormSpec::new(family, rho, None, None)
    }

    pub fn rho_f64(&self) -> f64 {
        ratio_to_f64(&self.rho)
    }

    pub fn parameters_json(&self) -> serde_json::Value {
        json!({
            "family": self.family.to_string(),
            "rho": self.rho_f64(),
            "q_abs": self.q_abs.as_ref().map(ratio_to_f64),
            "level_n": self.level_n,
        })
    }

    fn shape_error(&self, p: &Presentation, msg: &str) -> SeminormError {
        SeminormError::ShapeMismatch {
            family: self.family.to_string(),
            presentation: p.name().to_string(),
            msg: msg.to_string(),
        }
    }

    /// Check that the presentation has the monomial shape the family expects.
    pub fn check_shape(&self, p: &Presentation) -> Result<(), SeminormError> {
        let gens = p.generators();
        let ok = match self.family {
            Family::FreeRho => true,
            Family::QplaneBig | Family::QplaneSmall | Family::UgLevel | Family::JordanianFull => {
                gens.len() == 2 && gens.iter().all(|g| !g.laurent)
            }
            Family::JordanianP | Family::JordanianQ => gens.len() == 1 && !gens[0].laurent,
            Family::A0Laurent => gens.len() == 1 && gens[0].laurent,
            Family::UqFull => {
                gens.len() >= 2 && gens[0].laurent && gens[1..].iter().all(|g| !g.laurent)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(self.shape_error(p, "wrong generator count or Laurent pattern"))
        }
    }
}

fn factorial_f64(n: u64) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn factorial_big(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn big_pow(rho: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num::pow::pow(rho.clone(), e as usize)
    } else {
        num::pow::pow(rho.clone(), (-e) as usize).recip()
    }
}

/// The weight of one basis monomial under the family, as a float
/// (relative error well below 1e-12).
pub fn weight(spec: &SeminormSpec, p: &Presentation, m: &Monomial) -> Result<f64, SeminormError> {
    spec.check_shape(p)?;
    let rho = spec.rho_f64();
    Ok(match spec.family {
        Family::FreeRho => rho.powi(clamp_i32(m.total_degree() as i64)),
        Family::QplaneBig => {
            let (i, j) = (m.exponent_of(0), m.exponent_of(1));
            rho.powi(clamp_i32(i + j))
        }
        Family::QplaneSmall => {
            let (i, j) = (m.exponent_of(0), m.exponent_of(1));
            let t = ratio_to_f64(spec.q_abs.as_ref().expect("validated"));
            t.powi(clamp_i32(i * j)) * rho.powi(clamp_i32(i + j))
        }
        Family::UgLevel => {
            let (i, j) = (m.exponent_of(0), m.exponent_of(1));
            if j as u64 <= spec.level_n.expect("validated") as u64 {
                rho.powi(clamp_i32(i))
            } else {
                0.0
            }
        }
        Family::JordanianP => {
            let i = m.exponent_of(0);
            rho.powi(clamp_i32(i)) / factorial_f64((i as u64).saturating_sub(1))
        }
        Family::JordanianQ => {
            let i = m.exponent_of(0);
            rho.powi(clamp_i32(i)) / factorial_f64(i as u64)
        }
        Family::JordanianFull => {
            let (i, j) = (m.exponent_of(0), m.exponent_of(1));
            rho.powi(clamp_i32(i + j)) / factorial_f64(j as u64)
        }
        Family::A0Laurent => rho.powi(clamp_i32(m.exponent_of(0))),
        Family::UqFull => {
            let total: i64 = (0..p.num_generators()).map(|g| m.exponent_of(g)).sum();
            rho.powi(clamp_i32(total))
        }
    })
}

/// The same weight as an exact rational (every family here has rational
/// weights for rational parameters).
pub fn weight_exact(
    spec: &SeminormSpec,
    p: &Presentation,
    m: &Monomial,
) -> Result<BigRational, SeminormError> {
    spec.check_shape(p)?;
    let rho = &spec.rho;
    Ok(match spec.family {
        Family::FreeRho => big_pow(rho, m.total_degree() as i64),
        Family::QplaneBig => big_pow(rho, m.exponent_of(0) + m.exponent_of(1)),
        Family::QplaneSmall => {
            let (i, j) = (m.exponent_of(0), m.exponent_of(1));
            let t = spec.q_abs.as_ref().expect("validated");
            big_pow(t, i * j) * big_pow(rho, i + j)
        }
        Family::UgLevel => {
            let (i, j) = (m.exponent_of(0), m.exponent_of(1));
            if j as u64 <= spec.level_n.expect("validated") as u64 {
                big_pow(rho, i)
            } else {
                BigRational::zero()
            }
        }
        Family::JordanianP => {
            let i = m.exponent_of(0) as u64;
            big_pow(rho, i as i64) / BigRational::from_integer(factorial_big(i.saturating_sub(1)))
        }
        Family::JordanianQ => {
            let i = m.exponent_of(0) as u64;
            big_pow(rho, i as i64) / BigRational::from_integer(factorial_big(i))
        }
        Family::JordanianFull => {
            let (i, j) = (m.exponent_of(0), m.exponent_of(1));
            big_pow(rho, i + j) / BigRational::from_integer(factorial_big(j as u64))
        }
        Family::A0Laurent => big_pow(rho, m.exponent_of(0)),
        Family::UqFull => {
            let total: i64 = (0..p.num_generators()).map(|g| m.exponent_of(g)).sum();
            big_pow(rho, total)
        }
    })
}

fn clamp_i32(v: i64) -> i32 {
    v.clamp(i32::MIN as i64, i32::MAX as i64) as i32
}

/// Seminorm value: the weighted sum of coefficient moduli, in floating point.
pub fn eval(spec: &SeminormSpec, a: &PBWElement) -> Result<f64, SeminormError> {
    let p = a.presentation();
    spec.check_shape(p)?;
    let mut total = 0.0;
    for (m, c) in a.support() {
        total += c.abs_approx() * weight(spec, p, m)?;
    }
    Ok(total)
}

/// Exact square root of a rational, when it exists.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// Exact seminorm value, available when every coefficient modulus is rational
/// (true e.g. for real rational coefficients and for unit q-power phases).
pub fn eval_exact(
    spec: &SeminormSpec,
    a: &PBWElement,
) -> Result<Option<BigRational>, SeminormError> {
    let p = a.presentation();
    spec.check_shape(p)?;
    let mut total = BigRational::zero();
    for (m, c) in a.support() {
        match rational_sqrt(&c.abs_sq()) {
            Some(mag) => total += mag * weight_exact(spec, p, m)?,
            None => return Ok(None),
        }
    }
    Ok(Some(total))
}

// --- verification reports ---------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub inputs: Vec<String>,
    pub values: Vec<f64>,
}

/// Structured pass/fail record of a property suite. For inequality suites the
/// invariant is `passed == (max_ratio <= 1 + tol)` with all ratios normalized
/// by their bound.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub trials: u64,
    pub passed: bool,
    pub max_ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub parameters: serde_json::Value,
}

impl VerificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Tracks the worst normalized ratio seen and the inputs that produced it.
pub(crate) struct RatioTracker {
    trials: u64,
    max_ratio: f64,
    worst: Option<Witness>,
    exact_failures: u64,
}

impl RatioTracker {
    pub(crate) fn new() -> Self {
        RatioTracker {
            trials: 0,
            max_ratio: 0.0,
            worst: None,
            exact_failures: 0,
        }
    }

    pub(crate) fn observe(&mut self, ratio: f64, witness: impl FnOnce() -> Witness) {
        self.trials += 1;
        if ratio > self.max_ratio || self.worst.is_none() {
            self.max_ratio = self.max_ratio.max(ratio);
            self.worst = Some(witness());
        }
    }

    pub(crate) fn exact_failure(&mut self) {
        self.exact_failures += 1;
    }

    pub(crate) fn finish(
        self,
        suite: impl Into<String>,
        tol: f64,
        mut parameters: serde_json::Value,
    ) -> VerificationReport {
        let passed = self.max_ratio <= 1.0 + tol && self.exact_failures == 0;
        if self.exact_failures > 0 {
            parameters["exact_failures"] = json!(self.exact_failures);
        }
        VerificationReport {
            suite: suite.into(),
            trials: self.trials,
            passed,
            max_ratio: self.max_ratio,
            witness: if passed { None } else { self.worst },
            parameters,
        }
    }
}

// --- deterministic sampling ---------------------------------------------------

/// Deterministic element sampler. Coefficients come from a fixed palette
/// {1, -1, i, -i, 1+i, (3+4i)/5}; exponents are uniform in per-slot ranges.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn coefficient(&mut self) -> GaussianRational {
        match self.rng.gen_range(0..6) {
            0 => GaussianRational::one(),
            1 => GaussianRational::from_int(-1),
            2 => GaussianRational::i(),
            3 => -&GaussianRational::i(),
            4 => GaussianRational::from_parts(1, 1, 1, 1),
            _ => GaussianRational::from_parts(3, 5, 4, 5),
        }
    }

    /// A random element with <= max_terms monomials, exponent of slot g drawn
    /// uniformly from ranges[g] (inclusive). Slots drawn as zero are omitted.
    pub fn element(
        &mut self,
        p: &Arc<Presentation>,
        max_terms: usize,
        ranges: &[(i64, i64)],
    ) -> PBWElement {
        assert_eq!(ranges.len(), p.num_generators(), "one range per generator");
        let terms = self.rng.gen_range(1..=max_terms.max(1));
        let mut parts = Vec::with_capacity(terms);
        for _ in 0..terms {
            let mut word: Word = Vec::new();
            for (g, &(lo, hi)) in ranges.iter().enumerate() {
                let e = self.rng.gen_range(lo..=hi);
                if e != 0 {
                    word.push((g, e));
                }
            }
            parts.push((self.coefficient(), word));
        }
        PBWElement::from_normal_parts(p, parts)
    }

    /// A random free word of total degree <= max_degree (letters in arbitrary
    /// order, small exponents, signed on Laurent slots).
    pub fn word(&mut self, p: &Arc<Presentation>, max_degree: u64) -> Word {
        let budget = self.rng.gen_range(1..=max_degree.max(1));
        let mut word: Word = Vec::new();
        let mut spent = 0u64;
        while spent < budget {
            let g = self.rng.gen_range(0..p.num_generators());
            let mag = self.rng.gen_range(1..=2u64.min(budget - spent)) as i64;
            let e = if p.is_laurent(g) && self.rng.gen_bool(0.5) {
                -mag
            } else {
                mag
            };
            word.push((g, e));
            spent += mag as u64;
        }
        word
    }

    /// A random free term (sum of random words) for parser round trips and
    /// associativity fuzzing.
    pub fn free_term(
        &mut self,
        p: &Arc<Presentation>,
        max_terms: usize,
        max_degree: u64,
    ) -> crate::expr::FreeTerm {
        let terms = self.rng.gen_range(1..=max_terms.max(1));
        let parts = (0..terms)
            .map(|_| (self.coefficient(), self.word(p, max_degree)))
            .collect();
        crate::expr::FreeTerm::from_parts(p, parts)
    }
}

// --- property checks ----------------------------------------------------------

/// Check `eval(a*b) <= eval(a) * eval(b) * (1 + tol)` over the given pairs.
pub fn check_submultiplicative(
    spec: &SeminormSpec,
    pairs: impl IntoIterator<Item = (PBWElement, PBWElement)>,
    tol: f64,
) -> Result<VerificationReport, SeminormError> {
    let mut tracker = RatioTracker::new();
    for (a, b) in pairs {
        let ab = a.mul(&b)?;
        let na = eval(spec, &a)?;
        let nb = eval(spec, &b)?;
        let nab = eval(spec, &ab)?;
        let denom = na * nb;
        let ratio = if denom > 0.0 {
            nab / denom
        } else if nab == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        tracker.observe(ratio, || Witness {
            inputs: vec![a.to_string(), b.to_string(), ab.to_string()],
            values: vec![nab, na, nb],
        });
    }
    Ok(tracker.finish("submultiplicative", tol, spec.parameters_json()))
}

/// Check `eval(op(a)) <= bound * eval(a) * (1 + tol)` over the samples; the
/// reported ratio is normalized by the bound.
pub fn check_stability(
    spec: &SeminormSpec,
    op: &LinearMap,
    bound: f64,
    elements: impl IntoIterator<Item = PBWElement>,
    tol: f64,
) -> Result<VerificationReport, SeminormError> {
    let mut tracker = RatioTracker::new();
    for a in elements {
        let image = op.apply(&a)?;
        let na = eval(spec, &a)?;
        let nim = eval(spec, &image)?;
        let denom = bound * na;
        let ratio = if denom > 0.0 {
            nim / denom
        } else if nim == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        tracker.observe(ratio, || Witness {
            inputs: vec![a.to_string(), image.to_string()],
            values: vec![nim, na, bound],
        });
    }
    let mut params = spec.parameters_json();
    params["bound"] = json!(bound);
    Ok(tracker.finish("stability", tol, params))
}

/// Check that the operator preserves the seminorm: exactly at the level of
/// squared coefficient moduli, and to `sum_tol` relative error at the level of
/// the floating sums.
pub fn check_isometry(
    spec: &SeminormSpec,
    op: &LinearMap,
    elements: impl IntoIterator<Item = PBWElement>,
    sum_tol: f64,
) -> Result<VerificationReport, SeminormError> {
    let mut tracker = RatioTracker::new();
    for a in elements {
        let image = op.apply(&a)?;
        // exact backbone: same support, identical |coeff|^2 monomial by monomial
        let mut exact_ok = image.num_monomials() == a.num_monomials();
        if exact_ok {
            for (m, c) in a.support() {
                if image.coefficient(m).abs_sq() != c.abs_sq() {
                    exact_ok = false;
                    break;
                }
            }
        }
        if !exact_ok {
            tracker.exact_failure();
        }
        let na = eval(spec, &a)?;
        let nim = eval(spec, &image)?;
        let ratio = if na > 0.0 && nim > 0.0 {
            (nim / na).max(na / nim)
        } else if na == nim {
            0.0
        } else {
            f64::INFINITY
        };
        tracker.observe(ratio, || Witness {
            inputs: vec![a.to_string(), image.to_string()],
            values: vec![nim, na],
        });
    }
    Ok(tracker.finish("isometry", sum_tol, spec.parameters_json()))
}

/// The two explicit directions of the P ~ Q equivalence on one-variable
/// monomials, decided exactly in rational arithmetic:
/// Q(rho) <= P(rho), and P(rho) <= Q(2 rho) via i <= 2^i.
pub fn check_equivalence_pq(rho_grid: &[BigRational], degree: u32) -> VerificationReport {
    let mut tracker = RatioTracker::new();
    let two = BigRational::from_integer(2.into());
    for rho in rho_grid {
        for i in 0..=degree as u64 {
            let p_w = big_pow(rho, i as i64)
                / BigRational::from_integer(factorial_big(i.saturating_sub(1)));
            let q_w = big_pow(rho, i as i64) / BigRational::from_integer(factorial_big(i));
            let q_doubled =
                big_pow(&(rho * &two), i as i64) / BigRational::from_integer(factorial_big(i));
            if q_w > p_w || p_w > q_doubled {
                tracker.exact_failure();
            }
            let r1 = ratio_to_f64(&(&q_w / &p_w));
            let r2 = ratio_to_f64(&(&p_w / &q_doubled));
            tracker.observe(r1.max(r2), || Witness {
                inputs: vec![format!("y^{i}"), format!("rho = {rho}")],
                values: vec![
                    ratio_to_f64(&q_w),
                    ratio_to_f64(&p_w),
                    ratio_to_f64(&q_doubled),
                ],
            });
        }
    }
    tracker.finish(
        "pq_equivalence",
        0.0,
        json!({
            "rho_grid": rho_grid.iter().map(ratio_to_f64).collect::<Vec<_>>(),
            "degree": degree,
        }),
    )
}

/// Exact monomial-level submultiplicativity of the P family on one-variable
/// monomials: rho^(k+l)/(k+l-1)! <= rho^k/(k-1)! * rho^l/(l-1)!.
pub fn check_p_monomial_submultiplicative(rho: &BigRational, max_power: u32) -> VerificationReport {
    let mut tracker = RatioTracker::new();
    let pw = |i: u64| -> BigRational {
        big_pow(rho, i as i64) / BigRational::from_integer(factorial_big(i.saturating_sub(1)))
    };
    for k in 0..=max_power as u64 {
        for l in 0..=max_power as u64 {
            let lhs = pw(k + l);
            let rhs = pw(k) * pw(l);
            if lhs > rhs {
                tracker.exact_failure();
            }
            tracker.observe(ratio_to_f64(&(&lhs / &rhs)), || Witness {
                inputs: vec![format!("y^{k}"), format!("y^{l}")],
                values: vec![ratio_to_f64(&lhs), ratio_to_f64(&rhs)],
            });
        }
    }
    tracker.finish(
        "p_monomial_submultiplicative",
        0.0,
        json!({"rho": ratio_to_f64(rho), "max_power": max_power}),
    )
}

/// The smallest n with n > 2 * |x| * |d|. By the collapse identity
/// [d, x^n] = n x^(n-1), any submultiplicative seminorm with these generator
/// norms forces n <= 2 |x| |d| whenever x^(n-1) has nonzero seminorm, so this
/// n witnesses the obstruction. The identity itself is re-verified by the
/// rewriting engine for the reported n.
pub fn weyl_obstruction_report(norm_x: f64, norm_d: f64) -> VerificationReport {
    let threshold = 2.0 * norm_x * norm_d;
    let mut n = threshold.floor() as u64 + 1;
    if n as f64 <= threshold {
        n += 1;
    }
    let identity_ok = crate::algebra::weyl_commutator_check(n as u32).is_ok();
    VerificationReport {
        suite: "weyl_obstruction".into(),
        trials: 1,
        passed: identity_ok,
        max_ratio: if threshold > 0.0 {
            threshold / n as f64
        } else {
            0.0
        },
        witness: None,
        parameters: json!({
            "norm_x": norm_x,
            "norm_d": norm_d,
            "bound": threshold,
            "minimal_n": n,
        }),
    }
}

/// The two ingredient inequalities of the domination argument, for a supplied
/// stability constant C >= 1 and generator norm |y|: with rho = C * max(|y|, 1),
/// C^j * |y| <= rho^j and hence C^j |y| / j! <= rho^(j+1)/j! for every j >= 1.
pub fn check_domination_ingredients(
    c: &BigRational,
    norm_y: &BigRational,
    max_power: u32,
) -> Result<VerificationReport, SeminormError> {
    if c < &BigRational::one() {
        return Err(SeminormError::InvalidSpec("C must be >= 1".into()));
    }
    if norm_y.is_negative() {
        return Err(SeminormError::InvalidSpec("|y| must be >= 0".into()));
    }
    let rho = c * norm_y.clone().max(BigRational::one());
    let mut tracker = RatioTracker::new();
    for j in 1..=max_power as i64 {
        let lhs = big_pow(c, j) * norm_y;
        let step = big_pow(&rho, j);
        let target = big_pow(&rho, j + 1);
        if lhs > step || step > target.clone().max(step.clone()) {
            tracker.exact_failure();
        }
        let denom = ratio_to_f64(&step);
        let r = if denom > 0.0 {
            ratio_to_f64(&lhs) / denom
        } else {
            0.0
        };
        tracker.observe(r, || Witness {
            inputs: vec![format!("j = {j}")],
            values: vec![
                ratio_to_f64(&lhs),
                ratio_to_f64(&step),
                ratio_to_f64(&target),
            ],
        });
    }
    Ok(tracker.finish(
        "domination_ingredients",
        0.0,
        json!({
            "C": ratio_to_f64(c),
            "norm_y": ratio_to_f64(norm_y),
            "rho": ratio_to_f64(&rho),
            "max_power": max_power,
        }),
    ))
}
