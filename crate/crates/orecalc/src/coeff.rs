//! Exact Gaussian-rational scalars: complex numbers a+bi with rational a, b.
//!
//! This is the coefficient field of the whole kernel. Arithmetic is exact
//! (arbitrary-precision rationals), and the squared modulus [`GaussianRational::abs_sq`]
//! is a rational number, so statements like |q| = 1 can be tested without any
//! rounding. The floating approximation [`GaussianRational::abs_approx`] is used
//! only when seminorm sums are evaluated.
//!
//! Literal syntax (shared with the expression parser): `7`, `-2i`, `3/5+4/5i`, `i`.

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid scalar literal at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An exact complex scalar with rational real and imaginary parts.
///
/// Values are always stored in canonical reduced form (the underlying
/// rationals normalize on construction), so structural equality is value
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// Exact rational `num/den`. Panics if `den` is zero.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussianRational::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    /// `(re_num/re_den) + (im_num/im_den) i`, exact.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        assert!(re_den != 0 && im_den != 0, "zero denominator");
        GaussianRational::new(
            BigRational::new(re_num.into(), re_den.into()),
            BigRational::new(im_num.into(), im_den.into()),
        )
    }

    pub fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// The squared modulus re² + im², exact.
    pub fn abs_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// |q| = 1 exactly?
    pub fn is_unit_modulus(&self) -> bool {
        self.abs_sq().is_one()
    }

    /// Floating approximation of the modulus, relative error well below 1e-12.
    ///
    /// When `abs_sq` converts to f64 exactly and is a perfect square in f64
    /// (e.g. 0, 1, 49), the result is exact.
    pub fn abs_approx(&self) -> f64 {
        ratio_to_f64(&self.abs_sq()).sqrt()
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inv(&self) -> Result<Self, CoeffError> {
        let n = self.abs_sq();
        if n.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let c = self.conj();
        Ok(GaussianRational::new(c.re / &n, c.im / n))
    }

    /// Exact division. Errors when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power, negative exponents via the inverse. Errors only for
    /// 0^n with n < 0.
    pub fn pow(&self, n: i64) -> Result<Self, CoeffError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = GaussianRational::one();
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        GaussianRational::zero()
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

/// Panics on division by zero; use [`GaussianRational::checked_div`] where the
/// divisor is not known to be nonzero.
impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", rational_str(&self.re));
        }
        let im_mag = self.im.abs();
        let im_str = if im_mag.is_one() {
            "i".to_string()
        } else {
            format!("{}i", rational_str(&im_mag))
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{}", im_str)
            } else {
                write!(f, "{}", im_str)
            }
        } else {
            let sep = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "{}{}{}", rational_str(&self.re), sep, im_str)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Convert an exact rational to f64 with relative error below 2^-52,
/// regardless of how large numerator and denominator are.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    if numer.is_zero() {
        return 0.0;
    }
    let negative = numer.sign() == Sign::Minus;
    let n = numer.abs();
    let d = denom.clone();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    // Shift the numerator so the integer quotient keeps >= 64 significant bits.
    let extra = (db - nb + 64).max(0) as u64;
    let q: BigInt = (n << extra) / d;
    let qb = q.bits();
    // Keep at most the top 63 bits of the quotient so to_f64 is exact-ish.
    let drop = qb.saturating_sub(63);
    let q_small: BigInt = q >> drop;
    let mag = q_small.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(drop as i32 - extra as i32);
    if negative {
        -mag
    } else {
        mag
    }
}

/// Parse a positive decimal literal such as `0.1`, `2`, or `1.25` into an
/// exact rational (binary floats cannot represent 0.1; this keeps exact
/// checks exact).
pub fn parse_decimal_rational(s: &str) -> Result<BigRational, CoeffError> {
    let s = s.trim();
    let err = |pos: usize, msg: &str| CoeffError::Parse {
        pos,
        msg: msg.to_string(),
    };
    if s.is_empty() {
        return Err(err(0, "empty decimal literal"));
    }
    let (int_part, frac_part) = match s.find('.') {
        Some(dot) => (&s[..dot], &s[dot + 1..]),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err(0, "expected digits"));
    }
    for (idx, ch) in s.char_indices() {
        if !ch.is_ascii_digit() && ch != '.' {
            return Err(err(idx, "expected digit"));
        }
    }
    let int_val: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().map_err(|_| err(0, "bad integer part"))?
    };
    let mut value = BigRational::from_integer(int_val);
    if !frac_part.is_empty() {
        let frac_val: BigInt = frac_part.parse().map_err(|_| err(0, "bad fraction part"))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        value += BigRational::new(frac_val, scale);
    }
    Ok(value)
}

// --- scalar literal parsing ---------------------------------------------

struct ScalarLexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ScalarLexer<'a> {
    fn new(s: &'a str) -> Self {
        ScalarLexer {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn number(&mut self) -> Result<BigRational, CoeffError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(CoeffError::Parse {
                pos: start,
                msg: "expected digits".into(),
            });
        }
        let numer: BigInt = std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .unwrap();
        if self.peek() == Some(b'/') {
            self.bump();
            self.skip_ws();
            let dstart = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == dstart {
                return Err(CoeffError::Parse {
                    pos: dstart,
                    msg: "expected denominator digits".into(),
                });
            }
            let denom: BigInt = std::str::from_utf8(&self.bytes[dstart..self.pos])
                .unwrap()
                .parse()
                .unwrap();
            if denom.is_zero() {
                return Err(CoeffError::Parse {
                    pos: dstart,
                    msg: "zero denominator".into(),
                });
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    // one signed part: rational, rational 'i', or bare 'i'
    fn part(&mut self) -> Result<GaussianRational, CoeffError> {
        let mut sign = BigRational::one();
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                }
                Some(b'-') => {
                    sign = -sign;
                    self.bump();
                }
                _ => break,
            }
        }
        match self.peek() {
            Some(b'i') => {
                self.bump();
                Ok(GaussianRational::new(BigRational::zero(), sign))
            }
            Some(c) if c.is_ascii_digit() => {
                let mag = self.number()?;
                if self.peek() == Some(b'i') {
                    self.bump();
                    Ok(GaussianRational::new(BigRational::zero(), sign * mag))
                } else {
                    Ok(GaussianRational::new(sign * mag, BigRational::zero()))
                }
            }
            _ => Err(CoeffError::Parse {
                pos: self.pos,
                msg: "expected scalar".into(),
            }),
        }
    }
}

impl FromStr for GaussianRational {
    type Err = CoeffError;

    /// Parse a scalar literal: `7`, `-2i`, `3/5+4/5i`, `1-i`, `i`.
    fn from_str(s: &str) -> Result<Self, CoeffError> {
        let mut lx = ScalarLexer::new(s);
        let mut value = lx.part()?;
        while matches!(lx.peek(), Some(b'+') | Some(b'-')) {
            value = &value + &lx.part()?;
        }
        lx.skip_ws();
        if lx.pos != lx.bytes.len() {
            return Err(CoeffError::Parse {
                pos: lx.pos,
                msg: "trailing input after scalar".into(),
            });
        }
        Ok(value)
    }
}
