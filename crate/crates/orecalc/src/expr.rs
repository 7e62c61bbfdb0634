//! Parse and render noncommutative expressions over a presentation's alphabet.
//!
//! Grammar (whitespace insignificant, three precedence levels):
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*'? factor)*            juxtaposition is also a product
//! factor := scalar | gen ('^' '-'? int)? | '(' expr ')'
//! scalar := int ('/' int)? 'i'? | 'i'
//! ```
//!
//! `^` binds tighter than the (noncommutative, left-to-right) product. `^0` is
//! accepted and eliminated while parsing. Negative exponents are rejected on
//! generators without the Laurent flag. `i` is always the imaginary unit, never
//! a generator.

use crate::algebra::{same_presentation, Presentation, Word};
use crate::coeff::GaussianRational;
use num::rational::BigRational;
use num::traits::Zero;
use num::BigInt;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        pos,
        msg: msg.into(),
    }
}

/// A free-algebra term: a formal sum of scalar-weighted words over the
/// generator alphabet of a fixed presentation. No rewrite rules are applied;
/// only adjacent equal generators merge their exponents.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeTerm {
    presentation: Arc<Presentation>,
    terms: Vec<(GaussianRational, Word)>,
}

impl FreeTerm {
    pub fn parse(input: &str, alphabet: &Arc<Presentation>) -> Result<Self, ParseError> {
        Parser::new(input, alphabet).parse_all()
    }

    pub(crate) fn from_parts(p: &Arc<Presentation>, terms: Vec<(GaussianRational, Word)>) -> Self {
        let terms = terms
            .into_iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, w)| {
                // adjacent equal generators merge, exactly as in parsing
                let mut canon = Word::with_capacity(w.len());
                for (g, e) in w {
                    push_letter(&mut canon, g, e);
                }
                (c, canon)
            })
            .collect();
        FreeTerm {
            presentation: Arc::clone(p),
            terms,
        }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn parts(&self) -> impl Iterator<Item = &(GaussianRational, Word)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Collected form: like words merged, zero coefficients dropped. Two terms
    /// are the same element of the free algebra iff their collected forms agree,
    /// so this is the right notion of round-trip equality.
    pub fn collected(&self) -> BTreeMap<Word, GaussianRational> {
        let mut map: BTreeMap<Word, GaussianRational> = BTreeMap::new();
        for (c, w) in &self.terms {
            let entry = map.entry(w.clone()).or_insert_with(GaussianRational::zero);
            *entry = &*entry + c;
        }
        map.retain(|_, v| !v.is_zero());
        map
    }

    pub fn equivalent(&self, other: &FreeTerm) -> bool {
        same_presentation(&self.presentation, &other.presentation)
            && self.collected() == other.collected()
    }

    fn neg(mut self) -> Self {
        for (c, _) in &mut self.terms {
            *c = -&*c;
        }
        self
    }

    fn add(mut self, other: FreeTerm) -> Self {
        self.terms.extend(other.terms);
        self
    }

    fn mul(self, other: &FreeTerm) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ca, wa) in &self.terms {
            for (cb, wb) in &other.terms {
                let c = ca * cb;
                if c.is_zero() {
                    continue;
                }
                let mut w = wa.clone();
                for &(g, e) in wb {
                    push_letter(&mut w, g, e);
                }
                terms.push((c, w));
            }
        }
        FreeTerm {
            presentation: self.presentation,
            terms,
        }
    }

    /// Canonical rendering; `parse(render(t))` recovers `t` up to reordering
    /// and collection of summands.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (c, w)) in self.terms.iter().enumerate() {
            let (negative, body) = render_term(&self.presentation, c, w);
            if idx == 0 {
                if negative {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(if negative { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }
}

impl std::fmt::Display for FreeTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl std::fmt::Debug for FreeTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FreeTerm({})", self.render())
    }
}

fn push_letter(w: &mut Word, g: usize, e: i64) {
    if e == 0 {
        return;
    }
    match w.last_mut() {
        Some((lg, le)) if *lg == g => {
            *le += e;
            if *le == 0 {
                w.pop();
            }
        }
        _ => w.push((g, e)),
    }
}

/// Returns (sign to absorb into the sum separator, rendered magnitude).
fn render_term(p: &Presentation, c: &GaussianRational, w: &Word) -> (bool, String) {
    let word_str = p.word_string(w);
    if w.is_empty() {
        // standalone scalar: a leading '-' on a pure part is absorbed by the
        // separator, a genuinely complex scalar is emitted verbatim
        if c.is_real() {
            let neg = c.re() < &BigRational::zero();
            return (neg, trim_sign(&c.to_string()));
        }
        if c.re().is_zero() {
            let neg = c.im() < &BigRational::zero();
            return (neg, trim_sign(&c.to_string()));
        }
        return (false, c.to_string());
    }
    if c.is_one() {
        return (false, word_str);
    }
    if *c == GaussianRational::from_int(-1) {
        return (true, word_str);
    }
    if c.is_real() {
        let neg = c.re() < &BigRational::zero();
        return (neg, format!("{}*{}", trim_sign(&c.to_string()), word_str));
    }
    if c.re().is_zero() {
        let neg = c.im() < &BigRational::zero();
        let mag = trim_sign(&c.to_string());
        return (neg, format!("{mag}*{word_str}"));
    }
    (false, format!("({c})*{word_str}"))
}

fn trim_sign(s: &str) -> String {
    s.strip_prefix('-').unwrap_or(s).to_string()
}

// --- tokenizer and recursive-descent parser --------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Parser<'a> {
    tokens: Vec<(usize, Tok)>,
    cursor: usize,
    input_len: usize,
    alphabet: &'a Arc<Presentation>,
    lex_error: Option<ParseError>,
}

impl<'a> Parser<'a> {
    fn new(input: &str, alphabet: &'a Arc<Presentation>) -> Self {
        let mut tokens = Vec::new();
        let bytes = input.as_bytes();
        let mut pos = 0;
        let mut lex_error = None;
        while pos < bytes.len() {
            let b = bytes[pos];
            if b.is_ascii_whitespace() {
                pos += 1;
                continue;
            }
            let tok = match b {
                b'+' => Some(Tok::Plus),
                b'-' => Some(Tok::Minus),
                b'*' => Some(Tok::Star),
                b'/' => Some(Tok::Slash),
                b'^' => Some(Tok::Caret),
                b'(' => Some(Tok::LParen),
                b')' => Some(Tok::RParen),
                _ => None,
            };
            if let Some(t) = tok {
                tokens.push((pos, t));
                pos += 1;
                continue;
            }
            if b.is_ascii_digit() {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let n: BigInt = input[start..pos].parse().expect("digits");
                tokens.push((start, Tok::Num(n)));
                continue;
            }
            if b.is_ascii_alphabetic() {
                let start = pos;
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                tokens.push((start, Tok::Ident(input[start..pos].to_string())));
                continue;
            }
            lex_error = Some(err(pos, format!("unexpected character `{}`", b as char)));
            break;
        }
        Parser {
            tokens,
            cursor: 0,
            input_len: input.len(),
            alphabet,
            lex_error,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|(p, _)| *p)
            .unwrap_or(self.input_len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.cursor).map(|(_, t)| t.clone());
        self.cursor += 1;
        t
    }

    fn parse_all(mut self) -> Result<FreeTerm, ParseError> {
        if let Some(e) = self.lex_error.take() {
            return Err(e);
        }
        let value = self.expr()?;
        if self.cursor != self.tokens.len() {
            return Err(err(self.pos(), "trailing input"));
        }
        // flatten: collect like words so e.g. (3/5+4/5i)*E*F is one summand
        let terms = value.collected().into_iter().map(|(w, c)| (c, w)).collect();
        Ok(FreeTerm {
            presentation: Arc::clone(value.presentation()),
            terms,
        })
    }

    fn expr(&mut self) -> Result<FreeTerm, ParseError> {
        let mut negate = false;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                }
                Some(Tok::Minus) => {
                    negate = !negate;
                    self.bump();
                }
                _ => break,
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            let minus = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            acc = acc.add(if minus { rhs.neg() } else { rhs });
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<FreeTerm, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs);
                }
                _ if self.starts_factor() => {
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FreeTerm, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(err(self.pos(), "expected `)`")),
                }
            }
            Some(Tok::Num(n)) => {
                let mut value = BigRational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Tok::Num(d)) => {
                            if d.is_zero() {
                                return Err(err(dpos, "zero denominator"));
                            }
                            value /= BigRational::from_integer(d);
                        }
                        _ => return Err(err(dpos, "expected denominator")),
                    }
                }
                // a trailing `i` makes the rational imaginary
                if self.peek() == Some(&Tok::Ident("i".to_string())) {
                    self.bump();
                    return Ok(self.scalar_term(GaussianRational::new(BigRational::zero(), value)));
                }
                Ok(self.scalar_term(GaussianRational::new(value, BigRational::zero())))
            }
            Some(Tok::Ident(name)) => {
                if name == "i" {
                    return Ok(self.scalar_term(GaussianRational::i()));
                }
                let gen = self
                    .alphabet
                    .gen_index(&name)
                    .ok_or_else(|| err(pos, format!("unknown generator `{name}`")))?;
                let mut exp: i64 = 1;
                if self.peek() == Some(&Tok::Caret) {
                    self.bump();
                    let mut sign = 1i64;
                    if self.peek() == Some(&Tok::Minus) {
                        self.bump();
                        sign = -1;
                    }
                    let epos = self.pos();
                    match self.bump() {
                        Some(Tok::Num(n)) => {
                            let mag: i64 = n
                                .try_into()
                                .map_err(|_| err(epos, "exponent out of range"))?;
                            exp = sign * mag;
                        }
                        _ => return Err(err(epos, "expected exponent")),
                    }
                }
                if exp < 0 && !self.alphabet.is_laurent(gen) {
                    return Err(err(
                        pos,
                        format!(
                            "negative power on non-Laurent generator `{}`",
                            self.alphabet.symbol(gen)
                        ),
                    ));
                }
                let word: Word = if exp == 0 {
                    Vec::new()
                } else {
                    vec![(gen, exp)]
                };
                Ok(FreeTerm {
                    presentation: Arc::clone(self.alphabet),
                    terms: vec![(GaussianRational::one(), word)],
                })
            }
            _ => Err(err(pos, "expected a scalar, generator, or `(`")),
        }
    }

    fn scalar_term(&self, c: GaussianRational) -> FreeTerm {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(c, Vec::new())]
        };
        FreeTerm {
            presentation: Arc::clone(self.alphabet),
            terms,
        }
    }
}

/// Render then parse is the identity up to reordering of summands; this is
/// exposed for tests and verification suites.
pub fn round_trip_ok(t: &FreeTerm) -> bool {
    match FreeTerm::parse(&t.render(), t.presentation()) {
        Ok(back) => back.equivalent(t),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, BuiltinName};
    use crate::coeff::GaussianRational;

    fn jordanian() -> Arc<Presentation> {
        builtin(BuiltinName::Jordanian, None).unwrap()
    }

    fn uq() -> Arc<Presentation> {
        builtin(
            BuiltinName::UqSl2,
            Some(GaussianRational::from_parts(3, 5, 4, 5)),
        )
        .unwrap()
    }

    #[test]
    fn single_word() {
        let t = FreeTerm::parse("y*x", &jordanian()).unwrap();
        let parts: Vec<_> = t.parts().collect();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].1, vec![(1, 1), (0, 1)]);
        assert!(parts[0].0.is_one());
    }

    #[test]
    fn laurent_negative_power() {
        let t = FreeTerm::parse("K^-2*F*E", &uq()).unwrap();
        let parts: Vec<_> = t.parts().collect();
        assert_eq!(parts[0].1, vec![(0, -2), (1, 1), (2, 1)]);
    }

    #[test]
    fn weighted_words() {
        let t = FreeTerm::parse("(3/5+4/5i)*E*F - F*E", &uq()).unwrap();
        let parts: Vec<_> = t.parts().collect();
        assert_eq!(parts.len(), 2);
        // terms come out sorted by word: F*E before E*F
        assert_eq!(parts[0].0, GaussianRational::from_int(-1));
        assert_eq!(parts[0].1, vec![(1, 1), (2, 1)]);
        assert_eq!(parts[1].0, GaussianRational::from_parts(3, 5, 4, 5));
        assert_eq!(parts[1].1, vec![(2, 1), (1, 1)]);
    }

    #[test]
    fn render_examples() {
        let p = jordanian();
        let t = FreeTerm::from_parts(&p, vec![(GaussianRational::one(), vec![(0, 1), (1, 2)])]);
        assert_eq!(t.render(), "x*y^2");
        let zero = FreeTerm::from_parts(&p, vec![]);
        assert_eq!(zero.render(), "0");
        let neg_kinv =
            FreeTerm::from_parts(&uq(), vec![(GaussianRational::from_int(-1), vec![(0, -1)])]);
        assert_eq!(neg_kinv.render(), "-K^-1");
    }

    #[test]
    fn power_zero_is_eliminated() {
        let p = jordanian();
        let t = FreeTerm::parse("x^0*y", &p).unwrap();
        let u = FreeTerm::parse("y", &p).unwrap();
        assert!(t.equivalent(&u));
    }

    #[test]
    fn juxtaposition_is_product() {
        let p = jordanian();
        assert!(FreeTerm::parse("2x y", &p)
            .unwrap()
            .equivalent(&FreeTerm::parse("2*x*y", &p).unwrap()));
    }

    #[test]
    fn errors_carry_positions() {
        let p = jordanian();
        let e = FreeTerm::parse("x*z", &p).unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(e.msg.contains("unknown generator"));
        let e = FreeTerm::parse("x^-1", &p).unwrap_err();
        assert!(e.msg.contains("non-Laurent"));
        let e = FreeTerm::parse("x*", &p).unwrap_err();
        assert_eq!(e.pos, 2);
        let e = FreeTerm::parse("x?y", &p).unwrap_err();
        assert_eq!(e.pos, 1);
    }

    #[test]
    fn round_trips() {
        let p = uq();
        for s in [
            "K^-2*F*E",
            "F*E - 5/8i*K + 5/8i*K^-1",
            "(3/5+4/5i)*E*F - F*E",
            "1",
            "0",
            "-K^-1",
            "2i*F - 7/3*E",
        ] {
            let t = FreeTerm::parse(s, &p).unwrap();
            assert!(
                round_trip_ok(&t),
                "round trip failed for `{s}` -> `{}`",
                t.render()
            );
        }
    }
}
