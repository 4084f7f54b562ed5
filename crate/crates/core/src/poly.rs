//! Exact Laurent polynomials in `q` with integer coefficients.
//!
//! Every scalar that shows up in a commutation relation lives in
//! `Z[q, q^-1]`, so this is the only coefficient ring the crate needs.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// An element of `Z[q, q^-1]`.
///
/// Stored densely from the lowest nonzero exponent upward. The first and last
/// stored coefficients are never zero, and the zero polynomial has no
/// coefficients at all, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: e,
            coeffs: vec![c],
        }
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// `(-q)^e`.
    pub fn neg_q_pow(e: i32) -> Self {
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(sign, e)
    }

    /// The ubiquitous `q^-1 - q`.
    pub fn q_inv_minus_q() -> Self {
        Self::from_terms([(-1, BigInt::from(1)), (1, BigInt::from(-1))])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out += &Self::monomial(c, e);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient, `None` for zero.
    pub fn min_exponent(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exponent(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    /// Coefficient of `q^e` (zero when absent).
    pub fn coeff(&self, e: i32) -> BigInt {
        let idx = e as i64 - self.low as i64;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            return BigInt::zero();
        }
        self.coeffs[idx as usize].clone()
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    /// Value at `q = 1`, i.e. the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + e,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Inverse of a unit `±q^e`; `None` for anything else.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let c = &self.coeffs[0];
        if c.magnitude() != &num_bigint::BigUint::from(1u32) {
            return None;
        }
        Some(Self {
            low: -self.low,
            coeffs: vec![c.clone()],
        })
    }

    /// `self / d` when the quotient lies in `Z[q, q^-1]`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dlen = d.coeffs.len();
        if self.coeffs.len() < dlen {
            return None;
        }
        let dlead = d.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dlen - 1];
            if top.is_zero() {
                continue;
            }
            if !(top % dlead).is_zero() {
                return None;
            }
            let c = top / dlead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut out = Self {
            low: self.low - d.low,
            coeffs: quot,
        };
        out.normalize();
        Some(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
    }

    fn add_scaled(&mut self, other: &LaurentPoly, negate: bool) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = if negate { -other } else { other.clone() };
            return;
        }
        let lo = self.low.min(other.low);
        let hi = self
            .max_exponent()
            .unwrap()
            .max(other.max_exponent().unwrap());
        if lo < self.low {
            let pad = (self.low - lo) as usize;
            self.coeffs
                .splice(0..0, std::iter::repeat_n(BigInt::zero(), pad));
            self.low = lo;
        }
        let len = (hi - lo + 1) as usize;
        self.coeffs.resize(len, BigInt::zero());
        let off = (other.low - self.low) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            if negate {
                self.coeffs[off + i] -= c;
            } else {
                self.coeffs[off + i] += c;
            }
        }
        self.normalize();
    }

    /// The JSON form: `[[exponent, "coefficient"], ...]` sorted by exponent.
    pub fn to_json_pairs(&self) -> Vec<(i32, String)> {
        self.terms().map(|(e, c)| (e, c.to_string())).collect()
    }

    pub fn from_json_pairs(pairs: &[(i32, String)]) -> Result<Self, ParseError> {
        let mut out = Self::zero();
        for (e, c) in pairs {
            let c: BigInt = c
                .trim()
                .parse()
                .map_err(|_| ParseError::new(format!("bad coefficient `{c}`")))?;
            out += &Self::monomial(c, *e);
        }
        Ok(out)
    }

    /// LaTeX rendering, e.g. `-2q^{-1} + 3 + q^{2}`.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => out.push_str(&mag.to_string()),
                (_, true) => {}
                (_, false) => out.push_str(&mag.to_string()),
            }
            match e {
                0 => {}
                1 => out.push('q'),
                _ => out.push_str(&format!("q^{{{e}}}")),
            }
        }
        out
    }

    /// Small-integer view of the coefficient of `q^e`, for tests and display.
    pub fn coeff_i64(&self, e: i32) -> Option<i64> {
        self.coeff(e).to_i64()
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical text form: terms in increasing exponent order, e.g.
    /// `-2*q^-1 + 3 + q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = ParseError;

    /// Accepts the canonical text form and general expressions built from
    /// integers and `q` with `+`, `-`, `*` (or juxtaposition), parentheses
    /// and integer powers, e.g. `-(q^-1 - q)^2 (1 + q^-2)`. Negative powers
    /// of a parenthesized factor are allowed only for units `±q^e`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: Vec<u8> = s.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseError::new("empty polynomial"));
        }
        let mut p = PolyParser {
            src: s,
            bytes: &compact,
            pos: 0,
        };
        let out = p.expr()?;
        if p.pos != compact.len() {
            return Err(p.error());
        }
        Ok(out)
    }
}

struct PolyParser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn error(&self) -> ParseError {
        ParseError::new(format!("bad polynomial `{}`", self.src.trim()))
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut out = LaurentPoly::zero();
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Ok(out),
            };
            let t = self.product()?;
            if negate {
                out -= &t;
            } else {
                out += &t;
            }
            first = false;
        }
    }

    fn product(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut out = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b'(' | b'q') => {}
                _ => return Ok(out),
            }
            out = &out * &self.power()?;
        }
    }

    fn power(&mut self) -> Result<LaurentPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let braced = self.peek() == Some(b'{');
        if braced {
            self.pos += 1;
        }
        let e = self.integer(true)?;
        if braced {
            if self.peek() != Some(b'}') {
                return Err(self.error());
            }
            self.pos += 1;
        }
        let e: i32 = e.to_i32().ok_or_else(|| self.error())?;
        if e >= 0 {
            return Ok(base.pow(e as u32));
        }
        let inv = base.unit_inverse().ok_or_else(|| self.error())?;
        Ok(inv.pow(e.unsigned_abs()))
    }

    fn atom(&mut self) -> Result<LaurentPoly, ParseError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(LaurentPoly::q_pow(1))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(LaurentPoly::constant(self.integer(false)?)),
            _ => Err(self.error()),
        }
    }

    fn integer(&mut self, signed: bool) -> Result<BigInt, ParseError> {
        let start = self.pos;
        if signed && matches!(self.peek(), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.error())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(i32, String)>::deserialize(d)?;
        LaurentPoly::from_json_pairs(&pairs).map_err(D::Error::custom)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, true);
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut out = LaurentPoly {
            low: self.low + rhs.low,
            coeffs,
        };
        out.normalize();
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, x| acc + x)
    }
}

/// `a + b`.
pub fn poly_add(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a + b
}

/// `a * b`.
pub fn poly_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a * b
}

/// Sum of coefficients, the specialization `q = 1`.
pub fn poly_eval_at_one(a: &LaurentPoly) -> BigInt {
    a.eval_at_one()
}

/// `(-q)^e`.
pub fn neg_q_power(e: i32) -> LaurentPoly {
    LaurentPoly::neg_q_pow(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn additive_inverse_and_identity() {
        let x = LaurentPoly::q_inv_minus_q();
        assert!(poly_add(&x, &p("q - q^-1")).is_zero());
        assert_eq!(poly_add(&LaurentPoly::zero(), &x), x);
    }

    #[test]
    fn doubling_merges_terms() {
        let x = LaurentPoly::q_inv_minus_q();
        assert_eq!(poly_add(&x, &x), p("2*q^-1 - 2*q"));
    }

    #[test]
    fn products() {
        let x = LaurentPoly::q_inv_minus_q();
        assert_eq!(poly_mul(&x, &x), p("q^-2 - 2 + q^2"));
        assert!(poly_mul(&LaurentPoly::q_pow(-5), &LaurentPoly::q_pow(5)).is_one());
        assert!(poly_mul(&neg_q_power(-1), &neg_q_power(1)).is_one());
    }

    #[test]
    fn evaluation_at_one() {
        assert_eq!(
            poly_eval_at_one(&LaurentPoly::q_inv_minus_q()),
            BigInt::zero()
        );
        assert_eq!(poly_eval_at_one(&LaurentPoly::q_pow(-3)), BigInt::one());
        assert_eq!(poly_eval_at_one(&p("q^-2 - 2 + q^2")), BigInt::zero());
    }

    #[test]
    fn negative_q_powers() {
        assert!(neg_q_power(0).is_one());
        assert_eq!(neg_q_power(-1), p("-q^-1"));
        assert_eq!(neg_q_power(2), p("q^2"));
        assert_eq!(neg_q_power(-3), p("-q^-3"));
    }

    #[test]
    fn canonical_text_form() {
        let x = LaurentPoly::from_terms([(2, 1), (-1, -2), (0, 3)]);
        assert_eq!(x.to_string(), "-2*q^-1 + 3 + q^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("q").to_string(), "q");
        assert_eq!(p("-1").to_string(), "-1");
    }

    #[test]
    fn parse_expressions() {
        let a = LaurentPoly::q_inv_minus_q();
        let expected = &(&a * &a) * &p("1 + q^-2");
        assert_eq!(p("(q^-1 - q)^2(1 + q^-2)"), expected);
        assert_eq!(p("(q^-1-q)^{2} * (1+q^{-2})"), expected);
        assert_eq!(p("-q^-1 (q^-1 - q)"), p("-q^-2 + 1"));
        assert_eq!(p("(-q)^-3"), LaurentPoly::neg_q_pow(-3));
        assert_eq!(p("2q^3 - 3"), LaurentPoly::from_terms([(3, 2), (0, -3)]));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("2*x".parse::<LaurentPoly>().is_err());
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("(1 + q)^-1".parse::<LaurentPoly>().is_err());
        assert!("(q".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_pairs() {
        let x = p("-2*q^-1 + 3 + q^2");
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, r#"[[-1,"-2"],[0,"3"],[2,"1"]]"#);
        let back: LaurentPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let x = p("3*q + 7");
        let big = x.pow(60);
        assert!(big.coeff(30) > BigInt::from(u64::MAX));
    }

    #[test]
    fn latex() {
        assert_eq!(p("q^-1 - q").to_latex(), "q^{-1} - q");
        assert_eq!(p("-2*q^-1 + 3").to_latex(), "-2q^{-1} + 3");
    }
}
