use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Hard cap on polynomial degrees accepted from the outside world.
pub const MAX_DEGREE: usize = 64;

/// Dense univariate polynomial with arbitrary-precision integer coefficients,
/// stored in ascending order of degree without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `c·X^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `X - a`.
    pub fn linear(a: i64) -> Self {
        Self::from_i64(&[-a, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Sign of the value at a rational point, as -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        // Homogenised Horner: sum c_i n^i d^(deg-i) has the sign of f(n/d) for d > 0.
        let n = x.numer();
        let d = x.denom();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        sign(&acc)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and normalises the leading coefficient to be positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// `X^deg · f(1/X)`.
    pub fn reversed(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// `f(-X)`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `f(X + a)` by repeated synthetic division.
    pub fn shift(&self, a: &BigInt) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// Division with remainder by a monic divisor.
    pub fn div_rem_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.deg();
        if self.deg() < dd || self.is_zero() {
            return (Self::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = std::mem::take(&mut r[i + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs[..dd].iter().enumerate() {
                r[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Exact division over ℤ; `None` if the divisor does not divide.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = d.deg();
        if self.deg() < dd {
            return None;
        }
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let top = std::mem::take(&mut r[i + dd]);
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dj) in d.coeffs[..dd].iter().enumerate() {
                r[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    /// Pseudo-remainder: the remainder of `lc(d)^(deg self - deg d + 1) · self` by `d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero());
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return self.clone();
        }
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut e = self.deg() - dd + 1;
        while !r.is_empty() && r.len() > dd {
            let top = r.len() - 1;
            let c = r[top].clone();
            for v in r.iter_mut() {
                *v *= &lc;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[top - dd + j] -= &c * dj;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            e -= 1;
        }
        let f = num_traits::pow(lc, e);
        Self::new(r.into_iter().map(|v| v * &f).collect())
    }

    /// Monic-normalised gcd over ℚ, returned as a primitive integer polynomial
    /// with positive leading coefficient.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.primitive_part();
        let mut y = b.primitive_part();
        if x.deg() < y.deg() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            let r = x.pseudo_rem(&y);
            x = y;
            y = r.primitive_part();
        }
        x.primitive_part()
    }

    /// Checks the degree guard rail.
    pub fn check_degree(&self) -> Result<()> {
        if self.deg() > MAX_DEGREE {
            return Err(Error::Domain(format!(
                "degree {} exceeds the supported maximum {MAX_DEGREE}",
                self.deg()
            )));
        }
        Ok(())
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Renders as `coeffs:c0,c1,...`.
    pub fn to_coeffs_string(&self) -> String {
        if self.is_zero() {
            return "coeffs:0".into();
        }
        let body: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        format!("coeffs:{}", body.join(","))
    }
}

pub(crate) fn sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl Ord for IntPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for IntPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPolynomial::new(v)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: &IntPolynomial) -> IntPolynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl std::iter::Product for IntPolynomial {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(IntPolynomial::one(), |a, b| &a * &b)
    }
}

/// Writes terms in descending order, e.g. `X^4 - X^2 + 1`, `-2X + 3`.
pub(crate) fn write_terms<C, F>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[C],
    is_zero: impl Fn(&C) -> bool,
    split: F,
) -> fmt::Result
where
    F: Fn(&C) -> (bool, String, bool),
{
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if is_zero(c) {
            continue;
        }
        // (negative, magnitude text, magnitude is one)
        let (neg, mag, unit) = split(c);
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        match k {
            0 => f.write_str(&mag)?,
            _ => {
                if !unit {
                    f.write_str(&mag)?;
                }
                f.write_str("X")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, Zero::is_zero, |c| {
            (c.is_negative(), c.abs().to_string(), c.abs().is_one())
        })
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

fn parse_err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}

/// Parses either `coeffs:c0,c1,...,cn` or the display form.
pub fn parse_polynomial(text: &str) -> Result<IntPolynomial> {
    let trimmed = text.trim_start();
    let offset = text.len() - trimmed.len();
    let poly = if let Some(rest) = trimmed.strip_prefix("coeffs:") {
        parse_coeff_list(rest, offset + "coeffs:".len())?
    } else {
        parse_display(text)?
    };
    poly.check_degree()?;
    Ok(poly)
}

fn parse_coeff_list(body: &str, base: usize) -> Result<IntPolynomial> {
    let mut coeffs = Vec::new();
    let mut pos = base;
    for piece in body.split(',') {
        let t = piece.trim().replace('\u{2212}', "-");
        if t.is_empty() {
            return parse_err(pos, "empty coefficient");
        }
        match BigInt::from_str(&t) {
            Ok(c) => coeffs.push(c),
            Err(_) => return parse_err(pos, format!("invalid integer '{}'", piece.trim())),
        }
        pos += piece.len() + 1;
    }
    Ok(IntPolynomial::new(coeffs))
}

#[derive(Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    Caret,
    Plus,
    Minus,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push((pos, Tok::Minus));
                i += 1;
            }
            '^' => {
                out.push((pos, Tok::Caret));
                i += 1;
            }
            'X' | 'x' => {
                out.push((pos, Tok::X));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((pos, Tok::Int(BigInt::from_str(&digits).unwrap())));
            }
            other => return parse_err(pos, format!("unexpected character '{other}'")),
        }
    }
    Ok(out)
}

fn parse_display(text: &str) -> Result<IntPolynomial> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return parse_err(0, "empty polynomial");
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut i = 0;
    let end = text.len();
    let mut first = true;
    while i < toks.len() {
        let mut negative = false;
        match toks[i].1 {
            Tok::Plus | Tok::Minus => {
                negative = toks[i].1 == Tok::Minus;
                i += 1;
            }
            _ if !first => return parse_err(toks[i].0, "expected '+' or '-'"),
            _ => {}
        }
        first = false;
        let term_pos = toks.get(i).map_or(end, |t| t.0);
        let mut coeff: Option<BigInt> = None;
        if let Some((_, Tok::Int(v))) = toks.get(i) {
            coeff = Some(v.clone());
            i += 1;
        }
        let mut power = 0usize;
        if let Some((_, Tok::X)) = toks.get(i) {
            i += 1;
            power = 1;
            if let Some((cpos, Tok::Caret)) = toks.get(i) {
                i += 1;
                match toks.get(i) {
                    Some((ppos, Tok::Int(e))) => {
                        power = match e.to_usize() {
                            Some(p) if p <= MAX_DEGREE => p,
                            _ => return parse_err(*ppos, "exponent out of range"),
                        };
                        i += 1;
                    }
                    _ => return parse_err(*cpos + 1, "expected exponent after '^'"),
                }
            }
        } else if coeff.is_none() {
            return parse_err(term_pos, "expected a term");
        }
        let mut c = coeff.unwrap_or_else(BigInt::one);
        if negative {
            c = -c;
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::zero());
        }
        coeffs[power] += c;
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// The integer polynomial with the same coefficients, if all are integral.
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::new)
    }
}

impl From<&IntPolynomial> for RatPolynomial {
    fn from(p: &IntPolynomial) -> Self {
        RatPolynomial::new(
            p.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, Zero::is_zero, |c| {
            let a = c.abs();
            let text = if a.is_integer() {
                a.to_integer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            (c.is_negative(), text, a.is_one())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "X^4 - X^2 + 1",
            "X - 1",
            "-X + 2",
            "2X^3 - X",
            "0",
            "-7",
            "X",
        ] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn coeff_form_matches_display_form() {
        assert_eq!(p("coeffs:1,0,-1,0,1"), p("X^4 - X^2 + 1"));
        assert_eq!(p("coeffs:-1,1"), IntPolynomial::linear(1));
        assert_eq!(p("x^2 + x^2"), p("2X^2"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match "X^ + 1".parse::<IntPolynomial>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        match "X + y".parse::<IntPolynomial>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!("coeffs:1,,2".parse::<IntPolynomial>().is_err());
        assert!("X^65".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn division_and_gcd() {
        let f = p("X^4 - 1");
        let (q, r) = f.div_rem_monic(&p("X - 1"));
        assert_eq!(q, p("X^3 + X^2 + X + 1"));
        assert!(r.is_zero());
        assert_eq!(f.exact_div(&p("2X + 2")), None);
        assert_eq!(p("4X^2 - 4").exact_div(&p("2X + 2")), Some(p("2X - 2")));
        let g = IntPolynomial::gcd(&p("X^4 - 1"), &p("X^3 - X^2 + X - 1"));
        assert_eq!(g, p("X^3 - X^2 + X - 1"));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = p("3X^5 + X^3 - 2X + 7");
        let b = p("2X^2 + X - 1");
        let r = a.pseudo_rem(&b);
        // lc(b)^(5-2+1) a - r must be divisible by b
        let lhs = a.scale(&BigInt::from(16)) - r.clone();
        assert!(lhs.exact_div(&b).is_some());
        assert!(r.deg() < 2);
    }

    #[test]
    fn shift_and_sign() {
        assert_eq!(p("X^2").shift(&BigInt::from(1)), p("X^2 + 2X + 1"));
        let q = BigRational::new(BigInt::from(3), BigInt::from(2));
        assert_eq!(p("X^2 - 2").sign_at(&q), 1);
        assert_eq!(p("X^2 - 3").sign_at(&q), -1);
    }
}
