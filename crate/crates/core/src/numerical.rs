//! Univariate numerical polynomials `p(t)` with rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `p(t) = sum c_k t^k`, coefficients stored low to high with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Exact binomial coefficient, extended to negative `a` through the falling factorial.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if a >= 0 && a < b {
        return BigInt::zero();
    }
    let b = if a >= 0 { b.min(a - b) } else { b };
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b {
        num *= BigInt::from(a - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

impl IntegerPolynomial {
    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![rat(c)])
    }

    /// `a t + b`.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_coeffs(vec![rat(b), rat(a)])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Value at an integer point; errors if it is not an integer.
    pub fn eval_int(&self, t: i64) -> Result<BigInt> {
        let v = self.eval(&rat(t));
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::NotNumerical(self.to_string()))
        }
    }

    /// Value at `t` as `i64`, for small bookkeeping quantities.
    pub fn eval_i64(&self, t: i64) -> Result<i64> {
        self.eval_int(t)?
            .to_i64()
            .ok_or_else(|| Error::Invalid(format!("value of {self} at {t} overflows")))
    }

    /// Integer-valued at `deg + 1` consecutive integers, hence everywhere.
    pub fn is_numerical(&self) -> bool {
        let d = self.degree().unwrap_or(0) as i64;
        (0..=d).all(|t| self.eval(&rat(t)).is_integer())
    }

    /// `C(t + shift, k)` as a polynomial in `t`.
    pub fn binomial_in_t(shift: i64, k: usize) -> Self {
        let mut p = IntegerPolynomial::constant(1);
        for i in 0..k as i64 {
            // (t + shift - i) / (i + 1)
            let factor = IntegerPolynomial::from_coeffs(vec![
                BigRational::new(BigInt::from(shift - i), BigInt::from(i + 1)),
                BigRational::new(BigInt::one(), BigInt::from(i + 1)),
            ]);
            p = p.mul(&factor);
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        let coeffs = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    fn pow(&self, e: u32) -> Self {
        let mut p = IntegerPolynomial::constant(1);
        for _ in 0..e {
            p = p.mul(self);
        }
        p
    }

    /// Lagrange interpolation through `(t_i, v_i)`.
    pub fn interpolate(points: &[(i64, BigInt)]) -> Self {
        let mut out = IntegerPolynomial::zero();
        for (i, (ti, vi)) in points.iter().enumerate() {
            let mut basis = IntegerPolynomial::constant(1);
            let mut denom = BigRational::one();
            for (j, (tj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&IntegerPolynomial::linear(1, -tj));
                    denom *= rat(ti - tj);
                }
            }
            let c = BigRational::from_integer(vi.clone()) / denom;
            out = out.add(&basis.scale(&c));
        }
        out
    }

    /// Parse `2*t+2`, `2t+2`, `(t^2+3*t+2)/2`, `5`, ...
    pub fn parse(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut parser = Parser { tokens, pos: 0 };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!("trailing input in '{s}'")));
        }
        Ok(p)
    }

    /// Coefficients as `"num/den"` strings, low to high.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings(v: &[String]) -> Result<Self> {
        v.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(Self::from_coeffs)
    }
}

/// Parse `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `num/den`, or just `num` for integers.
pub fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut body = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let v = (c * BigRational::from_integer(den.clone())).to_integer();
            let neg = v.is_negative();
            let a = v.abs();
            if body.is_empty() {
                if neg {
                    body.push('-');
                }
            } else {
                body.push(if neg { '-' } else { '+' });
            }
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                body.push_str(&a.to_string());
            } else if a.is_one() {
                body.push_str(&var);
            } else {
                body.push_str(&format!("{a}*{var}"));
            }
        }
        if den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

impl fmt::Debug for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for IntegerPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        Self::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            't' => out.push(Token::T),
            '+' => out.push(Token::Plus),
            '-' => out.push(Token::Minus),
            '*' => out.push(Token::Star),
            '/' => out.push(Token::Slash),
            '^' => out.push(Token::Caret),
            '(' => out.push(Token::LParen),
            ')' => out.push(Token::RParen),
            d if d.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                out.push(Token::Num(digits.parse().expect("digits")));
            }
            other => return Err(Error::Parse(format!("unexpected '{other}' in '{s}'"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<IntegerPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<IntegerPolynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.degree() != Some(0) {
                        return Err(Error::Parse("division by a non-constant or zero".into()));
                    }
                    acc = acc.scale(&d.leading_coefficient().recip());
                }
                // implicit multiplication: `2t`, `3(t+1)`
                Some(Token::T) | Some(Token::LParen) | Some(Token::Num(_)) => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<IntegerPolynomial> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.scale(&rat(-1)));
        }
        if self.peek() == Some(&Token::Plus) {
            self.pos += 1;
        }
        self.power()
    }

    fn power(&mut self) -> Result<IntegerPolynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Token::Num(e)) => {
                    let e = e
                        .to_u32()
                        .filter(|&e| e <= 64)
                        .ok_or_else(|| Error::Parse("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::Parse("expected integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<IntegerPolynomial> {
        match self.next() {
            Some(Token::Num(v)) => Ok(IntegerPolynomial::from_coeffs(vec![BigRational::from_integer(v)])),
            Some(Token::T) => Ok(IntegerPolynomial::linear(1, 0)),
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(e),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            Some(other) => Err(Error::Parse(format!("unexpected token {other:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}
