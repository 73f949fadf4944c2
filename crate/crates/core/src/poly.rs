//! Dense univariate polynomials in `q` with arbitrary-precision rational
//! coefficients.
//!
//! Every count produced by this crate is a [`QPoly`]. Coefficients are kept
//! as [`BigRational`] so that necklace polynomials and type counts can pass
//! through non-integral intermediate values; [`QPoly::is_integral`] is checked
//! wherever the result is known to be an integer polynomial.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A polynomial in the formal variable `q`.
///
/// `coeffs[i]` is the coefficient of `q^i`; the vector never ends in a zero,
/// so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

/// Ring operation selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Applies `op` to `p` and `r`.
pub fn arith(p: &QPoly, r: &QPoly, op: ArithOp) -> QPoly {
    match op {
        ArithOp::Add => p + r,
        ArithOp::Sub => p - r,
        ArithOp::Mul => p * r,
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(int(1), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(int(c))
    }

    /// `c * q^deg`.
    pub fn monomial(c: BigRational, deg: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    /// `q^deg`.
    pub fn q_pow(deg: usize) -> Self {
        Self::monomial(int(1), deg)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// Ascending integer coefficients, e.g. `from_ints(&[2, 1])` is `q + 2`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `q^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Integer coefficients, or `None` if some coefficient is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder of long division by a nonzero `den`.
    fn div_rem(&self, den: &QPoly) -> (QPoly, QPoly) {
        let dd = den.degree().expect("division by the zero polynomial");
        let lead = den.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return (QPoly::zero(), self.clone());
        };
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in den.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        (QPoly::from_coeffs(quot), QPoly::from_coeffs(rem))
    }

    /// `self / den`, failing unless the division is exact.
    pub fn exact_div(&self, den: &QPoly) -> Result<QPoly> {
        if den.is_zero() {
            return Err(Error::NonExactDivision {
                num: self.to_string(),
                den: "0".into(),
            });
        }
        let (quot, rem) = self.div_rem(den);
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::NonExactDivision {
                num: self.to_string(),
                den: den.to_string(),
            })
        }
    }

    /// `p(q^d)`: the coefficient of `q^i` moves to `q^(i*d)`.
    pub fn compose_power(&self, d: usize) -> QPoly {
        assert!(d >= 1, "compose_power needs d >= 1");
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); (self.coeffs.len() - 1) * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * d] = c.clone();
        }
        QPoly { coeffs }
    }

    /// Exact value at an integer point (Horner).
    pub fn eval(&self, q0: &BigInt) -> BigRational {
        let x = BigRational::from_integer(q0.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Exact value at `q0`. Callers that need an integer check the result.
    pub fn eval_int(&self, q0: u64) -> BigRational {
        self.eval(&BigInt::from(q0))
    }

    /// Value at `q0` as an integer; `None` if it is fractional.
    pub fn eval_integer(&self, q0: u64) -> Option<BigInt> {
        let v = self.eval_int(q0);
        v.is_integer().then(|| v.to_integer())
    }

    /// Expands `q^exponent * prod_j (1 - q^(-m_j))` into an ordinary polynomial.
    pub fn laurent_product(exponent: u64, factors: &[u32]) -> Result<QPoly> {
        let total: u64 = factors.iter().map(|&m| u64::from(m)).sum();
        if total > exponent {
            return Err(Error::NegativeExponent {
                exponent,
                factors: total,
            });
        }
        // Expand prod (q^m - 1) then shift by exponent - sum m.
        let mut acc = QPoly::one();
        for &m in factors {
            let mut f = vec![BigRational::zero(); m as usize + 1];
            f[0] = int(-1);
            f[m as usize] = int(1);
            acc = &acc * &QPoly::from_coeffs(f);
        }
        Ok(acc.shift((exponent - total) as usize))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> QPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Falling factorial `p (p - 1) ... (p - j + 1)`.
    pub fn falling_factorial(&self, j: u32) -> QPoly {
        (0..j).fold(QPoly::one(), |acc, i| {
            &acc * &(self - &QPoly::from_int(i64::from(i)))
        })
    }

    /// LaTeX rendering, descending powers (`q^{15} + 2q^2 - q + 1`).
    pub fn to_latex(&self) -> String {
        self.render(Style::Latex)
    }

    /// Pulls out powers of `q` and `(q - 1)`, e.g. `(q - 1)^2 q^11`.
    pub fn factored(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut rest = self.clone();
        let mut q_pow = 0usize;
        while rest.coeffs.first().is_some_and(Zero::is_zero) {
            rest.coeffs.remove(0);
            q_pow += 1;
        }
        let q_minus_one = QPoly::from_ints(&[-1, 1]);
        let mut qm1_pow = 0usize;
        while rest.degree().unwrap_or(0) > 0 && rest.eval_int(1).is_zero() {
            rest = rest.div_rem(&q_minus_one).0;
            qm1_pow += 1;
        }
        let mut parts = Vec::new();
        let rest_is_one = rest.is_one();
        if !rest_is_one {
            if rest.coeffs.len() == 1 {
                parts.push(rest.to_string());
            } else {
                parts.push(format!("({rest})"));
            }
        }
        match qm1_pow {
            0 => {}
            1 => parts.push("(q - 1)".into()),
            k => parts.push(format!("(q - 1)^{k}")),
        }
        match q_pow {
            0 => {}
            1 => parts.push("q".into()),
            k => parts.push(format!("q^{k}")),
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn render(&self, style: Style) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            if d == 0 {
                out.push_str(&style.coeff(&a));
                continue;
            }
            if !a.is_one() {
                out.push_str(&style.coeff(&a));
            }
            out.push('q');
            if d > 1 {
                match style {
                    Style::Latex if d >= 10 => out.push_str(&format!("^{{{d}}}")),
                    _ => out.push_str(&format!("^{d}")),
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Style {
    Text,
    Latex,
}

impl Style {
    fn coeff(self, a: &BigRational) -> String {
        if a.is_integer() {
            return a.to_integer().to_string();
        }
        match self {
            Style::Text => format!("({}/{})", a.numer(), a.denom()),
            Style::Latex => format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom()),
        }
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Text))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: &QPoly) -> QPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for QPoly {
    fn product<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::one(), |acc, p| &acc * &p)
    }
}

/// JSON encoding of one coefficient: a number when it is an integer that
/// fits in `i64`, otherwise a string (`"123456789012345678901"` or `"3/2"`).
pub(crate) fn coeff_to_json(c: &BigRational) -> serde_json::Value {
    if c.is_integer() {
        if let Some(v) = c.to_integer().to_i64() {
            return serde_json::Value::from(v);
        }
        return serde_json::Value::from(c.to_integer().to_string());
    }
    serde_json::Value::from(format!("{}/{}", c.numer(), c.denom()))
}

pub(crate) fn coeff_from_json(v: &serde_json::Value) -> std::result::Result<BigRational, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(int)
            .ok_or_else(|| format!("coefficient {n} is not an integer")),
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(format!("bad coefficient {other}")),
    }
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let parse = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| format!("bad coefficient {s:?}: {e}"))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

impl QPoly {
    pub fn to_json_coeffs(&self) -> Vec<serde_json::Value> {
        self.coeffs.iter().map(coeff_to_json).collect()
    }

    pub fn from_json_coeffs(vals: &[serde_json::Value]) -> Result<QPoly> {
        vals.iter()
            .map(coeff_from_json)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(QPoly::from_coeffs)
            .map_err(Error::Parse)
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("QPoly", 1)?;
        st.serialize_field("coeffs", &self.to_json_coeffs())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            coeffs: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(deserializer)?;
        QPoly::from_json_coeffs(&raw.coeffs).map_err(de::Error::custom)
    }
}
