//! Scalar field elements: exact rationals or fixed-precision binary floats.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Field in which all coefficients of a computation live.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float { precision: u32 },
}

impl Mode {
    pub const DEFAULT_PRECISION: u32 = 256;
    pub const MIN_PRECISION: u32 = 64;

    pub fn float(precision: u32) -> Result<Mode> {
        if precision < Self::MIN_PRECISION {
            return Err(Error::invalid(
                "precision",
                format!("{precision} bits is below the minimum of {}", Self::MIN_PRECISION),
            ));
        }
        Ok(Mode::Float { precision })
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Mode::Exact)
    }

    pub fn precision(self) -> Option<u32> {
        match self {
            Mode::Exact => None,
            Mode::Float { precision } => Some(precision),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float { precision } => write!(f, "float({precision})"),
        }
    }
}

/// A scalar in the active field.
///
/// Exact values are `rug::Rational`, which is always canonical (lowest terms,
/// positive denominator). Float values carry their own precision. Binary
/// operations on two floats round to the smaller precision; an exact operand
/// meeting a float operand is converted to the float's precision.
#[derive(Debug, Clone)]
pub enum Coefficient {
    Exact(Rational),
    Float(Float),
}

impl Coefficient {
    pub fn zero(mode: Mode) -> Self {
        Self::from_i64(0, mode)
    }

    pub fn one(mode: Mode) -> Self {
        Self::from_i64(1, mode)
    }

    pub fn from_i64(v: i64, mode: Mode) -> Self {
        match mode {
            Mode::Exact => Coefficient::Exact(Rational::from(v)),
            Mode::Float { precision } => Coefficient::Float(Float::with_val(precision, v)),
        }
    }

    pub fn from_ratio(num: i64, den: i64, mode: Mode) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(&Rational::from((num, den)), mode)
    }

    pub fn from_rational(q: &Rational, mode: Mode) -> Self {
        match mode {
            Mode::Exact => Coefficient::Exact(q.clone()),
            Mode::Float { precision } => Coefficient::Float(Float::with_val(precision, q)),
        }
    }

    pub fn from_integer(z: &Integer, mode: Mode) -> Self {
        Self::from_rational(&Rational::from(z), mode)
    }

    /// Exact binary value of `v` (exact mode) or `v` rounded to the precision.
    pub fn from_f64(v: f64, mode: Mode) -> Result<Self> {
        match mode {
            Mode::Exact => Rational::from_f64(v)
                .map(Coefficient::Exact)
                .ok_or_else(|| Error::usage(format!("{v} is not finite"))),
            Mode::Float { precision } => Ok(Coefficient::Float(Float::with_val(precision, v))),
        }
    }

    pub fn from_float(f: Float) -> Self {
        Coefficient::Float(f)
    }

    /// Natural logarithm of a positive value; float modes only.
    pub fn ln_of(value: &Coefficient, mode: Mode) -> Result<Self> {
        let Mode::Float { precision } = mode else {
            return Err(Error::usage("logarithms are only available in float mode"));
        };
        let v = value.to_float(precision);
        if v <= 0 {
            return Err(Error::invalid("ln", "argument must be positive"));
        }
        Ok(Coefficient::Float(v.ln()))
    }

    pub fn mode(&self) -> Mode {
        match self {
            Coefficient::Exact(_) => Mode::Exact,
            Coefficient::Float(f) => Mode::Float {
                precision: f.prec(),
            },
        }
    }

    /// Converts into `mode`. Floats become exact by their binary value.
    pub fn to_mode(&self, mode: Mode) -> Self {
        match (self, mode) {
            (Coefficient::Exact(q), _) => Self::from_rational(q, mode),
            (Coefficient::Float(f), Mode::Exact) => {
                Coefficient::Exact(f.to_rational().unwrap_or_default())
            }
            (Coefficient::Float(f), Mode::Float { precision }) => {
                Coefficient::Float(Float::with_val(precision, f))
            }
        }
    }

    pub fn to_float(&self, precision: u32) -> Float {
        match self {
            Coefficient::Exact(q) => Float::with_val(precision, q),
            Coefficient::Float(f) => Float::with_val(precision, f),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Coefficient::Exact(q) => q.to_f64(),
            Coefficient::Float(f) => f.to_f64(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Coefficient::Exact(q) => Some(q),
            Coefficient::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Exact(q) => q.is_zero(),
            Coefficient::Float(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Exact(q) => *q == 1,
            Coefficient::Float(f) => *f == 1,
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Coefficient::Exact(q) => Coefficient::Exact(q.clone().abs()),
            Coefficient::Float(f) => Coefficient::Float(f.clone().abs()),
        }
    }

    /// Integer power; negative exponents require a nonzero base.
    /// `0^0 = 1`.
    pub fn pow(&self, e: i32) -> Self {
        match self {
            Coefficient::Exact(q) => {
                if e >= 0 {
                    Coefficient::Exact(q.clone().pow(e as u32))
                } else {
                    Coefficient::Exact(q.clone().recip().pow((-e) as u32))
                }
            }
            Coefficient::Float(f) => Coefficient::Float(f.clone().pow(e)),
        }
    }

    pub fn checked_div(&self, rhs: &Coefficient) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }

    /// Parses a literal in `mode`.
    ///
    /// Accepted forms: integers, `p/q`, decimals (`-0.25`, `1e-3`), and in
    /// float mode `ln(v)` / `exp(v)` for a positive literal `v`.
    pub fn parse(s: &str, mode: Mode) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::usage(format!("cannot parse `{s}` as a {mode} scalar"));
        if let Some(inner) = s.strip_prefix("ln(").and_then(|r| r.strip_suffix(')')) {
            let v = Self::parse(inner, mode)?;
            return Self::ln_of(&v, mode);
        }
        if let Some(inner) = s.strip_prefix("exp(").and_then(|r| r.strip_suffix(')')) {
            let Mode::Float { precision } = mode else {
                return Err(Error::usage("exp(..) literals are only available in float mode"));
            };
            let v = Self::parse(inner, mode)?;
            return Ok(Coefficient::Float(v.to_float(precision).exp()));
        }
        if s.is_empty() {
            return Err(bad());
        }
        if let Ok(q) = s.parse::<Rational>() {
            return Ok(Self::from_rational(&q, mode));
        }
        match mode {
            Mode::Exact => parse_decimal(s).map(Coefficient::Exact).ok_or_else(bad),
            Mode::Float { precision } => {
                let parsed = Float::parse(s).map_err(|_| bad())?;
                Ok(Coefficient::Float(Float::with_val(precision, parsed)))
            }
        }
    }
}

/// Exact rational value of a decimal literal such as `-12.5e-3`.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut q = Rational::from(all.parse::<Integer>().ok()?);
    let scale = exp - frac_part.len() as i32;
    let ten = Rational::from(10);
    if scale >= 0 {
        q *= ten.pow(scale as u32);
    } else {
        q /= ten.pow((-scale) as u32);
    }
    if neg {
        q = -q;
    }
    Some(q)
}

/// Decimal rendering of a float with every significant digit MPFR produces
/// for its precision, trailing zeros removed.
pub fn format_float(f: &Float) -> String {
    if f.is_zero() {
        return "0".to_owned();
    }
    if !f.is_finite() {
        return f.to_string();
    }
    let raw = f.to_string_radix(10, None);
    let (mantissa, exp) = match raw.find('e') {
        Some(i) => (&raw[..i], raw[i + 1..].parse::<i64>().unwrap_or(0)),
        None => (raw.as_str(), 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let mut digits: String = format!("{int_part}{frac_part}");
    // position of the decimal point counted from the start of `digits`
    let mut point = int_part.len() as i64 + exp;
    let lead = digits.len() - digits.trim_start_matches('0').len();
    digits.drain(..lead);
    point -= lead as i64;
    let trimmed = digits.trim_end_matches('0');
    let digits = if trimmed.is_empty() { "0" } else { trimmed };
    let sign = if neg { "-" } else { "" };
    let n = digits.len() as i64;
    if (-6..=24).contains(&point) {
        if point <= 0 {
            format!("{sign}0.{}{}", "0".repeat((-point) as usize), digits)
        } else if point >= n {
            format!("{sign}{}{}", digits, "0".repeat((point - n) as usize))
        } else {
            let (a, b) = digits.split_at(point as usize);
            format!("{sign}{a}.{b}")
        }
    } else {
        let (a, b) = digits.split_at(1);
        if b.is_empty() {
            format!("{sign}{a}e{}", point - 1)
        } else {
            format!("{sign}{a}.{b}e{}", point - 1)
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Exact(q) => write!(f, "{q}"),
            Coefficient::Float(x) => f.write_str(&format_float(x)),
        }
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl PartialEq for Coefficient {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Coefficient {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => a.partial_cmp(b),
            (Coefficient::Float(a), Coefficient::Float(b)) => a.partial_cmp(b),
            (Coefficient::Exact(a), Coefficient::Float(b)) => a.partial_cmp(b),
            (Coefficient::Float(a), Coefficient::Exact(b)) => a.partial_cmp(b),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Coefficient> for &Coefficient {
            type Output = Coefficient;

            fn $method(self, rhs: &Coefficient) -> Coefficient {
                match (self, rhs) {
                    (Coefficient::Exact(a), Coefficient::Exact(b)) => {
                        Coefficient::Exact(Rational::from(a $op b))
                    }
                    (Coefficient::Float(a), Coefficient::Float(b)) => {
                        let p = a.prec().min(b.prec());
                        Coefficient::Float(Float::with_val(p, a $op b))
                    }
                    (Coefficient::Exact(a), Coefficient::Float(b)) => {
                        let a = Float::with_val(b.prec(), a);
                        Coefficient::Float(Float::with_val(b.prec(), &a $op b))
                    }
                    (Coefficient::Float(a), Coefficient::Exact(b)) => {
                        let b = Float::with_val(a.prec(), b);
                        Coefficient::Float(Float::with_val(a.prec(), a $op &b))
                    }
                }
            }
        }

        impl $trait<Coefficient> for Coefficient {
            type Output = Coefficient;

            fn $method(self, rhs: Coefficient) -> Coefficient {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Coefficient> for Coefficient {
            type Output = Coefficient;

            fn $method(self, rhs: &Coefficient) -> Coefficient {
                (&self).$method(rhs)
            }
        }

        impl $trait<Coefficient> for &Coefficient {
            type Output = Coefficient;

            fn $method(self, rhs: Coefficient) -> Coefficient {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        match (&mut *self, rhs) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => *a += b,
            (Coefficient::Float(a), Coefficient::Float(b)) if a.prec() <= b.prec() => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, rhs: &Coefficient) {
        match (&mut *self, rhs) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => *a -= b,
            (Coefficient::Float(a), Coefficient::Float(b)) if a.prec() <= b.prec() => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

impl MulAssign<&Coefficient> for Coefficient {
    fn mul_assign(&mut self, rhs: &Coefficient) {
        match (&mut *self, rhs) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => *a *= b,
            (Coefficient::Float(a), Coefficient::Float(b)) if a.prec() <= b.prec() => *a *= b,
            _ => *self = &*self * rhs,
        }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Exact(q) => Coefficient::Exact(-q),
            Coefficient::Float(f) => Coefficient::Float(-f),
        }
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        -self.clone()
    }
}
