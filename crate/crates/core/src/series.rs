//! Truncated formal power series in one variable `t`.
//!
//! A [`TruncatedSeries`] of order `N` holds the coefficients of
//! `t^0, ..., t^N`. Every operation is closed under truncation: nothing above
//! index `N` is ever read or produced, and no operation changes `N` unless
//! its name says so.

use rug::Float;

use crate::coeff::{Coefficient, Mode};
use crate::error::{Error, Result};

/// Relative pivot tolerance for float-mode division.
pub const FLOAT_PIVOT_TOLERANCE: f64 = 1e-30;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Coefficient>,
    mode: Mode,
}

impl TruncatedSeries {
    /// Builds a series from raw coefficients; each is converted into `mode`.
    /// The order is `coeffs.len() - 1`, so `coeffs` must be nonempty.
    pub fn from_coeffs(coeffs: Vec<Coefficient>, mode: Mode) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::usage("a series needs at least one coefficient"));
        }
        let coeffs = coeffs
            .into_iter()
            .map(|c| if c.mode() == mode { c } else { c.to_mode(mode) })
            .collect();
        Ok(TruncatedSeries { coeffs, mode })
    }

    pub fn zero(order: usize, mode: Mode) -> Self {
        TruncatedSeries {
            coeffs: vec![Coefficient::zero(mode); order + 1],
            mode,
        }
    }

    pub fn one(order: usize, mode: Mode) -> Self {
        Self::constant(Coefficient::one(mode), order, mode)
    }

    pub fn constant(c: Coefficient, order: usize, mode: Mode) -> Self {
        let mut s = Self::zero(order, mode);
        s.coeffs[0] = c.to_mode(mode);
        s
    }

    /// `c * t^degree`, or zero when `degree > order`.
    pub fn monomial(c: Coefficient, degree: usize, order: usize, mode: Mode) -> Self {
        let mut s = Self::zero(order, mode);
        if degree <= order {
            s.coeffs[degree] = c.to_mode(mode);
        }
        s
    }

    /// Polynomial with the given low coefficients, zero-padded to `order`.
    pub fn polynomial(low: &[Coefficient], order: usize, mode: Mode) -> Self {
        let mut s = Self::zero(order, mode);
        for (slot, c) in s.coeffs.iter_mut().zip(low) {
            *slot = c.to_mode(mode);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    /// Raw coefficient of `t^n`.
    pub fn coeff(&self, n: usize) -> Result<&Coefficient> {
        self.coeffs.get(n).ok_or(Error::Range {
            index: n,
            order: self.order(),
        })
    }

    pub fn into_coeffs(self) -> Vec<Coefficient> {
        self.coeffs
    }

    fn check_compatible(&self, other: &Self, op: &str) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::usage(format!(
                "{op}: order mismatch ({} vs {})",
                self.order(),
                other.order()
            )));
        }
        if self.mode != other.mode {
            return Err(Error::usage(format!(
                "{op}: mode mismatch ({} vs {})",
                self.mode, other.mode
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "add")?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeries {
            coeffs,
            mode: self.mode,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            mode: self.mode,
        }
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, s: &Coefficient) -> Self {
        let s = s.to_mode(self.mode);
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * &s).collect(),
            mode: self.mode,
        }
    }

    /// Cauchy product, truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "mul")?;
        let n = self.order();
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = Coefficient::zero(self.mode);
            for j in 0..=k {
                let (a, b) = (&self.coeffs[j], &other.coeffs[k - j]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc += &(a * b);
            }
            out.push(acc);
        }
        Ok(TruncatedSeries {
            coeffs: out,
            mode: self.mode,
        })
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut result = Self::one(self.order(), self.mode);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Quotient `self / g` by forward substitution.
    ///
    /// `g` must have a nonzero constant term: literally nonzero in exact
    /// mode, and larger than [`FLOAT_PIVOT_TOLERANCE`] times the largest
    /// coefficient magnitude of `g` in float mode.
    pub fn div(&self, g: &Self) -> Result<Self> {
        self.div_named(g, "denominator")
    }

    /// [`div`](Self::div) with a caller-chosen name for the denominator in
    /// the error message.
    pub fn div_named(&self, g: &Self, name: &str) -> Result<Self> {
        self.check_compatible(g, "div")?;
        let g0 = &g.coeffs[0];
        if !g.pivot_ok() {
            return Err(Error::SingularDenominator {
                series: name.to_owned(),
            });
        }
        let inv = &Coefficient::one(self.mode) / g0;
        let n = self.order();
        let mut h: Vec<Coefficient> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                let gj = &g.coeffs[j];
                if gj.is_zero() {
                    continue;
                }
                acc -= &(gj * &h[k - j]);
            }
            h.push(acc * &inv);
        }
        Ok(TruncatedSeries {
            coeffs: h,
            mode: self.mode,
        })
    }

    fn pivot_ok(&self) -> bool {
        let g0 = &self.coeffs[0];
        match self.mode {
            Mode::Exact => !g0.is_zero(),
            Mode::Float { precision } => {
                let mut largest = Float::with_val(precision, 0);
                for c in &self.coeffs {
                    let a = c.to_float(precision).abs();
                    if a > largest {
                        largest = a;
                    }
                }
                if largest.is_zero() {
                    return false;
                }
                let g0 = g0.to_float(precision).abs();
                g0 > largest * FLOAT_PIVOT_TOLERANCE
            }
        }
    }

    /// `exp(sum_d c_d t^d)` for a polynomial exponent without constant term.
    ///
    /// Uses `n E_n = sum_{j=1}^{n} j p_j E_{n-j}`, which follows from
    /// `E' = P' E`.
    pub fn exp_poly(terms: &[(usize, Coefficient)], order: usize, mode: Mode) -> Result<Self> {
        let mut p = vec![Coefficient::zero(mode); order + 1];
        for (d, c) in terms {
            if *d == 0 {
                return Err(Error::usage("exp_poly: exponent must not have a constant term"));
            }
            if *d <= order {
                p[*d] += &c.to_mode(mode);
            }
        }
        let mut e: Vec<Coefficient> = Vec::with_capacity(order + 1);
        e.push(Coefficient::one(mode));
        for n in 1..=order {
            let mut acc = Coefficient::zero(mode);
            for j in 1..=n {
                if p[j].is_zero() || e[n - j].is_zero() {
                    continue;
                }
                let jp = &p[j] * &Coefficient::from_i64(j as i64, mode);
                acc += &(jp * &e[n - j]);
            }
            e.push(acc / Coefficient::from_i64(n as i64, mode));
        }
        Ok(TruncatedSeries { coeffs: e, mode })
    }

    /// `f(s t)`: coefficient `n` becomes `f_n s^n`.
    pub fn scale_arg(&self, s: &Coefficient) -> Self {
        let s = s.to_mode(self.mode);
        let mut power = Coefficient::one(self.mode);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &power);
            power *= &s;
        }
        TruncatedSeries {
            coeffs,
            mode: self.mode,
        }
    }

    /// `n! f_n`, the exponential-generating-function coefficient.
    pub fn egf_coeff(&self, n: usize) -> Result<Coefficient> {
        let c = self.coeff(n)?;
        Ok(c * &factorial(n, self.mode))
    }

    /// Multiplies by `t^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![Coefficient::zero(self.mode); n + 1];
        if k <= n {
            coeffs[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        TruncatedSeries {
            coeffs,
            mode: self.mode,
        }
    }

    /// Divides by `t^k`. The first `k` coefficients must be exactly zero;
    /// the result has order `order - k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::Range {
                index: k,
                order: self.order(),
            });
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::usage(format!("shift_down: series is not divisible by t^{k}")));
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[k..].to_vec(),
            mode: self.mode,
        })
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::Range {
                index: order,
                order: self.order(),
            });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
            mode: self.mode,
        })
    }
}

/// `n!` in the given field.
pub fn factorial(n: usize, mode: Mode) -> Coefficient {
    let z = rug::Integer::from(rug::Integer::factorial(n as u32));
    Coefficient::from_integer(&z, mode)
}

/// Binomial coefficient `C(n, k)` in the given field (zero when `k > n`).
pub fn binomial(n: usize, k: usize, mode: Mode) -> Coefficient {
    if k > n {
        return Coefficient::zero(mode);
    }
    let z = rug::Integer::from(rug::Integer::binomial_u(n as u32, k as u32));
    Coefficient::from_integer(&z, mode)
}
