//! Classical Apostol-type families, built without the unified-family code.
//!
//! These serve as reference values for the special-case reductions of the
//! unified family. Exponentials are expanded from their closed-form
//! coefficients and powers are taken by repeated squaring, so no
//! intermediate is shared with [`crate::families::unified`].

use serde::Serialize;

use crate::coeff::{Coefficient, Mode};
use crate::error::{Error, Result};
use crate::series::{factorial, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ApostolKind {
    /// `(t / (lambda b^t - a^t))^r`
    Bernoulli,
    /// `(2 / (lambda b^t + a^t))^r`
    Euler,
    /// `(2t / (lambda b^t + a^t))^r`
    Genocchi,
}

impl std::str::FromStr for ApostolKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bernoulli" => Ok(ApostolKind::Bernoulli),
            "euler" => Ok(ApostolKind::Euler),
            "genocchi" => Ok(ApostolKind::Genocchi),
            other => Err(Error::usage(format!("unknown family kind `{other}`"))),
        }
    }
}

/// Hermite-based Apostol family with bases `a, b, c`:
/// `base(t)^order * c^{x t + y t^m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApostolParams {
    pub kind: ApostolKind,
    pub order: u32,
    pub lambda: Coefficient,
    pub ln_a: Coefficient,
    pub ln_b: Coefficient,
    pub ln_c: Coefficient,
    pub x: Coefficient,
    pub y: Coefficient,
    pub hermite_degree: usize,
    pub mode: Mode,
}

impl ApostolParams {
    /// Eqs. (1)-(3) form: `a = 1, b = c = e`, no Hermite term.
    pub fn classical(kind: ApostolKind, order: u32, lambda: Coefficient, x: Coefficient, mode: Mode) -> Self {
        ApostolParams {
            kind,
            order,
            lambda,
            ln_a: Coefficient::zero(mode),
            ln_b: Coefficient::one(mode),
            ln_c: Coefficient::one(mode),
            x,
            y: Coefficient::zero(mode),
            hermite_degree: 2,
            mode,
        }
    }
}

/// `e^{s t^degree}` from its closed-form coefficients.
fn exp_monomial(s: &Coefficient, degree: usize, order: usize, mode: Mode) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order, mode).into_coeffs();
    for j in 0..=order / degree {
        out[j * degree] = &s.pow(j as i32) / &factorial(j, mode);
    }
    TruncatedSeries::from_coeffs(out, mode).expect("nonempty")
}

/// `lambda b^t + sign a^t`, truncated at `order`.
fn twisted_denominator(p: &ApostolParams, sign: i64, order: usize) -> TruncatedSeries {
    let mode = p.mode;
    let lambda = p.lambda.to_mode(mode);
    let sign = Coefficient::from_i64(sign, mode);
    let coeffs = (0..=order)
        .map(|j| {
            let b = &lambda * &p.ln_b.pow(j as i32);
            let a = &sign * &p.ln_a.pow(j as i32);
            &(&b + &a) / &factorial(j, mode)
        })
        .collect();
    TruncatedSeries::from_coeffs(coeffs, mode).expect("nonempty")
}

/// Generating series of the family, truncated at `order`.
///
/// When the denominator vanishes at `t = 0` and the numerator carries a
/// factor `t`, the `t` is cancelled analytically: the denominator is expanded
/// one order further and divided by `t`.
pub fn apostol_series(p: &ApostolParams, order: usize) -> Result<TruncatedSeries> {
    if p.order == 0 {
        return Err(Error::invalid("order", "must be a positive integer"));
    }
    if p.hermite_degree == 0 {
        return Err(Error::invalid("m", "Hermite degree must be at least 1"));
    }
    let mode = p.mode;
    let (sign, numerator, has_t) = match p.kind {
        ApostolKind::Bernoulli => (-1, 1, true),
        ApostolKind::Euler => (1, 2, false),
        ApostolKind::Genocchi => (1, 2, true),
    };
    let numerator = Coefficient::from_i64(numerator, mode);
    let name = match p.kind {
        ApostolKind::Bernoulli => "lambda b^t - a^t",
        _ => "lambda b^t + a^t",
    };
    let den = twisted_denominator(p, sign, order + 1);
    let base = if has_t && den.coeffs()[0].is_zero() {
        let reduced = den.shift_down(1)?;
        TruncatedSeries::constant(numerator, order, mode).div_named(&reduced, &format!("({name})/t"))?
    } else {
        let den = den.truncate(order)?;
        let top = if has_t {
            TruncatedSeries::monomial(numerator, 1, order, mode)
        } else {
            TruncatedSeries::constant(numerator, order, mode)
        };
        top.div_named(&den, name)?
    };
    let powered = base.pow(p.order)?;
    let linear = exp_monomial(&(&p.x * &p.ln_c), 1, order, mode);
    let hermite = exp_monomial(&(&p.y * &p.ln_c), p.hermite_degree, order, mode);
    powered.mul(&linear)?.mul(&hermite)
}

/// EGF coefficient `n` of the family.
pub fn apostol_value(p: &ApostolParams, n: usize) -> Result<Coefficient> {
    apostol_series(p, n)?.egf_coeff(n)
}

/// `B_n^{(order)}(x; lambda)`, `E_n^{(order)}(x; lambda)` or
/// `G_n^{(order)}(x; lambda)`.
pub fn reference_family(
    kind: ApostolKind,
    order: u32,
    lambda: &Coefficient,
    x: &Coefficient,
    n: usize,
) -> Result<Coefficient> {
    let mode = x.mode();
    let p = ApostolParams::classical(kind, order, lambda.clone(), x.clone(), mode);
    apostol_value(&p, n)
}

/// Unified Apostol family without Hermite term:
/// `prod_i [2^{1-k} t^k / (alpha_i e^t - 1)] e^{x t}`.
pub fn unified_apostol_reference(
    alphas: &[Coefficient],
    k: u32,
    x: &Coefficient,
    n: usize,
    mode: Mode,
) -> Result<Coefficient> {
    let order = n;
    let two_pow = Coefficient::from_i64(2, mode).pow(1 - k as i32);
    let numerator = TruncatedSeries::monomial(two_pow, k as usize, order, mode);
    let mut product = TruncatedSeries::one(order, mode);
    let one = Coefficient::one(mode);
    for (i, alpha) in alphas.iter().enumerate() {
        let alpha = alpha.to_mode(mode);
        let coeffs = (0..=order)
            .map(|j| {
                let v = &alpha / &factorial(j, mode);
                if j == 0 {
                    &v - &one
                } else {
                    v
                }
            })
            .collect();
        let den = TruncatedSeries::from_coeffs(coeffs, mode)?;
        let factor = numerator.div_named(&den, &format!("alpha_{i} e^t - 1"))?;
        product = product.mul(&factor)?;
    }
    product.mul(&exp_monomial(x, 1, order, mode))?.egf_coeff(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::binomial;

    const EX: Mode = Mode::Exact;

    fn q(n: i64, d: i64) -> Coefficient {
        Coefficient::from_ratio(n, d, EX)
    }

    /// Bernoulli numbers (B_1 = -1/2) from `sum_{k<=n} C(n+1,k) B_k = 0`.
    fn bernoulli_oracle(n_max: usize) -> Vec<Coefficient> {
        let mut b = vec![q(1, 1)];
        for n in 1..=n_max {
            let mut acc = q(0, 1);
            for (k, bk) in b.iter().enumerate() {
                acc += &(&binomial(n + 1, k, EX) * bk);
            }
            b.push(-(acc / binomial(n + 1, n, EX)));
        }
        b
    }

    #[test]
    fn classical_genocchi_numbers() {
        let expected = [0, 1, -1, 0, 1];
        for (n, v) in expected.iter().enumerate() {
            let g = reference_family(ApostolKind::Genocchi, 1, &q(1, 1), &q(0, 1), n).unwrap();
            assert_eq!(g, q(*v, 1), "n = {n}");
        }
    }

    #[test]
    fn classical_bernoulli_numbers() {
        let oracle = bernoulli_oracle(12);
        for (n, b) in oracle.iter().enumerate() {
            let v = reference_family(ApostolKind::Bernoulli, 1, &q(1, 1), &q(0, 1), n).unwrap();
            assert_eq!(&v, b, "n = {n}");
        }
        let b1 = reference_family(ApostolKind::Bernoulli, 1, &q(1, 1), &q(0, 1), 1).unwrap();
        assert_eq!(b1, q(-1, 2));
    }

    #[test]
    fn euler_constant_and_singular_cases() {
        let e0 = reference_family(ApostolKind::Euler, 1, &q(1, 1), &q(0, 1), 0).unwrap();
        assert!(e0.is_one());
        // 2 / (-e^t + 1) has a pole at t = 0
        let bad = reference_family(ApostolKind::Euler, 1, &q(-1, 1), &q(0, 1), 3);
        assert!(matches!(bad, Err(Error::SingularDenominator { .. })));
    }

    #[test]
    fn bernoulli_polynomials_at_one() {
        // B_n(1) = B_n(0) for n != 1
        for n in [0usize, 2, 3, 4, 5, 6] {
            let at0 = reference_family(ApostolKind::Bernoulli, 1, &q(1, 1), &q(0, 1), n).unwrap();
            let at1 = reference_family(ApostolKind::Bernoulli, 1, &q(1, 1), &q(1, 1), n).unwrap();
            assert_eq!(at0, at1, "n = {n}");
        }
    }

    #[test]
    fn order_two_is_self_convolution() {
        let n = 6;
        let g2 = reference_family(ApostolKind::Genocchi, 2, &q(3, 2), &q(0, 1), n).unwrap();
        let mut conv = q(0, 1);
        for j in 0..=n {
            let a = reference_family(ApostolKind::Genocchi, 1, &q(3, 2), &q(0, 1), j).unwrap();
            let b = reference_family(ApostolKind::Genocchi, 1, &q(3, 2), &q(0, 1), n - j).unwrap();
            conv += &(&(&binomial(n, j, EX) * &a) * &b);
        }
        assert_eq!(g2, conv);
    }

    #[test]
    fn genocchi_with_lambda_minus_one_factors_t() {
        // 2t / (1 - e^t) = -2 t/(e^t - 1): twice the negated Bernoulli numbers
        let oracle = bernoulli_oracle(8);
        for n in 0..=8 {
            let g = reference_family(ApostolKind::Genocchi, 1, &q(-1, 1), &q(0, 1), n).unwrap();
            assert_eq!(g, &q(-2, 1) * &oracle[n], "n = {n}");
        }
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("Euler".parse::<ApostolKind>().unwrap(), ApostolKind::Euler);
        assert!("laguerre".parse::<ApostolKind>().is_err());
    }
}
