//! The unified Apostol Hermite-Genocchi family and its numbers.

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::families::params::UnifiedParams;
use crate::series::TruncatedSeries;

/// Generating series of the unified family truncated at `order`.
///
/// Coefficients below `r k` are exactly zero.
pub fn unified_series(p: &UnifiedParams, order: usize) -> Result<TruncatedSeries> {
    p.validate()?;
    let mode = p.mode;
    let r = p.r();
    let rk = p.leading_order();
    if order < rk {
        return Err(Error::usage(format!("truncation order {order} is below r*k = {rk}")));
    }

    let mut prefactor = Coefficient::from_i64(2, mode).pow(r as i32 * (1 - p.k as i32));
    if r % 2 == 1 {
        prefactor = -prefactor;
    }
    let exponent = [(1, &p.x * &p.ln_c), (p.hermite_degree, &p.y * &p.ln_c)];
    let mut series = TruncatedSeries::exp_poly(&exponent, order, mode)?
        .shift_up(rk)
        .scale(&prefactor);

    let b_t = TruncatedSeries::exp_poly(&[(1, p.ln_b.clone())], order, mode)?;
    let a_t = TruncatedSeries::exp_poly(&[(1, p.ln_a.clone())], order, mode)?;
    for (i, alpha) in p.alphas.iter().enumerate() {
        let factor = b_t.scale(alpha).sub(&a_t)?;
        series = series.div_named(&factor, &format!("alpha_{i} b^t - a^t"))?;
    }
    Ok(series)
}

/// `M_n^{(r)}(x, y; k, a, b, c; alpha)`.
pub fn unified_poly(p: &UnifiedParams, n: usize) -> Result<Coefficient> {
    p.validate()?;
    if n < p.leading_order() {
        return Ok(Coefficient::zero(p.mode));
    }
    unified_series(p, n)?.egf_coeff(n)
}

/// `M_0 .. M_{n_max}` from a single series expansion.
pub fn unified_values(p: &UnifiedParams, n_max: usize) -> Result<Vec<Coefficient>> {
    p.validate()?;
    if n_max < p.leading_order() {
        return Ok(vec![Coefficient::zero(p.mode); n_max + 1]);
    }
    let s = unified_series(p, n_max)?;
    (0..=n_max).map(|n| s.egf_coeff(n)).collect()
}

/// Unified numbers: the family at `x = y = 0, c = 1`.
pub fn unified_numbers(p: &UnifiedParams, n: usize) -> Result<Coefficient> {
    if !p.x.is_zero() || !p.y.is_zero() {
        return Err(Error::usage("unified numbers require x = y = 0"));
    }
    if !p.ln_c.is_zero() {
        return Err(Error::usage("unified numbers require c = 1 (lnC = 0)"));
    }
    unified_poly(p, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Mode;

    const EX: Mode = Mode::Exact;

    fn q(n: i64, d: i64) -> Coefficient {
        Coefficient::from_ratio(n, d, EX)
    }

    fn genocchi_params(k: u32) -> UnifiedParams {
        UnifiedParams::standard(vec![q(-1, 1)], k, q(0, 1), q(0, 1), EX)
    }

    #[test]
    fn half_genocchi_numbers() {
        let p = genocchi_params(1);
        let expected = [(0, 1), (1, 2), (-1, 2), (0, 1), (1, 2), (0, 1), (-3, 2)];
        for (n, (a, b)) in expected.iter().enumerate() {
            assert_eq!(unified_poly(&p, n).unwrap(), q(*a, *b), "n = {n}");
        }
    }

    #[test]
    fn euler_type_constant_term() {
        let s = unified_series(&genocchi_params(0), 6).unwrap();
        assert!(s.egf_coeff(0).unwrap().is_one());
    }

    #[test]
    fn prefactor_zeroes_low_coefficients() {
        let p = UnifiedParams::standard(vec![q(1, 3), q(-2, 1)], 1, q(1, 2), q(3, 1), EX);
        let s = unified_series(&p, 6).unwrap();
        assert!(s.coeff(0).unwrap().is_zero());
        assert!(s.coeff(1).unwrap().is_zero());
        assert!(!s.coeff(2).unwrap().is_zero());
        assert!(unified_poly(&p, 1).unwrap().is_zero());
        assert!(unified_series(&p, 1).is_err());
    }

    #[test]
    fn constant_terms() {
        let p = UnifiedParams::standard(vec![q(1, 2)], 0, q(0, 1), q(0, 1), EX);
        assert_eq!(unified_poly(&p, 0).unwrap(), q(4, 1));

        let mut numbers = UnifiedParams::standard(vec![q(1, 2), q(1, 2)], 0, q(0, 1), q(0, 1), EX);
        numbers.ln_c = q(0, 1);
        assert_eq!(unified_numbers(&numbers, 0).unwrap(), q(16, 1));
    }

    #[test]
    fn unified_numbers_cases() {
        let mut p = genocchi_params(1);
        p.ln_c = q(0, 1);
        assert!(unified_numbers(&p, 0).unwrap().is_zero());
        assert_eq!(unified_numbers(&p, 2).unwrap(), q(-1, 2));
        p.x = q(1, 1);
        assert!(unified_numbers(&p, 2).is_err());
        p.x = q(0, 1);
        p.ln_c = q(1, 1);
        assert!(unified_numbers(&p, 2).is_err());
    }

    #[test]
    fn values_match_single_evaluations() {
        let p = UnifiedParams::standard(vec![q(2, 3), q(-1, 4)], 1, q(1, 5), q(-2, 3), EX);
        let all = unified_values(&p, 7).unwrap();
        for (n, v) in all.iter().enumerate() {
            assert_eq!(v, &unified_poly(&p, n).unwrap());
        }
        assert_eq!(unified_values(&p, 1).unwrap().len(), 2);
    }

    #[test]
    fn degenerate_alpha_is_rejected() {
        let p = UnifiedParams::standard(vec![q(1, 1)], 0, q(0, 1), q(0, 1), EX);
        assert!(matches!(unified_series(&p, 3), Err(Error::InvalidParameter { .. })));
    }
}
