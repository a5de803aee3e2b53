use serde::Serialize;

use crate::coeff::{Coefficient, Mode};
use crate::error::{Error, Result};

/// Float-mode distance from 1 below which an `alpha_i` is rejected.
pub const ALPHA_ONE_TOLERANCE: f64 = 1e-12;

/// Parameters of the unified family
/// `(-1)^r t^{rk} 2^{r(1-k)} / prod_i (alpha_i b^t - a^t) * c^{x t + y t^m}`.
///
/// Bases enter only through their logarithms; `ln_a = 0, ln_b = ln_c = 1`
/// is `a = 1, b = c = e`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnifiedParams {
    pub k: u32,
    pub ln_a: Coefficient,
    pub ln_b: Coefficient,
    pub ln_c: Coefficient,
    pub alphas: Vec<Coefficient>,
    pub x: Coefficient,
    pub y: Coefficient,
    /// Degree `m` of the Hermite term `y t^m`.
    pub hermite_degree: usize,
    #[serde(skip)]
    pub mode: Mode,
}

impl UnifiedParams {
    /// `a = 1, b = c = e`, Hermite degree 2.
    pub fn standard(alphas: Vec<Coefficient>, k: u32, x: Coefficient, y: Coefficient, mode: Mode) -> Self {
        UnifiedParams {
            k,
            ln_a: Coefficient::zero(mode),
            ln_b: Coefficient::one(mode),
            ln_c: Coefficient::one(mode),
            alphas,
            x,
            y,
            hermite_degree: 2,
            mode,
        }
    }

    pub fn r(&self) -> usize {
        self.alphas.len()
    }

    /// `r * k`, the order of the `t` prefactor.
    pub fn leading_order(&self) -> usize {
        self.r() * self.k as usize
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() {
            return Err(Error::invalid("alphas", "r must be a positive integer"));
        }
        if self.hermite_degree == 0 {
            return Err(Error::invalid("m", "Hermite degree must be at least 1"));
        }
        for (i, a) in self.alphas.iter().enumerate() {
            let bad = match self.mode {
                Mode::Exact => a.to_mode(Mode::Exact).is_one(),
                Mode::Float { .. } => (a.to_f64() - 1.0).abs() <= ALPHA_ONE_TOLERANCE,
            };
            if bad {
                return Err(Error::invalid(format!("alphas[{i}]"), "alpha_i must differ from 1"));
            }
        }
        if self.ln_a.to_mode(self.mode) == self.ln_b.to_mode(self.mode) {
            return Err(Error::invalid("lnA", "bases a and b must differ (lnA = lnB)"));
        }
        Ok(())
    }
}

/// Parameters of the generalized Hermite polynomial `H_{n,m}(x, beta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteSpec {
    pub n: usize,
    pub m: usize,
    pub x: Coefficient,
    pub beta: Coefficient,
}
