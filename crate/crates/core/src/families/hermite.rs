//! Hermite Kampe de Feriet polynomials and their degree-`m` generalization.

use crate::coeff::{Coefficient, Mode};
use crate::error::{Error, Result};
use crate::families::params::HermiteSpec;
use crate::series::{factorial, TruncatedSeries};

/// `H_n(x, y, c)`: `n!` times the coefficient of `t^n` in `c^{x t + y t^2}`.
///
/// With `ln_c = 1` this is the classical `H_n(x, y)`.
pub fn hermite_kampe(n: usize, x: &Coefficient, y: &Coefficient, ln_c: &Coefficient) -> Result<Coefficient> {
    let mode = x.mode();
    let series = TruncatedSeries::exp_poly(&[(1, x * ln_c), (2, y * ln_c)], n, mode)?;
    series.egf_coeff(n)
}

/// `H_{n,m}(x, beta) = sum_{k <= n/m} beta^k n! / (k! (n - mk)!) x^{n - mk}`.
pub fn gen_hermite(spec: &HermiteSpec) -> Result<Coefficient> {
    let mode = spec.x.mode();
    Ok(GenHermite::new(spec.n, spec.m, &spec.beta, mode)?.eval(&spec.x))
}

/// `H_{n,m}(., beta)` with its coefficients precomputed, for repeated
/// evaluation at many abscissae.
#[derive(Debug, Clone)]
pub struct GenHermite {
    n: usize,
    m: usize,
    /// `(power of x, coefficient)` pairs.
    terms: Vec<(usize, Coefficient)>,
}

impl GenHermite {
    pub fn new(n: usize, m: usize, beta: &Coefficient, mode: Mode) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("m", "Hermite degree must be at least 1"));
        }
        let beta = beta.to_mode(mode);
        let nf = factorial(n, mode);
        let terms = (0..=n / m)
            .map(|k| {
                let c = &(&beta.pow(k as i32) * &nf) / &(&factorial(k, mode) * &factorial(n - m * k, mode));
                (n - m * k, c)
            })
            .collect();
        Ok(GenHermite { n, m, terms })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn eval(&self, x: &Coefficient) -> Coefficient {
        let mut acc = Coefficient::zero(self.terms[0].1.mode());
        for (p, c) in &self.terms {
            acc += &(c * &x.pow(*p as i32));
        }
        acc
    }

    /// `H_{n,m}(1, |beta|)`, the constant `K` with
    /// `|H_{n,m}(x, beta)| <= K (|x| + 1)^n`.
    pub fn growth_constant(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.to_f64().abs()).sum()
    }
}
