//! Explicit lattice-sum formula for the unified family at `k = 0, a = 1,
//! b = c = e`:
//!
//! `M_n = 2^r sum_{x in N^r} prod_i alpha_i^{x_i} H_{n,m}(shift + X, beta)`,
//! `X = x_1 + ... + x_r`.

use crate::coeff::{Coefficient, Mode};
use crate::error::{Error, Result};
use crate::families::hermite::GenHermite;
use crate::families::params::UnifiedParams;
use crate::summation::{adaptive_sum, HomogeneousWeights, TailEnvelope, TailSum, DEFAULT_MAX_TERMS};

/// Checks the setting the lattice formula applies to and returns `max |alpha_i|`.
fn check_lattice_domain(p: &UnifiedParams) -> Result<f64> {
    p.validate()?;
    if p.mode.is_exact() {
        return Err(Error::usage("explicit_lattice is an infinite sum and needs float mode"));
    }
    if p.k != 0 {
        return Err(Error::usage("explicit_lattice requires k = 0"));
    }
    if !p.ln_a.is_zero() || !p.ln_b.is_one() || !p.ln_c.is_one() {
        return Err(Error::usage("explicit_lattice requires a = 1, b = c = e"));
    }
    let mut rho = 0.0f64;
    for (i, a) in p.alphas.iter().enumerate() {
        let v = a.to_f64().abs();
        if v >= 1.0 {
            return Err(Error::DivergentSum(format!("|alphas[{i}]| = {v} is not below 1")));
        }
        rho = rho.max(v);
    }
    Ok(rho)
}

/// Lattice sum with its truncation data.
pub fn explicit_lattice_sum(p: &UnifiedParams, n: usize, epsilon: f64) -> Result<TailSum> {
    let rho = check_lattice_domain(p)?;
    let mode = p.mode;
    let hermite = GenHermite::new(n, p.hermite_degree, &p.y, mode)?;
    let envelope = TailEnvelope {
        r: p.r(),
        rho,
        shift: p.x.to_f64().abs(),
        degree: n as u32,
        log_scale: hermite.growth_constant().ln(),
    };
    let mut weights = HomogeneousWeights::new(&p.alphas, mode);
    let mut sum = adaptive_sum(&envelope, epsilon, DEFAULT_MAX_TERMS, mode, |s| {
        let h = weights.next().expect("infinite iterator");
        let at = &p.x + &Coefficient::from_i64(s as i64, mode);
        Ok(&h * &hermite.eval(&at))
    })?;
    let two_r = Coefficient::from_i64(2, mode).pow(p.r() as i32);
    sum.value = &sum.value * &two_r;
    sum.tail_bound *= two_r.to_f64();
    Ok(sum)
}

/// `M_n^{(r)}(shift, beta; alpha)` by the lattice formula, truncated once the
/// certified tail is below `epsilon` relative to the accumulated sum.
pub fn explicit_lattice(p: &UnifiedParams, n: usize, epsilon: f64) -> Result<Coefficient> {
    Ok(explicit_lattice_sum(p, n, epsilon)?.value)
}

/// Default working mode for lattice sums.
pub fn lattice_mode() -> Mode {
    Mode::Float {
        precision: Mode::DEFAULT_PRECISION,
    }
}
