//! Adaptive summation of lattice series grouped by coordinate sum.
//!
//! Sums of the form `sum_{x in N^r} prod_i alpha_i^{x_i} g(x_1 + ... + x_r)`
//! collapse to `sum_s h_s(alpha) g(s)` where `h_s` is the complete
//! homogeneous symmetric polynomial of degree `s`. Truncation is certified by
//! the envelope `h_s <= C(s+r-1, r-1) rho^s` with `rho = max |alpha_i|`
//! together with a polynomial growth bound on `g`.

use crate::coeff::{Coefficient, Mode};
use crate::error::{Error, Result};

/// Default cap on the number of summed shells.
pub const DEFAULT_MAX_TERMS: usize = 200_000;

/// Yields `h_0(alpha), h_1(alpha), ...`.
///
/// Uses `h_s(a_1..a_j) = h_s(a_1..a_{j-1}) + a_j h_{s-1}(a_1..a_j)`.
#[derive(Debug, Clone)]
pub struct HomogeneousWeights {
    alphas: Vec<Coefficient>,
    prev: Vec<Coefficient>,
    s: usize,
    mode: Mode,
}

impl HomogeneousWeights {
    pub fn new(alphas: &[Coefficient], mode: Mode) -> Self {
        HomogeneousWeights {
            alphas: alphas.iter().map(|a| a.to_mode(mode)).collect(),
            prev: Vec::new(),
            s: 0,
            mode,
        }
    }
}

impl Iterator for HomogeneousWeights {
    type Item = Coefficient;

    fn next(&mut self) -> Option<Coefficient> {
        let r = self.alphas.len();
        let cur: Vec<Coefficient> = if self.s == 0 {
            vec![Coefficient::one(self.mode); r + 1]
        } else {
            let mut cur = Vec::with_capacity(r + 1);
            cur.push(Coefficient::zero(self.mode));
            for j in 1..=r {
                let v = &cur[j - 1] + &(&self.alphas[j - 1] * &self.prev[j]);
                cur.push(v);
            }
            cur
        };
        let out = cur[r].clone();
        self.prev = cur;
        self.s += 1;
        Some(out)
    }
}

/// Upper envelope `E(s) = C(s+r-1, r-1) rho^s (s + shift + 1)^degree e^log_scale`
/// for the magnitude of the `s`-th shell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEnvelope {
    pub r: usize,
    pub rho: f64,
    pub shift: f64,
    pub degree: u32,
    pub log_scale: f64,
}

impl TailEnvelope {
    pub fn log_term(&self, s: usize) -> f64 {
        let s_f = s as f64;
        let log_binom: f64 = (1..self.r).map(|i| ((s_f + i as f64) / i as f64).ln()).sum();
        let log_rho = if s == 0 { 0.0 } else { s_f * self.rho.ln() };
        log_binom + log_rho + self.degree as f64 * (s_f + self.shift + 1.0).ln() + self.log_scale
    }

    /// Bound on `sum_{s > last} E(s)`, or `None` while the envelope is not
    /// yet decreasing geometrically.
    pub fn tail_after(&self, last: usize) -> Option<f64> {
        if self.rho == 0.0 {
            return Some(0.0);
        }
        let s0 = (last + 1) as f64;
        let growth = ((s0 + self.shift + 2.0) / (s0 + self.shift + 1.0)).powi(self.degree as i32);
        let ratio = (s0 + self.r as f64) / (s0 + 1.0) * self.rho * growth;
        if ratio >= 1.0 {
            return None;
        }
        // the ratio E(s+1)/E(s) is nonincreasing in s, so the tail is
        // dominated by a geometric series starting at E(last + 1)
        Some(self.log_term(last + 1).exp() / (1.0 - ratio))
    }
}

#[derive(Debug, Clone)]
pub struct TailSum {
    pub value: Coefficient,
    /// Number of shells summed (`s = 0 .. terms - 1`).
    pub terms: usize,
    pub tail_bound: f64,
}

/// Sums `term(0) + term(1) + ...` until the envelope tail falls below
/// `epsilon` times the accumulated absolute sum.
pub fn adaptive_sum<F>(
    envelope: &TailEnvelope,
    epsilon: f64,
    max_terms: usize,
    mode: Mode,
    mut term: F,
) -> Result<TailSum>
where
    F: FnMut(usize) -> Result<Coefficient>,
{
    let mut value = Coefficient::zero(mode);
    let mut abs_sum = 0.0f64;
    let mut last_bound = f64::INFINITY;
    for s in 0..max_terms {
        let t = term(s)?;
        abs_sum += t.to_f64().abs();
        value += &t;
        if let Some(bound) = envelope.tail_after(s) {
            last_bound = bound;
            if bound == 0.0 || (abs_sum > 0.0 && bound <= epsilon * abs_sum) {
                return Ok(TailSum {
                    value,
                    terms: s + 1,
                    tail_bound: bound,
                });
            }
        }
    }
    Err(Error::TailNotConverged {
        terms: max_terms,
        tail_bound: last_bound,
    })
}

/// Smallest `S` with `tail_after(S) <= target`, searching up to `max_terms`.
pub fn cutoff_for(envelope: &TailEnvelope, target: f64, max_terms: usize) -> Result<usize> {
    let mut last = f64::INFINITY;
    for s in 0..max_terms {
        if let Some(b) = envelope.tail_after(s) {
            last = b;
            if b <= target {
                return Ok(s);
            }
        }
    }
    Err(Error::TailNotConverged {
        terms: max_terms,
        tail_bound: last,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: Mode = Mode::Exact;

    fn q(n: i64, d: i64) -> Coefficient {
        Coefficient::from_ratio(n, d, EX)
    }

    /// h_s by enumerating every composition of s into r parts.
    fn brute_h(alphas: &[Coefficient], s: usize) -> Coefficient {
        fn go(alphas: &[Coefficient], s: usize) -> Coefficient {
            match alphas.split_first() {
                None => {
                    if s == 0 {
                        q(1, 1)
                    } else {
                        q(0, 1)
                    }
                }
                Some((a, rest)) => {
                    let mut acc = q(0, 1);
                    for x in 0..=s {
                        acc += &(&a.pow(x as i32) * &go(rest, s - x));
                    }
                    acc
                }
            }
        }
        go(alphas, s)
    }

    #[test]
    fn homogeneous_weights_match_enumeration() {
        let alphas = vec![q(1, 2), q(-2, 3), q(3, 5)];
        let got: Vec<_> = HomogeneousWeights::new(&alphas, EX).take(8).collect();
        for (s, h) in got.iter().enumerate() {
            assert_eq!(h, &brute_h(&alphas, s), "s = {s}");
        }
    }

    #[test]
    fn single_variable_weights_are_powers() {
        let a = q(3, 7);
        for (s, h) in HomogeneousWeights::new(std::slice::from_ref(&a), EX).take(6).enumerate() {
            assert_eq!(h, a.pow(s as i32));
        }
    }

    #[test]
    fn geometric_sum_converges() {
        let mode = Mode::Float { precision: 128 };
        let env = TailEnvelope {
            r: 1,
            rho: 0.5,
            shift: 0.0,
            degree: 0,
            log_scale: 0.0,
        };
        let half = Coefficient::from_ratio(1, 2, mode);
        let sum = adaptive_sum(&env, 1e-15, 1000, mode, |s| Ok(half.pow(s as i32))).unwrap();
        assert!((sum.value.to_f64() - 2.0).abs() < 1e-14);
        assert!(sum.tail_bound <= 2e-15);
    }

    #[test]
    fn envelope_bounds_true_tail() {
        // sum_{s > S} s^3 2^{-s} against the certified bound
        let env = TailEnvelope {
            r: 1,
            rho: 0.5,
            shift: 0.0,
            degree: 3,
            log_scale: 0.0,
        };
        for last in [10usize, 20, 40] {
            let truth: f64 = (last + 1..2000).map(|s| (s as f64).powi(3) * 0.5f64.powi(s as i32)).sum();
            let bound = env.tail_after(last).unwrap();
            assert!(truth <= bound, "S = {last}: {truth} > {bound}");
        }
        assert!(env.tail_after(1).is_none());
    }

    #[test]
    fn nonconvergence_is_reported() {
        let env = TailEnvelope {
            r: 1,
            rho: 0.999,
            shift: 0.0,
            degree: 10,
            log_scale: 0.0,
        };
        let one = Coefficient::one(EX);
        let r = adaptive_sum(&env, 1e-12, 50, EX, |_| Ok(one.clone()));
        assert!(matches!(r, Err(Error::TailNotConverged { terms: 50, .. })));
    }
}
