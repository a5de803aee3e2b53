#![allow(dead_code)]

use hermite_genocchi::dist::{Ghg, GhgParams};

/// `(alphas, m, gamma, beta, n)` for the distribution parameter grid.
pub const GRID: [(&[f64], usize, f64, f64, usize); 12] = [
    (&[0.5], 2, 0.0, 0.0, 0),
    (&[0.3], 2, 0.5, 0.25, 2),
    (&[0.6], 3, 1.0, 0.5, 4),
    (&[0.8], 2, 0.0, 1.0, 3),
    (&[0.5, 0.5], 2, 0.0, 0.0, 0),
    (&[0.4, 0.7], 2, 0.0, 0.5, 1),
    (&[0.25, 0.5], 3, 2.0, 0.0, 4),
    (&[0.6, 0.3], 2, 1.5, 2.0, 2),
    (&[0.5, 0.5, 0.5], 2, 0.0, 0.0, 0),
    (&[0.2, 0.4, 0.6], 2, 0.0, 0.75, 2),
    (&[0.6, 0.6, 0.3], 3, 1.0, 0.25, 3),
    (&[0.3, 0.5, 0.4], 2, 0.5, 1.0, 4),
];

/// Points at which the marginal cdf is compared.
pub const CDF_POINTS: [u64; 3] = [0, 1, 3];

pub fn model(index: usize) -> Ghg {
    let (alphas, m, gamma, beta, n) = GRID[index];
    Ghg::new(GhgParams::new(alphas, m, gamma, beta, n).unwrap()).unwrap()
}

pub fn models() -> Vec<Ghg> {
    (0..GRID.len()).map(model).collect()
}

pub fn t20_suite() -> &'static str {
    r#"{"theorems": ["T20"], "seed": 20240601, "mode": "exact", "max_n": 6, "max_r": 3, "points_per_theorem": 5}"#
}
