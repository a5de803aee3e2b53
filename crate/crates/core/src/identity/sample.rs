//! Seeded parameter points for the identity suite.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::{Coefficient, Mode};
use crate::families::UnifiedParams;
use crate::identity::check::CheckPoint;
use crate::identity::theorem::TheoremId;

const SCALES: [(i64, i64); 6] = [(1, 1), (2, 1), (3, 1), (1, 2), (2, 3), (-1, 1)];

pub(crate) struct Sampler {
    rng: ChaCha8Rng,
    mode: Mode,
    max_r: usize,
}

impl Sampler {
    pub(crate) fn new(rng: ChaCha8Rng, mode: Mode, max_r: usize) -> Self {
        Sampler { rng, mode, max_r }
    }

    fn q(&self, n: i64, d: i64) -> Coefficient {
        Coefficient::from_ratio(n, d, Mode::Exact).to_mode(self.mode)
    }

    fn rational(&mut self, span: i64, dens: &[i64]) -> Coefficient {
        let n = self.rng.gen_range(-span..=span);
        let d = *dens.choose(&mut self.rng).expect("nonempty");
        self.q(n, d)
    }

    fn pick(&mut self, set: &[(i64, i64)]) -> Coefficient {
        let &(n, d) = set.choose(&mut self.rng).expect("nonempty");
        self.q(n, d)
    }

    fn r(&mut self) -> usize {
        self.rng.gen_range(1..=self.max_r)
    }

    fn alpha(&mut self) -> Coefficient {
        loop {
            let a = self.rational(5, &[1, 2, 3, 4]);
            if !a.is_one() {
                return a;
            }
        }
    }

    fn alphas(&mut self, r: usize) -> Vec<Coefficient> {
        (0..r).map(|_| self.alpha()).collect()
    }

    fn lambda(&mut self) -> Coefficient {
        loop {
            let l = self.rational(5, &[1, 2, 3]);
            if !l.abs().is_one() {
                return l;
            }
        }
    }

    fn abscissa(&mut self) -> Coefficient {
        self.rational(6, &[1, 2, 3, 5])
    }

    /// `(lnA, lnB, lnC)`. Exact mode keeps `a = 1, b = c = e` unless
    /// `general`; float mode draws from `ln 2, ln 3, ln 5`.
    fn logs(&mut self, general: bool) -> (Coefficient, Coefficient, Coefficient) {
        if !self.mode.is_exact() {
            let pool: Vec<Coefficient> = [2, 3, 5]
                .iter()
                .map(|&v| Coefficient::ln_of(&Coefficient::from_i64(v, self.mode), self.mode).expect("float mode"))
                .collect();
            let mut ab = pool.clone();
            ab.shuffle(&mut self.rng);
            let c = pool.choose(&mut self.rng).expect("nonempty").clone();
            return (ab[0].clone(), ab[1].clone(), c);
        }
        if !general {
            return (self.q(0, 1), self.q(1, 1), self.q(1, 1));
        }
        loop {
            let a = self.pick(&[(0, 1), (1, 2), (-1, 1), (2, 1)]);
            let b = self.pick(&[(1, 1), (3, 2), (-1, 2), (3, 1)]);
            let c = self.pick(&[(1, 1), (1, 3), (2, 1), (0, 1)]);
            if a != b {
                return (a, b, c);
            }
        }
    }

    fn standard_bases(&self, p: &mut UnifiedParams) {
        p.ln_a = self.q(0, 1);
        p.ln_b = self.q(1, 1);
        p.ln_c = self.q(1, 1);
    }

    fn params(&mut self, alphas: Vec<Coefficient>, k: u32, general: bool) -> UnifiedParams {
        let (ln_a, ln_b, ln_c) = self.logs(general);
        let x = self.abscissa();
        let y = self.abscissa();
        UnifiedParams {
            k,
            ln_a,
            ln_b,
            ln_c,
            alphas,
            x,
            y,
            hermite_degree: 2,
            mode: self.mode,
        }
    }

    fn generic(&mut self) -> UnifiedParams {
        let r = self.r();
        let k = self.rng.gen_range(0..=2);
        let alphas = self.alphas(r);
        self.params(alphas, k, false)
    }

    fn any_degree(&mut self) -> usize {
        self.rng.gen_range(1..=3)
    }

    /// One point in the domain of `id`.
    pub(crate) fn point(&mut self, id: TheoremId) -> CheckPoint {
        use TheoremId::*;
        match id {
            T22 => {
                let mut p = self.generic();
                p.hermite_degree = self.any_degree();
                let r2 = self.r();
                let mut pt = CheckPoint::new(p);
                pt.second_alphas = Some(self.alphas(r2));
                pt.z = Some(self.abscissa());
                pt.u = Some(self.abscissa());
                pt
            }
            T12 | T120 | T14 => {
                let mut p = self.generic();
                if id != T12 {
                    p.hermite_degree = self.any_degree();
                }
                let mut pt = CheckPoint::new(p);
                pt.z = Some(self.abscissa());
                pt
            }
            T19 | T20 => {
                let mut p = self.generic();
                p.hermite_degree = self.any_degree();
                CheckPoint::new(p)
            }
            T121 | T23 => CheckPoint::new(self.generic()),
            TE1 => self.lattice_point(),
            T26 | C27 => {
                let p = self.generic();
                let a = self.pick(&SCALES);
                let b = if id == T26 { self.pick(&SCALES) } else { self.q(1, 1) };
                let mut pt = CheckPoint::new(p);
                pt.scale = Some((a, b));
                pt
            }
            SC6 => {
                let mut p = self.generic();
                p.y = self.q(0, 1);
                self.standard_bases(&mut p);
                CheckPoint::new(p)
            }
            SC1 | SC2 | SC3 | SC4 | SC5 | SC7 | SC8 => {
                let lambda = self.lambda();
                let (alpha, k) = match id {
                    SC4 | SC8 => (lambda.clone(), 1),
                    SC5 => (-lambda.clone(), 0),
                    _ => (-lambda.clone(), 1),
                };
                let r = self.r();
                let general = matches!(id, SC1 | SC2 | SC3 | SC4 | SC5);
                let mut p = self.params(vec![alpha; r], k, general);
                if matches!(id, SC7 | SC8) {
                    self.standard_bases(&mut p);
                }
                if id == SC3 {
                    p.ln_c = self.q(1, 1);
                }
                if id == SC1 {
                    p.hermite_degree = self.any_degree();
                }
                let mut pt = CheckPoint::new(p);
                pt.lambda = Some(lambda);
                pt
            }
        }
    }

    /// `k = 0, a = 1, b = c = e`, alphas in `(0, 0.6]`, nonnegative shift and
    /// Hermite coefficient so every lattice term is nonnegative.
    fn lattice_point(&mut self) -> CheckPoint {
        let r = self.r();
        let alphas = (0..r)
            .map(|_| {
                let n = self.rng.gen_range(1..=6);
                self.q(n, 10)
            })
            .collect();
        let x = {
            let n = self.rng.gen_range(0..=8);
            self.q(n, 4)
        };
        let y = {
            let n = self.rng.gen_range(0..=4);
            self.q(n, 4)
        };
        let mut p = UnifiedParams::standard(alphas, 0, x, y, self.mode);
        p.hermite_degree = self.rng.gen_range(2..=3);
        CheckPoint::new(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn points_are_valid_and_reproducible() {
        for id in TheoremId::ALL {
            let mode = if id == TheoremId::TE1 { Mode::Float { precision: 128 } } else { Mode::Exact };
            let mut a = Sampler::new(ChaCha8Rng::seed_from_u64(7), mode, 3);
            let mut b = Sampler::new(ChaCha8Rng::seed_from_u64(7), mode, 3);
            for _ in 0..20 {
                let pa = a.point(id);
                assert_eq!(pa, b.point(id));
                pa.params.validate().unwrap();
                assert!((1..=3).contains(&pa.params.r()));
            }
        }
    }

    #[test]
    fn float_logs_come_from_pool() {
        let mode = Mode::Float { precision: 96 };
        let mut s = Sampler::new(ChaCha8Rng::seed_from_u64(3), mode, 2);
        let ln5 = 5f64.ln();
        for _ in 0..10 {
            let (a, b, c) = s.logs(false);
            assert!(a != b);
            for v in [a, b, c] {
                assert!(v.to_f64() > 0.6 && v.to_f64() <= ln5 + 1e-12);
            }
        }
    }
}
