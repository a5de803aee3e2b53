use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeff::{Coefficient, Mode};
use crate::error::{Error, Result};
use crate::identity::check::{check_identity, IdentityCheckReport, Verdict, DEFAULT_EPSILON};
use crate::identity::sample::Sampler;
use crate::identity::theorem::{Expectation, TheoremId};

const DEFAULT_SUITE: &str = include_str!("../../suites/default.json");

/// A verification grid, as read from a suite file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSpec {
    pub theorems: Vec<TheoremId>,
    #[serde(default)]
    pub seed: u64,
    /// `"exact"` or `"float"`.
    #[serde(default = "exact")]
    pub mode: String,
    #[serde(default)]
    pub precision: Option<u32>,
    pub max_n: usize,
    pub max_r: usize,
    pub points_per_theorem: usize,
    #[serde(default)]
    pub epsilon: Option<f64>,
}

fn exact() -> String {
    "exact".into()
}

impl SuiteSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::usage(format!("invalid suite file: {e}")))
    }

    /// Every identity, exact mode, `n <= 8`, `r <= 3`, five points each.
    pub fn default_suite() -> Self {
        Self::from_json(DEFAULT_SUITE).expect("bundled suite parses")
    }

    pub fn field(&self) -> Result<Mode> {
        match self.mode.as_str() {
            "exact" => Ok(Mode::Exact),
            "float" => Mode::float(self.precision.unwrap_or(Mode::DEFAULT_PRECISION)),
            other => Err(Error::usage(format!("suite mode must be `exact` or `float`, not `{other}`"))),
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon.unwrap_or(DEFAULT_EPSILON)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremSummary {
    pub theorem: TheoremId,
    pub expectation: Expectation,
    pub reports: usize,
    pub exact_pass: usize,
    pub tol_pass: usize,
    pub fail: usize,
    pub max_residual: Option<Coefficient>,
    /// False only for an asserted identity with a failing report.
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub reports: Vec<IdentityCheckReport>,
    pub summary: Vec<TheoremSummary>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.summary.iter().all(|s| s.ok)
    }

    pub fn summary_for(&self, id: TheoremId) -> Option<&TheoremSummary> {
        self.summary.iter().find(|s| s.theorem == id)
    }

    pub fn reports_for(&self, id: TheoremId) -> impl Iterator<Item = &IdentityCheckReport> {
        self.reports.iter().filter(move |r| r.theorem == id)
    }
}

/// Degrees checked for `id` up to `max_n`: `(n, None)`, or all `(n, Some(m))`
/// with `n + m <= max_n` for two-degree identities.
fn degrees(id: TheoremId, max_n: usize) -> Vec<(usize, Option<usize>)> {
    if id.two_degrees() {
        (0..=max_n)
            .flat_map(|n| (0..=max_n - n).map(move |m| (n, Some(m))))
            .collect()
    } else {
        (0..=max_n).map(|n| (n, None)).collect()
    }
}

fn summarize(id: TheoremId, reports: &[IdentityCheckReport]) -> TheoremSummary {
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let fail = count(Verdict::Fail);
    let max_residual = reports
        .iter()
        .map(|r| &r.residual)
        .fold(None::<&Coefficient>, |acc, r| match acc {
            Some(a) if a >= r => Some(a),
            _ => Some(r),
        })
        .cloned();
    TheoremSummary {
        theorem: id,
        expectation: id.expectation(),
        reports: reports.len(),
        exact_pass: count(Verdict::ExactPass),
        tol_pass: count(Verdict::TolPass),
        fail,
        max_residual,
        ok: id.expectation() == Expectation::Suspect || fail == 0,
    }
}

/// Runs every listed identity over seeded points. Output is a function of
/// the suite alone.
///
/// The lattice identity `TE1` always runs in float mode, at the suite
/// precision or the default one when the suite is exact.
pub fn run_suite(spec: &SuiteSpec) -> Result<SuiteOutcome> {
    let mode = spec.field()?;
    let ids: BTreeSet<TheoremId> = spec.theorems.iter().copied().collect();
    if ids.is_empty() {
        return Ok(SuiteOutcome {
            reports: Vec::new(),
            summary: Vec::new(),
        });
    }
    if spec.max_r == 0 {
        return Err(Error::usage("max_r must be at least 1"));
    }
    let epsilon = spec.epsilon();
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::usage("epsilon must lie in (0, 1)"));
    }

    let mut reports = Vec::new();
    let mut summary = Vec::new();
    for id in ids {
        let field = match (id, mode) {
            (TheoremId::TE1, Mode::Exact) => Mode::Float {
                precision: Mode::DEFAULT_PRECISION,
            },
            _ => mode,
        };
        let rng = ChaCha8Rng::seed_from_u64(spec.seed ^ id.salt());
        let mut sampler = Sampler::new(rng, field, spec.max_r);
        let mut own = Vec::new();
        for _ in 0..spec.points_per_theorem {
            let point = sampler.point(id);
            for (n, m) in degrees(id, spec.max_n) {
                own.push(check_identity(id, &point, n, m, epsilon)?);
            }
        }
        summary.push(summarize(id, &own));
        reports.extend(own);
    }
    Ok(SuiteOutcome { reports, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(theorems: Vec<TheoremId>, max_n: usize, points: usize) -> SuiteSpec {
        SuiteSpec {
            theorems,
            seed: 11,
            mode: "exact".into(),
            precision: None,
            max_n,
            max_r: 3,
            points_per_theorem: points,
            epsilon: None,
        }
    }

    #[test]
    fn empty_grid() {
        let out = run_suite(&spec(vec![], 8, 5)).unwrap();
        assert!(out.reports.is_empty());
        assert!(out.summary.is_empty());
        assert!(out.passed());
    }

    #[test]
    fn t120_grid_size() {
        let out = run_suite(&spec(vec![TheoremId::T120], 8, 5)).unwrap();
        assert_eq!(out.reports.len(), 45);
        assert!(out.reports.iter().all(|r| r.verdict == Verdict::ExactPass));
        assert_eq!(out.summary[0].exact_pass, 45);
    }

    #[test]
    fn two_degree_grid() {
        assert_eq!(degrees(TheoremId::T14, 3).len(), 10);
        assert_eq!(degrees(TheoremId::T19, 3).len(), 4);
    }

    #[test]
    fn deterministic_output() {
        let s = spec(vec![TheoremId::T22, TheoremId::SC7, TheoremId::T20], 4, 2);
        let a = serde_json::to_string(&run_suite(&s).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(&s).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn suspects_never_sink_the_suite() {
        let out = run_suite(&spec(vec![TheoremId::SC7], 6, 3)).unwrap();
        assert!(out.passed());
        assert!(out.reports.iter().all(|r| r.note.contains("measured factor")));
    }

    #[test]
    fn spec_parsing() {
        let s = SuiteSpec::default_suite();
        assert_eq!(s.theorems.len(), TheoremId::ALL.len());
        assert_eq!(s.field().unwrap(), Mode::Exact);
        assert!(SuiteSpec::from_json(r#"{"theorems": ["T99"], "max_n": 1, "max_r": 1, "points_per_theorem": 1}"#).is_err());
        let mut bad = spec(vec![TheoremId::T12], 2, 1);
        bad.mode = "complex".into();
        assert!(run_suite(&bad).is_err());
    }
}
