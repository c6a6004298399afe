//! Deterministic sweep over coweights `mu` and shifts `u`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wf4::hilbert::HilbertParams;
use wf4::variety::{embedding, OrbifoldReport, VarietyBuild};
use wf4::Coweight;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpec {
    /// Coordinates of `mu` range over `[-mu_bound, mu_bound]`.
    pub mu_bound: i64,
    pub u_max: i64,
    /// Inclusive range `[lo, hi]` for the canonical weight.
    pub target_canonical: [i64; 2],
    #[serde(default)]
    pub require_wellformed: bool,
    #[serde(default = "default_true")]
    pub parity_filter: bool,
    /// When set, each candidate is cut down to a threefold: this many cones,
    /// then quasilinear sections removing the largest remaining weights.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threefold_cones: Option<u32>,
}

fn default_true() -> bool {
    true
}

impl SearchSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::input("InvalidSearchSpec", m));
        if self.mu_bound < 0 {
            return bad("mu_bound must be nonnegative");
        }
        if self.u_max < 1 {
            return bad("u_max must be at least 1");
        }
        if self.target_canonical[0] > self.target_canonical[1] {
            return bad("canonical range is empty");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub mu: Coweight,
    pub u: i64,
    pub weights: Vec<i64>,
    pub dim: i64,
    pub canonical: i64,
    pub wellformed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbifold: Option<OrbifoldReport>,
}

/// Representatives `a1 >= a2 >= a3 >= a4 >= 0`. Signed permutations of the
/// coordinates lie in the Weyl group, so every coweight is equivalent to
/// exactly one of these.
pub fn canonical_coweights(bound: i64) -> Vec<Coweight> {
    let mut out = Vec::new();
    for a4 in 0..=bound {
        for a3 in a4..=bound {
            for a2 in a3..=bound {
                for a1 in a2..=bound {
                    out.push(Coweight([a1, a2, a3, a4]));
                }
            }
        }
    }
    out.sort();
    out
}

/// Sorted absolute values, descending.
pub fn canonicalize(mu: Coweight) -> Coweight {
    let mut a = mu.entries().map(i64::abs);
    a.sort_unstable_by(|x, y| y.cmp(x));
    Coweight(a)
}

fn threefold(base: VarietyBuild, cones: u32) -> Option<VarietyBuild> {
    let mut b = base;
    for _ in 0..cones {
        b = b.cone();
    }
    while b.dim() > 3 {
        let d = *b.weights().last()?;
        b = b.section(d, true).ok()?;
    }
    Some(b)
}

fn evaluate(spec: &SearchSpec, mu: Coweight, u: i64) -> Option<CandidateReport> {
    if spec.parity_filter && mu.coordinate_sum() % 2 != 0 {
        return None;
    }
    let params = HilbertParams::new(mu, u).ok()?;
    let base = VarietyBuild::new(embedding(&params).ok()?);
    let (build, degree, orbifold) = match spec.threefold_cones {
        Some(c) => {
            let b = threefold(base, c)?;
            let degree = b.degree().ok().map(|d| d.to_string());
            let orbifold = b.orbifold_report().ok();
            (b, degree, orbifold)
        }
        None => (base, None, None),
    };
    let canonical = build.canonical_weight();
    let [lo, hi] = spec.target_canonical;
    if !(lo..=hi).contains(&canonical) {
        return None;
    }
    let wellformed = build.is_wellformed();
    if spec.require_wellformed && !wellformed {
        return None;
    }
    Some(CandidateReport {
        mu,
        u,
        weights: build.weights().to_vec(),
        dim: build.dim(),
        canonical,
        wellformed,
        degree,
        orbifold,
    })
}

/// All candidates passing the filters, ordered by `(mu, u)` whatever the
/// worker count.
pub fn run_search(spec: &SearchSpec, workers: usize) -> Result<Vec<CandidateReport>, CliError> {
    spec.validate()?;
    let jobs: Vec<(Coweight, i64)> = canonical_coweights(spec.mu_bound)
        .into_iter()
        .flat_map(|mu| (1..=spec.u_max).map(move |u| (mu, u)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError::input("WorkerPool", e.to_string()))?;
    let results: Vec<Option<CandidateReport>> =
        pool.install(|| jobs.par_iter().map(|(mu, u)| evaluate(spec, *mu, *u)).collect());
    Ok(results.into_iter().flatten().collect())
}
