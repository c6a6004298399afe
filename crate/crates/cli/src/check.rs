//! Self-check suites behind `wf4 check`.

use serde::{Deserialize, Serialize};
use wf4::equations::{coordinate_point, QuadricSet};
use wf4::hilbert::{cross_check, expand, hs_compact, sample_regular_params, HilbertParams};
use wf4::lattice::{RootSystemF4, WeightVec};
use wf4::reps::{homogeneous_dims, sym2_decompose, weyl_dim, DominantWeight};
use wf4::weyl::{orbit, WeylElement, WeylGroup};
use wf4::{Coweight, RankMethod};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check: String,
    pub passed: bool,
    pub items: Vec<CheckItem>,
}

impl CheckSummary {
    fn new(check: &str, items: Vec<CheckItem>) -> Self {
        CheckSummary { check: check.into(), passed: items.iter().all(|i| i.passed), items }
    }
}

fn item(name: &str, passed: bool, detail: impl Into<String>) -> CheckItem {
    CheckItem { name: name.into(), passed, detail: detail.into() }
}

fn equals<T: PartialEq + std::fmt::Debug>(name: &str, got: T, want: T) -> CheckItem {
    let passed = got == want;
    let detail = if passed { format!("{got:?}") } else { format!("got {got:?}, expected {want:?}") };
    item(name, passed, detail)
}

pub fn check_weyl() -> CheckSummary {
    let w = WeylGroup::get();
    let s: Vec<WeylElement> =
        RootSystemF4::get().simple_roots.iter().map(WeylElement::reflection).collect();
    let m = [[1, 3, 2, 2], [3, 1, 4, 2], [2, 4, 1, 3], [2, 2, 3, 1]];
    let relations = (0..4).all(|i| (0..4).all(|j| s[i].compose(&s[j]).order() == m[i][j]));
    let signs: i64 = w.elements().iter().map(|g| i64::from(g.sign())).sum();
    CheckSummary::new(
        "weyl",
        vec![
            equals("order", w.order(), 1152),
            item("presentation relations", relations, "Coxeter matrix orders 3, 4, 3 and 2"),
            equals("sign sum", signs, 0),
            equals("orbit of omega4", orbit(&WeightVec::e(0), w).len(), 24),
        ],
    )
}

pub fn check_reps() -> CheckSummary {
    let dim = |l: [u32; 4]| weyl_dim(&DominantWeight::from_dynkin(l)).ok();
    let omega4 = DominantWeight::from_dynkin([0, 0, 0, 1]);
    let sym2: Option<Vec<([u64; 4], u64)>> = sym2_decompose(&omega4)
        .ok()
        .map(|m| m.iter().map(|(k, v)| (k.dynkin(), *v)).collect());
    let h = homogeneous_dims(&omega4).ok().map(|h| (h.parabolic_dim, h.variety_dim, h.codim));
    CheckSummary::new(
        "reps",
        vec![
            equals("dim omega4", dim([0, 0, 0, 1]), Some(26)),
            equals("dim omega1", dim([1, 0, 0, 0]), Some(52)),
            equals("dim omega3", dim([0, 0, 1, 0]), Some(273)),
            equals("dim omega2", dim([0, 1, 0, 0]), Some(1274)),
            equals("dim 2 omega4", dim([0, 0, 0, 2]), Some(324)),
            equals(
                "sym2 omega4",
                sym2,
                Some(vec![([0, 0, 0, 0], 1), ([0, 0, 0, 1], 1), ([0, 0, 0, 2], 1)]),
            ),
            equals("homogeneous dims", h, Some((37, 15, 10))),
        ],
    )
}

pub fn check_equations(method: RankMethod) -> CheckSummary {
    let qs = match QuadricSet::load() {
        Ok(q) => q,
        Err(e) => return CheckSummary::new("equations", vec![item("load", false, e.to_string())]),
    };
    let series = HilbertParams::new(Coweight::ZERO, 1)
        .ok()
        .and_then(|p| hs_compact(&p).ok())
        .and_then(|s| expand(&s, 4).ok())
        .unwrap_or_default();
    let piece = |d: usize| qs.graded_piece_dim(d, method).ok().map(|x| x as u64);
    let coeff = |d: usize| series.get(d).and_then(|c| u64::try_from(c.clone()).ok());
    CheckSummary::new(
        "equations",
        vec![
            equals("count", qs.len(), 27),
            equals("span rank", qs.span_rank(method), 27),
            equals("degree 2 quotient", piece(2), Some(324)),
            equals("degree 3 quotient vs series", piece(3), coeff(3)),
            equals("jacobian rank at x1", qs.jacobian_rank_at(&coordinate_point(1)).ok(), Some(10)),
        ],
    )
}

pub fn check_cross(samples: usize, seed: u64, terms: usize, workers: usize) -> CheckSummary {
    let items = sample_regular_params(seed, samples, 6)
        .iter()
        .map(|p| {
            let name = format!("mu = {}, u = {}", p.mu(), p.u());
            match cross_check(p, terms, workers) {
                Ok(r) => item(&name, r.passed(), format!("{terms} coefficients")),
                Err(e) => item(&name, false, e.to_string()),
            }
        })
        .collect();
    CheckSummary::new("cross", items)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass() {
        assert!(check_weyl().passed);
        assert!(check_reps().passed);
        assert!(check_equations(RankMethod::Modular).passed);
        let c = check_cross(2, 1, 20, 2);
        assert!(c.passed);
        assert_eq!(c.items.len(), 2);
    }
}
