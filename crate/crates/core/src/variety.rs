//! Embedding data, projective cones, sections and the invariants of the
//! resulting polarized varieties.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hilbert::{hs_compact, HilbertError, HilbertParams, HilbertSeries};
use crate::lattice::{q, Coweight, Q};
use crate::laurent::LaurentPoly;

/// Dimension of the homogeneous variety `F4/P` for the 26-dimensional orbit.
pub const BASE_DIM: i64 = 15;
/// Number of coordinates of the ambient weighted projective space.
pub const BASE_GENERATORS: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VarietyError {
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error("embedding weights of mu = {mu}, u = {u} are not integers: the coordinate sum of mu is odd")]
    WeightsNotIntegral { mu: Coweight, u: i64 },
    #[error("no generator of weight {0} to eliminate")]
    NoMatchingGenerator(i64),
    #[error("section degree {0} must be positive")]
    NonPositiveDegree(i64),
    #[error("pole order {found} at t = 1 does not match dimension {dim}")]
    PoleOrderMismatch { dim: i64, found: i64 },
    #[error("ladder index {0} is outside 6..=16")]
    IndexOutOfRange(i64),
    #[error("locus has dimension {0}, not 0")]
    NotZeroDimensional(i64),
    #[error("invalid quotient singularity: {0}")]
    InvalidSingularity(String),
}

impl VarietyError {
    /// Variant name, for diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            VarietyError::Hilbert(e) => e.name(),
            VarietyError::WeightsNotIntegral { .. } => "WeightsNotIntegral",
            VarietyError::NoMatchingGenerator(_) => "NoMatchingGenerator",
            VarietyError::NonPositiveDegree(_) => "NonPositiveDegree",
            VarietyError::PoleOrderMismatch { .. } => "PoleOrderMismatch",
            VarietyError::IndexOutOfRange(_) => "IndexOutOfRange",
            VarietyError::NotZeroDimensional(_) => "NotZeroDimensional",
            VarietyError::InvalidSingularity(_) => "InvalidSingularity",
        }
    }
}

/// The 26 integer weights of `wΣ(mu, u) ⊂ wP^25` and its Hilbert series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingData {
    params: HilbertParams,
    weights: Vec<i64>,
    series: HilbertSeries,
}

impl EmbeddingData {
    pub fn params(&self) -> HilbertParams {
        self.params
    }

    /// Ascending.
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn series(&self) -> &HilbertSeries {
        &self.series
    }

    pub fn dim(&self) -> i64 {
        BASE_DIM
    }

    pub fn codim(&self) -> i64 {
        BASE_GENERATORS as i64 - 1 - BASE_DIM
    }
}

pub fn embedding(p: &HilbertParams) -> Result<EmbeddingData, VarietyError> {
    let halves = p.weights_halves();
    if halves.iter().any(|h| h % 2 != 0) {
        return Err(VarietyError::WeightsNotIntegral { mu: p.mu(), u: p.u() });
    }
    let mut weights: Vec<i64> = halves.iter().map(|h| h / 2).collect();
    weights.sort_unstable();
    Ok(EmbeddingData {
        params: *p,
        weights,
        series: hs_compact(p)?,
    })
}

/// The gcd half of well-formedness: every subset omitting one weight has gcd 1.
pub fn is_wellformed_weights(weights: &[i64]) -> bool {
    if weights.len() < 2 {
        return false;
    }
    (0..weights.len()).all(|skip| {
        weights
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .fold(0i64, |g, (_, w)| g.gcd(w))
            == 1
    })
}

/// A hypersurface section of degree `d`; quasilinear sections eliminate a
/// generator of weight `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Section {
    pub d: i64,
    pub quasilinear: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuasiSmoothness {
    PaperAsserted,
    Unverified,
}

/// A base embedding followed by `cones` projective cones and a list of sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyBuild {
    base: EmbeddingData,
    cones: u32,
    sections: Vec<Section>,
    weights: Vec<i64>,
    series: HilbertSeries,
    canonical: i64,
    quasi_smooth: QuasiSmoothness,
}

impl VarietyBuild {
    pub fn new(base: EmbeddingData) -> Self {
        VarietyBuild {
            canonical: -11 * base.params.u(),
            weights: base.weights.clone(),
            series: base.series.clone(),
            base,
            cones: 0,
            sections: Vec::new(),
            quasi_smooth: QuasiSmoothness::Unverified,
        }
    }

    pub fn base(&self) -> &EmbeddingData {
        &self.base
    }

    pub fn cones(&self) -> u32 {
        self.cones
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    /// Generator weights, ascending.
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn series(&self) -> &HilbertSeries {
        &self.series
    }

    pub fn quasi_smoothness(&self) -> QuasiSmoothness {
        self.quasi_smooth
    }

    pub fn dim(&self) -> i64 {
        BASE_DIM + i64::from(self.cones) - self.sections.len() as i64
    }

    /// Canonical weight tracked step by step through the build.
    pub fn canonical_weight(&self) -> i64 {
        self.canonical
    }

    /// `-11u + Σ d_i - c`, recomputed from the recipe.
    pub fn canonical_structural(&self) -> i64 {
        -11 * self.base.params.u() + self.sections.iter().map(|s| s.d).sum::<i64>()
            - i64::from(self.cones)
    }

    /// Numerator degree minus the sum of the generator weights.
    pub fn canonical_from_series(&self) -> i64 {
        let top = self.series.numerator().max_half().unwrap_or(0);
        (top - self.series.denominator_halves().iter().sum::<i64>()) / 2
    }

    pub fn cone(&self) -> VarietyBuild {
        let mut next = self.clone();
        next.cones += 1;
        next.weights.insert(0, 1);
        next.series = self.series.with_factor(2);
        next.canonical -= 1;
        next
    }

    pub fn section(&self, d: i64, quasilinear: bool) -> Result<VarietyBuild, VarietyError> {
        if d <= 0 {
            return Err(VarietyError::NonPositiveDegree(d));
        }
        let mut next = self.clone();
        if quasilinear {
            let pos = self
                .weights
                .iter()
                .position(|w| *w == d)
                .ok_or(VarietyError::NoMatchingGenerator(d))?;
            next.weights.remove(pos);
            next.series = self
                .series
                .without_factor(2 * d)
                .ok_or(VarietyError::NoMatchingGenerator(d))?;
        } else {
            next.series = self.series.times_one_minus(2 * d);
        }
        next.sections.push(Section { d, quasilinear });
        next.canonical += d;
        Ok(next)
    }

    pub fn with_quasi_smoothness(mut self, q: QuasiSmoothness) -> Self {
        self.quasi_smooth = q;
        self
    }

    /// Gcd condition of well-formedness on the current generator weights.
    pub fn is_wellformed(&self) -> bool {
        is_wellformed_weights(&self.weights)
    }

    /// `D^n = lim_{t->1} (1-t)^{n+1} P(t)` for `n = dim`.
    pub fn degree(&self) -> Result<Q, VarietyError> {
        let (value, pole) = leading_at_one(self.series.numerator(), &self.weights)?;
        if pole != self.dim() + 1 {
            return Err(VarietyError::PoleOrderMismatch { dim: self.dim(), found: pole });
        }
        Ok(value)
    }

    /// `(kD)^n = k^n D^n`.
    pub fn degree_multiple(&self, k: i64) -> Result<Q, VarietyError> {
        let n = u32::try_from(self.dim()).map_err(|_| VarietyError::PoleOrderMismatch {
            dim: self.dim(),
            found: self.dim() + 1,
        })?;
        Ok(self.degree()? * Q::from_integer(BigInt::from(k).pow(n)))
    }

    /// Length of the locus where every weight-1 generator vanishes.
    pub fn orbifold_point_count(&self) -> Result<BigInt, VarietyError> {
        // Cutting by each weight-1 generator cancels one factor (1 - t).
        let rest: Vec<i64> = self.weights.iter().copied().filter(|w| *w != 1).collect();
        zero_dim_length(self.series.numerator(), &rest)
    }

    /// Point count with the singularity type when the locus consists of
    /// points of type `1/e(1,...,1)`.
    pub fn orbifold_report(&self) -> Result<OrbifoldReport, VarietyError> {
        let count = self.orbifold_point_count()?;
        let ones = self.weights.iter().filter(|w| **w == 1).count() as i64;
        let e = self.weights.iter().filter(|w| **w != 1).fold(0i64, |g, w| g.gcd(w));
        let singularity = if count.is_positive() && e >= 2 && ones == self.dim() {
            Some(QuotSingularity::new(e, vec![1; ones as usize])?)
        } else {
            None
        };
        Ok(OrbifoldReport {
            count,
            isolated: singularity.as_ref().map(QuotSingularity::is_isolated),
            terminal: singularity.as_ref().map(QuotSingularity::is_terminal),
            singularity,
        })
    }

    pub fn report(&self) -> Result<BuildReport, VarietyError> {
        let degree = self.degree()?;
        let orbifold = self.orbifold_report().ok();
        Ok(BuildReport {
            mu: self.base.params.mu(),
            u: self.base.params.u(),
            cones: self.cones,
            sections: self.sections.clone(),
            weights: self.weights.clone(),
            dim: self.dim(),
            canonical: self.canonical,
            degree: degree.to_string(),
            wellformed: self.is_wellformed(),
            quasi_smooth: self.quasi_smooth,
            orbifold,
        })
    }
}

/// Length of the 0-dimensional scheme with Hilbert series
/// `num / Π(1 - t^{w})`: `e · lim_{t->1} (1-t) P(t)` with `e` the gcd of the
/// weights. An empty locus has length 0.
pub fn zero_dim_length(num: &LaurentPoly, weights: &[i64]) -> Result<BigInt, VarietyError> {
    let (value, pole) = leading_at_one(num, weights)?;
    match pole {
        p if p <= 0 => Ok(BigInt::zero()),
        1 => {
            let e = weights.iter().fold(0i64, |g, w| g.gcd(w));
            let len = value * q(e);
            if !len.is_integer() {
                return Err(VarietyError::NotZeroDimensional(0));
            }
            Ok(len.to_integer())
        }
        p => Err(VarietyError::NotZeroDimensional(p - 1)),
    }
}

/// For `num / Π(1 - t^{w})` with integral `num` returns the leading
/// coefficient at `t = 1` together with the pole order.
fn leading_at_one(num: &LaurentPoly, weights: &[i64]) -> Result<(Q, i64), VarietyError> {
    if !num.is_integral() {
        return Err(HilbertError::NonIntegralGrading.into());
    }
    let Some(ord) = num.order_at_one() else {
        return Ok((Q::zero(), i64::MIN));
    };
    let mut reduced = num.clone();
    for _ in 0..ord {
        reduced = reduced.div_one_minus(2).expect("order at one was computed");
    }
    let prod = weights.iter().fold(Q::one(), |acc, w| acc * q(*w));
    Ok((reduced.eval_at_one() / prod, weights.len() as i64 - ord as i64))
}

/// Cyclic quotient singularity `1/r(a_1, ..., a_n)` with residues reduced mod `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotSingularity {
    r: i64,
    a: Vec<i64>,
}

impl QuotSingularity {
    pub fn new(r: i64, a: Vec<i64>) -> Result<Self, VarietyError> {
        if r < 2 {
            return Err(VarietyError::InvalidSingularity(format!("index r = {r} must be at least 2")));
        }
        let a: Vec<i64> = a.into_iter().map(|x| x.rem_euclid(r)).collect();
        if a.is_empty() || a.contains(&0) {
            return Err(VarietyError::InvalidSingularity(
                "weights must be nonzero modulo r".to_string(),
            ));
        }
        Ok(QuotSingularity { r, a })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn is_isolated(&self) -> bool {
        self.a.iter().all(|x| x.gcd(&self.r) == 1)
    }

    /// Every `k = 1..r-1` has residue sum `Σ (k a_j mod r) > r`.
    pub fn is_terminal(&self) -> bool {
        (1..self.r).all(|k| self.a.iter().map(|x| (k * x).rem_euclid(self.r)).sum::<i64>() > self.r)
    }
}

impl std::fmt::Display for QuotSingularity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let a: Vec<String> = self.a.iter().map(i64::to_string).collect();
        write!(f, "1/{}({})", self.r, a.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldReport {
    #[serde(with = "bigint_string")]
    pub count: BigInt,
    pub singularity: Option<QuotSingularity>,
    pub isolated: Option<bool>,
    pub terminal: Option<bool>,
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// Derived invariants of a build, as emitted by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildReport {
    pub mu: Coweight,
    pub u: i64,
    pub cones: u32,
    pub sections: Vec<Section>,
    pub weights: Vec<i64>,
    pub dim: i64,
    pub canonical: i64,
    pub degree: String,
    pub wellformed: bool,
    pub quasi_smooth: QuasiSmoothness,
    pub orbifold: Option<OrbifoldReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseSpec {
    pub mu: [i64; 4],
    pub u: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionSpec {
    pub d: i64,
    #[serde(default = "default_true")]
    pub quasilinear: bool,
    #[serde(default = "default_count")]
    pub count: u32,
}

fn default_true() -> bool {
    true
}

fn default_count() -> u32 {
    1
}

/// A build recipe: base embedding, then cones, then sections in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Recipe {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub base: BaseSpec,
    #[serde(default)]
    pub cones: u32,
    #[serde(default)]
    pub sections: Vec<SectionSpec>,
}

impl Recipe {
    /// Twelve quasilinear linear sections of the straight embedding.
    pub fn f4st() -> Recipe {
        Recipe {
            name: Some("f4st".into()),
            base: BaseSpec { mu: [0; 4], u: 1 },
            cones: 0,
            sections: vec![SectionSpec { d: 1, quasilinear: true, count: 12 }],
        }
    }

    /// Three cones over the `u = 2` embedding cut by fifteen quadrics.
    pub fn nwf() -> Recipe {
        Recipe::ladder_unchecked(5)
    }

    fn ladder_unchecked(k: i64) -> Recipe {
        Recipe {
            name: Some(format!("ladder-k{k}")),
            base: BaseSpec { mu: [0; 4], u: 2 },
            cones: (k - 2) as u32,
            sections: vec![SectionSpec { d: 2, quasilinear: true, count: (k + 10) as u32 }],
        }
    }

    pub fn ladder(k: i64) -> Result<Recipe, VarietyError> {
        if !(6..=16).contains(&k) {
            return Err(VarietyError::IndexOutOfRange(k));
        }
        Ok(Recipe::ladder_unchecked(k))
    }

    /// Sections with `count` expanded, in application order.
    pub fn section_list(&self) -> Vec<Section> {
        self.sections
            .iter()
            .flat_map(|s| {
                std::iter::repeat(Section { d: s.d, quasilinear: s.quasilinear }).take(s.count as usize)
            })
            .collect()
    }

    fn is_paper_example(&self) -> bool {
        let same = |r: &Recipe| {
            r.base == self.base && r.cones == self.cones && r.section_list() == self.section_list()
        };
        same(&Recipe::f4st()) || (5..=16).any(|k| same(&Recipe::ladder_unchecked(k)))
    }

    pub fn build(&self) -> Result<VarietyBuild, VarietyError> {
        let params = HilbertParams::new(Coweight(self.base.mu), self.base.u)?;
        let mut b = VarietyBuild::new(embedding(&params)?);
        for _ in 0..self.cones {
            b = b.cone();
        }
        for s in self.section_list() {
            b = b.section(s.d, s.quasilinear)?;
        }
        if self.is_paper_example() {
            b = b.with_quasi_smoothness(QuasiSmoothness::PaperAsserted);
        }
        Ok(b)
    }
}

/// The index-`k` threefold: weights `{1^{k-2}, 2^{16-k}}`, canonical weight `k`.
pub fn family_ladder(k: i64) -> Result<VarietyBuild, VarietyError> {
    Recipe::ladder(k)?.build()
}

/// Multiset of weights as `weight -> multiplicity`.
pub fn weight_counts(weights: &[i64]) -> BTreeMap<i64, usize> {
    let mut m = BTreeMap::new();
    for w in weights {
        *m.entry(*w).or_default() += 1;
    }
    m
}

/// `{1^3, 2^11}`-style rendering.
pub fn format_weights(weights: &[i64]) -> String {
    let parts: Vec<String> = weight_counts(weights)
        .iter()
        .map(|(w, n)| if *n == 1 { w.to_string() } else { format!("{w}^{n}") })
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Integer value of an exact rational, when it is one.
pub fn as_integer(x: &Q) -> Option<i64> {
    x.is_integer().then(|| x.to_integer().to_i64()).flatten()
}
