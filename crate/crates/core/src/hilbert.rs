//! Hilbert series of the weighted F4 variety `wΣ(mu, u) ⊂ P^25`.
//!
//! Two independent engines produce the same rational function:
//!
//! * [`hs_general`] evaluates the alternating Weyl-group sum
//!   `Σ_σ ±t^{<σρ,mu>} / (1 - t^{<σχ,mu>+u})` divided by the Weyl denominator
//!   `Σ_σ ±t^{<σρ,mu>}`, with exact polynomial division. It needs a regular `mu`.
//! * [`hs_compact`] assembles the palindromic numerator from the five
//!   W-invariant polynomials `P1..P5` and works for every `mu`, including 0.
//!
//! Both return the numerator over the 26 factors `1 - t^{<χ_i,mu>+u}`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{
    is_regular, pairing, pairing_halves, q, weights_of_v26, Coweight, RootSystemF4, WeightVec,
};
use crate::laurent::LaurentPoly;
use crate::weyl::WeylGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("mu = {0} is not regular: the Weyl denominator vanishes")]
    NonRegularMu(Coweight),
    #[error("u = {0} must be a positive integer")]
    NonPositiveU(i64),
    #[error("weight <{weight}, mu> + u = {value} is not positive")]
    PositivityViolation { weight: WeightVec, value: String },
    #[error("the Weyl-denominator division left a remainder")]
    NonExactDivision,
    #[error("series has non-integral grading; weight sum of mu must be even")]
    NonIntegralGrading,
    #[error("numerator has a term of negative degree")]
    NegativeExponent,
    #[error("expansion coefficient {0} is not an integer")]
    NonIntegerCoefficient(String),
}

impl HilbertError {
    /// Variant name, for diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            HilbertError::NonRegularMu(_) => "NonRegularMu",
            HilbertError::NonPositiveU(_) => "NonPositiveU",
            HilbertError::PositivityViolation { .. } => "PositivityViolation",
            HilbertError::NonExactDivision => "NonExactDivision",
            HilbertError::NonIntegralGrading => "NonIntegralGrading",
            HilbertError::NegativeExponent => "NegativeExponent",
            HilbertError::NonIntegerCoefficient(_) => "NonIntegerCoefficient",
        }
    }
}

/// A coweight `mu` and shift `u` satisfying `<w, mu> + u > 0` on every weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertParams {
    mu: Coweight,
    u: i64,
}

impl HilbertParams {
    pub fn new(mu: Coweight, u: i64) -> Result<Self, HilbertError> {
        if u <= 0 {
            return Err(HilbertError::NonPositiveU(u));
        }
        for w in weights_of_v26() {
            let value = pairing(&w, &mu) + q(u);
            if !value.is_positive() {
                return Err(HilbertError::PositivityViolation {
                    weight: w,
                    value: value.to_string(),
                });
            }
        }
        Ok(HilbertParams { mu, u })
    }

    pub fn mu(&self) -> Coweight {
        self.mu
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    /// The 26 embedding weights `<χ_i, mu> + u` in half units, in the order of
    /// [`weights_of_v26`].
    pub fn weights_halves(&self) -> Vec<i64> {
        weights_of_v26()
            .iter()
            .map(|w| pairing_halves(w, &self.mu) + 2 * self.u)
            .collect()
    }

    /// Smallest `u` making `mu` valid: one more than the largest `|<w, mu>|`.
    pub fn minimal_u(mu: Coweight) -> i64 {
        let max_half = weights_of_v26()
            .iter()
            .map(|w| pairing_halves(w, &mu).abs())
            .max()
            .unwrap_or(0);
        max_half / 2 + 1
    }
}

/// `N(t) / Π (1 - t^{w})`, exponents in half units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: LaurentPoly,
    denominator: Vec<i64>,
}

impl HilbertSeries {
    /// Denominator exponents must be positive; they are kept sorted.
    pub fn new(numerator: LaurentPoly, mut denominator: Vec<i64>) -> Self {
        assert!(denominator.iter().all(|w| *w > 0), "denominator exponents must be positive");
        denominator.sort_unstable();
        HilbertSeries { numerator, denominator }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    /// Denominator factor exponents in half units, ascending.
    pub fn denominator_halves(&self) -> &[i64] {
        &self.denominator
    }

    /// Denominator exponents in true units, when integral.
    pub fn denominator_weights(&self) -> Option<Vec<i64>> {
        self.denominator
            .iter()
            .map(|h| (h % 2 == 0).then_some(h / 2))
            .collect()
    }

    /// All exponents are whole powers of `t`.
    pub fn is_integral(&self) -> bool {
        self.numerator.is_integral() && self.denominator.iter().all(|h| h % 2 == 0)
    }

    /// Pole order at `t = 1` minus one: the projective dimension.
    pub fn dim(&self) -> Option<i64> {
        if !self.is_integral() {
            return None;
        }
        let ord = self.numerator.order_at_one()? as i64;
        Some(self.denominator.len() as i64 - ord - 1)
    }

    /// Multiplies the numerator by `1 - t^{half/2}`.
    pub fn times_one_minus(&self, half: i64) -> HilbertSeries {
        HilbertSeries {
            numerator: &self.numerator * &LaurentPoly::one_minus(half),
            denominator: self.denominator.clone(),
        }
    }

    /// Appends a denominator factor `1 - t^{half/2}`.
    pub fn with_factor(&self, half: i64) -> HilbertSeries {
        let mut d = self.denominator.clone();
        d.push(half);
        HilbertSeries::new(self.numerator.clone(), d)
    }

    /// Drops one denominator factor `1 - t^{half/2}`, if present.
    pub fn without_factor(&self, half: i64) -> Option<HilbertSeries> {
        let pos = self.denominator.iter().position(|w| *w == half)?;
        let mut d = self.denominator.clone();
        d.remove(pos);
        Some(HilbertSeries::new(self.numerator.clone(), d))
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn reduced(&self) -> HilbertSeries {
        let mut num = self.numerator.clone();
        let mut den = Vec::new();
        for &w in &self.denominator {
            match num.div_one_minus(w) {
                Some(qt) => num = qt,
                None => den.push(w),
            }
        }
        HilbertSeries::new(num, den)
    }

    /// `N(t) = t^{c} N(1/t)` with `c` the numerator's top degree, in half units.
    pub fn is_gorenstein_symmetric(&self) -> bool {
        match (self.numerator.min_half(), self.numerator.max_half()) {
            (Some(lo), Some(hi)) => self.numerator.is_palindromic(lo + hi),
            _ => true,
        }
    }

    pub fn to_json(&self) -> SeriesJson {
        let numerator = self
            .numerator
            .terms()
            .iter()
            .map(|(h, c)| {
                let (n, d) = half_to_fraction(*h);
                (n, d, c.to_string())
            })
            .collect();
        let denominator = self.denominator.iter().map(|h| half_to_fraction(*h)).collect();
        SeriesJson {
            numerator,
            denominator,
            dim: self.dim(),
            integral: self.is_integral(),
        }
    }

    pub fn to_pretty(&self) -> String {
        let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
        for w in &self.denominator {
            *counts.entry(*w).or_default() += 1;
        }
        let den: Vec<String> = counts
            .iter()
            .map(|(h, n)| {
                let t = match h {
                    2 => "t".to_string(),
                    h if h % 2 == 0 => format!("t^{}", h / 2),
                    h => format!("t^({h}/2)"),
                };
                if *n == 1 {
                    format!("(1 - {t})")
                } else {
                    format!("(1 - {t})^{n}")
                }
            })
            .collect();
        format!("({}) / ({})", self.numerator, den.join(" "))
    }
}

fn half_to_fraction(h: i64) -> (i64, i64) {
    if h % 2 == 0 {
        (h / 2, 1)
    } else {
        (h, 2)
    }
}

/// Wire form: numerator as `[exp_num, exp_den, "p/q"]`, denominator as
/// `[exp_num, exp_den]` per factor `1 - t^{exp}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub numerator: Vec<(i64, i64, String)>,
    pub denominator: Vec<(i64, i64)>,
    pub dim: Option<i64>,
    pub integral: bool,
}

struct WeylImage {
    sign: i8,
    rho: WeightVec,
    chi: WeightVec,
}

fn weyl_images() -> &'static [WeylImage] {
    static CELL: OnceLock<Vec<WeylImage>> = OnceLock::new();
    CELL.get_or_init(|| {
        let rho = &RootSystemF4::get().weyl_vector;
        let chi = WeightVec::e(0);
        WeylGroup::get()
            .elements()
            .iter()
            .map(|g| WeylImage {
                sign: g.sign(),
                rho: g.act(rho),
                chi: g.act(&chi),
            })
            .collect()
    })
}

/// Hilbert series from the alternating Weyl-group sum, with one worker.
pub fn hs_general(p: &HilbertParams) -> Result<HilbertSeries, HilbertError> {
    hs_general_with_workers(p, 1)
}

/// Partial sums over a slice of the group: the Weyl denominator contribution
/// and, per orbit point `σχ`, the signed sum of `t^{<σρ,mu>}`.
fn partial_sums(
    images: &[WeylImage],
    mu: &Coweight,
) -> (LaurentPoly, BTreeMap<WeightVec, LaurentPoly>) {
    let mut delta = LaurentPoly::zero();
    let mut by_orbit: BTreeMap<WeightVec, LaurentPoly> = BTreeMap::new();
    for img in images {
        let e = pairing_halves(&img.rho, mu);
        let s = q(i64::from(img.sign));
        delta.add_term(e, s.clone());
        by_orbit.entry(img.chi.clone()).or_default().add_term(e, s);
    }
    (delta, by_orbit)
}

/// [`hs_general`] with the 1152-term sums split across `workers` threads.
/// Exact arithmetic makes the merged result independent of the split.
pub fn hs_general_with_workers(
    p: &HilbertParams,
    workers: usize,
) -> Result<HilbertSeries, HilbertError> {
    let mu = p.mu();
    if !is_regular(&mu) {
        return Err(HilbertError::NonRegularMu(mu));
    }
    let images = weyl_images();
    let chunk = images.len().div_ceil(workers.max(1));
    let parts: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = images
            .chunks(chunk)
            .map(|c| s.spawn(move || partial_sums(c, &mu)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut delta = LaurentPoly::zero();
    let mut by_orbit: BTreeMap<WeightVec, LaurentPoly> = BTreeMap::new();
    for (d, m) in parts {
        delta = &delta + &d;
        for (w, a) in m {
            let slot = by_orbit.entry(w).or_default();
            *slot = &*slot + &a;
        }
    }

    // Common denominator over the 24 orbit points.
    let exps: Vec<(WeightVec, i64)> = by_orbit
        .keys()
        .map(|w| (w.clone(), pairing_halves(w, &mu) + 2 * p.u()))
        .collect();
    let full = exps
        .iter()
        .fold(LaurentPoly::one(), |acc, (_, e)| &acc * &LaurentPoly::one_minus(*e));
    let mut combined = LaurentPoly::zero();
    for (w, e) in &exps {
        let others = full.div_one_minus(*e).ok_or(HilbertError::NonExactDivision)?;
        combined = &combined + &(&by_orbit[w] * &others);
    }
    let reduced = combined.div_exact(&delta).ok_or(HilbertError::NonExactDivision)?;

    // The two zero weights contribute (1 - t^u)^2 to both sides.
    let zero = LaurentPoly::one_minus(2 * p.u());
    let numerator = &(&reduced * &zero) * &zero;
    let mut denominator: Vec<i64> = exps.iter().map(|(_, e)| *e).collect();
    denominator.extend([2 * p.u(), 2 * p.u()]);
    Ok(HilbertSeries::new(numerator, denominator))
}

/// Term families of the `P_k`, written out for `mu = (a1, a2, a3, a4)`.
/// Each yields half-unit exponents.
struct Terms([i64; 4]);

const SIGNS: [i64; 2] = [1, -1];

impl Terms {
    fn signs4() -> impl Iterator<Item = [i64; 4]> {
        (0..16u32).map(|b| std::array::from_fn(|k| if b >> k & 1 == 0 { 1 } else { -1 }))
    }

    fn half_sum(&self, eta: &[i64; 4]) -> i64 {
        eta.iter().zip(&self.0).map(|(e, a)| e * a).sum()
    }

    /// `t^{±a_i}`: 8 terms.
    fn singles(&self) -> Vec<i64> {
        SIGNS.iter().flat_map(|s| self.0.iter().map(move |a| 2 * s * a)).collect()
    }

    /// `t^{±2a_i}`: 8 terms.
    fn doubled_singles(&self) -> Vec<i64> {
        self.singles().into_iter().map(|h| 2 * h).collect()
    }

    /// `t^{1/2(±a1±a2±a3±a4)}`: 16 terms.
    fn halves(&self) -> Vec<i64> {
        Self::signs4().map(|eta| self.half_sum(&eta)).collect()
    }

    /// `t^{±a1±a2±a3±a4}`: 16 terms.
    fn full_sums(&self) -> Vec<i64> {
        self.halves().into_iter().map(|h| 2 * h).collect()
    }

    /// `t^{±a_m±a_n}`, `m < n`: 24 terms.
    fn pairs(&self) -> Vec<i64> {
        let a = self.0;
        let mut out = Vec::new();
        for s1 in SIGNS {
            for s2 in SIGNS {
                for m in 0..4 {
                    for n in m + 1..4 {
                        out.push(2 * (s1 * a[m] + s2 * a[n]));
                    }
                }
            }
        }
        out
    }

    /// `t^{±a_l±a_m±a_n}`, `l < m < n`: 32 terms.
    fn triples(&self) -> Vec<i64> {
        let a = self.0;
        let mut out = Vec::new();
        for s1 in SIGNS {
            for s2 in SIGNS {
                for s3 in SIGNS {
                    for l in 0..4 {
                        for m in l + 1..4 {
                            for n in m + 1..4 {
                                out.push(2 * (s1 * a[l] + s2 * a[m] + s3 * a[n]));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// `t^{η_m a_m} t^{1/2 η·a}`: 64 terms, with `a_m` carrying the same sign
    /// as in the half-sum, giving the weights `1/2(±3,±1,±1,±1)`.
    fn shifted_halves(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for eta in Self::signs4() {
            let h = self.half_sum(&eta);
            for m in 0..4 {
                out.push(2 * eta[m] * self.0[m] + h);
            }
        }
        out
    }
}

fn accumulate(poly: &mut LaurentPoly, exps: &[i64], coeff: i64) {
    for h in exps {
        poly.add_int_term(*h, coeff);
    }
}

/// The five W-invariant Laurent polynomials `P1..P5` of the compact form.
pub fn compact_polys(mu: &Coweight) -> [LaurentPoly; 5] {
    let t = Terms(mu.entries());
    let (singles, halves, pairs, triples) = (t.singles(), t.halves(), t.pairs(), t.triples());
    let (shifted, doubled, full) = (t.shifted_halves(), t.doubled_singles(), t.full_sums());

    let mut p1 = LaurentPoly::zero();
    accumulate(&mut p1, &singles, 1);
    accumulate(&mut p1, &halves, 1);
    p1.add_int_term(0, 3);

    let mut p2 = LaurentPoly::zero();
    accumulate(&mut p2, &singles, 2);
    accumulate(&mut p2, &halves, 2);
    accumulate(&mut p2, &pairs, 1);
    p2.add_int_term(0, 6);

    let mut p3 = LaurentPoly::zero();
    accumulate(&mut p3, &halves, 7);
    accumulate(&mut p3, &shifted, 1);
    accumulate(&mut p3, &pairs, 3);
    accumulate(&mut p3, &triples, 1);
    accumulate(&mut p3, &singles, 7);
    p3.add_int_term(0, 15);

    let mut p4 = LaurentPoly::zero();
    accumulate(&mut p4, &halves, 12);
    accumulate(&mut p4, &shifted, 2);
    accumulate(&mut p4, &pairs, 5);
    accumulate(&mut p4, &triples, 2);
    accumulate(&mut p4, &singles, 12);
    accumulate(&mut p4, &doubled, 1);
    accumulate(&mut p4, &full, 1);
    p4.add_int_term(0, 26);

    let mut p5 = LaurentPoly::zero();
    accumulate(&mut p5, &halves, 6);
    accumulate(&mut p5, &shifted, 1);
    accumulate(&mut p5, &pairs, 3);
    accumulate(&mut p5, &triples, 1);
    accumulate(&mut p5, &singles, 6);
    accumulate(&mut p5, &doubled, 1);
    accumulate(&mut p5, &full, 1);
    p5.add_int_term(0, 15);

    [p1, p2, p3, p4, p5]
}

/// Compact-form numerator:
/// `1 - P1(t^{2u}+t^{13u}) + P2(t^{3u}+t^{12u}) - P3(t^{5u}+t^{10u})
///  + P4(t^{6u}+t^{9u}) - P5(t^{7u}+t^{8u}) + t^{15u}`.
pub fn compact_numerator(p: &HilbertParams) -> LaurentPoly {
    let polys = compact_polys(&p.mu());
    let u2 = 2 * p.u();
    let mut n = LaurentPoly::one();
    // (k, index of P_k, sign)
    for (k, idx, sign) in [(2, 0, -1), (3, 1, 1), (5, 2, -1), (6, 3, 1), (7, 4, -1)] {
        let pair = LaurentPoly::from_terms([(k * u2, q(sign)), ((15 - k) * u2, q(sign))]);
        n = &n + &(&polys[idx] * &pair);
    }
    n.add_int_term(15 * u2, 1);
    n
}

/// Hilbert series from the compact closed form; valid for every `mu`.
pub fn hs_compact(p: &HilbertParams) -> Result<HilbertSeries, HilbertError> {
    Ok(HilbertSeries::new(compact_numerator(p), p.weights_halves()))
}

/// The numerator over the 24 nonzero-weight factors, i.e. the compact
/// numerator with `(1 - t^u)^2` divided out.
pub fn numerator_24form(p: &HilbertParams) -> Result<LaurentPoly, HilbertError> {
    let one_minus = 2 * p.u();
    compact_numerator(p)
        .div_one_minus(one_minus)
        .and_then(|x| x.div_one_minus(one_minus))
        .ok_or(HilbertError::NonExactDivision)
}

/// First `n_terms` coefficients of the power series.
pub fn expand(series: &HilbertSeries, n_terms: usize) -> Result<Vec<BigInt>, HilbertError> {
    if !series.is_integral() {
        return Err(HilbertError::NonIntegralGrading);
    }
    if series.numerator().min_half().is_some_and(|h| h < 0) {
        return Err(HilbertError::NegativeExponent);
    }
    let mut c = vec![num_rational::BigRational::zero(); n_terms];
    for (h, x) in series.numerator().terms() {
        let e = (h / 2) as usize;
        if e < n_terms {
            c[e] = x.clone();
        }
    }
    for h in series.denominator_halves() {
        let w = (h / 2) as usize;
        for i in w..n_terms {
            let prev = c[i - w].clone();
            c[i] += prev;
        }
    }
    c.into_iter()
        .map(|x| {
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(HilbertError::NonIntegerCoefficient(x.to_string()))
            }
        })
        .collect()
}

/// `count` distinct regular coweights with even coordinate sum and entries in
/// `[-bound, bound]`, each paired with its minimal valid `u`. Deterministic in
/// `seed`.
pub fn sample_regular_params(seed: u64, count: usize, bound: i64) -> Vec<HilbertParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mu = Coweight(std::array::from_fn(|_| rng.gen_range(-bound..=bound)));
        if mu.coordinate_sum() % 2 != 0 || !is_regular(&mu) || !seen.insert(mu) {
            continue;
        }
        let u = HilbertParams::minimal_u(mu);
        out.push(HilbertParams::new(mu, u).expect("minimal u is valid"));
    }
    out
}

/// Outcome of comparing the two engines on one parameter set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub mu: Coweight,
    pub u: i64,
    pub series_equal: bool,
    pub coefficients_equal: bool,
    pub terms: usize,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.series_equal && self.coefficients_equal
    }
}

/// Compares [`hs_general`] and [`hs_compact`] as rational functions and on
/// the first `terms` expansion coefficients.
pub fn cross_check(p: &HilbertParams, terms: usize, workers: usize) -> Result<CrossCheck, HilbertError> {
    let g = hs_general_with_workers(p, workers)?;
    let c = hs_compact(p)?;
    Ok(CrossCheck {
        mu: p.mu(),
        u: p.u(),
        series_equal: g.reduced() == c.reduced(),
        coefficients_equal: expand(&g, terms)? == expand(&c, terms)?,
        terms,
    })
}
