//! The 27 quadrics generating the ideal of the F4 orbit closure in `P^25`,
//! with evaluation, rank and Hilbert-function checks.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::lattice::{q, Q};
use crate::linalg::{rank, rank_exact, RankMethod, SparseRow};

/// Number of coordinates `x_1..x_26`.
pub const NVARS: usize = 26;
/// Largest degree accepted by [`QuadricSet::graded_piece_dim`].
pub const MAX_GRADED_DEGREE: usize = 4;

/// SHA-256 of the canonical record listing of [`TABLE`].
pub const TABLE_SHA256: &str = "b630a85dbd79daf546eb3388391bdaa339d035fe8edb5e7f47029e4dc86b9445";

/// `(equation, i, j, numerator, denominator)`, 1-based, `i <= j`.
pub static TABLE: &[(u8, u8, u8, i8, i8)] = &[
    (1, 1, 25, 1, 1),
    (1, 1, 26, -1, 2),
    (1, 4, 5, -3, 2),
    (1, 6, 7, -3, 2),
    (1, 8, 9, -3, 2),
    (1, 10, 11, 3, 2),
    (2, 1, 12, 1, 1),
    (2, 4, 25, -1, 3),
    (2, 4, 26, -1, 3),
    (2, 6, 13, -1, 1),
    (2, 8, 14, -1, 1),
    (2, 10, 15, 1, 1),
    (3, 1, 16, 1, 1),
    (3, 4, 17, -1, 1),
    (3, 6, 25, 1, 3),
    (3, 6, 26, -2, 3),
    (3, 11, 14, -1, 1),
    (3, 9, 15, 1, 1),
    (4, 1, 18, 1, 1),
    (4, 4, 19, -1, 1),
    (4, 8, 25, 1, 3),
    (4, 8, 26, -2, 3),
    (4, 11, 13, 1, 1),
    (4, 7, 15, -1, 1),
    (5, 1, 20, 1, 1),
    (5, 4, 21, -1, 1),
    (5, 10, 25, -1, 3),
    (5, 10, 26, 2, 3),
    (5, 9, 13, -1, 1),
    (5, 7, 14, 1, 1),
    (6, 1, 22, 1, 1),
    (6, 6, 19, -1, 1),
    (6, 8, 17, 1, 1),
    (6, 11, 25, -1, 3),
    (6, 11, 26, -1, 3),
    (6, 5, 15, 1, 1),
    (7, 1, 23, 1, 1),
    (7, 6, 21, -1, 1),
    (7, 10, 17, -1, 1),
    (7, 9, 25, 1, 3),
    (7, 9, 26, 1, 3),
    (7, 5, 14, -1, 1),
    (8, 1, 24, 1, 1),
    (8, 8, 21, -1, 1),
    (8, 10, 19, -1, 1),
    (8, 7, 25, -1, 3),
    (8, 7, 26, -1, 3),
    (8, 5, 13, 1, 1),
    (9, 1, 2, 1, 1),
    (9, 11, 21, -1, 1),
    (9, 9, 19, -1, 1),
    (9, 7, 17, -1, 1),
    (9, 5, 25, -1, 3),
    (9, 5, 26, 2, 3),
    (10, 1, 3, 1, 1),
    (10, 6, 24, 1, 1),
    (10, 8, 23, -1, 1),
    (10, 10, 22, -1, 1),
    (10, 15, 21, -1, 1),
    (10, 14, 19, -1, 1),
    (10, 5, 12, 1, 1),
    (10, 13, 17, -1, 1),
    (10, 25, 25, -1, 3),
    (10, 26, 26, 1, 3),
    (11, 4, 22, 1, 1),
    (11, 6, 18, -1, 1),
    (11, 8, 16, 1, 1),
    (11, 11, 12, -1, 1),
    (11, 15, 25, 2, 3),
    (11, 15, 26, -1, 3),
    (12, 4, 23, 1, 1),
    (12, 6, 20, -1, 1),
    (12, 10, 16, -1, 1),
    (12, 9, 12, 1, 1),
    (12, 14, 25, -2, 3),
    (12, 14, 26, 1, 3),
    (13, 4, 24, 1, 1),
    (13, 8, 20, -1, 1),
    (13, 10, 18, -1, 1),
    (13, 7, 12, -1, 1),
    (13, 13, 25, 2, 3),
    (13, 13, 26, -1, 3),
    (14, 2, 4, 1, 1),
    (14, 6, 24, -1, 1),
    (14, 8, 23, 1, 1),
    (14, 10, 22, 1, 1),
    (14, 11, 20, -1, 1),
    (14, 9, 18, -1, 1),
    (14, 7, 16, -1, 1),
    (14, 5, 12, -1, 1),
    (14, 25, 26, 2, 3),
    (14, 26, 26, -1, 3),
    (15, 3, 4, 1, 1),
    (15, 15, 20, -1, 1),
    (15, 14, 18, -1, 1),
    (15, 13, 16, -1, 1),
    (15, 12, 25, -1, 3),
    (15, 12, 26, 2, 3),
    (16, 2, 6, 1, 1),
    (16, 11, 23, -1, 1),
    (16, 9, 22, -1, 1),
    (16, 5, 16, 1, 1),
    (16, 17, 25, -2, 3),
    (16, 17, 26, 1, 3),
    (17, 3, 6, 1, 1),
    (17, 15, 23, -1, 1),
    (17, 14, 22, -1, 1),
    (17, 16, 25, 1, 3),
    (17, 16, 26, 1, 3),
    (17, 12, 17, -1, 1),
    (18, 2, 8, 1, 1),
    (18, 11, 24, -1, 1),
    (18, 7, 22, 1, 1),
    (18, 5, 18, 1, 1),
    (18, 19, 25, -2, 3),
    (18, 19, 26, 1, 3),
    (19, 3, 8, 1, 1),
    (19, 15, 24, -1, 1),
    (19, 13, 22, 1, 1),
    (19, 18, 25, 1, 3),
    (19, 18, 26, 1, 3),
    (19, 12, 19, -1, 1),
    (20, 2, 10, 1, 1),
    (20, 9, 24, -1, 1),
    (20, 7, 23, -1, 1),
    (20, 5, 20, -1, 1),
    (20, 21, 25, 2, 3),
    (20, 21, 26, -1, 3),
    (21, 3, 10, 1, 1),
    (21, 14, 24, -1, 1),
    (21, 13, 23, -1, 1),
    (21, 20, 25, -1, 3),
    (21, 20, 26, -1, 3),
    (21, 12, 21, 1, 1),
    (22, 3, 11, 1, 1),
    (22, 2, 15, -1, 1),
    (22, 22, 25, -1, 3),
    (22, 22, 26, 2, 3),
    (22, 17, 18, 1, 1),
    (22, 16, 19, -1, 1),
    (23, 3, 9, 1, 1),
    (23, 2, 14, -1, 1),
    (23, 23, 25, 1, 3),
    (23, 23, 26, -2, 3),
    (23, 17, 20, -1, 1),
    (23, 16, 21, 1, 1),
    (24, 3, 7, 1, 1),
    (24, 2, 13, -1, 1),
    (24, 24, 25, -1, 3),
    (24, 24, 26, 2, 3),
    (24, 19, 20, 1, 1),
    (24, 18, 21, -1, 1),
    (25, 3, 5, 1, 1),
    (25, 2, 25, -1, 3),
    (25, 2, 26, -1, 3),
    (25, 17, 24, 1, 1),
    (25, 19, 23, -1, 1),
    (25, 21, 22, 1, 1),
    (26, 3, 25, 1, 1),
    (26, 3, 26, -1, 2),
    (26, 2, 12, -3, 2),
    (26, 16, 24, 3, 2),
    (26, 18, 23, -3, 2),
    (26, 20, 22, 3, 2),
    (27, 1, 3, 1, 1),
    (27, 2, 4, -1, 1),
    (27, 6, 24, -1, 1),
    (27, 8, 23, 1, 1),
    (27, 10, 22, 1, 1),
    (27, 11, 20, 1, 1),
    (27, 9, 18, 1, 1),
    (27, 15, 21, -1, 1),
    (27, 7, 16, 1, 1),
    (27, 14, 19, -1, 1),
    (27, 5, 12, -1, 1),
    (27, 13, 17, -1, 1),
    (27, 25, 25, 1, 3),
    (27, 25, 26, -1, 3),
    (27, 26, 26, 1, 3),
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquationError {
    #[error("quadric table checksum mismatch: expected {expected}, found {found}")]
    DataCorrupt { expected: String, found: String },
    #[error("malformed record on line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("degree {0} exceeds the supported bound {MAX_GRADED_DEGREE}")]
    DegreeBoundExceeded(usize),
    #[error("point is not on the variety (quadric {0} does not vanish)")]
    PointNotOnVariety(usize),
    #[error("the origin is not a point of the projective variety")]
    OriginGiven,
}

impl EquationError {
    /// Variant name, for diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            EquationError::DataCorrupt { .. } => "DataCorrupt",
            EquationError::Parse { .. } => "Parse",
            EquationError::DegreeBoundExceeded(_) => "DegreeBoundExceeded",
            EquationError::PointNotOnVariety(_) => "PointNotOnVariety",
            EquationError::OriginGiven => "OriginGiven",
        }
    }
}

/// A quadratic form `Σ c_ij x_i x_j` over index pairs `i <= j` (1-based).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quadric {
    terms: BTreeMap<(usize, usize), Q>,
}

impl Quadric {
    pub fn new() -> Self {
        Quadric::default()
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: Q) {
        assert!((1..=NVARS).contains(&i) && (1..=NVARS).contains(&j), "index out of range");
        let key = (i.min(j), i.max(j));
        let e = self.terms.entry(key).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), Q> {
        &self.terms
    }

    pub fn coeff(&self, i: usize, j: usize) -> Q {
        self.terms.get(&(i.min(j), i.max(j))).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Quadric {
        let mut out = Quadric::new();
        for ((i, j), v) in &self.terms {
            out.add_term(*i, *j, v * c);
        }
        out
    }

    pub fn evaluate(&self, x: &[Q; NVARS]) -> Q {
        self.terms
            .iter()
            .fold(Q::zero(), |acc, ((i, j), c)| acc + c * &x[i - 1] * &x[j - 1])
    }

    /// Row `k` holds `∂/∂x_{k+1}` evaluated at `x`.
    pub fn gradient(&self, x: &[Q; NVARS]) -> Vec<(usize, Q)> {
        let mut g: BTreeMap<usize, Q> = BTreeMap::new();
        for ((i, j), c) in &self.terms {
            if i == j {
                *g.entry(i - 1).or_insert_with(Q::zero) += c * &x[i - 1] * q(2);
            } else {
                *g.entry(i - 1).or_insert_with(Q::zero) += c * &x[j - 1];
                *g.entry(j - 1).or_insert_with(Q::zero) += c * &x[i - 1];
            }
        }
        g.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// An ordered list of quadrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricSet {
    quadrics: Vec<Quadric>,
}

fn canonical_listing(records: &[(usize, usize, usize, Q)]) -> String {
    let mut s = String::new();
    for (e, i, j, c) in records {
        let _ = writeln!(s, "{e} {i} {j} {}/{}", c.numer(), c.denom());
    }
    s
}

fn sha256_hex(s: &str) -> String {
    Sha256::digest(s.as_bytes()).iter().fold(String::new(), |mut out, b| {
        let _ = write!(out, "{b:02x}");
        out
    })
}

fn table_records() -> Vec<(usize, usize, usize, Q)> {
    TABLE
        .iter()
        .map(|&(e, i, j, n, d)| {
            (
                usize::from(e),
                usize::from(i),
                usize::from(j),
                Q::new(BigInt::from(n), BigInt::from(d)),
            )
        })
        .collect()
}

fn from_records(records: &[(usize, usize, usize, Q)]) -> QuadricSet {
    let n = records.iter().map(|r| r.0).max().unwrap_or(0);
    let mut quadrics = vec![Quadric::new(); n];
    for (e, i, j, c) in records {
        quadrics[e - 1].add_term(*i, *j, c.clone());
    }
    QuadricSet { quadrics }
}

/// Degree-`d` monomials in `NVARS` variables as ascending index lists
/// (0-based), in lexicographic order.
fn monomials(d: usize) -> Vec<Vec<u8>> {
    fn rec(start: u8, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..NVARS as u8 {
            cur.push(v);
            rec(v, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, &mut Vec::new(), &mut out);
    out
}

impl QuadricSet {
    /// The built-in table, after checking its checksum.
    pub fn load() -> Result<QuadricSet, EquationError> {
        let records = table_records();
        let found = sha256_hex(&canonical_listing(&records));
        if found != TABLE_SHA256 {
            return Err(EquationError::DataCorrupt { expected: TABLE_SHA256.into(), found });
        }
        Ok(from_records(&records))
    }

    /// Parses the plain-text format `eq i j p/q` with a `# sha256: <hex>`
    /// line covering all non-comment lines.
    pub fn parse(text: &str) -> Result<QuadricSet, EquationError> {
        let mut declared = None;
        let mut records = Vec::new();
        let mut body = String::new();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(h) = rest.trim().strip_prefix("sha256:") {
                    declared = Some(h.trim().to_string());
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            body.push_str(line);
            body.push('\n');
            let err = |reason: &str| EquationError::Parse { line: line_no, reason: reason.into() };
            let f: Vec<&str> = line.split_whitespace().collect();
            let [e, i, j, c] = f.as_slice() else {
                return Err(err("expected four fields"));
            };
            let e: usize = e.parse().map_err(|_| err("bad equation index"))?;
            let i: usize = i.parse().map_err(|_| err("bad variable index"))?;
            let j: usize = j.parse().map_err(|_| err("bad variable index"))?;
            let c: Q = c.parse().map_err(|_| err("bad coefficient"))?;
            if e == 0 || !(1..=NVARS).contains(&i) || !(i..=NVARS).contains(&j) || c.is_zero() {
                return Err(err("index or coefficient out of range"));
            }
            records.push((e, i, j, c));
        }
        let found = sha256_hex(&body);
        match declared {
            Some(d) if d == found => Ok(from_records(&records)),
            d => Err(EquationError::DataCorrupt { expected: d.unwrap_or_default(), found }),
        }
    }

    pub fn from_quadrics(quadrics: Vec<Quadric>) -> QuadricSet {
        QuadricSet { quadrics }
    }

    pub fn quadrics(&self) -> &[Quadric] {
        &self.quadrics
    }

    pub fn len(&self) -> usize {
        self.quadrics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quadrics.is_empty()
    }

    pub fn evaluate(&self, x: &[Q; NVARS]) -> Vec<Q> {
        self.quadrics.iter().map(|f| f.evaluate(x)).collect()
    }

    /// Dimension of the span of the quadrics inside `S^2` (351-dimensional).
    pub fn span_rank(&self, method: RankMethod) -> usize {
        let col = |i: usize, j: usize| (i - 1) * NVARS + (j - 1);
        let rows: Vec<SparseRow> = self
            .quadrics
            .iter()
            .map(|f| f.terms.iter().map(|((i, j), c)| (col(*i, *j), c.clone())).collect())
            .collect();
        rank(&rows, NVARS * NVARS, method)
    }

    /// `dim S^d - dim (I)_d`, where `(I)_d` is spanned by monomial multiples of
    /// the quadrics.
    pub fn graded_piece_dim(&self, d: usize, method: RankMethod) -> Result<usize, EquationError> {
        if d > MAX_GRADED_DEGREE {
            return Err(EquationError::DegreeBoundExceeded(d));
        }
        let cols = monomials(d);
        if d < 2 {
            return Ok(cols.len());
        }
        let index: HashMap<&[u8], usize> =
            cols.iter().enumerate().map(|(k, m)| (m.as_slice(), k)).collect();
        let mut rows: Vec<SparseRow> = Vec::new();
        for f in &self.quadrics {
            for m in monomials(d - 2) {
                let row = f
                    .terms
                    .iter()
                    .map(|((i, j), c)| {
                        let mut mono = m.clone();
                        mono.push((i - 1) as u8);
                        mono.push((j - 1) as u8);
                        mono.sort_unstable();
                        (index[mono.as_slice()], c.clone())
                    })
                    .collect();
                rows.push(row);
            }
        }
        Ok(cols.len() - rank(&rows, cols.len(), method))
    }

    /// Rank of the Jacobian matrix at a nonzero point of the affine cone.
    pub fn jacobian_rank_at(&self, x: &[Q; NVARS]) -> Result<usize, EquationError> {
        if x.iter().all(Q::is_zero) {
            return Err(EquationError::OriginGiven);
        }
        if let Some(k) = self.evaluate(x).iter().position(|v| !v.is_zero()) {
            return Err(EquationError::PointNotOnVariety(k + 1));
        }
        let rows: Vec<SparseRow> = self.quadrics.iter().map(|f| f.gradient(x)).collect();
        Ok(rank_exact(&rows))
    }

    /// Largest denominator appearing in any coefficient.
    pub fn max_denominator(&self) -> BigInt {
        self.quadrics
            .iter()
            .flat_map(|f| f.terms.values())
            .map(|c| c.denom().abs())
            .max()
            .unwrap_or_else(|| BigInt::from(1))
    }
}

/// The coordinate point with `x_i = 1` (1-based) and all others zero.
pub fn coordinate_point(i: usize) -> [Q; NVARS] {
    std::array::from_fn(|k| if k + 1 == i { q(1) } else { Q::zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::q_frac;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set() -> QuadricSet {
        QuadricSet::load().unwrap()
    }

    #[test]
    fn loads_27_quadrics() {
        let s = set();
        assert_eq!(s.len(), 27);
        let a1 = &s.quadrics()[0];
        assert_eq!(a1.coeff(1, 25), q(1));
        assert_eq!(a1.coeff(1, 26), q_frac(-1, 2));
        assert_eq!(a1.coeff(4, 5), q_frac(-3, 2));
        assert_eq!(a1.coeff(5, 4), q_frac(-3, 2));
        assert!(s.quadrics().iter().all(|f| !f.terms().is_empty()));
    }

    #[test]
    fn coefficients_have_small_denominators() {
        let d = set().max_denominator();
        assert_eq!(BigInt::from(6) % &d, BigInt::zero());
    }

    #[test]
    fn x1_squared_absent() {
        assert!(set().quadrics().iter().all(|f| f.coeff(1, 1).is_zero()));
        assert!(set().evaluate(&coordinate_point(1)).iter().all(Q::is_zero));
    }

    #[test]
    fn random_point_is_off_the_variety() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x: [Q; NVARS] = std::array::from_fn(|_| q(rng.gen_range(-5..=5)));
        assert!(set().evaluate(&x).iter().any(|v| !v.is_zero()));
    }

    #[test]
    fn span_ranks() {
        let s = set();
        assert_eq!(s.span_rank(RankMethod::Modular), 27);
        assert_eq!(s.span_rank(RankMethod::Exact), 27);
        assert_eq!(QuadricSet::from_quadrics(vec![]).span_rank(RankMethod::Modular), 0);
        let a1 = s.quadrics()[0].clone();
        let pair = QuadricSet::from_quadrics(vec![a1.clone(), a1.scale(&q(2))]);
        assert_eq!(pair.span_rank(RankMethod::Exact), 1);
        assert_eq!(pair.span_rank(RankMethod::Modular), 1);
    }

    #[test]
    fn graded_pieces() {
        let s = set();
        assert_eq!(s.graded_piece_dim(0, RankMethod::Modular).unwrap(), 1);
        assert_eq!(s.graded_piece_dim(1, RankMethod::Modular).unwrap(), 26);
        assert_eq!(s.graded_piece_dim(2, RankMethod::Modular).unwrap(), 324);
        assert_eq!(s.graded_piece_dim(3, RankMethod::Modular).unwrap(), 2652);
        assert_eq!(
            s.graded_piece_dim(5, RankMethod::Modular).unwrap_err(),
            EquationError::DegreeBoundExceeded(5)
        );
    }

    #[test]
    fn graded_piece_four() {
        use crate::hilbert::{expand, hs_compact, HilbertParams};
        use crate::lattice::Coweight;
        let series = hs_compact(&HilbertParams::new(Coweight::ZERO, 1).unwrap()).unwrap();
        let h4 = expand(&series, 5).unwrap()[4].clone();
        assert_eq!(h4, BigInt::from(16302));
        let dim = set().graded_piece_dim(4, RankMethod::Modular).unwrap();
        assert_eq!(BigInt::from(dim), h4);
    }

    #[test]
    fn graded_pieces_exact() {
        assert_eq!(set().graded_piece_dim(3, RankMethod::Exact).unwrap(), 2652);
        assert_eq!(set().graded_piece_dim(4, RankMethod::Exact).unwrap(), 16302);
    }

    #[test]
    fn jacobian() {
        let s = set();
        assert_eq!(s.jacobian_rank_at(&coordinate_point(1)).unwrap(), 10);
        assert_eq!(
            s.jacobian_rank_at(&coordinate_point(26)).unwrap_err(),
            EquationError::PointNotOnVariety(10)
        );
        assert_eq!(
            s.jacobian_rank_at(&std::array::from_fn(|_| Q::zero())).unwrap_err(),
            EquationError::OriginGiven
        );
    }

    #[test]
    fn parse_rejects_tampering() {
        let text = include_str!("../data/f4_quadrics.txt");
        assert_eq!(QuadricSet::parse(text).unwrap(), set());
        let tampered = text.replacen("1 1 25 1/1", "1 1 25 2/1", 1);
        assert!(matches!(QuadricSet::parse(&tampered), Err(EquationError::DataCorrupt { .. })));
        let broken = text.replacen("1 1 25 1/1", "1 1 25", 1);
        assert!(matches!(QuadricSet::parse(&broken), Err(EquationError::Parse { .. })));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2).len(), 351);
        assert_eq!(monomials(3).len(), 3276);
        assert_eq!(monomials(0), vec![Vec::<u8>::new()]);
    }
}
