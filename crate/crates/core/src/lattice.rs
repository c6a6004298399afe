//! The F4 weight lattice in the orthonormal basis `e1..e4`, the dual coweight
//! lattice `f1..f4`, and the root data built on top of them.
//!
//! Everything here is exact: coordinates are [`BigRational`]s and the root
//! system is constructed once and shared through [`RootSystemF4::get`].

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// A point of the weight lattice (or its rational span) in e-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVec([Q; 4]);

impl WeightVec {
    pub fn new(coords: [Q; 4]) -> Self {
        WeightVec(coords)
    }

    pub fn zero() -> Self {
        WeightVec([Q::zero(), Q::zero(), Q::zero(), Q::zero()])
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        WeightVec(c.map(q))
    }

    /// Builds the vector `c / 2`.
    pub fn from_halves(c: [i64; 4]) -> Self {
        WeightVec(c.map(|x| q_frac(x, 2)))
    }

    /// The basis vector `e_{i+1}` (zero-based index).
    pub fn e(i: usize) -> Self {
        let mut c = [0; 4];
        c[i] = 1;
        Self::from_ints(c)
    }

    pub fn coords(&self) -> &[Q; 4] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Membership in the F4 weight lattice: all coordinates integral, or all
    /// of them half-odd-integers.
    pub fn is_lattice_weight(&self) -> bool {
        let all_int = self.0.iter().all(|c| c.is_integer());
        let all_half_odd = self.0.iter().all(|c| *c.denom() == BigInt::from(2));
        all_int || all_half_odd
    }

    /// Coordinates doubled, when they fit in `i64` and are integral after doubling.
    pub fn halves(&self) -> Option<[i64; 4]> {
        let mut out = [0i64; 4];
        for (o, c) in out.iter_mut().zip(&self.0) {
            let d = c * q(2);
            if !d.is_integer() {
                return None;
            }
            *o = d.to_integer().to_i64()?;
        }
        Some(out)
    }

    pub fn scale(&self, k: &Q) -> Self {
        WeightVec(self.0.clone().map(|c| c * k))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&q(k))
    }

    /// True when the first nonzero coordinate is positive.
    pub fn is_lex_positive(&self) -> bool {
        self.0
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_positive())
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &WeightVec {
    type Output = WeightVec;
    fn add(self, rhs: &WeightVec) -> WeightVec {
        WeightVec(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Add for WeightVec {
    type Output = WeightVec;
    fn add(self, rhs: WeightVec) -> WeightVec {
        &self + &rhs
    }
}

impl Sub for &WeightVec {
    type Output = WeightVec;
    fn sub(self, rhs: &WeightVec) -> WeightVec {
        WeightVec(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

impl Sub for WeightVec {
    type Output = WeightVec;
    fn sub(self, rhs: WeightVec) -> WeightVec {
        &self - &rhs
    }
}

impl Neg for &WeightVec {
    type Output = WeightVec;
    fn neg(self) -> WeightVec {
        WeightVec(self.0.clone().map(|c| -c))
    }
}

impl Neg for WeightVec {
    type Output = WeightVec;
    fn neg(self) -> WeightVec {
        -&self
    }
}

/// A one-parameter subgroup `mu = sum a_i f_i`, with `f_i` dual to `e_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coweight(pub [i64; 4]);

impl Coweight {
    pub const ZERO: Coweight = Coweight([0; 4]);

    pub fn entries(&self) -> [i64; 4] {
        self.0
    }

    pub fn coordinate_sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// Weight-coweight pairing.
pub fn pairing(w: &WeightVec, m: &Coweight) -> Q {
    w.0.iter()
        .zip(m.0.iter())
        .fold(Q::zero(), |acc, (c, a)| acc + c * q(*a))
}

/// Twice the pairing, as an integer. Every lattice weight pairs to a
/// half-integer with an integral coweight.
pub fn pairing_halves(w: &WeightVec, m: &Coweight) -> i64 {
    let v = pairing(w, m) * q(2);
    debug_assert!(v.is_integer());
    v.to_integer().to_i64().expect("pairing overflow")
}

/// Invariant form, normalized as the Euclidean dot product on e-coordinates.
pub fn killing(v: &WeightVec, w: &WeightVec) -> Q {
    v.0.iter()
        .zip(w.0.iter())
        .fold(Q::zero(), |acc, (a, b)| acc + a * b)
}

/// Reflection of `v` in the hyperplane orthogonal to `alpha`.
pub fn reflect(v: &WeightVec, alpha: &WeightVec) -> WeightVec {
    let k = killing(v, alpha) * q(2) / killing(alpha, alpha);
    v - &alpha.scale(&k)
}

/// True iff `mu` pairs nontrivially with every positive root.
pub fn is_regular(m: &Coweight) -> bool {
    RootSystemF4::get()
        .positive_roots
        .iter()
        .all(|a| !pairing(a, m).is_zero())
}

/// The 26 weights of the fundamental representation with highest weight
/// `omega_4 = e1`: the sixteen `1/2(±1,±1,±1,±1)`, the eight `±e_i`, and the
/// zero weight twice, in that order.
pub fn weights_of_v26() -> Vec<WeightVec> {
    let mut out = Vec::with_capacity(26);
    for bits in 0..16u32 {
        let s = |k: u32| if bits >> (3 - k) & 1 == 0 { 1 } else { -1 };
        out.push(WeightVec::from_halves([s(0), s(1), s(2), s(3)]));
    }
    for sign in [1, -1] {
        for j in 0..4 {
            out.push(WeightVec::e(j).scale_int(sign));
        }
    }
    out.push(WeightVec::zero());
    out.push(WeightVec::zero());
    out
}

/// Root data of F4 with the simple roots
/// `a1 = e2-e3, a2 = e3-e4, a3 = e4, a4 = 1/2(e1-e2-e3-e4)`.
#[derive(Clone, Debug)]
pub struct RootSystemF4 {
    pub simple_roots: [WeightVec; 4],
    pub positive_roots: Vec<WeightVec>,
    pub all_roots: Vec<WeightVec>,
    pub fundamental_weights: [WeightVec; 4],
    pub weyl_vector: WeightVec,
    /// Inverse of the matrix whose columns are the simple roots.
    simple_inverse: [[Q; 4]; 4],
}

impl RootSystemF4 {
    pub fn get() -> &'static RootSystemF4 {
        static CELL: OnceLock<RootSystemF4> = OnceLock::new();
        CELL.get_or_init(RootSystemF4::build)
    }

    fn build() -> RootSystemF4 {
        let simple_roots = [
            WeightVec::from_ints([0, 1, -1, 0]),
            WeightVec::from_ints([0, 0, 1, -1]),
            WeightVec::from_ints([0, 0, 0, 1]),
            WeightVec::from_halves([1, -1, -1, -1]),
        ];
        let fundamental_weights = [
            WeightVec::from_ints([1, 1, 0, 0]),
            WeightVec::from_ints([2, 1, 1, 0]),
            WeightVec::from_halves([3, 1, 1, 1]),
            WeightVec::from_ints([1, 0, 0, 0]),
        ];

        // Close the simple roots under simple reflections.
        let mut all: Vec<WeightVec> = simple_roots.to_vec();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for r in &frontier {
                for s in &simple_roots {
                    let img = reflect(r, s);
                    if !all.contains(&img) {
                        all.push(img.clone());
                        next.push(img);
                    }
                }
            }
            frontier = next;
        }
        all.sort();

        let simple_inverse = invert4(&std::array::from_fn(|i| {
            std::array::from_fn(|j| simple_roots[j].coords()[i].clone())
        }))
        .expect("simple roots are linearly independent");

        let mut rs = RootSystemF4 {
            simple_roots,
            positive_roots: Vec::new(),
            all_roots: all,
            fundamental_weights,
            weyl_vector: WeightVec::zero(),
            simple_inverse,
        };
        let positive: Vec<WeightVec> = rs
            .all_roots
            .iter()
            .filter(|r| rs.simple_coords(r).iter().all(|c| !c.is_negative()))
            .cloned()
            .collect();
        let sum = positive.iter().fold(WeightVec::zero(), |acc, r| &acc + r);
        rs.weyl_vector = sum.scale(&q_frac(1, 2));
        rs.positive_roots = positive;
        rs
    }

    /// Coordinates of `v` in the basis of simple roots.
    pub fn simple_coords(&self, v: &WeightVec) -> [Q; 4] {
        std::array::from_fn(|i| {
            (0..4).fold(Q::zero(), |acc, j| {
                acc + &self.simple_inverse[i][j] * &v.coords()[j]
            })
        })
    }

    /// Dominance with respect to the simple coroots.
    pub fn is_dominant(&self, v: &WeightVec) -> bool {
        self.simple_roots
            .iter()
            .all(|a| !killing(v, a).is_negative())
    }

    /// The unique dominant weight in the Weyl orbit of `v`.
    pub fn dominant_representative(&self, v: &WeightVec) -> WeightVec {
        let mut cur = v.clone();
        'outer: loop {
            for a in &self.simple_roots {
                if killing(&cur, a).is_negative() {
                    cur = reflect(&cur, a);
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Fundamental-weight (Dynkin label) expansion `sum c_i omega_i`.
    pub fn from_dynkin(&self, labels: [i64; 4]) -> WeightVec {
        labels
            .iter()
            .zip(&self.fundamental_weights)
            .fold(WeightVec::zero(), |acc, (c, w)| &acc + &w.scale_int(*c))
    }

    /// Dynkin labels `2(v, a_i)/(a_i, a_i)`.
    pub fn dynkin_labels(&self, v: &WeightVec) -> [Q; 4] {
        std::array::from_fn(|i| {
            let a = &self.simple_roots[i];
            killing(v, a) * q(2) / killing(a, a)
        })
    }
}

/// Gauss-Jordan inverse of a 4x4 rational matrix.
pub(crate) fn invert4(m: &[[Q; 4]; 4]) -> Option<[[Q; 4]; 4]> {
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.to_vec();
            r.extend((0..4).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..4 {
        let p = (col..4).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..4 {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..8 {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    Some(std::array::from_fn(|i| std::array::from_fn(|j| a[i][4 + j].clone())))
}
