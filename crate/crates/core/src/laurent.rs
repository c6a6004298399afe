//! Sparse Laurent polynomials in `t^{1/2}` with exact rational coefficients.
//!
//! Exponents are stored in half-grading units: the key `h` stands for
//! `t^{h/2}`. Pairings of half-integral weights with integral coweights land
//! in `Z/2`, so this is the smallest grid that holds every exponent exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::lattice::{q, Q};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Q::one())
    }

    /// `c t^{half/2}`.
    pub fn monomial(half: i64, c: Q) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(half, c);
        p
    }

    /// `1 - t^{half/2}`.
    pub fn one_minus(half: i64) -> Self {
        let mut p = LaurentPoly::one();
        p.add_term(half, -Q::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Q)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (h, c) in terms {
            p.add_term(h, c);
        }
        p
    }

    pub fn add_term(&mut self, half: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(half) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_int_term(&mut self, half: i64, c: i64) {
        self.add_term(half, q(c));
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms keyed by half-unit exponent.
    pub fn terms(&self) -> &BTreeMap<i64, Q> {
        &self.terms
    }

    pub fn coeff(&self, half: i64) -> Q {
        self.terms.get(&half).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient of `t^e` for an integral exponent `e`.
    pub fn coeff_int(&self, e: i64) -> Q {
        self.coeff(2 * e)
    }

    pub fn min_half(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_half(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Every exponent is a whole power of `t`.
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|h| h % 2 == 0)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(h, x)| (*h, x * c)).collect(),
        }
    }

    /// Multiplies by `t^{half/2}`.
    pub fn shift(&self, half: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(h, x)| (h + half, x.clone())).collect(),
        }
    }

    /// Substitutes `t -> t^k` for a positive integer `k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k > 0);
        LaurentPoly {
            terms: self.terms.iter().map(|(h, x)| (h * k, x.clone())).collect(),
        }
    }

    /// Value at `t = 1`.
    pub fn eval_at_one(&self) -> Q {
        self.terms.values().fold(Q::zero(), |a, b| a + b)
    }

    /// `N(t) = t^{center/2} N(1/t)`.
    pub fn is_palindromic(&self, center_half: i64) -> bool {
        self.terms
            .iter()
            .all(|(h, c)| self.terms.get(&(center_half - h)) == Some(c))
    }

    fn dense(&self) -> (i64, Vec<Q>) {
        let (Some(lo), Some(hi)) = (self.min_half(), self.max_half()) else {
            return (0, Vec::new());
        };
        let mut v = vec![Q::zero(); (hi - lo + 1) as usize];
        for (h, c) in &self.terms {
            v[(h - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(lo: i64, v: Vec<Q>) -> Self {
        LaurentPoly {
            terms: v
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i64, c))
                .collect(),
        }
    }

    /// Exact division. Returns `None` when `divisor` is zero or leaves a
    /// nonzero remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (alo, mut a) = self.dense();
        let (blo, b) = divisor.dense();
        if a.len() < b.len() {
            return None;
        }
        let lead_inv = b.last().expect("nonzero").recip();
        let qlen = a.len() - b.len() + 1;
        let mut quot = vec![Q::zero(); qlen];
        let nz: Vec<(usize, &Q)> = b.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for i in (0..qlen).rev() {
            let top = &a[i + b.len() - 1];
            if top.is_zero() {
                continue;
            }
            let f = top * &lead_inv;
            for (j, c) in &nz {
                let sub = &f * *c;
                a[i + j] -= sub;
            }
            quot[i] = f;
        }
        if a.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(LaurentPoly::from_dense(alo - blo, quot))
    }

    /// Exact division by `1 - t^{half/2}` for `half > 0`, by the recurrence
    /// `q_k = p_k + q_{k-half}`.
    pub fn div_one_minus(&self, half: i64) -> Option<LaurentPoly> {
        assert!(half > 0);
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (lo, p) = self.dense();
        let w = half as usize;
        if p.len() < w {
            return None;
        }
        let qlen = p.len() - w;
        let mut quot: Vec<Q> = Vec::with_capacity(qlen);
        for k in 0..qlen {
            let mut c = p[k].clone();
            if k >= w {
                c += &quot[k - w];
            }
            quot.push(c);
        }
        // The top `w` coefficients of p must equal -q_{k-w}.
        for k in qlen..p.len() {
            let expect = if k >= w { -&quot[k - w] } else { Q::zero() };
            if p[k] != expect {
                return None;
            }
        }
        Some(LaurentPoly::from_dense(lo, quot))
    }

    /// Order of vanishing at `t = 1` for an integral polynomial.
    pub fn order_at_one(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut n = 0;
        while p.eval_at_one().is_zero() {
            p = p.div_one_minus(2)?;
            n += 1;
        }
        Some(n)
    }

    /// Formats with true exponents, e.g. `1 - 27t^2 + 78t^3` or `t^(3/2)`.
    pub fn to_pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (h, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let exp = match h {
                0 => None,
                2 => Some("t".to_string()),
                h if h % 2 == 0 => Some(format!("t^{}", h / 2)),
                h if *h < 0 || *h != 1 => Some(format!("t^({h}/2)")),
                _ => Some("t^(1/2)".to_string()),
            };
            match exp {
                None => s.push_str(&abs.to_string()),
                Some(e) if abs.is_one() => s.push_str(&e),
                Some(e) if abs.is_integer() => s.push_str(&format!("{abs}{e}")),
                Some(e) => s.push_str(&format!("({abs}){e}")),
            }
        }
        s
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (h, c) in &rhs.terms {
            out.add_term(*h, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (h, c) in &rhs.terms {
            out.add_term(*h, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&q(-1))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let (alo, a) = self.dense();
        let (blo, b) = rhs.dense();
        let mut out = vec![Q::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[i + j] += x * y;
            }
        }
        LaurentPoly::from_dense(alo + blo, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
