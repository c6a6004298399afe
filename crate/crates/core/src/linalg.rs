//! Rank of sparse rational matrices, modulo large primes or exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::lattice::Q;

/// Two 62-bit primes used for modular rank.
pub const PRIMES: [u64; 2] = [4_611_686_018_427_387_847, 4_611_686_018_427_387_817];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RankMethod {
    /// Rank modulo two primes; exact elimination when they disagree.
    #[default]
    Modular,
    /// Fraction-based elimination over the rationals.
    Exact,
}

/// A sparse row of `(column, value)` entries.
pub type SparseRow = Vec<(usize, Q)>;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("reduced below p")
}

/// Image of a rational in `F_p`, or `None` if `p` divides the denominator.
pub fn reduce_mod(x: &Q, p: u64) -> Option<u64> {
    let d = bigint_mod(x.denom(), p);
    (d != 0).then(|| mul_mod(bigint_mod(x.numer(), p), inv_mod(d, p), p))
}

/// Rank over `F_p` by row reduction. Each incoming row is scattered into a
/// dense accumulator and reduced against the stored pivots in a single
/// left-to-right column sweep.
pub fn rank_mod_p(rows: &[Vec<(usize, u64)>], ncols: usize, p: u64) -> usize {
    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; ncols];
    let mut acc = vec![0u64; ncols];
    let mut rank = 0;
    for row in rows.iter().filter(|r| !r.is_empty()) {
        let mut lo = ncols;
        let mut hi = 0;
        for &(c, v) in row {
            acc[c] = (acc[c] + v) % p;
            lo = lo.min(c);
            hi = hi.max(c + 1);
        }
        let mut lead = None;
        let mut c = lo;
        while c < hi {
            if acc[c] != 0 {
                match &pivots[c] {
                    Some(prow) => {
                        // Pivot rows are normalized with leading entry 1.
                        let f = p - acc[c];
                        for &(k, v) in prow {
                            acc[k] = (acc[k] + mul_mod(f, v, p)) % p;
                            hi = hi.max(k + 1);
                        }
                    }
                    None => {
                        if lead.is_none() {
                            lead = Some(c);
                        }
                    }
                }
            }
            c += 1;
        }
        let entries: Vec<(usize, u64)> = (lo..hi).filter(|&k| acc[k] != 0).map(|k| (k, acc[k])).collect();
        acc[lo..hi].iter_mut().for_each(|x| *x = 0);
        let Some(lead) = lead else { continue };
        // Fully reduced except possibly against later pivots; the lead column
        // itself has no pivot, so the row is independent.
        let inv = inv_mod(entries.iter().find(|(k, _)| *k == lead).expect("lead present").1, p);
        let normalized = entries
            .into_iter()
            .filter(|(k, _)| *k >= lead)
            .map(|(k, v)| (k, mul_mod(v, inv, p)))
            .collect();
        pivots[lead] = Some(normalized);
        rank += 1;
    }
    rank
}

/// Exact rank over the rationals.
pub fn rank_exact(rows: &[SparseRow]) -> usize {
    let mut pivots: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
    for row in rows {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (c, v) in row {
            let e = acc.entry(*c).or_insert_with(Q::zero);
            *e += v;
        }
        acc.retain(|_, v| !v.is_zero());
        let mut floor = 0;
        loop {
            let Some((&c, v)) = acc.range(floor..).next() else { break };
            match pivots.get(&c) {
                Some(prow) => {
                    let f = v.clone();
                    for (k, pv) in prow {
                        let e = acc.entry(*k).or_insert_with(Q::zero);
                        *e -= &f * pv;
                        if e.is_zero() {
                            acc.remove(k);
                        }
                    }
                }
                None => floor = c + 1,
            }
        }
        let Some((&lead, lv)) = acc.iter().next() else { continue };
        let inv = lv.recip();
        pivots.insert(lead, acc.iter().map(|(k, v)| (*k, v * &inv)).collect());
    }
    pivots.len()
}

/// Rank of a rational matrix with the chosen method.
pub fn rank(rows: &[SparseRow], ncols: usize, method: RankMethod) -> usize {
    if method == RankMethod::Exact {
        return rank_exact(rows);
    }
    let ranks: Vec<Option<usize>> = PRIMES
        .iter()
        .map(|&p| {
            let reduced: Option<Vec<Vec<(usize, u64)>>> = rows
                .iter()
                .map(|r| r.iter().map(|(c, v)| reduce_mod(v, p).map(|x| (*c, x))).collect())
                .collect();
            reduced.map(|m| rank_mod_p(&m, ncols, p))
        })
        .collect();
    match ranks.as_slice() {
        [Some(a), Some(b)] if a == b => *a,
        _ => rank_exact(rows),
    }
}
