//! Irreducible F4 representations: Weyl dimensions, Freudenthal weight
//! multiplicities, symmetric-square decomposition, and the dimension of the
//! homogeneous variety `G/P` embedded by a highest weight.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::{killing, q, RootSystemF4, WeightVec, Q};

/// Default cap on `dim V` for character computations.
pub const DEFAULT_DIM_BOUND: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReprError {
    #[error("weight {0} is not dominant")]
    NonDominant(WeightVec),
    #[error("weight {0} is not in the weight lattice")]
    NotLatticeWeight(WeightVec),
    #[error("highest weight must be nonzero")]
    ZeroHighestWeight,
    #[error("dimension {dim} exceeds the bound {bound}")]
    DimensionBoundExceeded { dim: u64, bound: u64 },
    #[error("dimension does not fit in 64 bits")]
    Overflow,
    #[error("symmetric-square decomposition failed at {0}")]
    DecompositionFailure(WeightVec),
}

impl ReprError {
    /// Variant name, for diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            ReprError::NonDominant(_) => "NonDominant",
            ReprError::NotLatticeWeight(_) => "NotLatticeWeight",
            ReprError::ZeroHighestWeight => "ZeroHighestWeight",
            ReprError::DimensionBoundExceeded { .. } => "DimensionBoundExceeded",
            ReprError::Overflow => "Overflow",
            ReprError::DecompositionFailure(_) => "DecompositionFailure",
        }
    }
}

/// A dominant lattice weight, used as a highest weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantWeight(WeightVec);

impl DominantWeight {
    pub fn new(hw: WeightVec) -> Result<Self, ReprError> {
        if !hw.is_lattice_weight() {
            return Err(ReprError::NotLatticeWeight(hw));
        }
        if !RootSystemF4::get().is_dominant(&hw) {
            return Err(ReprError::NonDominant(hw));
        }
        Ok(DominantWeight(hw))
    }

    /// `sum labels[i] * omega_{i+1}`.
    pub fn from_dynkin(labels: [u32; 4]) -> Self {
        let w = RootSystemF4::get().from_dynkin(labels.map(i64::from));
        DominantWeight(w)
    }

    pub fn weight(&self) -> &WeightVec {
        &self.0
    }

    /// Dynkin labels as nonnegative integers.
    pub fn dynkin(&self) -> [u64; 4] {
        RootSystemF4::get()
            .dynkin_labels(&self.0)
            .map(|c| c.to_integer().to_u64().expect("dominant lattice weight"))
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.dynkin();
        write!(f, "[{a},{b},{c},{d}]")
    }
}

/// Weight multiplicities of an irreducible representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    entries: BTreeMap<WeightVec, u64>,
}

impl CharacterTable {
    pub fn entries(&self) -> &BTreeMap<WeightVec, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, w: &WeightVec) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Weyl's dimension formula, `prod (hw + rho, a) / (rho, a)` over positive roots.
pub fn weyl_dim(hw: &DominantWeight) -> Result<u64, ReprError> {
    let rs = RootSystemF4::get();
    let shifted = &hw.0 + &rs.weyl_vector;
    let dim = rs.positive_roots.iter().fold(q(1), |acc, a| {
        acc * killing(&shifted, a) / killing(&rs.weyl_vector, a)
    });
    debug_assert!(dim.is_integer());
    dim.to_integer().to_u64().ok_or(ReprError::Overflow)
}

fn height_below(rs: &RootSystemF4, top: &WeightVec, w: &WeightVec) -> Option<Q> {
    let c = rs.simple_coords(&(top - w));
    if c.iter().all(|x| x.is_integer() && !x.is_negative()) {
        Some(c.into_iter().fold(Q::zero(), |a, b| a + b))
    } else {
        None
    }
}

/// Full character via the Freudenthal recursion, with the default bound.
pub fn character(hw: &DominantWeight) -> Result<CharacterTable, ReprError> {
    character_bounded(hw, DEFAULT_DIM_BOUND)
}

pub fn character_bounded(hw: &DominantWeight, bound: u64) -> Result<CharacterTable, ReprError> {
    let dim = weyl_dim(hw)?;
    if dim > bound {
        return Err(ReprError::DimensionBoundExceeded { dim, bound });
    }
    let rs = RootSystemF4::get();
    let top = &hw.0;

    // A weight occurs iff its dominant representative lies below `top`.
    let mut support: BTreeSet<WeightVec> = BTreeSet::new();
    let mut queue = VecDeque::from([top.clone()]);
    support.insert(top.clone());
    while let Some(w) = queue.pop_front() {
        for a in &rs.simple_roots {
            let next = &w - a;
            if support.contains(&next) {
                continue;
            }
            let dom = rs.dominant_representative(&next);
            if height_below(rs, top, &dom).is_some() {
                support.insert(next.clone());
                queue.push_back(next);
            }
        }
    }

    let mut dominant: Vec<(Q, WeightVec)> = support
        .iter()
        .filter(|w| rs.is_dominant(w))
        .map(|w| (height_below(rs, top, w).expect("in support"), w.clone()))
        .collect();
    dominant.sort();

    let top_rho = top + &rs.weyl_vector;
    let top_norm = killing(&top_rho, &top_rho);
    let mut mult: BTreeMap<WeightVec, Q> = BTreeMap::new();
    for (_, w) in &dominant {
        if w == top {
            mult.insert(w.clone(), q(1));
            continue;
        }
        let mut acc = Q::zero();
        for a in &rs.positive_roots {
            let mut shifted = w + a;
            while support.contains(&shifted) {
                let m = &mult[&rs.dominant_representative(&shifted)];
                acc += m * killing(&shifted, a);
                shifted = &shifted + a;
            }
        }
        let w_rho = w + &rs.weyl_vector;
        let m = acc * q(2) / (&top_norm - killing(&w_rho, &w_rho));
        debug_assert!(m.is_integer());
        mult.insert(w.clone(), m);
    }

    let entries = support
        .into_iter()
        .map(|w| {
            let m = mult[&rs.dominant_representative(&w)]
                .to_integer()
                .to_u64()
                .expect("multiplicity fits");
            (w, m)
        })
        .collect();
    Ok(CharacterTable { entries })
}

/// Decomposes `S^2 V_hw` by repeatedly stripping the character of the
/// lexicographically largest remaining weight, which is always a highest weight
/// since every positive root is lex-positive in e-coordinates.
pub fn sym2_decompose(hw: &DominantWeight) -> Result<BTreeMap<DominantWeight, u64>, ReprError> {
    let chi = character(hw)?;
    let weights: Vec<(&WeightVec, u64)> = chi.entries().iter().map(|(w, m)| (w, *m)).collect();

    let mut rest: BTreeMap<WeightVec, i64> = BTreeMap::new();
    for (i, (wi, mi)) in weights.iter().enumerate() {
        let diag = (mi * (mi + 1) / 2) as i64;
        *rest.entry(wi.scale_int(2)).or_default() += diag;
        for (wj, mj) in &weights[i + 1..] {
            *rest.entry(*wi + *wj).or_default() += (mi * mj) as i64;
        }
    }

    let mut out = BTreeMap::new();
    loop {
        rest.retain(|_, c| *c != 0);
        let Some((top, count)) = rest.iter().next_back().map(|(w, c)| (w.clone(), *c)) else {
            break;
        };
        if count < 0 {
            return Err(ReprError::DecompositionFailure(top));
        }
        let summand =
            DominantWeight::new(top.clone()).map_err(|_| ReprError::DecompositionFailure(top.clone()))?;
        let sub = character_bounded(&summand, u64::MAX)?;
        for (w, m) in sub.entries() {
            *rest.entry(w.clone()).or_default() -= count * (*m as i64);
        }
        out.insert(summand, count as u64);
    }
    Ok(out)
}

/// Dimensions attached to `G/P_hw`: `(dim P, dim G/P, codim of G/P in P(V_hw))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomogeneousDims {
    pub parabolic_dim: u64,
    pub variety_dim: u64,
    pub codim: u64,
}

pub fn homogeneous_dims(hw: &DominantWeight) -> Result<HomogeneousDims, ReprError> {
    if hw.0.is_zero() {
        return Err(ReprError::ZeroHighestWeight);
    }
    let rs = RootSystemF4::get();
    let variety_dim = rs
        .positive_roots
        .iter()
        .filter(|a| !killing(a, &hw.0).is_zero())
        .count() as u64;
    let dim_g = (rs.all_roots.len() + 4) as u64;
    Ok(HomogeneousDims {
        parabolic_dim: dim_g - variety_dim,
        variety_dim,
        codim: weyl_dim(hw)? - 1 - variety_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::weights_of_v26;
    use crate::weyl::WeylGroup;

    fn fw(i: usize) -> DominantWeight {
        let mut l = [0; 4];
        l[i - 1] = 1;
        DominantWeight::from_dynkin(l)
    }

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dim(&fw(4)).unwrap(), 26);
        assert_eq!(weyl_dim(&fw(1)).unwrap(), 52);
        assert_eq!(weyl_dim(&fw(3)).unwrap(), 273);
        assert_eq!(weyl_dim(&fw(2)).unwrap(), 1274);
        assert_eq!(weyl_dim(&DominantWeight::from_dynkin([0; 4])).unwrap(), 1);
        assert_eq!(weyl_dim(&DominantWeight::from_dynkin([0, 0, 0, 2])).unwrap(), 324);
        assert_eq!(weyl_dim(&DominantWeight::from_dynkin([0, 0, 0, 3])).unwrap(), 2652);
        let d = weyl_dim(&fw(4)).unwrap();
        assert_eq!(d * (d + 1) / 2, 351);
    }

    #[test]
    fn non_dominant_rejected() {
        let err = DominantWeight::new(WeightVec::from_ints([0, 1, 0, 0])).unwrap_err();
        assert!(matches!(err, ReprError::NonDominant(_)));
        let err = DominantWeight::new(WeightVec::from_halves([1, 0, 0, 0])).unwrap_err();
        assert!(matches!(err, ReprError::NotLatticeWeight(_)));
    }

    #[test]
    fn character_of_v26() {
        let c = character(&fw(4)).unwrap();
        assert_eq!(c.dim(), 26);
        assert_eq!(c.len(), 25);
        assert_eq!(c.multiplicity(&WeightVec::zero()), 2);
        for w in weights_of_v26().iter().filter(|w| !w.is_zero()) {
            assert_eq!(c.multiplicity(w), 1);
        }
    }

    #[test]
    fn character_of_trivial_and_adjoint() {
        let c = character(&DominantWeight::from_dynkin([0; 4])).unwrap();
        assert_eq!(c.entries().len(), 1);
        assert_eq!(c.multiplicity(&WeightVec::zero()), 1);

        let adj = character(&fw(1)).unwrap();
        assert_eq!(adj.dim(), 52);
        assert_eq!(adj.multiplicity(&WeightVec::zero()), 4);
        for r in &RootSystemF4::get().all_roots {
            assert_eq!(adj.multiplicity(r), 1);
        }
        assert_eq!(adj.len(), 49);
    }

    #[test]
    fn characters_are_weyl_invariant_and_match_dimension() {
        let g = WeylGroup::get();
        for labels in [[0, 0, 1, 0], [1, 0, 0, 1], [0, 0, 0, 3], [2, 0, 0, 0]] {
            let hw = DominantWeight::from_dynkin(labels);
            let c = character(&hw).unwrap();
            assert_eq!(c.dim(), weyl_dim(&hw).unwrap(), "{hw}");
            for s in g.elements().iter().step_by(47) {
                for (w, m) in c.entries() {
                    assert_eq!(c.multiplicity(&s.act(w)), *m);
                }
            }
        }
    }

    #[test]
    fn dimension_bound() {
        let err = character(&fw(2)).map(|_| ());
        assert!(err.is_ok());
        let err = character_bounded(&fw(2), 1000).unwrap_err();
        assert_eq!(err, ReprError::DimensionBoundExceeded { dim: 1274, bound: 1000 });
    }

    #[test]
    fn sym2_of_v26() {
        let d = sym2_decompose(&fw(4)).unwrap();
        let expect: BTreeMap<_, _> = [
            (DominantWeight::from_dynkin([0, 0, 0, 2]), 1),
            (fw(4), 1),
            (DominantWeight::from_dynkin([0; 4]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expect);
        let dims: Vec<u64> = d.keys().map(|k| weyl_dim(k).unwrap()).collect();
        assert_eq!(dims.iter().sum::<u64>(), 351);
        assert!(dims.contains(&324));
    }

    #[test]
    fn sym2_of_trivial_and_adjoint() {
        let t = sym2_decompose(&DominantWeight::from_dynkin([0; 4])).unwrap();
        assert_eq!(t.len(), 1);
        let adj = sym2_decompose(&fw(1)).unwrap();
        let total: u64 = adj.iter().map(|(k, m)| m * weyl_dim(k).unwrap()).sum();
        assert_eq!(total, 52 * 53 / 2);
    }

    #[test]
    fn sym2_reconstructs_weight_multiset() {
        let hw = fw(4);
        let chi = character(&hw).unwrap();
        let mut sym2: BTreeMap<WeightVec, u64> = BTreeMap::new();
        let basis: Vec<&WeightVec> = chi
            .entries()
            .iter()
            .flat_map(|(w, m)| std::iter::repeat(w).take(*m as usize))
            .collect();
        for i in 0..basis.len() {
            for j in i..basis.len() {
                *sym2.entry(basis[i] + basis[j]).or_default() += 1;
            }
        }
        let mut rebuilt: BTreeMap<WeightVec, u64> = BTreeMap::new();
        for (summand, m) in sym2_decompose(&hw).unwrap() {
            for (w, k) in character(&summand).unwrap().entries() {
                *rebuilt.entry(w.clone()).or_default() += m * k;
            }
        }
        assert_eq!(rebuilt, sym2);
    }

    #[test]
    fn homogeneous_dimensions() {
        let h = homogeneous_dims(&fw(4)).unwrap();
        assert_eq!((h.parabolic_dim, h.variety_dim, h.codim), (37, 15, 10));
        // Brute force: positive roots outside the span of a2, a3, a4.
        let rs = RootSystemF4::get();
        let levi = rs
            .positive_roots
            .iter()
            .filter(|r| rs.simple_coords(r)[0].is_zero())
            .count();
        assert_eq!(levi, 9);
        assert_eq!(24 - levi as u64, h.variety_dim);

        let adj = homogeneous_dims(&fw(1)).unwrap();
        assert_eq!(adj.variety_dim, 15);
        assert_eq!(adj.codim, 52 - 1 - 15);
        assert_eq!(
            homogeneous_dims(&DominantWeight::from_dynkin([0; 4])).unwrap_err(),
            ReprError::ZeroHighestWeight
        );
    }
}
