//! The Weyl group W(F4), generated as exact 4x4 matrices acting on
//! e-coordinates.

use std::collections::{BTreeSet, HashSet};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::lattice::{killing, q, RootSystemF4, WeightVec, Q};

/// A Weyl group element, stored as its action on e-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    matrix: [[Q; 4]; 4],
    sign: i8,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement {
            matrix: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { Q::one() } else { Q::zero() })
            }),
            sign: 1,
        }
    }

    /// The reflection `v -> v - 2(v,a)/(a,a) a`.
    pub fn reflection(alpha: &WeightVec) -> Self {
        let a = alpha.coords();
        let n = killing(alpha, alpha);
        WeylElement {
            matrix: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let delta = if i == j { Q::one() } else { Q::zero() };
                    delta - &a[i] * &a[j] * q(2) / &n
                })
            }),
            sign: -1,
        }
    }

    pub fn matrix(&self) -> &[[Q; 4]; 4] {
        &self.matrix
    }

    /// `(-1)^length`, equal to the determinant.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Parity of the reduced word length (1 when odd).
    pub fn length_parity(&self) -> u8 {
        u8::from(self.sign < 0)
    }

    pub fn act(&self, v: &WeightVec) -> WeightVec {
        let c = v.coords();
        WeightVec::new(std::array::from_fn(|i| {
            (0..4).fold(Q::zero(), |acc, j| acc + &self.matrix[i][j] * &c[j])
        }))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            matrix: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..4).fold(Q::zero(), |acc, k| {
                        acc + &self.matrix[i][k] * &other.matrix[k][j]
                    })
                })
            }),
            sign: self.sign * other.sign,
        }
    }

    /// Inverse; the matrices are orthogonal so this is the transpose.
    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            matrix: std::array::from_fn(|i| std::array::from_fn(|j| self.matrix[j][i].clone())),
            sign: self.sign,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity()
    }

    /// Smallest `n >= 1` with `self^n = 1`.
    pub fn order(&self) -> usize {
        let mut cur = self.clone();
        let mut n = 1;
        while !cur.is_identity() {
            cur = cur.compose(self);
            n += 1;
        }
        n
    }

    pub fn determinant(&self) -> Q {
        let m = &self.matrix;
        // Laplace expansion along the first row.
        (0..4).fold(Q::zero(), |acc, c| {
            let minor: Vec<Vec<&Q>> = (1..4)
                .map(|r| (0..4).filter(|&k| k != c).map(|k| &m[r][k]).collect())
                .collect();
            let det3 = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1])
                - minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0])
                + minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
            let term = &m[0][c] * det3;
            if c % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        })
    }
}

/// All 1152 elements of W(F4) in lexicographic order of their matrices.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
}

impl WeylGroup {
    /// Breadth-first closure of the four simple reflections.
    pub fn generate() -> WeylGroup {
        let gens: Vec<WeylElement> = RootSystemF4::get()
            .simple_roots
            .iter()
            .map(WeylElement::reflection)
            .collect();
        let mut seen: HashSet<WeylElement> = HashSet::new();
        seen.insert(WeylElement::identity());
        let mut frontier = vec![WeylElement::identity()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &gens {
                    let h = s.compose(g);
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        let mut elements: Vec<WeylElement> = seen.into_iter().collect();
        elements.sort();
        WeylGroup { elements }
    }

    /// Shared instance, generated on first use.
    pub fn get() -> &'static WeylGroup {
        static CELL: OnceLock<WeylGroup> = OnceLock::new();
        CELL.get_or_init(WeylGroup::generate)
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &WeylElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

/// The Weyl orbit of `w`, deduplicated and sorted.
pub fn orbit(w: &WeightVec, group: &WeylGroup) -> Vec<WeightVec> {
    group
        .elements()
        .iter()
        .map(|g| g.act(w))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

pub fn stabilizer_order(w: &WeightVec, group: &WeylGroup) -> usize {
    group.elements().iter().filter(|g| g.act(w) == *w).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::weights_of_v26;

    fn w() -> &'static WeylGroup {
        WeylGroup::get()
    }

    fn simple(i: usize) -> WeylElement {
        WeylElement::reflection(&RootSystemF4::get().simple_roots[i])
    }

    #[test]
    fn order_and_identity() {
        assert_eq!(w().order(), 1152);
        assert!(w().contains(&WeylElement::identity()));
        assert_eq!(WeylElement::identity().sign(), 1);
    }

    #[test]
    fn presentation_relations() {
        let s: Vec<_> = (0..4).map(simple).collect();
        for g in &s {
            assert_eq!(g.order(), 2);
        }
        let m = [[1, 3, 2, 2], [3, 1, 4, 2], [2, 4, 1, 3], [2, 2, 3, 1]];
        for i in 0..4 {
            for j in i + 1..4 {
                assert_eq!(s[i].compose(&s[j]).order(), m[i][j], "s{}s{}", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn closure_and_inverse() {
        let g = &w().elements()[17];
        let h = &w().elements()[903];
        assert!(w().contains(&g.compose(h)));
        assert!(g.compose(&g.inverse()).is_identity());
        for e in w().elements().iter().step_by(37) {
            assert!(w().contains(&e.inverse()));
        }
    }

    #[test]
    fn signs_balance_and_match_determinants() {
        let total: i64 = w().elements().iter().map(|g| i64::from(g.sign())).sum();
        assert_eq!(total, 0);
        for g in w().elements() {
            assert_eq!(g.determinant(), q(i64::from(g.sign())));
            assert_eq!(g.length_parity(), u8::from(g.sign() == -1));
        }
    }

    #[test]
    fn elements_preserve_form_and_permute_roots() {
        let rs = RootSystemF4::get();
        for g in w().elements() {
            for a in &rs.simple_roots {
                for b in &rs.simple_roots {
                    assert_eq!(killing(&g.act(a), &g.act(b)), killing(a, b));
                }
            }
            for r in &rs.all_roots {
                assert!(rs.all_roots.binary_search(&g.act(r)).is_ok());
            }
        }
    }

    #[test]
    fn orbits() {
        let e1 = WeightVec::e(0);
        let o = orbit(&e1, w());
        assert_eq!(o.len(), 24);
        let mut nonzero: Vec<_> = weights_of_v26().into_iter().filter(|v| !v.is_zero()).collect();
        nonzero.sort();
        assert_eq!(o, nonzero);
        assert_eq!(orbit(&WeightVec::zero(), w()), vec![WeightVec::zero()]);
    }

    #[test]
    fn stabilizers() {
        assert_eq!(stabilizer_order(&WeightVec::e(0), w()), 48);
        assert_eq!(stabilizer_order(&WeightVec::zero(), w()), 1152);
        assert_eq!(stabilizer_order(&RootSystemF4::get().weyl_vector, w()), 1);
        let half = WeightVec::from_halves([3, 1, 1, 1]);
        assert_eq!(orbit(&half, w()).len() * stabilizer_order(&half, w()), 1152);
    }
}
