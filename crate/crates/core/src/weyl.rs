//! Weyl group elements, the plain and shifted actions, and lengths.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rootsys::RootSystem;
use crate::weight::{Rational, Weight};

/// An element of W with one canonical reduced word.
///
/// `word = [i1, ..., ik]` stands for `s_{i1} s_{i2} ... s_{ik}`, so the
/// rightmost reflection acts first. Indices are zero-based. `matrix` is the
/// action on Dynkin labels: `(w x)_j = Σ_k matrix[j][k] x_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let matrix = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        WeylElement {
            word: Vec::new(),
            matrix,
        }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// (−1)^length, the determinant of the action.
    pub fn sign(&self) -> i64 {
        if self.word.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `self · other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.matrix.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum())
                    .collect()
            })
            .collect();
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { word, matrix }
    }

    pub fn act(&self, x: &Weight) -> Weight {
        let c = x.coords();
        Weight::new(
            self.matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(c)
                        .map(|(&m, xi)| xi * Rational::from_integer(m))
                        .fold(Rational::zero(), |a, b| a + b)
                })
                .collect(),
        )
    }

    pub(crate) fn act_ints(&self, x: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(m, v)| m * v).sum())
            .collect()
    }
}

/// The simple reflection `s_i` (zero-based `i`).
pub fn simple_reflection(rs: &RootSystem, i: usize) -> Result<WeylElement> {
    let n = rs.rank();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, rank: n });
    }
    let c = rs.cartan_matrix();
    let matrix = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| i64::from(j == k) - if k == i { c[i][j] } else { 0 })
                .collect()
        })
        .collect();
    Ok(WeylElement {
        word: vec![i],
        matrix,
    })
}

/// `w·x`, checking the rank.
pub fn act(rs: &RootSystem, w: &WeylElement, x: &Weight) -> Result<Weight> {
    x.check_rank(rs.rank())?;
    Ok(w.act(x))
}

/// `w ⊙ λ = w(λ + ρ) − ρ`.
pub fn shifted_act(rs: &RootSystem, w: &WeylElement, lambda: &Weight) -> Result<Weight> {
    lambda.check_rank(rs.rank())?;
    Ok(&w.act(&(lambda + rs.rho())) - rs.rho())
}

pub(crate) fn reflect_ints(rs: &RootSystem, x: &mut [i64], i: usize) {
    let xi = x[i];
    if xi != 0 {
        for (xj, cij) in x.iter_mut().zip(&rs.cartan_matrix()[i]) {
            *xj -= xi * cij;
        }
    }
}

/// Moves an integral weight into the dominant chamber by simple reflections;
/// returns the number of reflections used.
pub(crate) fn make_dominant_ints(rs: &RootSystem, x: &mut [i64]) -> usize {
    let mut steps = 0;
    while let Some(i) = x.iter().position(|&c| c < 0) {
        reflect_ints(rs, x, i);
        steps += 1;
    }
    steps
}

/// The W-orbit of an integral weight.
pub(crate) fn orbit_ints(rs: &RootSystem, x: &[i64]) -> Vec<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(x.to_vec());
    queue.push_back(x.to_vec());
    while let Some(v) = queue.pop_front() {
        for i in 0..v.len() {
            if v[i] == 0 {
                continue;
            }
            let mut u = v.clone();
            reflect_ints(rs, &mut u, i);
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    seen.into_iter().collect()
}

/// Every element of W exactly once, in breadth-first (length) order.
///
/// Elements are identified by their image of ρ, which has trivial stabiliser.
pub fn enumerate_weyl_group(rs: &RootSystem) -> Result<Vec<WeylElement>> {
    enumerate_weyl_group_with(rs, &Limits::default())
}

pub fn enumerate_weyl_group_with(rs: &RootSystem, limits: &Limits) -> Result<Vec<WeylElement>> {
    let n = rs.rank();
    let reflections: Vec<WeylElement> = (0..n)
        .map(|i| simple_reflection(rs, i))
        .collect::<Result<_>>()?;
    let rho = vec![1i64; n];
    let mut seen: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
    let mut out = vec![WeylElement::identity(n)];
    seen.insert(rho.clone(), ());
    let mut head = 0;
    while head < out.len() {
        let w = out[head].clone();
        let image = w.act_ints(&rho);
        for (i, s) in reflections.iter().enumerate() {
            let mut next = image.clone();
            reflect_ints(rs, &mut next, i);
            if seen.contains_key(&next) {
                continue;
            }
            seen.insert(next, ());
            out.push(s.compose(&w));
            if out.len() > limits.weyl_group_cap {
                return Err(Error::CapExceeded {
                    what: "Weyl group size",
                    cap: limits.weyl_group_cap,
                });
            }
        }
        head += 1;
    }
    Ok(out)
}

/// Outcome of moving μ + ρ into the dominant chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftedOrbit {
    /// μ + ρ lies on a wall: the shifted orbit is not free.
    Singular,
    Free {
        /// The unique `w` with `w(μ+ρ)` dominant.
        element: WeylElement,
        /// `w ⊙ μ`, dominant integral.
        lambda: Weight,
        length: usize,
    },
}

impl ShiftedOrbit {
    pub fn is_free(&self) -> bool {
        matches!(self, ShiftedOrbit::Free { .. })
    }
}

/// Finds the dominant member of the shifted orbit `W ⊙ μ`.
pub fn make_dominant_shifted(rs: &RootSystem, mu: &Weight) -> Result<ShiftedOrbit> {
    mu.check_rank(rs.rank())?;
    let labels = mu.integral_labels()?;
    let mut x: Vec<i64> = labels.iter().map(|c| c + 1).collect();
    let singular =
        (0..rs.positive_roots().len()).any(|k| rs.positive_coroot_pairing_ints(&x, k) == 0);
    if singular {
        return Ok(ShiftedOrbit::Singular);
    }
    let mut element = WeylElement::identity(rs.rank());
    while let Some(i) = x.iter().position(|&c| c < 0) {
        reflect_ints(rs, &mut x, i);
        element = simple_reflection(rs, i)?.compose(&element);
    }
    let lambda = Weight::from_ints(&x.iter().map(|c| c - 1).collect::<Vec<_>>());
    let length = element.length();
    Ok(ShiftedOrbit::Free {
        element,
        lambda,
        length,
    })
}

/// ℓ(μ) = #{α > 0 : ⟨μ + ρ, α⟩ < 0}; μ + ρ must be regular.
pub fn length_mu(rs: &RootSystem, mu: &Weight) -> Result<usize> {
    mu.check_rank(rs.rank())?;
    let x = mu + rs.rho();
    let mut count = 0;
    for k in 0..rs.positive_roots().len() {
        let p = rs.positive_coroot_pairing(&x, k);
        if p.is_zero() {
            return Err(Error::Singular);
        }
        if p.is_negative() {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight::from_ints(v)
    }

    #[test]
    fn reflections() {
        let a2 = rs("A2");
        let s1 = simple_reflection(&a2, 0).unwrap();
        assert_eq!(s1.act(&w(&[-1, 2])), w(&[1, 1]));
        let a1 = rs("A1");
        let s = simple_reflection(&a1, 0).unwrap();
        assert_eq!(s.act(&w(&[5])), w(&[-5]));
        for label in ["A3", "B2", "G2", "F4"] {
            let r = rs(label);
            for i in 0..r.rank() {
                let si = simple_reflection(&r, i).unwrap();
                assert_eq!(si.act(r.rho()), r.rho() - &r.simple_roots()[i]);
            }
        }
        assert!(matches!(
            simple_reflection(&a2, 2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn group_orders() {
        for (label, order) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("B2", 8),
            ("B3", 48),
            ("G2", 12),
            ("D4", 192),
            ("F4", 1152),
        ] {
            assert_eq!(enumerate_weyl_group(&rs(label)).unwrap().len(), order, "{label}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let limits = Limits {
            weyl_group_cap: 10,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_weyl_group_with(&rs("B3"), &limits),
            Err(Error::CapExceeded { cap: 10, .. })
        ));
    }

    #[test]
    fn word_length_counts_inversions() {
        for label in ["A3", "B2", "G2", "C3"] {
            let r = rs(label);
            for el in enumerate_weyl_group(&r).unwrap() {
                let inversions = r
                    .positive_roots()
                    .iter()
                    .filter(|a| {
                        let image = el.act(a);
                        // negative roots have nonpositive simple-root coordinates
                        r.root_coordinates(&image)
                            .unwrap()
                            .iter()
                            .all(|c| *c <= Rational::zero())
                    })
                    .count();
                assert_eq!(inversions, el.length());
            }
        }
    }

    #[test]
    fn shifted_examples() {
        let a1 = rs("A1");
        let s = simple_reflection(&a1, 0).unwrap();
        assert_eq!(shifted_act(&a1, &s, &w(&[-3])).unwrap(), w(&[1]));
        let a2 = rs("A2");
        let s1 = simple_reflection(&a2, 0).unwrap();
        assert_eq!(shifted_act(&a2, &s1, &w(&[-2, 1])).unwrap(), w(&[0, 0]));
        let id = WeylElement::identity(2);
        assert_eq!(shifted_act(&a2, &id, &w(&[4, -7])).unwrap(), w(&[4, -7]));
    }

    #[test]
    fn dominant_shift_examples() {
        let a1 = rs("A1");
        match make_dominant_shifted(&a1, &w(&[3])).unwrap() {
            ShiftedOrbit::Free {
                element,
                lambda,
                length,
            } => {
                assert_eq!(element, WeylElement::identity(1));
                assert_eq!(lambda, w(&[3]));
                assert_eq!(length, 0);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            make_dominant_shifted(&a1, &w(&[-1])).unwrap(),
            ShiftedOrbit::Singular
        );
        let a2 = rs("A2");
        match make_dominant_shifted(&a2, &w(&[-2, 1])).unwrap() {
            ShiftedOrbit::Free {
                element,
                lambda,
                length,
            } => {
                assert_eq!(element.word(), &[0]);
                assert_eq!(lambda, w(&[0, 0]));
                assert_eq!(length, 1);
            }
            other => panic!("{other:?}"),
        }
        let half = crate::weight::parse_weight("1/2,0").unwrap();
        assert_eq!(make_dominant_shifted(&a2, &half), Err(Error::NonIntegral));
    }

    #[test]
    fn lengths() {
        let a1 = rs("A1");
        assert_eq!(length_mu(&a1, &w(&[-3])).unwrap(), 1);
        assert_eq!(length_mu(&a1, &w(&[2])).unwrap(), 0);
        assert_eq!(length_mu(&a1, &w(&[-1])), Err(Error::Singular));
        let a2 = rs("A2");
        assert_eq!(length_mu(&a2, &w(&[-2, 1])).unwrap(), 1);
        // the formula without the ρ shift would count ⟨μ, α⟩ < 0 twice here
        let mu = w(&[-2, 1]);
        let naive = (0..3)
            .filter(|&k| a2.positive_coroot_pairing(&mu, k) < Rational::zero())
            .count();
        assert_eq!(naive, 2);
    }

    #[test]
    fn length_of_orbit_points_is_word_length() {
        for label in ["A1", "A2", "B2", "G2"] {
            let r = rs(label);
            let group = enumerate_weyl_group(&r).unwrap();
            for mu in [w(&vec![0; r.rank()]), w(&vec![2; r.rank()])] {
                for el in &group {
                    let moved = shifted_act(&r, el, &mu).unwrap();
                    assert_eq!(length_mu(&r, &moved).unwrap(), el.length());
                    match make_dominant_shifted(&r, &moved).unwrap() {
                        ShiftedOrbit::Free { lambda, length, .. } => {
                            assert_eq!(lambda, mu);
                            assert_eq!(length, el.length());
                        }
                        ShiftedOrbit::Singular => panic!("regular point reported singular"),
                    }
                }
            }
        }
    }

    #[test]
    fn unique_dominant_representative() {
        let r = rs("B2");
        let group = enumerate_weyl_group(&r).unwrap();
        for a in -3..=3 {
            for b in -3..=3 {
                let x = &w(&[a, b]) + r.rho();
                if !r.is_regular(&x).unwrap() {
                    continue;
                }
                let hits: Vec<_> = group
                    .iter()
                    .filter(|el| r.is_dominant(&el.act(&x)).unwrap())
                    .collect();
                assert_eq!(hits.len(), 1);
                assert!(hits[0].act(&x).coords().iter().all(|c| *c > Rational::zero()));
            }
        }
    }

    fn rational_weight(rank: usize) -> impl Strategy<Value = Weight> {
        proptest::collection::vec((-20i64..20, 1i64..6), rank).prop_map(|v| {
            Weight::new(v.into_iter().map(|(n, d)| Rational::new(n, d)).collect())
        })
    }

    proptest! {
        #[test]
        fn shifted_action_is_a_group_action(
            labels in proptest::collection::vec(-6i64..6, 2),
            i in 0usize..12, j in 0usize..12,
        ) {
            let r = rs("G2");
            let group = enumerate_weyl_group(&r).unwrap();
            let (a, b) = (&group[i], &group[j]);
            let lam = w(&labels);
            let lhs = shifted_act(&r, &a.compose(b), &lam).unwrap();
            let rhs = shifted_act(&r, a, &shifted_act(&r, b, &lam).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn weyl_group_preserves_inner(x in rational_weight(3), y in rational_weight(3)) {
            for label in ["A3", "B3", "C3"] {
                let r = rs(label);
                for el in enumerate_weyl_group(&r).unwrap() {
                    prop_assert_eq!(
                        r.inner(&el.act(&x), &el.act(&y)).unwrap(),
                        r.inner(&x, &y).unwrap()
                    );
                }
            }
        }
    }
}
