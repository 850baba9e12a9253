//! Spinor and exterior-algebra characters for `p = h^⊥`, and the
//! maximal-rank subsystems `h` they are built from.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::charring::FormalCharacter;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rootsys::RootSystem;
use crate::weight::{Rational, Weight};

/// Positive roots of a maximal-rank subalgebra `h`, as indices into
/// [`RootSystem::positive_roots`]. The empty subsystem is the torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsystem {
    roots_plus: Vec<usize>,
    simple_subset: Option<Vec<usize>>,
}

/// An element of the reflection group `W(H)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupElement {
    matrix: Vec<Vec<i64>>,
    sign: i64,
}

impl SubgroupElement {
    pub fn act(&self, x: &Weight) -> Weight {
        Weight::new(
            self.matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(x.coords())
                        .map(|(&m, c)| c * Rational::from_integer(m))
                        .fold(Rational::zero(), |a, b| a + b)
                })
                .collect(),
        )
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    fn act_ints(&self, x: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl Subsystem {
    /// `H = T`: no roots.
    pub fn torus() -> Self {
        Subsystem {
            roots_plus: Vec::new(),
            simple_subset: Some(Vec::new()),
        }
    }

    /// The Levi subsystem generated by the given simple roots (zero-based).
    pub fn levi(rs: &RootSystem, simple: &[usize]) -> Result<Self> {
        let n = rs.rank();
        if let Some(&bad) = simple.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, rank: n });
        }
        let set: BTreeSet<usize> = simple.iter().copied().collect();
        let roots_plus = rs
            .positive_root_coords()
            .iter()
            .enumerate()
            .filter(|(_, k)| k.iter().enumerate().all(|(i, &c)| c == 0 || set.contains(&i)))
            .map(|(idx, _)| idx)
            .collect();
        Ok(Subsystem {
            roots_plus,
            simple_subset: Some(set.into_iter().collect()),
        })
    }

    /// An arbitrary subset of positive roots, which must be closed under
    /// addition within Φ₊. Non-Levi subsystems are accepted but only Levi
    /// ones are exercised by the test suite.
    pub fn from_roots(rs: &RootSystem, roots: &[usize]) -> Result<Self> {
        let total = rs.positive_roots().len();
        if roots.iter().any(|&k| k >= total) {
            return Err(Error::InvalidSubsystem("root index out of range"));
        }
        let set: BTreeSet<usize> = roots.iter().copied().collect();
        let coords = rs.positive_root_coords();
        for &a in &set {
            for &b in &set {
                let sum: Vec<i64> = coords[a].iter().zip(&coords[b]).map(|(x, y)| x + y).collect();
                if let Some(c) = coords.iter().position(|k| *k == sum) {
                    if !set.contains(&c) {
                        return Err(Error::InvalidSubsystem("not closed under root addition"));
                    }
                }
            }
        }
        Ok(Subsystem {
            roots_plus: set.into_iter().collect(),
            simple_subset: None,
        })
    }

    pub fn roots_plus(&self) -> &[usize] {
        &self.roots_plus
    }

    pub fn simple_subset(&self) -> Option<&[usize]> {
        self.simple_subset.as_deref()
    }

    pub fn is_torus(&self) -> bool {
        self.roots_plus.is_empty()
    }

    /// Φ₊ ∖ Φ₊(h), as root indices.
    pub fn complement(&self, rs: &RootSystem) -> Vec<usize> {
        (0..rs.positive_roots().len())
            .filter(|k| !self.roots_plus.contains(k))
            .collect()
    }

    fn half_sum(rs: &RootSystem, roots: &[usize]) -> Weight {
        let mut sum = Weight::zero(rs.rank());
        for &k in roots {
            sum = &sum + &rs.positive_roots()[k];
        }
        sum.scale(Rational::new(1, 2))
    }

    /// ρ_h, half the sum of Φ₊(h).
    pub fn rho_h(&self, rs: &RootSystem) -> Weight {
        Self::half_sum(rs, &self.roots_plus)
    }

    /// Roots of the subsystem that are not sums of two of its roots.
    fn simple_roots_of(&self, rs: &RootSystem) -> Vec<usize> {
        let coords = rs.positive_root_coords();
        self.roots_plus
            .iter()
            .copied()
            .filter(|&c| {
                !self.roots_plus.iter().any(|&a| {
                    self.roots_plus.iter().any(|&b| {
                        coords[a].iter().zip(&coords[b]).map(|(x, y)| x + y).eq(coords[c].iter().copied())
                    })
                })
            })
            .collect()
    }

    /// ⟨μ, β∨⟩ is a nonnegative integer for every β ∈ Φ₊(h).
    pub fn is_dominant_integral(&self, rs: &RootSystem, mu: &Weight) -> bool {
        self.roots_plus.iter().all(|&k| {
            let p = rs.positive_coroot_pairing(mu, k);
            p.is_integer() && p >= Rational::zero()
        })
    }

    /// Every element of `W(H)` with its sign, generated by the reflections in
    /// the simple roots of the subsystem.
    pub fn weyl_group(&self, rs: &RootSystem) -> Vec<SubgroupElement> {
        let n = rs.rank();
        let generators: Vec<SubgroupElement> = self
            .simple_roots_of(rs)
            .into_iter()
            .map(|k| {
                let beta = rs.positive_roots()[k].to_ints().expect("roots are integral");
                let coroot = &rs.coroot_coefficients()[k];
                let matrix = (0..n)
                    .map(|j| (0..n).map(|i| i64::from(i == j) - beta[j] * coroot[i]).collect())
                    .collect();
                SubgroupElement { matrix, sign: -1 }
            })
            .collect();
        let identity = SubgroupElement {
            matrix: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
            sign: 1,
        };
        let rho = vec![1i64; n];
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        seen.insert(rho.clone());
        let mut out = vec![identity];
        let mut head = 0;
        while head < out.len() {
            let current = out[head].clone();
            for g in &generators {
                let matrix: Vec<Vec<i64>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| (0..n).map(|k| g.matrix[i][k] * current.matrix[k][j]).sum())
                            .collect()
                    })
                    .collect();
                let el = SubgroupElement {
                    matrix,
                    sign: -current.sign,
                };
                if seen.insert(el.act_ints(&rho)) {
                    out.push(el);
                }
            }
            head += 1;
        }
        out
    }
}

/// A Z/2-graded character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCharacter {
    pub even: FormalCharacter,
    pub odd: FormalCharacter,
}

impl GradedCharacter {
    /// `even − odd`.
    pub fn difference(&self) -> FormalCharacter {
        self.even.minus(&self.odd).expect("halves share a rank")
    }

    pub fn total(&self) -> FormalCharacter {
        self.even.plus(&self.odd).expect("halves share a rank")
    }

    pub fn part(&self, odd: bool) -> &FormalCharacter {
        if odd {
            &self.odd
        } else {
            &self.even
        }
    }
}

/// Graded convolution over a list of integer "root directions": each root
/// contributes a factor `e^{a} (degree 0) + e^{b} (degree 1)`. Returns one
/// map per degree. Coordinates are whatever scale the caller chose.
fn degree_convolution(factors: &[(Vec<i64>, Vec<i64>)], rank: usize) -> Vec<BTreeMap<Vec<i64>, i64>> {
    let mut by_degree: Vec<BTreeMap<Vec<i64>, i64>> = vec![BTreeMap::new()];
    by_degree[0].insert(vec![0; rank], 1);
    for (stay, flip) in factors {
        let mut next: Vec<BTreeMap<Vec<i64>, i64>> = vec![BTreeMap::new(); by_degree.len() + 1];
        for (deg, layer) in by_degree.iter().enumerate() {
            for (w, &m) in layer {
                let a: Vec<i64> = w.iter().zip(stay).map(|(x, y)| x + y).collect();
                *next[deg].entry(a).or_insert(0) += m;
                let b: Vec<i64> = w.iter().zip(flip).map(|(x, y)| x + y).collect();
                *next[deg + 1].entry(b).or_insert(0) += m;
            }
        }
        by_degree = next;
    }
    by_degree
}

/// Graded convolution keeping only the parity of the degree.
fn parity_convolution(factors: &[(Vec<i64>, Vec<i64>)], rank: usize) -> [BTreeMap<Vec<i64>, i64>; 2] {
    let mut parts: [BTreeMap<Vec<i64>, i64>; 2] = [BTreeMap::new(), BTreeMap::new()];
    parts[0].insert(vec![0; rank], 1);
    for (stay, flip) in factors {
        let mut next: [BTreeMap<Vec<i64>, i64>; 2] = [BTreeMap::new(), BTreeMap::new()];
        for (parity, layer) in parts.iter().enumerate() {
            for (w, &m) in layer {
                let a: Vec<i64> = w.iter().zip(stay).map(|(x, y)| x + y).collect();
                *next[parity].entry(a).or_insert(0) += m;
                let b: Vec<i64> = w.iter().zip(flip).map(|(x, y)| x + y).collect();
                *next[1 - parity].entry(b).or_insert(0) += m;
            }
        }
        parts = next;
    }
    parts
}

fn complement_checked(rs: &RootSystem, sub: &Subsystem, limits: &Limits) -> Result<Vec<Vec<i64>>> {
    let complement = sub.complement(rs);
    if complement.len() > limits.subset_cap {
        return Err(Error::CapExceeded {
            what: "number of complement roots",
            cap: limits.subset_cap,
        });
    }
    Ok(complement
        .into_iter()
        .map(|k| rs.positive_roots()[k].to_ints().expect("roots are integral"))
        .collect())
}

fn to_character(rank: usize, map: &BTreeMap<Vec<i64>, i64>, halve: bool) -> FormalCharacter {
    let mut out = FormalCharacter::zero(rank);
    for (w, &m) in map {
        let weight = if halve {
            Weight::new(w.iter().map(|&c| Rational::new(c, 2)).collect())
        } else {
            Weight::from_ints(w)
        };
        out.add_term(weight, m);
    }
    out
}

/// `∧•(n₊/(n₊ ∩ h))`: subset sums of the complement roots, graded by the
/// parity of the subset size. Built as the graded tensor product of the
/// two-dimensional exterior algebras `1 ⊕ e^{α}`.
pub fn exterior_np_character(rs: &RootSystem, sub: &Subsystem) -> Result<GradedCharacter> {
    exterior_np_character_with(rs, sub, &Limits::default())
}

pub fn exterior_np_character_with(rs: &RootSystem, sub: &Subsystem, limits: &Limits) -> Result<GradedCharacter> {
    let roots = complement_checked(rs, sub, limits)?;
    let n = rs.rank();
    let factors: Vec<(Vec<i64>, Vec<i64>)> = roots.into_iter().map(|a| (vec![0; n], a)).collect();
    let [even, odd] = parity_convolution(&factors, n);
    Ok(GradedCharacter {
        even: to_character(n, &even, false),
        odd: to_character(n, &odd, false),
    })
}

/// The spinor module of `p`: the graded tensor product of the rank-one
/// spinors `e^{α/2} (even) ⊕ e^{−α/2} (odd)` over the complement roots.
/// Its weights are `ρ′ − Σ A` for subsets `A`, with `S⁺` the even subsets.
pub fn spinor_character(rs: &RootSystem, sub: &Subsystem) -> Result<GradedCharacter> {
    spinor_character_with(rs, sub, &Limits::default())
}

pub fn spinor_character_with(rs: &RootSystem, sub: &Subsystem, limits: &Limits) -> Result<GradedCharacter> {
    let roots = complement_checked(rs, sub, limits)?;
    let n = rs.rank();
    // doubled coordinates keep ±α/2 integral
    let factors: Vec<(Vec<i64>, Vec<i64>)> = roots
        .into_iter()
        .map(|a| (a.clone(), a.iter().map(|c| -c).collect()))
        .collect();
    let [even, odd] = parity_convolution(&factors, n);
    Ok(GradedCharacter {
        even: to_character(n, &even, true),
        odd: to_character(n, &odd, true),
    })
}

/// The spinor weights split by exterior degree `|A|`: entry `k` holds
/// `{ρ′ − Σ A : |A| = k}`.
pub fn spinor_by_degree(rs: &RootSystem, sub: &Subsystem) -> Result<Vec<FormalCharacter>> {
    spinor_by_degree_with(rs, sub, &Limits::default())
}

pub fn spinor_by_degree_with(rs: &RootSystem, sub: &Subsystem, limits: &Limits) -> Result<Vec<FormalCharacter>> {
    let roots = complement_checked(rs, sub, limits)?;
    let n = rs.rank();
    let factors: Vec<(Vec<i64>, Vec<i64>)> = roots
        .into_iter()
        .map(|a| (a.clone(), a.iter().map(|c| -c).collect()))
        .collect();
    Ok(degree_convolution(&factors, n)
        .iter()
        .map(|m| to_character(n, m, true))
        .collect())
}

/// ρ′ = ½ Σ_{α ∈ Φ₊ ∖ Φ₊(h)} α.
pub fn rho_prime(rs: &RootSystem, sub: &Subsystem) -> Weight {
    Subsystem::half_sum(rs, &sub.complement(rs))
}
