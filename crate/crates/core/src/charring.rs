//! The formal character ring R(T): finite weight → multiplicity maps.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::spinor::Subsystem;
use crate::weight::{Rational, Weight};
use crate::weyl::{make_dominant_ints, orbit_ints};

/// A finite Z-linear combination of torus characters `e^ν`.
///
/// Zero multiplicities are never stored. Negative multiplicities make the
/// character virtual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalCharacter {
    rank: usize,
    terms: BTreeMap<Weight, i64>,
}

impl FormalCharacter {
    pub fn zero(rank: usize) -> Self {
        FormalCharacter {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// The one-dimensional character `U_ν`.
    pub fn single(weight: Weight) -> Self {
        let mut c = Self::zero(weight.rank());
        c.add_term(weight, 1);
        c
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, i64)>>(rank: usize, terms: I) -> Result<Self> {
        let mut c = Self::zero(rank);
        for (w, m) in terms {
            w.check_rank(rank)?;
            c.add_term(w, m);
        }
        Ok(c)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, weight: Weight, mult: i64) {
        debug_assert_eq!(weight.rank(), self.rank);
        if mult == 0 {
            return;
        }
        let entry = self.terms.entry(weight);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(mult);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += mult;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn multiplicity(&self, weight: &Weight) -> i64 {
        self.terms.get(weight).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total multiplicity (the dimension at the identity).
    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_virtual(&self) -> bool {
        self.terms.values().any(|&m| m < 0)
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank,
                found: other.rank,
            })
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.add_term(w.clone(), m);
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.add_term(w.clone(), -m);
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: i64) -> Self {
        let mut out = Self::zero(self.rank);
        for (w, m) in self.iter() {
            out.add_term(w.clone(), m * factor);
        }
        out
    }

    /// `self ⊗ U_ν`.
    pub fn shifted(&self, by: &Weight) -> Self {
        FormalCharacter {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, &m)| (w + by, m)).collect(),
        }
    }
}

/// Weight system of the irreducible representation with highest weight λ,
/// by Freudenthal's recursion over the dominant weights below λ.
pub fn freudenthal_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<FormalCharacter> {
    lambda.check_rank(rs.rank())?;
    let lam = lambda.integral_labels()?;
    if lam.iter().any(|&c| c < 0) {
        return Err(Error::NotDominant);
    }
    let dominant = dominant_multiplicities(rs, &lam);
    let mut out = FormalCharacter::zero(rs.rank());
    for (mu, m) in dominant {
        for nu in orbit_ints(rs, &mu) {
            out.add_term(Weight::from_ints(&nu), m);
        }
    }
    Ok(out)
}

/// Multiplicities of the dominant weights of `V_λ`.
pub(crate) fn dominant_multiplicities(rs: &RootSystem, lam: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let roots: Vec<Vec<i64>> = rs
        .positive_roots()
        .iter()
        .map(|r| r.to_ints().expect("roots are integral"))
        .collect();

    // Dominant weights of V_λ: close {λ} under taking α-strings and moving
    // the result back to the dominant chamber.
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    found.insert(lam.to_vec());
    queue.push_back(lam.to_vec());
    while let Some(mu) = queue.pop_front() {
        for (k, alpha) in roots.iter().enumerate() {
            let p = rs.positive_coroot_pairing_ints(&mu, k);
            for j in 1..=p {
                let mut nu: Vec<i64> = mu.iter().zip(alpha).map(|(a, b)| a - j * b).collect();
                make_dominant_ints(rs, &mut nu);
                if found.insert(nu.clone()) {
                    queue.push_back(nu);
                }
            }
        }
    }

    let depth = |mu: &[i64]| -> i64 {
        let diff: Vec<Rational> = lam
            .iter()
            .zip(mu)
            .map(|(a, b)| Rational::from_integer(a - b))
            .collect();
        let coords = rs
            .root_coordinates(&Weight::new(diff))
            .expect("rank matches");
        coords
            .iter()
            .fold(Rational::zero(), |a, b| a + b)
            .to_integer()
    };
    let mut ordered: Vec<Vec<i64>> = found.iter().cloned().collect();
    ordered.sort_by_key(|mu| (depth(mu), core::cmp::Reverse(mu.clone())));

    let shift = |v: &[i64]| -> Vec<i64> { v.iter().map(|c| c + 1).collect() };
    let top = rs.inner_ints(&shift(lam), &shift(lam));
    let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for mu in ordered {
        if mu == lam {
            mult.insert(mu, 1);
            continue;
        }
        let mut acc = Rational::zero();
        for alpha in &roots {
            let mut j = 1;
            loop {
                let nu: Vec<i64> = mu.iter().zip(alpha).map(|(a, b)| a + j * b).collect();
                let mut rep = nu.clone();
                make_dominant_ints(rs, &mut rep);
                if !found.contains(&rep) {
                    break;
                }
                let m = *mult.get(&rep).expect("higher weights are processed first");
                if m != 0 {
                    acc += rs.inner_ints(&nu, alpha) * Rational::from_integer(m);
                }
                j += 1;
            }
        }
        let denom = top - rs.inner_ints(&shift(&mu), &shift(&mu));
        debug_assert!(denom > Rational::zero());
        let value = Rational::from_integer(2) * acc / denom;
        debug_assert!(value.is_integer());
        mult.insert(mu, value.to_integer());
    }
    mult.retain(|_, m| *m != 0);
    mult
}

/// Convolution `a ⊗ b`.
pub fn tensor(a: &FormalCharacter, b: &FormalCharacter) -> Result<FormalCharacter> {
    a.same_context(b)?;
    let mut out = FormalCharacter::zero(a.rank);
    for (wa, ma) in a.iter() {
        for (wb, mb) in b.iter() {
            out.add_term(wa + wb, ma * mb);
        }
    }
    Ok(out)
}

/// Negates every weight.
pub fn dual(a: &FormalCharacter) -> FormalCharacter {
    FormalCharacter {
        rank: a.rank,
        terms: a.terms.iter().map(|(w, &m)| (-w, m)).collect(),
    }
}

/// `⟨E, F⟩_T = Σ_ν mult_E(ν) · mult_F(ν)`, extended bilinearly to virtual
/// characters.
pub fn pairing_t(e: &FormalCharacter, f: &FormalCharacter) -> Result<i64> {
    e.same_context(f)?;
    let (small, large) = if e.len() <= f.len() { (e, f) } else { (f, e) };
    Ok(small
        .iter()
        .map(|(w, m)| m * large.multiplicity(w))
        .sum())
}

/// The coefficient of `e^ν` in `a ⊗ b`, i.e. `pairing_t(tensor(a, b), U_ν)`,
/// without forming the product.
pub fn tensor_coefficient(a: &FormalCharacter, b: &FormalCharacter, nu: &Weight) -> Result<i64> {
    a.same_context(b)?;
    nu.check_rank(a.rank)?;
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    Ok(small
        .iter()
        .map(|(w, m)| m * large.multiplicity(&(nu - w)))
        .sum())
}

/// `Σ_ν mult(ν) · exp(i ν(θ))` with `ν(θ) = Σ_k labels_k θ_k`.
pub fn evaluate_at_torus(a: &FormalCharacter, theta: &[f64]) -> Result<Complex64> {
    if theta.len() != a.rank {
        return Err(Error::DimensionMismatch {
            expected: a.rank,
            found: theta.len(),
        });
    }
    let mut re = 0.0;
    let mut im = 0.0;
    for (w, m) in a.iter() {
        let phase: f64 = w
            .coords()
            .iter()
            .zip(theta)
            .map(|(c, t)| rational_to_f64(*c) * t)
            .sum();
        re += m as f64 * libm::cos(phase);
        im += m as f64 * libm::sin(phase);
    }
    Ok(Complex64::new(re, im))
}

pub(crate) fn rational_to_f64(q: Rational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// Multiplicity of the `H`-irreducible with highest weight μ inside the
/// `W(H)`-symmetric character `e`, by Weyl alternation:
/// `Σ_{w ∈ W(H)} (−1)^{ℓ(w)} mult_e(w(μ + ρ_H) − ρ_H)`.
pub fn h_irrep_multiplicity(
    rs: &RootSystem,
    sub: &Subsystem,
    e: &FormalCharacter,
    mu: &Weight,
) -> Result<i64> {
    mu.check_rank(rs.rank())?;
    if e.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            found: e.rank(),
        });
    }
    if !sub.is_dominant_integral(rs, mu) {
        return Err(Error::NotDominant);
    }
    let rho_h = sub.rho_h(rs);
    let shifted = mu + &rho_h;
    let mut total = 0;
    for el in sub.weyl_group(rs) {
        let image = &el.act(&shifted) - &rho_h;
        total += el.sign() * e.multiplicity(&image);
    }
    Ok(total)
}
