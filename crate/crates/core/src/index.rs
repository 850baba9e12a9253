//! The equivariant index of the cubic Dirac operator on `G/T` and `G/H`.
//!
//! Two routes are provided. The closed form moves μ + ρ into the dominant
//! chamber. The shell oracle instead sums, over every dominant λ with
//! ‖λ+ρ‖² = ‖μ+ρ‖², the graded pairing `⟨V_λ ⊗ S⁺ − V_λ ⊗ S⁻, U_{μ+ρ}⟩_T`,
//! reading the degree off the spinor weights and the dimension off the weight
//! multiplicities. Neither route calls the other.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::charring::{
    freudenthal_multiplicities, h_irrep_multiplicity, tensor, tensor_coefficient, FormalCharacter,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rootsys::RootSystem;
use crate::spinor::{
    rho_prime, spinor_by_degree_with, spinor_character_with, GradedCharacter, Subsystem,
};
use crate::weight::{Rational, Weight};
use crate::weyl::{make_dominant_shifted, ShiftedOrbit};

/// A virtual representation that is either zero or `±[V_λ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexResult {
    Zero,
    Irreducible {
        sign: i64,
        lambda: Weight,
        length: usize,
        dimension: u128,
    },
}

impl IndexResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, IndexResult::Zero)
    }

    pub fn sign(&self) -> Option<i64> {
        match self {
            IndexResult::Zero => None,
            IndexResult::Irreducible { sign, .. } => Some(*sign),
        }
    }

    pub fn lambda(&self) -> Option<&Weight> {
        match self {
            IndexResult::Zero => None,
            IndexResult::Irreducible { lambda, .. } => Some(lambda),
        }
    }

    pub fn length(&self) -> Option<usize> {
        match self {
            IndexResult::Zero => None,
            IndexResult::Irreducible { length, .. } => Some(*length),
        }
    }

    pub fn dimension(&self) -> Option<u128> {
        match self {
            IndexResult::Zero => None,
            IndexResult::Irreducible { dimension, .. } => Some(*dimension),
        }
    }
}

fn parity_sign(length: usize) -> i64 {
    if length % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Closed form: `(−1)^{ℓ(μ)} [V_{W⊙μ}]` when μ + ρ is regular, else zero.
pub fn bwb_index(rs: &RootSystem, mu: &Weight) -> Result<IndexResult> {
    match make_dominant_shifted(rs, mu)? {
        ShiftedOrbit::Singular => Ok(IndexResult::Zero),
        ShiftedOrbit::Free { lambda, length, .. } => {
            let dimension = rs.dim_irrep(&lambda)?;
            Ok(IndexResult::Irreducible {
                sign: parity_sign(length),
                lambda,
                length,
                dimension,
            })
        }
    }
}

/// All dominant integral λ with ‖λ+ρ‖² ≤ `radius_sq`, in lexicographic order
/// of their labels.
pub fn shell_enumerate(rs: &RootSystem, radius_sq: Rational) -> Result<Vec<Weight>> {
    shell_enumerate_with(rs, radius_sq, &Limits::default())
}

pub fn shell_enumerate_with(rs: &RootSystem, radius_sq: Rational, limits: &Limits) -> Result<Vec<Weight>> {
    if radius_sq < Rational::zero() {
        return Err(Error::InvalidArgument("radius_sq must be nonnegative".to_string()));
    }
    let n = rs.rank();
    // x = λ + ρ is strictly dominant and all gram entries are positive, so
    // ‖x‖² ≥ x_i² gram[i][i].
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let g = rs.gram()[i][i];
            let mut k = 0i64;
            while Rational::from_integer((k + 1) * (k + 1)) * g <= radius_sq {
                k += 1;
            }
            k
        })
        .collect();
    if bounds.iter().any(|&b| b == 0) {
        return Ok(Vec::new());
    }
    let mut count: usize = 1;
    for &b in &bounds {
        count = count.saturating_mul(b as usize);
        if count > limits.candidate_cap {
            return Err(Error::CapExceeded {
                what: "shell candidate count",
                cap: limits.candidate_cap,
            });
        }
    }
    let mut out = Vec::new();
    let mut x = alloc::vec![1i64; n];
    loop {
        if rs.inner_ints(&x, &x) <= radius_sq {
            out.push(Weight::from_ints(&x.iter().map(|c| c - 1).collect::<Vec<_>>()));
        }
        // odometer, last coordinate fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if x[i] < bounds[i] {
                x[i] += 1;
                for xj in x.iter_mut().skip(i + 1) {
                    *xj = 1;
                }
                break;
            }
        }
    }
}

/// Pairings and characters shared by the shell computations for one root
/// system; caches weight systems of the irreducibles it has seen.
#[derive(Debug, Clone)]
pub struct ShellOracle<'a> {
    rs: &'a RootSystem,
    limits: Limits,
    spinor: GradedCharacter,
    spinor_by_degree: Vec<FormalCharacter>,
    characters: BTreeMap<Weight, FormalCharacter>,
}

/// One shell member and its two spinor pairings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellTerm {
    pub lambda: Weight,
    pub plus: i64,
    pub minus: i64,
}

impl ShellTerm {
    pub fn difference(&self) -> i64 {
        self.plus - self.minus
    }
}

impl<'a> ShellOracle<'a> {
    pub fn new(rs: &'a RootSystem) -> Result<Self> {
        Self::with_limits(rs, Limits::default())
    }

    pub fn with_limits(rs: &'a RootSystem, limits: Limits) -> Result<Self> {
        let torus = Subsystem::torus();
        Ok(ShellOracle {
            rs,
            limits,
            spinor: spinor_character_with(rs, &torus, &limits)?,
            spinor_by_degree: spinor_by_degree_with(rs, &torus, &limits)?,
            characters: BTreeMap::new(),
        })
    }

    pub fn spinor(&self) -> &GradedCharacter {
        &self.spinor
    }

    /// Weight system of `V_λ`, memoised.
    pub fn character(&mut self, lambda: &Weight) -> Result<&FormalCharacter> {
        if !self.characters.contains_key(lambda) {
            let ch = freudenthal_multiplicities(self.rs, lambda)?;
            self.characters.insert(lambda.clone(), ch);
        }
        Ok(&self.characters[lambda])
    }

    /// `(⟨V_λ ⊗ S⁺, U_{μ+ρ}⟩_T, ⟨V_λ ⊗ S⁻, U_{μ+ρ}⟩_T)`.
    pub fn kostant_pairing(&mut self, lambda: &Weight, mu: &Weight) -> Result<(i64, i64)> {
        mu.check_rank(self.rs.rank())?;
        mu.integral_labels()?;
        let target = mu + self.rs.rho();
        let rs_rank = self.rs.rank();
        lambda.check_rank(rs_rank)?;
        self.character(lambda)?;
        let ch = &self.characters[lambda];
        let plus = tensor_coefficient(ch, &self.spinor.even, &target)?;
        let minus = tensor_coefficient(ch, &self.spinor.odd, &target)?;
        Ok((plus, minus))
    }

    /// The exact shell ‖λ+ρ‖² = ‖μ+ρ‖² with each member's pairings.
    pub fn shell_terms(&mut self, mu: &Weight) -> Result<Vec<ShellTerm>> {
        mu.check_rank(self.rs.rank())?;
        mu.integral_labels()?;
        let radius = self.rs.norm_sq(&(mu + self.rs.rho()))?;
        let ball = shell_enumerate_with(self.rs, radius, &self.limits)?;
        let mut out = Vec::new();
        for lambda in ball {
            if self.rs.norm_sq(&(&lambda + self.rs.rho()))? != radius {
                continue;
            }
            let (plus, minus) = self.kostant_pairing(&lambda, mu)?;
            out.push(ShellTerm { lambda, plus, minus });
        }
        Ok(out)
    }

    /// The index assembled from the shell, with its length read off the
    /// exterior degree of the contributing spinor weight.
    pub fn index(&mut self, mu: &Weight) -> Result<IndexResult> {
        let terms = self.shell_terms(mu)?;
        let contributing: Vec<&ShellTerm> = terms.iter().filter(|t| t.difference() != 0).collect();
        let term = match contributing.as_slice() {
            [] => return Ok(IndexResult::Zero),
            [single] => *single,
            many => {
                return Err(Error::Consistency(format!(
                    "{} shell members contribute for mu = {}",
                    many.len(),
                    mu
                )))
            }
        };
        let sign = term.difference();
        if sign.abs() != 1 {
            return Err(Error::Consistency(format!(
                "coefficient {} for lambda = {} at mu = {}",
                sign, term.lambda, mu
            )));
        }
        let target = mu + self.rs.rho();
        let lambda = term.lambda.clone();
        self.character(&lambda)?;
        let ch = &self.characters[&lambda];
        let mut degrees = Vec::new();
        for (k, part) in self.spinor_by_degree.iter().enumerate() {
            let c = tensor_coefficient(ch, part, &target)?;
            if c != 0 {
                degrees.push((k, c));
            }
        }
        let length = match degrees.as_slice() {
            [(k, 1)] => *k,
            other => {
                return Err(Error::Consistency(format!(
                    "weight mu + rho = {} sits in degrees {:?} of V_{} (x) S",
                    target, other, lambda
                )))
            }
        };
        if parity_sign(length) != sign {
            return Err(Error::Consistency(format!(
                "degree {} disagrees with sign {} at mu = {}",
                length, sign, mu
            )));
        }
        let mass = ch.mass();
        Ok(IndexResult::Irreducible {
            sign,
            lambda,
            length,
            dimension: mass as u128,
        })
    }
}

/// `(⟨V_λ ⊗ S⁺, U_{μ+ρ}⟩_T, ⟨V_λ ⊗ S⁻, U_{μ+ρ}⟩_T)`.
pub fn kostant_pairing(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<(i64, i64)> {
    if !rs.is_dominant(lambda)? {
        return Err(Error::NotDominant);
    }
    ShellOracle::new(rs)?.kostant_pairing(lambda, mu)
}

/// Index computed from the shell sum; must agree with [`bwb_index`].
pub fn oracle_index(rs: &RootSystem, mu: &Weight) -> Result<IndexResult> {
    ShellOracle::new(rs)?.index(mu)
}

fn check_h_dominant(rs: &RootSystem, sub: &Subsystem, mu: &Weight) -> Result<()> {
    mu.check_rank(rs.rank())?;
    mu.integral_labels()?;
    if sub.is_dominant_integral(rs, mu) {
        Ok(())
    } else {
        Err(Error::NotDominant)
    }
}

/// Index on `G/H` for the `H`-irreducible with highest weight μ: the same
/// closed form, with the shifted test applied to μ + ρ.
pub fn gh_index(rs: &RootSystem, sub: &Subsystem, mu: &Weight) -> Result<IndexResult> {
    check_h_dominant(rs, sub, mu)?;
    bwb_index(rs, mu)
}

/// `G/H` shell oracle: sums `⟨V_λ ⊗ S±(g/h), W_{μ+ρ′}⟩_H` over the shell,
/// extracting `H`-multiplicities by Weyl alternation over `W(H)`.
pub fn gh_oracle_index(rs: &RootSystem, sub: &Subsystem, mu: &Weight) -> Result<IndexResult> {
    check_h_dominant(rs, sub, mu)?;
    let limits = Limits::default();
    let spinor = spinor_character_with(rs, sub, &limits)?;
    let by_degree = spinor_by_degree_with(rs, sub, &limits)?;
    let target = mu + &rho_prime(rs, sub);
    let radius = rs.norm_sq(&(mu + rs.rho()))?;
    let mut contributions = Vec::new();
    for lambda in shell_enumerate_with(rs, radius, &limits)? {
        if rs.norm_sq(&(&lambda + rs.rho()))? != radius {
            continue;
        }
        let ch = freudenthal_multiplicities(rs, &lambda)?;
        let plus = h_irrep_multiplicity(rs, sub, &tensor(&ch, &spinor.even)?, &target)?;
        let minus = h_irrep_multiplicity(rs, sub, &tensor(&ch, &spinor.odd)?, &target)?;
        if plus != minus {
            contributions.push((lambda, ch, plus - minus));
        }
    }
    let (lambda, ch, sign) = match contributions.len() {
        0 => return Ok(IndexResult::Zero),
        1 => contributions.pop().expect("one element"),
        k => {
            return Err(Error::Consistency(format!(
                "{} shell members contribute for mu = {} on G/H",
                k, mu
            )))
        }
    };
    if sign.abs() != 1 {
        return Err(Error::Consistency(format!("coefficient {} on G/H", sign)));
    }
    let mut degrees = Vec::new();
    for (k, part) in by_degree.iter().enumerate() {
        let m = h_irrep_multiplicity(rs, sub, &tensor(&ch, part)?, &target)?;
        if m != 0 {
            degrees.push((k, m));
        }
    }
    let length = match degrees.as_slice() {
        [(k, 1)] => *k,
        other => {
            return Err(Error::Consistency(format!(
                "H-multiplicity spread over degrees {:?} on G/H",
                other
            )))
        }
    };
    if parity_sign(length) != sign {
        return Err(Error::Consistency(format!(
            "degree {} disagrees with sign {} on G/H",
            length, sign
        )));
    }
    Ok(IndexResult::Irreducible {
        sign,
        lambda,
        length,
        dimension: ch.mass() as u128,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{enumerate_weyl_group, shifted_act};
    use alloc::vec;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight::from_ints(v)
    }

    fn irr(sign: i64, lambda: &[i64], length: usize, dimension: u128) -> IndexResult {
        IndexResult::Irreducible {
            sign,
            lambda: w(lambda),
            length,
            dimension,
        }
    }

    #[test]
    fn closed_form_examples() {
        let a1 = rs("A1");
        assert_eq!(bwb_index(&a1, &w(&[3])).unwrap(), irr(1, &[3], 0, 4));
        assert_eq!(bwb_index(&a1, &w(&[-1])).unwrap(), IndexResult::Zero);
        assert_eq!(bwb_index(&a1, &w(&[-3])).unwrap(), irr(-1, &[1], 1, 2));
        let a2 = rs("A2");
        assert_eq!(bwb_index(&a2, &w(&[-2, 1])).unwrap(), irr(-1, &[0, 0], 1, 1));
        let half = crate::weight::parse_weight("1/2").unwrap();
        assert_eq!(bwb_index(&a1, &half), Err(Error::NonIntegral));
    }

    #[test]
    fn pairing_examples() {
        let a1 = rs("A1");
        assert_eq!(kostant_pairing(&a1, &w(&[3]), &w(&[3])).unwrap(), (1, 0));
        assert_eq!(kostant_pairing(&a1, &w(&[5]), &w(&[3])).unwrap(), (1, 1));
        let a2 = rs("A2");
        assert_eq!(kostant_pairing(&a2, &w(&[0, 0]), &w(&[-2, 1])).unwrap(), (0, 1));
        assert_eq!(
            kostant_pairing(&a2, &w(&[-1, 0]), &w(&[0, 0])),
            Err(Error::NotDominant)
        );
    }

    #[test]
    fn shell_examples() {
        let a1 = rs("A1");
        let ball = shell_enumerate(&a1, Rational::from_integer(8)).unwrap();
        assert_eq!(ball, vec![w(&[0]), w(&[1]), w(&[2]), w(&[3])]);
        let a2 = rs("A2");
        assert_eq!(shell_enumerate(&a2, Rational::from_integer(2)).unwrap(), vec![w(&[0, 0])]);
        assert!(shell_enumerate(&a2, Rational::new(3, 2)).unwrap().is_empty());
        let limits = Limits {
            candidate_cap: 10,
            ..Limits::default()
        };
        assert!(matches!(
            shell_enumerate_with(&a2, Rational::from_integer(200), &limits),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn oracle_examples() {
        let a2 = rs("A2");
        assert_eq!(oracle_index(&a2, &w(&[-2, 1])).unwrap(), irr(-1, &[0, 0], 1, 1));
        let a1 = rs("A1");
        assert_eq!(oracle_index(&a1, &w(&[-1])).unwrap(), IndexResult::Zero);
        assert_eq!(oracle_index(&a1, &w(&[3])).unwrap(), irr(1, &[3], 0, 4));
    }

    #[test]
    fn closed_form_matches_oracle_on_a_box() {
        for label in ["A1", "A2", "B2", "G2", "C2"] {
            let r = rs(label);
            let mut oracle = ShellOracle::new(&r).unwrap();
            let n = r.rank();
            let side = 7usize;
            for code in 0..side.pow(n as u32) {
                let labels: Vec<i64> = (0..n)
                    .map(|k| ((code / side.pow(k as u32)) % side) as i64 - 3)
                    .collect();
                let mu = w(&labels);
                assert_eq!(oracle.index(&mu).unwrap(), bwb_index(&r, &mu).unwrap(), "{label} {mu}");
            }
        }
    }

    #[test]
    fn orbit_covariance() {
        for label in ["A2", "B2", "G2"] {
            let r = rs(label);
            let group = enumerate_weyl_group(&r).unwrap();
            for mu in [w(&[0, 0]), w(&[1, 2]), w(&[3, 0])] {
                let base = bwb_index(&r, &mu).unwrap();
                for el in &group {
                    let moved = shifted_act(&r, el, &mu).unwrap();
                    let res = bwb_index(&r, &moved).unwrap();
                    assert_eq!(res.lambda(), base.lambda());
                    assert_eq!(res.dimension(), base.dimension());
                    assert_eq!(res.sign(), Some(el.sign()));
                }
            }
        }
    }

    #[test]
    fn gh_examples() {
        let a2 = rs("A2");
        let levi = Subsystem::levi(&a2, &[0]).unwrap();
        assert_eq!(gh_index(&a2, &levi, &w(&[0, 0])).unwrap(), irr(1, &[0, 0], 0, 1));
        assert_eq!(gh_index(&a2, &levi, &w(&[0, -1])).unwrap(), IndexResult::Zero);
        assert_eq!(gh_oracle_index(&a2, &levi, &w(&[0, 0])).unwrap(), irr(1, &[0, 0], 0, 1));
        assert_eq!(gh_oracle_index(&a2, &levi, &w(&[0, -1])).unwrap(), IndexResult::Zero);
        assert_eq!(gh_index(&a2, &levi, &w(&[-1, 0])), Err(Error::NotDominant));
        let torus = Subsystem::torus();
        for labels in [[-2, 1], [1, 1], [-3, -3]] {
            let mu = w(&labels);
            assert_eq!(gh_index(&a2, &torus, &mu).unwrap(), bwb_index(&a2, &mu).unwrap());
            assert_eq!(gh_oracle_index(&a2, &torus, &mu).unwrap(), bwb_index(&a2, &mu).unwrap());
        }
    }

    #[test]
    fn gh_levis_of_rank_two() {
        for label in ["B2", "G2"] {
            let r = rs(label);
            for simple in [vec![0], vec![1]] {
                let sub = Subsystem::levi(&r, &simple).unwrap();
                for a in -2..=2 {
                    for b in -2..=2 {
                        let mu = w(&[a, b]);
                        if !sub.is_dominant_integral(&r, &mu) {
                            continue;
                        }
                        assert_eq!(
                            gh_oracle_index(&r, &sub, &mu).unwrap(),
                            gh_index(&r, &sub, &mu).unwrap(),
                            "{label} {simple:?} {mu}"
                        );
                    }
                }
            }
        }
    }
}
