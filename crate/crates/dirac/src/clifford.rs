//! The spin module of `p = t^⊥` as a fermionic Fock space.
//!
//! One mode per positive root. The state `|A⟩` (a set of occupied modes) has
//! weight `ρ − Σ_{α∈A} α` and exterior degree `|A|`. With `Y_{α,1}, Y_{α,2}`
//! the compact pair of the root, `c(Y_{α,1}) = a_α − a_α†` and
//! `c(Y_{α,2}) = i(a_α + a_α†)`, so `c(e_α)` annihilates and `c(f_α)`
//! creates. Every generator squares to `−1`.

use bwb_core::{RootSystem, Weight};
use nalgebra::DMatrix;

use crate::lie::{LieModel, C64};

#[derive(Debug, Clone)]
pub struct CliffordModel {
    pub p_dimension: usize,
    pub gamma_matrices: Vec<DMatrix<C64>>,
    /// Diagonal `(−1)^{|A|}`.
    pub grading: DMatrix<C64>,
    /// Weight of each Fock state.
    pub state_weights: Vec<Weight>,
    /// Occupation number `|A|` of each Fock state.
    pub degrees: Vec<usize>,
}

fn fermion_sign(mask: usize, mode: usize) -> f64 {
    if (mask & ((1 << mode) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl CliffordModel {
    /// Spin module for `p = t^⊥` (all positive roots).
    pub fn new(rs: &RootSystem) -> Self {
        let m = rs.positive_roots().len();
        let size = 1usize << m;
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let mut gamma_matrices = Vec::with_capacity(2 * m);
        for mode in 0..m {
            let mut annihilate = DMatrix::<C64>::zeros(size, size);
            for mask in 0..size {
                if mask & (1 << mode) != 0 {
                    annihilate[(mask ^ (1 << mode), mask)] = one * fermion_sign(mask, mode);
                }
            }
            let create = annihilate.adjoint();
            gamma_matrices.push(&annihilate - &create);
            gamma_matrices.push((&annihilate + &create) * i);
        }
        let degrees: Vec<usize> = (0..size).map(|mask: usize| mask.count_ones() as usize).collect();
        let grading = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            size,
            degrees.iter().map(|&d| if d % 2 == 0 { one } else { -one }),
        ));
        let state_weights = (0..size)
            .map(|mask| {
                let mut w = rs.rho().clone();
                for (k, root) in rs.positive_roots().iter().enumerate() {
                    if mask & (1 << k) != 0 {
                        w = &w - root;
                    }
                }
                w
            })
            .collect();
        CliffordModel {
            p_dimension: 2 * m,
            gamma_matrices,
            grading,
            state_weights,
            degrees,
        }
    }

    pub fn size(&self) -> usize {
        self.grading.nrows()
    }

    /// The dual module: conjugate generators and negated weights.
    pub fn dual(&self) -> CliffordModel {
        CliffordModel {
            p_dimension: self.p_dimension,
            gamma_matrices: self.gamma_matrices.iter().map(|m| m.map(|z| z.conj())).collect(),
            grading: self.grading.clone(),
            state_weights: self.state_weights.iter().map(|w| -w).collect(),
            degrees: self.degrees.clone(),
        }
    }

    /// `max |c_i c_j + c_j c_i + 2δ_ij|`.
    pub fn clifford_defect(&self) -> f64 {
        let n = self.size();
        let mut worst: f64 = 0.0;
        for (a, ca) in self.gamma_matrices.iter().enumerate() {
            for (b, cb) in self.gamma_matrices.iter().enumerate() {
                let mut anti = ca * cb + cb * ca;
                if a == b {
                    anti += DMatrix::<C64>::identity(n, n) * C64::new(2.0, 0.0);
                }
                worst = worst.max(anti.map(|z| z.norm()).max());
            }
        }
        worst
    }

    /// `max |c_i ε + ε c_i|`.
    pub fn grading_defect(&self) -> f64 {
        self.gamma_matrices
            .iter()
            .map(|c| (c * &self.grading + &self.grading * c).map(|z| z.norm()).max())
            .fold(0.0, f64::max)
    }
}

/// Spin lift of `ad(Z)|_p` for `Z = Σ z_k H_k ∈ t`:
/// `γ(Z) = ¼ Σ_{i,j} ⟨Z, [Y_i, Y_j]⟩ c(Y_i) c(Y_j)`.
pub fn gamma_map(lie: &LieModel, cm: &CliffordModel, z: &[f64]) -> DMatrix<C64> {
    let n = cm.size();
    let p = cm.p_dimension;
    let mut out = DMatrix::<C64>::zeros(n, n);
    for i in 0..p {
        for j in 0..p {
            let coeff: f64 = z.iter().enumerate().map(|(k, zk)| zk * lie.t_of_p_bracket(k, i, j)).sum();
            if coeff != 0.0 {
                out += &cm.gamma_matrices[i] * &cm.gamma_matrices[j] * C64::new(0.25 * coeff, 0.0);
            }
        }
    }
    out
}
