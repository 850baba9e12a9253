//! The cubic Dirac operator on `(V_λ* ⊗ S* ⊗ U_{μ+ρ})^T`.
//!
//! `D = Σ_i ρ(Y_i) ⊗ c(Y_i) + 1 ⊗ ⅓ Σ_i c(Y_i) γ(Y_i)` for an orthonormal
//! basis `Y_i` of `p`, with `γ` the spin lift of `ad|_p`. The basis of `p` can
//! be rotated by any orthogonal matrix; the operator does not change.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

use bwb_core::index::shell_enumerate;
use bwb_core::{Rational, RootSystem, Weight};
use nalgebra::{DMatrix, SymmetricEigen};

use crate::clifford::CliffordModel;
use crate::error::{Error, Result};
use crate::lie::{LieModel, C64};
use crate::rep::{build_irrep_matrices_with, check_rank_and_cap, MatrixRep, DEFAULT_DIM_CAP, MAX_RANK};

/// Singular values below this count as kernel.
pub const KERNEL_TOLERANCE: f64 = 1e-6;
/// Singular values in this band are reported as borderline.
pub const WARNING_BAND: (f64, f64) = (1e-9, 1e-4);

fn q_to_f64(x: Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Lie data, spin module and a choice of orthonormal frame of `p`.
#[derive(Debug, Clone)]
pub struct DiracModel {
    rs: RootSystem,
    lie: LieModel,
    spin: CliffordModel,
    frame: DMatrix<f64>,
    /// `c(Y′_i)` on `S`, in the rotated frame.
    gammas: Vec<DMatrix<C64>>,
    /// Cubic term on `S`.
    cubic: DMatrix<C64>,
    dim_cap: usize,
    kernel_tol: f64,
    reps: RefCell<BTreeMap<Weight, Rc<MatrixRep>>>,
}

impl DiracModel {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        if rs.rank() > MAX_RANK {
            return Err(Error::RankTooLarge {
                rank: rs.rank(),
                max: MAX_RANK,
            });
        }
        let lie = LieModel::new(rs)?;
        let spin = CliffordModel::new(rs);
        let p = spin.p_dimension;
        Self::assemble(rs.clone(), lie, spin, DMatrix::identity(p, p), DEFAULT_DIM_CAP)
    }

    /// Same model with `Y′_i = Σ_j R_ij Y_j`. `R` must be orthogonal.
    pub fn with_p_frame(&self, frame: DMatrix<f64>) -> Result<Self> {
        let p = self.spin.p_dimension;
        if frame.nrows() != p || frame.ncols() != p {
            return Err(Error::InvalidArgument(format!("frame must be {p}x{p}")));
        }
        let defect = (&frame * frame.transpose() - DMatrix::<f64>::identity(p, p)).abs().max();
        if defect > 1e-10 {
            return Err(Error::InvalidArgument(format!("frame is not orthogonal (defect {defect:e})")));
        }
        let model = Self::assemble(self.rs.clone(), self.lie.clone(), self.spin.clone(), frame, self.dim_cap)?;
        *model.reps.borrow_mut() = self.reps.borrow().clone();
        Ok(model.with_kernel_tolerance(self.kernel_tol))
    }

    pub fn with_dim_cap(mut self, cap: usize) -> Self {
        self.dim_cap = cap;
        self.reps.borrow_mut().clear();
        self
    }

    fn assemble(rs: RootSystem, lie: LieModel, spin: CliffordModel, frame: DMatrix<f64>, dim_cap: usize) -> Result<Self> {
        let p = spin.p_dimension;
        let n = spin.size();
        let gammas: Vec<DMatrix<C64>> = (0..p)
            .map(|i| {
                let mut acc = DMatrix::<C64>::zeros(n, n);
                for j in 0..p {
                    if frame[(i, j)] != 0.0 {
                        acc += &spin.gamma_matrices[j] * C64::new(frame[(i, j)], 0.0);
                    }
                }
                acc
            })
            .collect();
        // f′_{ijk} = Σ R_ia R_jb R_kc f_abc
        let f = lie.p_structure();
        let mut partial = vec![vec![vec![0.0; p]; p]; p];
        for a in 0..p {
            for b in 0..p {
                for k in 0..p {
                    partial[a][b][k] = (0..p).map(|c| frame[(k, c)] * f[a][b][c]).sum();
                }
            }
        }
        let mut partial2 = vec![vec![vec![0.0; p]; p]; p];
        for a in 0..p {
            for j in 0..p {
                for k in 0..p {
                    partial2[a][j][k] = (0..p).map(|b| frame[(j, b)] * partial[a][b][k]).sum();
                }
            }
        }
        let mut rotated = vec![vec![vec![0.0; p]; p]; p];
        for i in 0..p {
            for j in 0..p {
                for k in 0..p {
                    rotated[i][j][k] = (0..p).map(|a| frame[(i, a)] * partial2[a][j][k]).sum();
                }
            }
        }
        // ⅓ Σ_l c_l γ(Y_l), γ(Y_l) = ¼ Σ_{i,j} ⟨Y_l, [Y_i, Y_j]⟩ c_i c_j
        let mut cubic = DMatrix::<C64>::zeros(n, n);
        for l in 0..p {
            let mut gamma_l = DMatrix::<C64>::zeros(n, n);
            for i in 0..p {
                for j in 0..p {
                    let coeff = rotated[i][j][l];
                    if coeff.abs() > 1e-15 {
                        gamma_l += &gammas[i] * &gammas[j] * C64::new(0.25 * coeff, 0.0);
                    }
                }
            }
            cubic += &gammas[l] * gamma_l * C64::new(1.0 / 3.0, 0.0);
        }
        Ok(DiracModel {
            rs,
            lie,
            spin,
            frame,
            gammas,
            cubic,
            dim_cap,
            kernel_tol: KERNEL_TOLERANCE,
            reps: RefCell::new(BTreeMap::new()),
        })
    }

    /// Singular-value threshold used by [`DiracModel::kernel_report`].
    pub fn with_kernel_tolerance(mut self, tol: f64) -> Self {
        self.kernel_tol = tol;
        self
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn lie(&self) -> &LieModel {
        &self.lie
    }

    pub fn spin(&self) -> &CliffordModel {
        &self.spin
    }

    pub fn frame(&self) -> &DMatrix<f64> {
        &self.frame
    }

    /// Cubic term acting on `S`.
    pub fn cubic_term(&self) -> &DMatrix<C64> {
        &self.cubic
    }

    /// `V_λ`, built once per model.
    pub fn irrep(&self, lambda: &Weight) -> Result<Rc<MatrixRep>> {
        if let Some(rep) = self.reps.borrow().get(lambda) {
            return Ok(rep.clone());
        }
        let rep = Rc::new(build_irrep_matrices_with(&self.rs, &self.lie, lambda, self.dim_cap)?);
        self.reps.borrow_mut().insert(lambda.clone(), rep.clone());
        Ok(rep)
    }

    /// `D` on `(V_λ* ⊗ S* ⊗ U_{μ+ρ})^T`.
    pub fn dirac(&self, lambda: &Weight, mu: &Weight) -> Result<DiracMatrix> {
        check_rank_and_cap(&self.rs, lambda, self.dim_cap)?;
        mu.check_rank(self.rs.rank())?;
        mu.integral_labels()?;
        let rep = self.irrep(lambda)?;
        self.dirac_on(&rep, lambda, mu)
    }

    fn dirac_on(&self, rep: &MatrixRep, lambda: &Weight, mu: &Weight) -> Result<DiracMatrix> {
        let dual = rep.dual();
        let spin_dual = self.spin.dual();
        let target = -(mu + self.rs.rho());
        let mut basis = Vec::new();
        for (a, wv) in dual.weight_labels.iter().enumerate() {
            for (s, ws) in spin_dual.state_weights.iter().enumerate() {
                if &(wv + ws) == &target {
                    basis.push((a, s));
                }
            }
        }
        let p = self.spin.p_dimension;
        // ρ*(Y′_i) = Σ_j R_ij ρ*(Y_j), c*(Y′_i) = conj c(Y′_i)
        let rho_rot: Vec<DMatrix<C64>> = (0..p)
            .map(|i| {
                let mut acc = DMatrix::<C64>::zeros(dual.dimension, dual.dimension);
                for j in 0..p {
                    if self.frame[(i, j)] != 0.0 {
                        acc += dual.p_generator(j) * C64::new(self.frame[(i, j)], 0.0);
                    }
                }
                acc
            })
            .collect();
        let c_dual: Vec<DMatrix<C64>> = self.gammas.iter().map(|m| m.map(|z| z.conj())).collect();
        let cubic_dual = self.cubic.map(|z| z.conj());
        let k = basis.len();
        let mut d = DMatrix::<C64>::zeros(k, k);
        for (col, &(a, s)) in basis.iter().enumerate() {
            for (row, &(b, t)) in basis.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..p {
                    let x = rho_rot[i][(b, a)];
                    if x.norm() != 0.0 {
                        acc += x * c_dual[i][(t, s)];
                    }
                }
                if a == b {
                    acc += cubic_dual[(t, s)];
                }
                d[(row, col)] = acc;
            }
        }
        let degrees: Vec<usize> = basis.iter().map(|&(_, s)| self.spin.degrees[s]).collect();
        let even_dim = degrees.iter().filter(|&&g| g % 2 == 0).count();
        Ok(DiracMatrix {
            lambda: lambda.clone(),
            mu: mu.clone(),
            space_dim: k,
            even_dim,
            odd_dim: k - even_dim,
            d,
            basis,
            degrees,
        })
    }

    /// The predicted eigenvalue of `D²`: `‖λ+ρ‖² − ‖μ+ρ‖²`.
    pub fn predicted_square(&self, lambda: &Weight, mu: &Weight) -> Result<Rational> {
        let rho = self.rs.rho();
        Ok(self.rs.norm_sq(&(lambda + rho))? - self.rs.norm_sq(&(mu + rho))?)
    }

    pub fn verify_square(&self, lambda: &Weight, mu: &Weight) -> Result<SquareReport> {
        let dm = self.dirac(lambda, mu)?;
        let scalar = self.predicted_square(lambda, mu)?;
        Ok(SquareReport {
            scalar,
            max_abs_dev: dm.square_deviation(q_to_f64(scalar)),
            space_dim: dm.space_dim,
        })
    }

    /// Kernel of `D` for every λ with `‖λ+ρ‖² ≤ radius_sq`.
    pub fn kernel_report(&self, mu: &Weight, radius_sq: Rational) -> Result<KernelReport> {
        mu.check_rank(self.rs.rank())?;
        mu.integral_labels()?;
        let shell = self.rs.norm_sq(&(mu + self.rs.rho()))?;
        if radius_sq < shell {
            return Err(bwb_core::Error::RadiusTooSmall {
                needed: shell.to_string(),
            }
            .into());
        }
        let mut entries = Vec::new();
        let mut total = 0u128;
        for lambda in shell_enumerate(&self.rs, radius_sq)? {
            let dm = self.dirac(&lambda, mu)?;
            let scalar = self.predicted_square(&lambda, mu)?;
            let kernel = dm.kernel_with(self.kernel_tol);
            total += kernel.dim as u128 * self.rs.dim_irrep(&lambda)?;
            entries.push(KernelEntry {
                lambda,
                on_shell: scalar == Rational::from_integer(0),
                space_dim: dm.space_dim,
                even_dim: dm.even_dim,
                odd_dim: dm.odd_dim,
                scalar,
                max_dev: dm.square_deviation(q_to_f64(scalar)),
                hermitian_dev: dm.hermitian_defect(),
                odd_dev: dm.grading_defect(),
                kernel,
            });
        }
        Ok(KernelReport {
            mu: mu.clone(),
            entries,
            total_kernel_dim: total,
        })
    }

    /// `Σ_λ χ_λ(exp θ) · str(e^{−tD_λ²})` over `‖λ+ρ‖² ≤ radius_sq`, with the
    /// heat operator computed from the spectrum of each matrix.
    pub fn matrix_supertrace(&self, mu: &Weight, theta: &[f64], t: f64, radius_sq: Rational) -> Result<C64> {
        mu.check_rank(self.rs.rank())?;
        if theta.len() != self.rs.rank() {
            return Err(bwb_core::Error::DimensionMismatch {
                expected: self.rs.rank(),
                found: theta.len(),
            }
            .into());
        }
        let shell = self.rs.norm_sq(&(mu + self.rs.rho()))?;
        if radius_sq < shell {
            return Err(bwb_core::Error::RadiusTooSmall {
                needed: shell.to_string(),
            }
            .into());
        }
        let mut total = C64::new(0.0, 0.0);
        for lambda in shell_enumerate(&self.rs, radius_sq)? {
            let rep = self.irrep(&lambda)?;
            let dm = self.dirac_on(&rep, &lambda, mu)?;
            if dm.space_dim == 0 {
                continue;
            }
            let character: C64 = rep
                .weight_labels
                .iter()
                .map(|w| {
                    let phase: f64 = w.coords().iter().zip(theta).map(|(c, th)| q_to_f64(*c) * th).sum();
                    C64::new(phase.cos(), phase.sin())
                })
                .sum();
            total += character * dm.heat_supertrace(t);
        }
        Ok(total)
    }
}

/// `D` on one isotypic multiplicity space.
#[derive(Debug, Clone)]
pub struct DiracMatrix {
    pub lambda: Weight,
    pub mu: Weight,
    pub space_dim: usize,
    pub even_dim: usize,
    pub odd_dim: usize,
    pub d: DMatrix<C64>,
    /// `(vector index in V_λ*, Fock state)` for each basis vector.
    pub basis: Vec<(usize, usize)>,
    /// Exterior degree of each basis vector.
    pub degrees: Vec<usize>,
}

/// Kernel of `D` split by parity.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelInfo {
    pub dim: usize,
    pub even: usize,
    pub odd: usize,
    /// Exterior degrees carrying weight in the kernel vectors.
    pub degrees: Vec<usize>,
    /// Singular values inside [`WARNING_BAND`].
    pub borderline: Vec<f64>,
}

impl KernelInfo {
    pub fn parity(&self) -> &'static str {
        match (self.even, self.odd) {
            (0, 0) => "none",
            (_, 0) => "even",
            (0, _) => "odd",
            _ => "mixed",
        }
    }
}

impl DiracMatrix {
    fn indices(&self, odd: bool) -> Vec<usize> {
        (0..self.space_dim).filter(|&k| (self.degrees[k] % 2 == 1) == odd).collect()
    }

    fn block(&self, rows: &[usize], cols: &[usize]) -> DMatrix<C64> {
        DMatrix::from_fn(rows.len(), cols.len(), |r, c| self.d[(rows[r], cols[c])])
    }

    pub fn hermitian_defect(&self) -> f64 {
        max_abs(&(&self.d - self.d.adjoint()))
    }

    /// Largest entry of `D` between vectors of equal parity.
    pub fn grading_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.space_dim {
            for c in 0..self.space_dim {
                if self.degrees[r] % 2 == self.degrees[c] % 2 {
                    worst = worst.max(self.d[(r, c)].norm());
                }
            }
        }
        worst
    }

    pub fn square(&self) -> DMatrix<C64> {
        &self.d * &self.d
    }

    /// `max |D² − s·I|`.
    pub fn square_deviation(&self, scalar: f64) -> f64 {
        if self.space_dim == 0 {
            return 0.0;
        }
        let n = self.space_dim;
        max_abs(&(self.square() - DMatrix::<C64>::identity(n, n) * C64::new(scalar, 0.0)))
    }

    /// `tr_even e^{−tD²} − tr_odd e^{−tD²}`.
    pub fn heat_supertrace(&self, t: f64) -> f64 {
        let sq = self.square();
        let mut out = 0.0;
        for (odd, sign) in [(false, 1.0), (true, -1.0)] {
            let idx = self.indices(odd);
            if idx.is_empty() {
                continue;
            }
            let block = DMatrix::from_fn(idx.len(), idx.len(), |r, c| sq[(idx[r], idx[c])]);
            let eig = SymmetricEigen::new(block);
            out += sign * eig.eigenvalues.iter().map(|&l| (-t * l).exp()).sum::<f64>();
        }
        out
    }

    /// Kernels of `D⁺: even → odd` and `D⁻: odd → even`.
    pub fn kernel(&self) -> KernelInfo {
        self.kernel_with(KERNEL_TOLERANCE)
    }

    pub fn kernel_with(&self, tolerance: f64) -> KernelInfo {
        let even = self.indices(false);
        let odd = self.indices(true);
        let mut degrees = Vec::new();
        let mut borderline = Vec::new();
        let mut dims = [0usize; 2];
        for (slot, (src, dst)) in [(&even, &odd), (&odd, &even)].into_iter().enumerate() {
            if src.is_empty() {
                continue;
            }
            let block = self.block(dst, src);
            let singular: Vec<f64> = if dst.is_empty() {
                Vec::new()
            } else {
                block.clone().svd(false, false).singular_values.iter().copied().collect()
            };
            borderline.extend(singular.iter().copied().filter(|&s| s >= WARNING_BAND.0 && s <= WARNING_BAND.1));
            let rank = singular.iter().filter(|&&s| s >= tolerance).count();
            let null = src.len() - rank;
            dims[slot] = null;
            if null == 0 {
                continue;
            }
            // null vectors: lowest eigenvectors of B†B
            let gram = block.adjoint() * &block;
            let eig = SymmetricEigen::new(gram);
            let mut order: Vec<usize> = (0..src.len()).collect();
            order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
            for &k in order.iter().take(null) {
                let v = eig.eigenvectors.column(k);
                for (pos, &basis_index) in src.iter().enumerate() {
                    if v[pos].norm() > 1e-8 {
                        degrees.push(self.degrees[basis_index]);
                    }
                }
            }
        }
        degrees.sort_unstable();
        degrees.dedup();
        KernelInfo {
            dim: dims[0] + dims[1],
            even: dims[0],
            odd: dims[1],
            degrees,
            borderline,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SquareReport {
    pub scalar: Rational,
    pub max_abs_dev: f64,
    pub space_dim: usize,
}

#[derive(Debug, Clone)]
pub struct KernelEntry {
    pub lambda: Weight,
    pub on_shell: bool,
    pub space_dim: usize,
    pub even_dim: usize,
    pub odd_dim: usize,
    pub scalar: Rational,
    pub max_dev: f64,
    pub hermitian_dev: f64,
    pub odd_dev: f64,
    pub kernel: KernelInfo,
}

#[derive(Debug, Clone)]
pub struct KernelReport {
    pub mu: Weight,
    pub entries: Vec<KernelEntry>,
    /// `Σ_λ dim V_λ · dim ker D_λ`.
    pub total_kernel_dim: u128,
}

pub fn cubic_dirac_matrix(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<DiracMatrix> {
    DiracModel::new(rs)?.dirac(lambda, mu)
}

pub fn verify_square(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<SquareReport> {
    DiracModel::new(rs)?.verify_square(lambda, mu)
}

pub fn kernel_report(rs: &RootSystem, mu: &Weight, radius_sq: Rational) -> Result<KernelReport> {
    DiracModel::new(rs)?.kernel_report(mu, radius_sq)
}
