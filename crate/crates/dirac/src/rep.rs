//! Unitary matrices for `V_λ` on an orthonormal weight basis.

use bwb_core::{RootSystem, Weight};
use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::exact::{to_f64, ExactModule, QMat};
use crate::lie::{root_vectors, LieModel, C64};

pub const DEFAULT_DIM_CAP: usize = 200;
pub const MAX_RANK: usize = 2;

/// A representation of the compact form: one skew-Hermitian matrix per
/// compact basis element `H_1..H_r, Y_1..Y_{2m}` and the weight of each basis
/// vector.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    pub dimension: usize,
    pub generators: Vec<DMatrix<C64>>,
    pub weight_labels: Vec<Weight>,
    rank: usize,
}

fn to_float(m: &QMat) -> DMatrix<f64> {
    let n = m.len();
    DMatrix::from_fn(n, n, |i, j| to_f64(&m[i][j]))
}

pub(crate) fn check_rank_and_cap(rs: &RootSystem, lambda: &Weight, cap: usize) -> Result<()> {
    if rs.rank() > MAX_RANK {
        return Err(Error::RankTooLarge {
            rank: rs.rank(),
            max: MAX_RANK,
        });
    }
    let dim = rs.dim_irrep(lambda)?;
    if dim > cap as u128 {
        return Err(Error::DimensionCap { dim, cap });
    }
    Ok(())
}

/// `V_λ` with rank at most two and dimension at most `cap`.
pub fn build_irrep_matrices(rs: &RootSystem, lambda: &Weight) -> Result<MatrixRep> {
    let lie = LieModel::new(rs)?;
    build_irrep_matrices_with(rs, &lie, lambda, DEFAULT_DIM_CAP)
}

pub fn build_irrep_matrices_with(rs: &RootSystem, lie: &LieModel, lambda: &Weight, cap: usize) -> Result<MatrixRep> {
    check_rank_and_cap(rs, lambda, cap)?;
    let labels = lambda.integral_labels()?;
    let module = ExactModule::new(rs, &labels)?;
    let dim = module.dimension();
    // orthonormalize with respect to the contravariant form: G = L Lᵀ
    let mut l_t = DMatrix::<f64>::zeros(dim, dim);
    let mut l_t_inv = DMatrix::<f64>::zeros(dim, dim);
    for (offset, block) in module.gram_blocks() {
        let g = to_float(&block);
        let k = g.nrows();
        let chol = nalgebra::Cholesky::new(g)
            .ok_or_else(|| Error::Consistency("contravariant form is not positive definite".into()))?;
        let lt = chol.l().transpose();
        let lt_inv = lt
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Consistency("singular Gram block".into()))?;
        l_t.view_mut((offset, offset), (k, k)).copy_from(&lt);
        l_t_inv.view_mut((offset, offset), (k, k)).copy_from(&lt_inv);
    }
    let conjugate = |m: &QMat| &l_t * to_float(m) * &l_t_inv;
    let e: Vec<DMatrix<f64>> = module.raising(rs).iter().map(conjugate).collect();
    let f: Vec<DMatrix<f64>> = module.lowering(rs).iter().map(conjugate).collect();
    for (ei, fi) in e.iter().zip(&f) {
        if (ei.transpose() - fi).abs().max() > 1e-9 {
            return Err(Error::Consistency("lowering operators are not adjoint to raising ones".into()));
        }
    }
    let h: Vec<DMatrix<f64>> = module.cartan().iter().map(to_float).collect();
    let (ea, fa) = root_vectors(lie.chains(), &e, &f, |a, b| a * b - b * a);
    let chevalley: Vec<DMatrix<f64>> = h.into_iter().chain(ea).chain(fa).collect();
    let basis = lie.compact_basis();
    let generators = (0..lie.dim())
        .map(|c| {
            let mut acc = DMatrix::<C64>::zeros(dim, dim);
            for (a, m) in chevalley.iter().enumerate() {
                let coeff = basis[(a, c)];
                if coeff != C64::new(0.0, 0.0) {
                    acc += m.map(|x| coeff * x);
                }
            }
            acc
        })
        .collect();
    Ok(MatrixRep {
        dimension: dim,
        generators,
        weight_labels: module.weights().iter().map(|w| Weight::from_ints(w)).collect(),
        rank: rs.rank(),
    })
}

impl MatrixRep {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Generator of compact basis element `a`.
    pub fn generator(&self, a: usize) -> &DMatrix<C64> {
        &self.generators[a]
    }

    /// Generator of the `i`-th basis vector of `p`.
    pub fn p_generator(&self, i: usize) -> &DMatrix<C64> {
        &self.generators[self.rank + i]
    }

    /// Contragredient representation. For unitary matrices `−Xᵀ = X̄`.
    pub fn dual(&self) -> MatrixRep {
        MatrixRep {
            dimension: self.dimension,
            generators: self.generators.iter().map(|m| m.map(|z| z.conj())).collect(),
            weight_labels: self.weight_labels.iter().map(|w| -w).collect(),
            rank: self.rank,
        }
    }

    /// `max |X + X†|` over generators.
    pub fn skew_hermitian_defect(&self) -> f64 {
        self.generators
            .iter()
            .map(|m| (m + m.adjoint()).map(|z| z.norm()).max())
            .fold(0.0, f64::max)
    }

    /// `max |[ρ(X_a), ρ(X_b)] − ρ([X_a, X_b])|` over all generator pairs.
    pub fn commutator_defect(&self, lie: &LieModel) -> f64 {
        let dim = self.generators.len();
        let mut worst: f64 = 0.0;
        for a in 0..dim {
            for b in a + 1..dim {
                let lhs = &self.generators[a] * &self.generators[b] - &self.generators[b] * &self.generators[a];
                let mut rhs = DMatrix::<C64>::zeros(self.dimension, self.dimension);
                for c in 0..dim {
                    let k = lie.compact_bracket(a, b, c);
                    if k != 0.0 {
                        rhs += &self.generators[c] * C64::new(k, 0.0);
                    }
                }
                worst = worst.max((lhs - rhs).map(|z| z.norm()).max());
            }
        }
        worst
    }

    /// Largest deviation of `ρ(H_k)` from the diagonal weight action
    /// `i Σ_j T_kj ν_j`.
    pub fn weight_defect(&self, lie: &LieModel) -> f64 {
        let t = lie.t_coefficients();
        let mut worst: f64 = 0.0;
        for k in 0..self.rank {
            let mut expected = DMatrix::<C64>::zeros(self.dimension, self.dimension);
            for (v, w) in self.weight_labels.iter().enumerate() {
                let val: f64 = (0..self.rank)
                    .map(|j| t[(k, j)] * (*w.coords()[j].numer() as f64 / *w.coords()[j].denom() as f64))
                    .sum();
                expected[(v, v)] = C64::new(0.0, val);
            }
            worst = worst.max((&self.generators[k] - expected).map(|z| z.norm()).max());
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bwb_core::charring::freudenthal_multiplicities;

    #[test]
    fn examples() {
        let a1 = RootSystem::from_label("A1").unwrap();
        let v1 = build_irrep_matrices(&a1, &Weight::from_ints(&[1])).unwrap();
        assert_eq!(v1.dimension, 2);
        let v3 = build_irrep_matrices(&a1, &Weight::from_ints(&[3])).unwrap();
        let w: Vec<Weight> = v3.weight_labels.clone();
        assert_eq!(w, [3, 1, -1, -3].map(|x| Weight::from_ints(&[x])).to_vec());
        let a2 = RootSystem::from_label("A2").unwrap();
        let adj = build_irrep_matrices(&a2, &Weight::from_ints(&[1, 1])).unwrap();
        assert_eq!(adj.dimension, 8);
        assert_eq!(adj.weight_labels.iter().filter(|w| w.is_zero()).count(), 2);
    }

    #[test]
    fn unitary_representations() {
        for (label, lambdas) in [
            ("A1", vec![vec![0], vec![1], vec![4]]),
            ("A2", vec![vec![1, 0], vec![1, 1], vec![2, 1]]),
            ("B2", vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
            ("G2", vec![vec![1, 0], vec![0, 1]]),
        ] {
            let rs = RootSystem::from_label(label).unwrap();
            let lie = LieModel::new(&rs).unwrap();
            for l in lambdas {
                let lambda = Weight::from_ints(&l);
                let rep = build_irrep_matrices_with(&rs, &lie, &lambda, DEFAULT_DIM_CAP).unwrap();
                assert!(rep.skew_hermitian_defect() < 1e-8, "{label} {lambda}");
                assert!(rep.commutator_defect(&lie) < 1e-8, "{label} {lambda}");
                assert!(rep.weight_defect(&lie) < 1e-8, "{label} {lambda}");
                let ch = freudenthal_multiplicities(&rs, &lambda).unwrap();
                for (w, m) in ch.iter() {
                    assert_eq!(rep.weight_labels.iter().filter(|x| *x == w).count() as i64, m);
                }
                let dual = rep.dual();
                assert!(dual.commutator_defect(&lie) < 1e-8);
            }
        }
    }

    #[test]
    fn caps() {
        let a3 = RootSystem::from_label("A3").unwrap();
        assert!(matches!(
            build_irrep_matrices(&a3, &Weight::from_ints(&[1, 0, 0])),
            Err(Error::RankTooLarge { .. })
        ));
        let a2 = RootSystem::from_label("A2").unwrap();
        assert!(matches!(
            build_irrep_matrices(&a2, &Weight::from_ints(&[9, 9])),
            Err(Error::DimensionCap { .. })
        ));
    }
}
