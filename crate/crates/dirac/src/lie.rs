//! Structure constants, the invariant form and an orthonormal basis of the
//! compact real form.
//!
//! The Chevalley-type basis is `h_1..h_r, e_α, f_α` with positive roots in the
//! order of [`RootSystem::positive_roots`]. Non-simple root vectors are
//! `e_α = [e_i, e_β]` and `f_α = [f_β, f_i]`, where `i` is the smallest index
//! with `β = α − α_i` a root; in a unitary representation `f_α = e_α†`.
//! Brackets are read off exactly from the adjoint module. The invariant form
//! is the Killing form rescaled so that the induced form on weights matches
//! the root-system normalization.

use bwb_core::RootSystem;
use nalgebra::{Complex, DMatrix, DVector};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{commutator, q, rref, to_f64, ExactModule, QMat, Q};

pub type C64 = Complex<f64>;

/// How each positive root is built from a simple root and a shorter root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootChain {
    Simple(usize),
    /// `α = α_i + β` with `β` given by its index.
    Step { simple: usize, rest: usize },
}

pub(crate) fn root_chains(rs: &RootSystem) -> Vec<RootChain> {
    let coords = rs.positive_root_coords();
    coords
        .iter()
        .map(|c| {
            let height: i64 = c.iter().sum();
            if height == 1 {
                let i = c.iter().position(|&x| x == 1).expect("simple root");
                return RootChain::Simple(i);
            }
            for i in 0..c.len() {
                if c[i] == 0 {
                    continue;
                }
                let mut rest = c.clone();
                rest[i] -= 1;
                if let Some(k) = coords.iter().position(|d| *d == rest) {
                    return RootChain::Step { simple: i, rest: k };
                }
            }
            unreachable!("every non-simple positive root has a root one step below")
        })
        .collect()
}

/// Root vectors `(e_α, f_α)` built from the simple generators of any
/// representation, in the order of the positive roots.
pub(crate) fn root_vectors<M: Clone>(
    chains: &[RootChain],
    e: &[M],
    f: &[M],
    bracket: impl Fn(&M, &M) -> M,
) -> (Vec<M>, Vec<M>) {
    let m = chains.len();
    let mut es: Vec<Option<M>> = vec![None; m];
    let mut fs: Vec<Option<M>> = vec![None; m];
    // chains only point to lower roots, so resolve by repeated passes
    loop {
        let mut progress = false;
        for k in 0..m {
            if es[k].is_some() {
                continue;
            }
            match chains[k] {
                RootChain::Simple(i) => {
                    es[k] = Some(e[i].clone());
                    fs[k] = Some(f[i].clone());
                    progress = true;
                }
                RootChain::Step { simple, rest } => {
                    if let (Some(eb), Some(fb)) = (&es[rest], &fs[rest]) {
                        let new_e = bracket(&e[simple], eb);
                        let new_f = bracket(fb, &f[simple]);
                        es[k] = Some(new_e);
                        fs[k] = Some(new_f);
                        progress = true;
                    }
                }
            }
        }
        if !progress {
            break;
        }
    }
    (
        es.into_iter().map(|x| x.expect("all roots resolved")).collect(),
        fs.into_iter().map(|x| x.expect("all roots resolved")).collect(),
    )
}

/// Chevalley data and the compact orthonormal basis of `g`.
#[derive(Debug, Clone)]
pub struct LieModel {
    rank: usize,
    n_pos: usize,
    chains: Vec<RootChain>,
    /// `structure[a][b][c]`: coefficient of `X_c` in `[X_a, X_b]`, Chevalley basis.
    structure: Vec<Vec<Vec<f64>>>,
    /// Invariant symmetric form `(X_a | X_b)` on the Chevalley basis.
    form: DMatrix<f64>,
    /// Columns: compact basis `H_1..H_r, Y_{α,1}, Y_{α,2}, ...` in Chevalley coordinates.
    compact: DMatrix<C64>,
    /// `t_basis[k][j]`: `H_k = i Σ_j T_kj h_j`.
    t_coeffs: DMatrix<f64>,
    /// `compact_structure[a][b][c]`: coefficient of compact `X_c` in `[X_a, X_b]`.
    compact_structure: Vec<Vec<Vec<f64>>>,
}

fn flatten(m: &QMat) -> Vec<Q> {
    m.iter().flatten().cloned().collect()
}

impl LieModel {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let n = rs.rank();
        let chains = root_chains(rs);
        let m = chains.len();
        let dim = n + 2 * m;
        // adjoint module: highest root
        let top = rs
            .positive_root_coords()
            .iter()
            .enumerate()
            .max_by_key(|(_, c)| c.iter().sum::<i64>())
            .map(|(k, _)| k)
            .expect("nonempty root system");
        let theta = rs.positive_roots()[top].to_ints().expect("integral root");
        let adj = ExactModule::new(rs, &theta)?;
        if adj.dimension() != dim {
            return Err(Error::Consistency("adjoint module has the wrong dimension".into()));
        }
        let e = adj.raising(rs);
        let f = adj.lowering(rs);
        let h = adj.cartan();
        let (ea, fa) = root_vectors(&chains, &e, &f, commutator);
        let basis: Vec<QMat> = h.into_iter().chain(ea).chain(fa).collect();

        // solve [X_a, X_b] = Σ c X_c through a set of pivot entries
        let flat: Vec<Vec<Q>> = basis.iter().map(flatten).collect();
        let entries = flat[0].len();
        let mut system: QMat = (0..entries).map(|r| (0..dim).map(|c| flat[c][r].clone()).collect()).collect();
        // transpose-reduce to find independent rows
        let mut t: QMat = (0..dim).map(|c| (0..entries).map(|r| system[r][c].clone()).collect()).collect();
        let rows = rref(&mut t);
        if rows.len() != dim {
            return Err(Error::Consistency("Chevalley basis is not independent".into()));
        }
        system = rows.iter().map(|&r| system[r].clone()).collect();
        // invert the square pivot system
        let mut aug: QMat = system
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..dim).map(|j| if i == j { q(1) } else { Q::zero() }));
                r
            })
            .collect();
        rref(&mut aug);
        let inv: QMat = aug.iter().map(|r| r[dim..].to_vec()).collect();

        let mut structure_q: Vec<Vec<Vec<Q>>> = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let br = flatten(&commutator(&basis[a], &basis[b]));
                let rhs: Vec<Q> = rows.iter().map(|&r| br[r].clone()).collect();
                let coeffs: Vec<Q> = inv
                    .iter()
                    .map(|row| row.iter().zip(&rhs).fold(Q::zero(), |acc, (x, y)| acc + x * y))
                    .collect();
                // the full commutator must be reproduced, not only the pivots
                for (r, target) in br.iter().enumerate() {
                    let got = (0..dim).fold(Q::zero(), |acc, c| acc + &coeffs[c] * &flat[c][r]);
                    if &got != target {
                        return Err(Error::Consistency("bracket leaves the span of the basis".into()));
                    }
                }
                structure_q[a][b] = coeffs;
            }
        }
        // Killing form tr(ad X_a ad X_b) = Σ_{c,d} s[a][c][d] s[b][d][c]
        let mut killing = vec![vec![Q::zero(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let mut acc = Q::zero();
                for c in 0..dim {
                    for d in 0..dim {
                        if !structure_q[a][c][d].is_zero() && !structure_q[b][d][c].is_zero() {
                            acc += &structure_q[a][c][d] * &structure_q[b][d][c];
                        }
                    }
                }
                killing[a][b] = acc;
            }
        }
        // (h_1 | h_1) = 4 / ⟨α_1, α_1⟩
        let norm1 = rs.simple_root_norms()[0];
        let target = q(4 * *norm1.denom()) / q(*norm1.numer());
        let scale = target / &killing[0][0];
        let form = DMatrix::from_fn(dim, dim, |a, b| to_f64(&(&killing[a][b] * &scale)));
        let structure: Vec<Vec<Vec<f64>>> = structure_q
            .iter()
            .map(|x| x.iter().map(|y| y.iter().map(to_f64).collect()).collect())
            .collect();

        // orthonormal basis of t: (h|h) = L Lᵀ, T = L⁻¹
        let hh = form.view((0, 0), (n, n)).into_owned();
        let chol = nalgebra::Cholesky::new(hh)
            .ok_or_else(|| Error::Consistency("form on the Cartan subalgebra is not definite".into()))?;
        let t_coeffs = chol
            .l()
            .try_inverse()
            .ok_or_else(|| Error::Consistency("singular Cartan form".into()))?;
        let i = C64::new(0.0, 1.0);
        let mut compact = DMatrix::<C64>::zeros(dim, dim);
        for k in 0..n {
            for j in 0..n {
                compact[(j, k)] = i * t_coeffs[(k, j)];
            }
        }
        for a in 0..m {
            let ef = form[(n + a, n + m + a)];
            if !(ef > 0.0) {
                return Err(Error::Consistency(format!("(e|f) = {} is not positive for root {}", ef, a)));
            }
            let norm = (2.0 * ef).sqrt();
            let (col1, col2) = (n + 2 * a, n + 2 * a + 1);
            compact[(n + a, col1)] = C64::new(1.0 / norm, 0.0);
            compact[(n + m + a, col1)] = C64::new(-1.0 / norm, 0.0);
            compact[(n + a, col2)] = i / norm;
            compact[(n + m + a, col2)] = i / norm;
        }
        let mut model = LieModel {
            rank: n,
            n_pos: m,
            chains,
            structure,
            form,
            compact,
            t_coeffs,
            compact_structure: Vec::new(),
        };
        model.compact_structure = model.compute_compact_structure()?;
        Ok(model)
    }

    fn bracket_chevalley(&self, u: &DVector<C64>, v: &DVector<C64>) -> DVector<C64> {
        let dim = self.dim();
        let mut out = DVector::<C64>::zeros(dim);
        for a in 0..dim {
            if u[a] == C64::zero() {
                continue;
            }
            for b in 0..dim {
                if v[b] == C64::zero() {
                    continue;
                }
                let s = u[a] * v[b];
                for c in 0..dim {
                    let k = self.structure[a][b][c];
                    if k != 0.0 {
                        out[c] += s * k;
                    }
                }
            }
        }
        out
    }

    fn compute_compact_structure(&self) -> Result<Vec<Vec<Vec<f64>>>> {
        let dim = self.dim();
        let inv = self
            .compact
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Consistency("compact basis is singular".into()))?;
        let mut out = vec![vec![vec![0.0; dim]; dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let br = self.bracket_chevalley(&self.compact.column(a).into_owned(), &self.compact.column(b).into_owned());
                let coeffs = &inv * br;
                for c in 0..dim {
                    if coeffs[c].im.abs() > 1e-9 {
                        return Err(Error::Consistency("compact form is not closed under brackets".into()));
                    }
                    out[a][b][c] = coeffs[c].re;
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn positive_root_count(&self) -> usize {
        self.n_pos
    }

    pub fn dim(&self) -> usize {
        self.rank + 2 * self.n_pos
    }

    pub(crate) fn chains(&self) -> &[RootChain] {
        &self.chains
    }

    /// `(X_a | X_b)` on the Chevalley basis.
    pub fn invariant_form(&self) -> &DMatrix<f64> {
        &self.form
    }

    /// Compact basis elements as columns in Chevalley coordinates.
    pub fn compact_basis(&self) -> &DMatrix<C64> {
        &self.compact
    }

    /// `T` with `H_k = i Σ_j T_kj h_j`.
    pub fn t_coefficients(&self) -> &DMatrix<f64> {
        &self.t_coeffs
    }

    /// Coefficient of `X_c` in `[X_a, X_b]` for the compact basis.
    pub fn compact_bracket(&self, a: usize, b: usize, c: usize) -> f64 {
        self.compact_structure[a][b][c]
    }

    /// Positive inner product `⟨X, Y⟩ = −(X|Y)` on the compact basis; should
    /// be the identity.
    pub fn compact_gram(&self) -> DMatrix<f64> {
        let form = self.form.map(|x| C64::new(x, 0.0));
        let g = self.compact.transpose() * form * &self.compact;
        g.map(|z| -z.re)
    }

    /// Index of `Y_{α,s}` (s ∈ {0, 1}) among the compact basis.
    pub fn p_index(&self, root: usize, s: usize) -> usize {
        self.rank + 2 * root + s
    }

    /// `⟨[Y_i, Y_j], Y_k⟩` for the `p` part of the compact basis (indices
    /// relative to `p`).
    pub fn p_structure(&self) -> Vec<Vec<Vec<f64>>> {
        let p = 2 * self.n_pos;
        let r = self.rank;
        (0..p)
            .map(|i| (0..p).map(|j| (0..p).map(|k| self.compact_structure[r + i][r + j][r + k]).collect()).collect())
            .collect()
    }

    /// `⟨H_k, [Y_i, Y_j]⟩`, the `t` component of brackets in `p`.
    pub fn t_of_p_bracket(&self, k: usize, i: usize, j: usize) -> f64 {
        let r = self.rank;
        self.compact_structure[r + i][r + j][k]
    }
}
