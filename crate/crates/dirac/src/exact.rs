//! Irreducible highest-weight modules over ℚ.
//!
//! Weight spaces are filled in order of depth below λ. Every vector of weight
//! ν ≠ λ is determined by its images under the raising operators, so each
//! candidate `F_i u` is encoded by the tuple `(E_j F_i u)_j`, computed from
//! `E_j F_i = F_i E_j + δ_ij H_i`. Row reduction of these tuples selects a
//! basis and expresses the remaining candidates in it, which yields the
//! lowering matrices. The contravariant form `⟨F_i u, v⟩ = ⟨u, E_i v⟩` comes
//! along for free.

use std::collections::BTreeMap;

use bwb_core::charring::freudenthal_multiplicities;
use bwb_core::{RootSystem, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;
/// Dense rational matrix, row major.
pub type QMat = Vec<Vec<Q>>;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn zeros(rows: usize, cols: usize) -> QMat {
    vec![vec![Q::zero(); cols]; rows]
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut QMat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// One weight space with the operators that leave it.
#[derive(Debug, Clone)]
struct Space {
    weight: Vec<i64>,
    dim: usize,
    /// `raise[i]`: matrix of `E_i` into the space of `weight + α_i`.
    raise: Vec<Option<QMat>>,
    /// `lower[i]`: matrix of `F_i` into the space of `weight − α_i`.
    lower: Vec<Option<QMat>>,
    gram: QMat,
}

/// `V_λ` with exact Chevalley generators in a weight basis.
#[derive(Debug, Clone)]
pub struct ExactModule {
    rank: usize,
    spaces: Vec<Space>,
    index: BTreeMap<Vec<i64>, usize>,
    offsets: Vec<usize>,
    dimension: usize,
}

impl ExactModule {
    pub fn new(rs: &RootSystem, lambda: &[i64]) -> Result<Self> {
        let n = rs.rank();
        if lambda.len() != n {
            return Err(bwb_core::Error::DimensionMismatch {
                expected: n,
                found: lambda.len(),
            }
            .into());
        }
        if lambda.iter().any(|&c| c < 0) {
            return Err(bwb_core::Error::NotDominant.into());
        }
        let ch = freudenthal_multiplicities(rs, &Weight::from_ints(lambda))?;
        let mult: BTreeMap<Vec<i64>, i64> = ch
            .iter()
            .map(|(w, m)| (w.to_ints().expect("integral weight"), m))
            .collect();
        let cartan = rs.cartan_matrix();
        let shift = |w: &[i64], i: usize, sign: i64| -> Vec<i64> {
            w.iter().zip(&cartan[i]).map(|(a, b)| a + sign * b).collect()
        };

        // breadth-first from λ gives the depth order
        let mut order: Vec<Vec<i64>> = vec![lambda.to_vec()];
        let mut index: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        index.insert(lambda.to_vec(), 0);
        let mut head = 0;
        while head < order.len() {
            let w = order[head].clone();
            head += 1;
            for i in 0..n {
                let next = shift(&w, i, -1);
                if mult.contains_key(&next) && !index.contains_key(&next) {
                    index.insert(next.clone(), order.len());
                    order.push(next);
                }
            }
        }
        if order.len() != mult.len() {
            return Err(Error::Consistency("weight diagram is not connected".into()));
        }

        let mut spaces: Vec<Space> = Vec::with_capacity(order.len());
        spaces.push(Space {
            weight: lambda.to_vec(),
            dim: 1,
            raise: vec![None; n],
            lower: vec![None; n],
            gram: vec![vec![Q::one()]],
        });

        for w in order.iter().skip(1) {
            // raising targets
            let up: Vec<Option<usize>> = (0..n).map(|j| index.get(&shift(w, j, 1)).copied()).collect();
            let up_dims: Vec<usize> = up.iter().map(|u| u.map_or(0, |k| spaces[k].dim)).collect();
            let total: usize = up_dims.iter().sum();
            let mut block_start = vec![0; n];
            for j in 1..n {
                block_start[j] = block_start[j - 1] + up_dims[j - 1];
            }
            // candidates F_i u_k
            let mut cands: Vec<(usize, usize)> = Vec::new();
            for (i, u) in up.iter().enumerate() {
                if let Some(k) = u {
                    for col in 0..spaces[*k].dim {
                        cands.push((i, col));
                    }
                }
            }
            let mut images = zeros(total, cands.len());
            for (c, &(i, col)) in cands.iter().enumerate() {
                let src = up[i].expect("candidate source exists");
                for j in 0..n {
                    let Some(tgt) = up[j] else { continue };
                    let base = block_start[j];
                    // F_i E_j u
                    if let Some(e_j) = &spaces[src].raise[j] {
                        let mid = index[&shift(&spaces[src].weight, j, 1)];
                        let f_i = spaces[mid].lower[i]
                            .as_ref()
                            .ok_or_else(|| Error::Consistency("missing lowering operator".into()))?;
                        for (r, row) in f_i.iter().enumerate() {
                            let mut acc = Q::zero();
                            for (m, x) in row.iter().enumerate() {
                                if !x.is_zero() && !e_j[m][col].is_zero() {
                                    acc += x * &e_j[m][col];
                                }
                            }
                            images[base + r][c] += acc;
                        }
                    }
                    if i == j {
                        debug_assert_eq!(src, tgt);
                        let h = q(spaces[src].weight[i]);
                        images[base + col][c] += h;
                    }
                }
            }
            let mut reduced = images.clone();
            let pivots = rref(&mut reduced);
            let expected = mult[w] as usize;
            if pivots.len() != expected {
                return Err(Error::Consistency(format!(
                    "weight {:?}: built {} vectors, Freudenthal gives {}",
                    w,
                    pivots.len(),
                    expected
                )));
            }
            let dim = pivots.len();
            // coordinates of every candidate in the pivot basis
            let coords: Vec<Vec<Q>> = (0..cands.len())
                .map(|c| (0..dim).map(|r| reduced[r][c].clone()).collect())
                .collect();
            let me = spaces.len();
            for i in 0..n {
                let Some(src) = up[i] else { continue };
                let mut f = zeros(dim, spaces[src].dim);
                for (c, &(ci, col)) in cands.iter().enumerate() {
                    if ci == i {
                        for r in 0..dim {
                            f[r][col] = coords[c][r].clone();
                        }
                    }
                }
                spaces[src].lower[i] = Some(f);
            }
            let mut raise: Vec<Option<QMat>> = vec![None; n];
            for j in 0..n {
                let Some(tgt) = up[j] else { continue };
                let mut e = zeros(spaces[tgt].dim, dim);
                for (b, &p) in pivots.iter().enumerate() {
                    for r in 0..spaces[tgt].dim {
                        e[r][b] = images[block_start[j] + r][p].clone();
                    }
                }
                raise[j] = Some(e);
            }
            // ⟨F_i u_k, v⟩ = ⟨u_k, E_i v⟩
            let mut gram = zeros(dim, dim);
            for (a, &p) in pivots.iter().enumerate() {
                let (i, col) = cands[p];
                let src = up[i].expect("pivot source");
                let e_i = raise[i].as_ref().expect("raise defined where source exists");
                let g = &spaces[src].gram;
                for b in 0..dim {
                    let mut acc = Q::zero();
                    for m in 0..spaces[src].dim {
                        if !g[col][m].is_zero() && !e_i[m][b].is_zero() {
                            acc += &g[col][m] * &e_i[m][b];
                        }
                    }
                    gram[a][b] = acc;
                }
            }
            debug_assert_eq!(me, index[w]);
            spaces.push(Space {
                weight: w.clone(),
                dim,
                raise,
                lower: vec![None; n],
                gram,
            });
        }
        let mut offsets = Vec::with_capacity(spaces.len());
        let mut dimension = 0;
        for s in &spaces {
            offsets.push(dimension);
            dimension += s.dim;
        }
        Ok(ExactModule {
            rank: n,
            spaces,
            index,
            offsets,
            dimension,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Weight of each basis vector.
    pub fn weights(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(self.dimension);
        for s in &self.spaces {
            for _ in 0..s.dim {
                out.push(s.weight.clone());
            }
        }
        out
    }

    /// Multiplicity of a weight in the constructed basis.
    pub fn weight_dim(&self, w: &[i64]) -> usize {
        self.index.get(w).map_or(0, |&k| self.spaces[k].dim)
    }

    fn assemble(&self, i: usize, raising: bool, cartan: &[Vec<i64>]) -> QMat {
        let mut m = zeros(self.dimension, self.dimension);
        for (k, s) in self.spaces.iter().enumerate() {
            let block = if raising { &s.raise[i] } else { &s.lower[i] };
            let Some(block) = block else { continue };
            let sign = if raising { 1 } else { -1 };
            let tw: Vec<i64> = s.weight.iter().zip(&cartan[i]).map(|(a, b)| a + sign * b).collect();
            let t = self.index[&tw];
            for (r, row) in block.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    m[self.offsets[t] + r][self.offsets[k] + c] = x.clone();
                }
            }
        }
        m
    }

    /// Full matrices of `E_i`.
    pub fn raising(&self, rs: &RootSystem) -> Vec<QMat> {
        (0..self.rank).map(|i| self.assemble(i, true, rs.cartan_matrix())).collect()
    }

    /// Full matrices of `F_i`.
    pub fn lowering(&self, rs: &RootSystem) -> Vec<QMat> {
        (0..self.rank).map(|i| self.assemble(i, false, rs.cartan_matrix())).collect()
    }

    /// Full matrices of `H_i`, diagonal with entries `ν(h_i)`.
    pub fn cartan(&self) -> Vec<QMat> {
        let weights = self.weights();
        (0..self.rank)
            .map(|i| {
                let mut m = zeros(self.dimension, self.dimension);
                for (k, w) in weights.iter().enumerate() {
                    m[k][k] = q(w[i]);
                }
                m
            })
            .collect()
    }

    /// Contravariant form, block diagonal over weight spaces.
    pub fn gram_blocks(&self) -> Vec<(usize, QMat)> {
        self.spaces
            .iter()
            .zip(&self.offsets)
            .map(|(s, &o)| (o, s.gram.clone()))
            .collect()
    }
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let rows = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = zeros(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn commutator(a: &QMat, b: &QMat) -> QMat {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    ab.into_iter()
        .zip(ba)
        .map(|(r, s)| r.into_iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}
