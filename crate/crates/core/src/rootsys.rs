//! Root systems of the simple types A–G.
//!
//! Everything is stored in the fundamental-weight basis: simple roots are the
//! rows of the Cartan matrix and the invariant form is normalised so that long
//! roots have squared length 2. Every predicate used downstream (dominance,
//! regularity, equality of norms) is invariant under rescaling the form, so
//! this normalisation loses nothing and keeps all values rational.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::weight::{invert, QMatrix, Rational, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A simple type together with its rank, e.g. `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidType {
                label: format!("{}{}", family.letter(), rank),
                reason: "rank not allowed for this family (A n>=1, B/C n>=2, D n>=3, E 6-8, F4, G2)",
            })
        }
    }

    /// Parses labels like `A2`, `g2`, `D4`.
    pub fn parse(label: &str) -> Result<Self> {
        let label = label.trim();
        let invalid = |reason| Error::InvalidType {
            label: label.to_string(),
            reason,
        };
        let mut chars = label.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(invalid("expected a family letter A-G")),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| invalid("expected a rank after the family letter"))?;
        Self::new(family, rank)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Root data for one irreducible simple type.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    /// ⟨α_i, α_i⟩ for each simple root.
    simple_norms: Vec<Rational>,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    /// Positive roots expanded in simple roots.
    root_coords: Vec<Vec<i64>>,
    /// α∨ expanded in simple coroots; pairing of an integral weight with α∨
    /// is the dot product of its labels with these coefficients.
    coroot_coeffs: Vec<Vec<i64>>,
    root_norms: Vec<Rational>,
    gram: QMatrix,
    /// `gram` scaled to integers: gram = gram_num / gram_den.
    gram_num: Vec<Vec<i64>>,
    gram_den: i64,
    cartan_inv: QMatrix,
    rho: Weight,
}

/// Symmetric matrix ⟨α_i, α_j⟩ with long roots of squared length 2
/// (Bourbaki numbering).
fn simple_root_form(t: CartanType) -> QMatrix {
    let n = t.rank;
    let q = Rational::from_integer;
    let half = Rational::new(1, 2);
    let mut b = vec![vec![Rational::zero(); n]; n];
    let link = |b: &mut QMatrix, i: usize, j: usize, v: Rational| {
        b[i][j] = v;
        b[j][i] = v;
    };
    match t.family {
        Family::A | Family::D | Family::E => {
            for i in 0..n {
                b[i][i] = q(2);
            }
            match t.family {
                Family::A => (0..n - 1).for_each(|i| link(&mut b, i, i + 1, q(-1))),
                Family::D => {
                    (0..n - 2).for_each(|i| link(&mut b, i, i + 1, q(-1)));
                    link(&mut b, n - 3, n - 1, q(-1));
                }
                _ => {
                    link(&mut b, 0, 2, q(-1));
                    link(&mut b, 1, 3, q(-1));
                    (2..n - 1).for_each(|i| link(&mut b, i, i + 1, q(-1)));
                }
            }
        }
        Family::B => {
            for i in 0..n {
                b[i][i] = if i + 1 == n { q(1) } else { q(2) };
            }
            (0..n - 1).for_each(|i| link(&mut b, i, i + 1, q(-1)));
        }
        Family::C => {
            for i in 0..n {
                b[i][i] = if i + 1 == n { q(2) } else { q(1) };
            }
            (0..n - 2).for_each(|i| link(&mut b, i, i + 1, -half));
            link(&mut b, n - 2, n - 1, q(-1));
        }
        Family::F => {
            b[0][0] = q(2);
            b[1][1] = q(2);
            b[2][2] = q(1);
            b[3][3] = q(1);
            link(&mut b, 0, 1, q(-1));
            link(&mut b, 1, 2, q(-1));
            link(&mut b, 2, 3, -half);
        }
        Family::G => {
            b[0][0] = Rational::new(2, 3);
            b[1][1] = q(2);
            link(&mut b, 0, 1, q(-1));
        }
    }
    b
}

impl RootSystem {
    /// Builds the root system of the given type; positive roots come from the
    /// string recursion on the Cartan matrix.
    pub fn new(cartan_type: CartanType) -> Self {
        let n = cartan_type.rank;
        let form = simple_root_form(cartan_type);
        let simple_norms: Vec<Rational> = (0..n).map(|i| form[i][i]).collect();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = Rational::from_integer(2) * form[i][j] / form[j][j];
                        debug_assert!(c.is_integer());
                        c.to_integer()
                    })
                    .collect()
            })
            .collect();
        let cartan_q: QMatrix = cartan
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
            .collect();
        let cartan_inv = invert(&cartan_q).expect("Cartan matrices are invertible");
        // ⟨ω_i, ω_j⟩ = (C⁻¹)_{ji} ⟨α_i, α_i⟩ / 2
        let gram: QMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| cartan_inv[j][i] * simple_norms[i] / Rational::from_integer(2))
                    .collect()
            })
            .collect();
        let gram_den = gram
            .iter()
            .flatten()
            .fold(1i64, |acc, q| acc.lcm(q.denom()));
        let gram_num = gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|q| (q * Rational::from_integer(gram_den)).to_integer())
                    .collect()
            })
            .collect();

        let root_coords = generate_positive_roots(&cartan);
        let to_labels = |k: &[i64]| -> Vec<i64> {
            (0..n)
                .map(|j| (0..n).map(|i| k[i] * cartan[i][j]).sum())
                .collect()
        };
        let positive_roots: Vec<Weight> = root_coords
            .iter()
            .map(|k| Weight::from_ints(&to_labels(k)))
            .collect();
        let root_norms: Vec<Rational> = root_coords
            .iter()
            .map(|k| {
                let mut s = Rational::zero();
                for i in 0..n {
                    for j in 0..n {
                        s += form[i][j] * Rational::from_integer(k[i] * k[j]);
                    }
                }
                s
            })
            .collect();
        let coroot_coeffs = root_coords
            .iter()
            .zip(&root_norms)
            .map(|(k, norm)| {
                (0..n)
                    .map(|i| {
                        let c = Rational::from_integer(k[i]) * simple_norms[i] / norm;
                        debug_assert!(c.is_integer());
                        c.to_integer()
                    })
                    .collect()
            })
            .collect();
        let simple_roots = cartan.iter().map(|row| Weight::from_ints(row)).collect();
        let rho = Weight::from_ints(&vec![1; n]);
        RootSystem {
            cartan_type,
            cartan,
            simple_norms,
            simple_roots,
            positive_roots,
            root_coords,
            coroot_coeffs,
            root_norms,
            gram,
            gram_num,
            gram_den,
            cartan_inv,
            rho,
        }
    }

    /// Parses a label like `A2` and builds the system.
    pub fn from_label(label: &str) -> Result<Self> {
        Ok(Self::new(CartanType::parse(label)?))
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_root_norms(&self) -> &[Rational] {
        &self.simple_norms
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positive roots in simple-root coordinates, aligned with
    /// [`positive_roots`](Self::positive_roots).
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.root_coords
    }

    /// Squared lengths of the positive roots.
    pub fn positive_root_norms(&self) -> &[Rational] {
        &self.root_norms
    }

    /// Coefficients of α∨ in the simple coroots, one row per positive root.
    pub fn coroot_coefficients(&self) -> &[Vec<i64>] {
        &self.coroot_coeffs
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn index_of_positive_root(&self, root: &Weight) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == root)
    }

    /// ⟨x, y⟩ = xᵀ·gram·y.
    pub fn inner(&self, x: &Weight, y: &Weight) -> Result<Rational> {
        x.check_rank(self.rank())?;
        y.check_rank(self.rank())?;
        Ok(self.inner_unchecked(x, y))
    }

    pub(crate) fn inner_unchecked(&self, x: &Weight, y: &Weight) -> Rational {
        let (xs, ys) = (x.coords(), y.coords());
        let mut s = Rational::zero();
        for (i, xi) in xs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in ys.iter().enumerate() {
                s += xi * yj * self.gram[i][j];
            }
        }
        s
    }

    /// ⟨x, y⟩ for integral labels, avoiding rational intermediates.
    pub fn inner_ints(&self, x: &[i64], y: &[i64]) -> Rational {
        let mut s: i64 = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                s += xi * yj * self.gram_num[i][j];
            }
        }
        Rational::new(s, self.gram_den)
    }

    pub fn norm_sq(&self, x: &Weight) -> Result<Rational> {
        self.inner(x, x)
    }

    /// 2⟨x, α⟩ / ⟨α, α⟩.
    pub fn coroot_pairing(&self, x: &Weight, alpha: &Weight) -> Result<Rational> {
        let aa = self.inner(alpha, alpha)?;
        if aa.is_zero() {
            return Err(Error::ZeroRoot);
        }
        Ok(Rational::from_integer(2) * self.inner(x, alpha)? / aa)
    }

    /// ⟨x, α_k∨⟩ for the `k`-th positive root.
    pub fn positive_coroot_pairing(&self, x: &Weight, k: usize) -> Rational {
        x.coords()
            .iter()
            .zip(&self.coroot_coeffs[k])
            .map(|(c, &m)| c * Rational::from_integer(m))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub(crate) fn positive_coroot_pairing_ints(&self, x: &[i64], k: usize) -> i64 {
        x.iter().zip(&self.coroot_coeffs[k]).map(|(a, b)| a * b).sum()
    }

    /// All simple coroot pairings are nonnegative.
    pub fn is_dominant(&self, x: &Weight) -> Result<bool> {
        x.check_rank(self.rank())?;
        Ok(x.coords().iter().all(|c| *c >= Rational::zero()))
    }

    /// No positive root is orthogonal to `x`.
    pub fn is_regular(&self, x: &Weight) -> Result<bool> {
        x.check_rank(self.rank())?;
        Ok((0..self.positive_roots.len())
            .all(|k| !self.positive_coroot_pairing(x, k).is_zero()))
    }

    /// Coordinates of `x` against the simple roots.
    pub fn root_coordinates(&self, x: &Weight) -> Result<Vec<Rational>> {
        x.check_rank(self.rank())?;
        let n = self.rank();
        Ok((0..n)
            .map(|j| {
                (0..n)
                    .map(|i| x.coords()[i] * self.cartan_inv[i][j])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect())
    }

    /// Weyl dimension formula ∏_{α>0} ⟨λ+ρ,α∨⟩/⟨ρ,α∨⟩.
    pub fn dim_irrep(&self, lambda: &Weight) -> Result<u128> {
        lambda.check_rank(self.rank())?;
        let labels = lambda.integral_labels()?;
        if labels.iter().any(|&c| c < 0) {
            return Err(Error::NotDominant);
        }
        let (mut num, mut den) = (1u128, 1u128);
        for coeffs in &self.coroot_coeffs {
            let top: i64 = labels.iter().zip(coeffs).map(|(l, c)| (l + 1) * c).sum();
            let bottom: i64 = coeffs.iter().sum();
            let (top, bottom) = (top as u128, bottom as u128);
            let g0 = top.gcd(&bottom);
            let (top, bottom) = (top / g0, bottom / g0);
            let g = top.gcd(&den);
            let (top, den_red) = (top / g, den / g);
            let g2 = num.gcd(&bottom);
            let (num_red, bottom) = (num / g2, bottom / g2);
            num = num_red.checked_mul(top).ok_or(Error::Overflow("dim_irrep"))?;
            den = den_red.checked_mul(bottom).ok_or(Error::Overflow("dim_irrep"))?;
        }
        debug_assert_eq!(den, 1);
        Ok(num / den)
    }

    /// Rationals rendered as strings, for display.
    pub fn gram_strings(&self) -> Vec<Vec<String>> {
        self.gram
            .iter()
            .map(|r| r.iter().map(|q| q.to_string()).collect())
            .collect()
    }
}

/// Positive roots in simple-root coordinates, sorted by height then
/// lexicographically. Uses the α_i-string through each known root.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let labels = |k: &[i64], i: usize| -> i64 { (0..n).map(|j| k[j] * cartan[j][i]).sum() };
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    all.extend(layer.iter().cloned());
    let mut ordered = layer.clone();
    while !layer.is_empty() {
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                // p = how far the string extends downwards
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - labels(beta, i);
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next.into_iter().collect();
        ordered.extend(layer.iter().cloned());
    }
    ordered.sort_by(|a, b| {
        let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    ordered
}

/// Every type/rank pair up to the given rank.
pub fn all_types_up_to_rank(max_rank: usize) -> Vec<CartanType> {
    let mut out = Vec::new();
    for family in [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ] {
        for rank in 1..=max_rank {
            if let Ok(t) = CartanType::new(family, rank) {
                out.push(t);
            }
        }
    }
    out
}
