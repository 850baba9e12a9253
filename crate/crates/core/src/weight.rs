//! Exact weights in the fundamental-weight basis.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// A weight written in Dynkin labels (coordinates against the fundamental
/// weights). Integral weights have integer labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Vec<Rational>);

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight(coords)
    }

    pub fn from_ints(labels: &[i64]) -> Self {
        Weight(labels.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(alloc::vec![Rational::zero(); rank])
    }

    /// The `i`-th fundamental weight.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[i] = Rational::one();
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Integer labels, or `None` when some label is fractional.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn integral_labels(&self) -> Result<Vec<i64>> {
        self.to_ints().ok_or(Error::NonIntegral)
    }

    pub fn scale(&self, s: Rational) -> Self {
        Weight(self.0.iter().map(|c| c * s).collect())
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.0.len() == rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: rank,
                found: self.0.len(),
            })
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", c)?;
        }
        f.write_str(")")
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

/// Parses a rational literal: `3`, `-2`, `1/2`, `0.5`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(alloc::format!("not a rational number: {:?}", s));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let int_part: i64 = match int.trim() {
            "" | "-" | "+" => 0,
            t => t.parse().map_err(|_| bad())?,
        };
        let den = 10i64.pow(frac.len() as u32);
        let frac_part: i64 = frac.parse().map_err(|_| bad())?;
        let mag = Rational::from_integer(int_part.abs()) + Rational::new(frac_part, den);
        return Ok(if negative { -mag } else { mag });
    }
    s.parse::<i64>().map(Rational::from_integer).map_err(|_| bad())
}

/// Parses comma-separated labels such as `-2,1` or `0,3/2`.
pub fn parse_weight(s: &str) -> Result<Weight> {
    let coords = s
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    Ok(Weight(coords))
}

/// Exact dense rational matrices, row-major.
pub(crate) type QMatrix = Vec<Vec<Rational>>;

pub(crate) fn invert(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let mut a: QMatrix = m.clone();
    let mut inv: QMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (ac, ic) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}
