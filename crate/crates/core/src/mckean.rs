//! Heat-kernel supertrace of the Dirac family.
//!
//! On the `λ`-isotypic piece the square of the operator acts by the scalar
//! `‖λ+ρ‖² − ‖μ+ρ‖²`, so the supertrace of `g·e^{−tD²}` on the truncated
//! Peter–Weyl sum is `Σ_λ χ_λ(g) · c_λ · e^{−t(‖λ+ρ‖² − ‖μ+ρ‖²)}`, where
//! `c_λ` is the graded multiplicity of `U_{μ+ρ}` in `V_λ ⊗ S`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::charring::{evaluate_at_torus, rational_to_f64, FormalCharacter};
use crate::error::{Error, Result};
use crate::index::{shell_enumerate, ShellOracle};
use crate::rootsys::RootSystem;
use crate::weight::{Rational, Weight};

/// One `λ` in the truncation.
#[derive(Debug, Clone)]
pub struct SupertraceTerm {
    pub lambda: Weight,
    /// `⟨V_λ⊗S⁺, U_{μ+ρ}⟩ − ⟨V_λ⊗S⁻, U_{μ+ρ}⟩`.
    pub coefficient: i64,
    /// Eigenvalue of `D²` on this piece.
    pub eigenvalue: Rational,
    pub character: FormalCharacter,
}

/// Precomputed truncated sum, reusable across group elements and times.
#[derive(Debug, Clone)]
pub struct Supertrace {
    mu: Weight,
    radius_sq: Rational,
    terms: Vec<SupertraceTerm>,
}

impl Supertrace {
    /// Collects all dominant λ with `‖λ+ρ‖² ≤ radius_sq`. The radius must
    /// reach `‖μ+ρ‖²`.
    pub fn new(rs: &RootSystem, mu: &Weight, radius_sq: Rational) -> Result<Self> {
        mu.check_rank(rs.rank())?;
        mu.integral_labels()?;
        let shell = rs.norm_sq(&(mu + rs.rho()))?;
        if radius_sq < shell {
            return Err(Error::RadiusTooSmall {
                needed: shell.to_string(),
            });
        }
        let mut oracle = ShellOracle::new(rs)?;
        let mut terms = Vec::new();
        for lambda in shell_enumerate(rs, radius_sq)? {
            let (plus, minus) = oracle.kostant_pairing(&lambda, mu)?;
            let eigenvalue = rs.norm_sq(&(&lambda + rs.rho()))? - shell;
            let character = oracle.character(&lambda)?.clone();
            terms.push(SupertraceTerm {
                lambda,
                coefficient: plus - minus,
                eigenvalue,
                character,
            });
        }
        Ok(Supertrace {
            mu: mu.clone(),
            radius_sq,
            terms,
        })
    }

    pub fn mu(&self) -> &Weight {
        &self.mu
    }

    pub fn radius_sq(&self) -> Rational {
        self.radius_sq
    }

    pub fn terms(&self) -> &[SupertraceTerm] {
        &self.terms
    }

    /// `Str(g · e^{−tD²})` at `g = exp(θ)`.
    pub fn evaluate(&self, theta: &[f64], t: f64) -> Result<Complex64> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidArgument(format!("t must be positive, got {}", t)));
        }
        let mut total = Complex64::new(0.0, 0.0);
        for term in &self.terms {
            if term.coefficient == 0 {
                continue;
            }
            let chi = evaluate_at_torus(&term.character, theta)?;
            let decay = libm::exp(-t * rational_to_f64(term.eigenvalue));
            total += chi * (term.coefficient as f64 * decay);
        }
        Ok(total)
    }
}

/// `Str(g · e^{−tD²})` on the Peter–Weyl truncation `‖λ+ρ‖² ≤ radius_sq`.
pub fn supertrace(rs: &RootSystem, mu: &Weight, theta: &[f64], t: f64, radius_sq: Rational) -> Result<Complex64> {
    Supertrace::new(rs, mu, radius_sq)?.evaluate(theta, t)
}

/// Values at several times and their largest pairwise relative spread.
#[derive(Debug, Clone)]
pub struct TIndependence {
    pub ts: Vec<f64>,
    pub values: Vec<Complex64>,
    pub max_relative_deviation: f64,
}

pub fn t_independence_report(
    rs: &RootSystem,
    mu: &Weight,
    theta: &[f64],
    ts: &[f64],
    radius_sq: Rational,
) -> Result<TIndependence> {
    if ts.len() < 2 {
        return Err(Error::InvalidArgument("at least two times are needed".to_string()));
    }
    let st = Supertrace::new(rs, mu, radius_sq)?;
    let values = ts
        .iter()
        .map(|&t| st.evaluate(theta, t))
        .collect::<Result<Vec<_>>>()?;
    let mut max_relative_deviation: f64 = 0.0;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            let scale = a.norm().max(b.norm());
            if scale > 0.0 {
                max_relative_deviation = max_relative_deviation.max((a - b).norm() / scale);
            }
        }
    }
    Ok(TIndependence {
        ts: ts.to_vec(),
        values,
        max_relative_deviation,
    })
}
