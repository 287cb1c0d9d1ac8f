//! Saddle-point (Bethe) equations: derivation from contour integrands in the
//! `ħ → 0` limit, transcribed systems, and a numeric solver.

mod integrand;
mod solve;
mod systems;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::symbolic::{parse_polynomial, Polynomial, SymbolicError, Var};

pub use integrand::{derive_saddle, integrand_for, integrand_hilb, GammaFamily, IntegrandSpec, PowerFactor};
pub use solve::{hilb_box_seeds, solve, verify, NumericParams, Root, RootSet, Seeds};
pub use systems::{saddle_conifold, saddle_hilb, saddle_spinchain, saddle_spinchain_k1};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BetheError {
    #[error("R-charge constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("exponent of {0} in a Γ-argument is not an integer")]
    NonIntegerExponent(Var),
    #[error("unknown {0} couples to {1} Novikov variables with total exponent {2}")]
    UnsupportedPower(Var, usize, i64),
    #[error("systems have different unknowns")]
    VariableMismatch,
    #[error("no seed converged")]
    NoConvergence,
    #[error("parameter {0} has no numeric value")]
    MissingParameter(String),
    #[error("degenerate Jacobian")]
    DegenerateJacobian,
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

/// `label · lhs = rhs` for one unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaddleEquation {
    pub unknown: Var,
    /// Novikov variable: `zbar` (`= 2ħz`), `z`, `zbar0`, `zbar1`.
    pub label: String,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
}

impl SaddleEquation {
    pub fn new(unknown: Var, label: &str, lhs: Polynomial, rhs: Polynomial) -> Self {
        SaddleEquation { unknown, label: label.to_string(), lhs, rhs }
    }
}

impl fmt::Display for SaddleEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * ({}) = {}", self.label, self.lhs, self.rhs)
    }
}

/// Parse `label * (lhs) = rhs` for the given unknown.
pub fn parse_equation(unknown: Var, s: &str) -> Result<SaddleEquation, SymbolicError> {
    let bad = || SymbolicError::Parse(format!("expected `label * (lhs) = rhs`, got `{s}`"));
    let (l, r) = s.split_once(" = ").ok_or_else(bad)?;
    let (label, lhs) = l.split_once('*').ok_or_else(bad)?;
    Ok(SaddleEquation::new(unknown, label.trim(), parse_polynomial(lhs)?, parse_polynomial(r)?))
}

/// One equation per unknown, in the order of `unknowns`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaddleSystem {
    pub name: String,
    pub equations: Vec<SaddleEquation>,
}

impl SaddleSystem {
    pub fn unknowns(&self) -> Vec<Var> {
        self.equations.iter().map(|e| e.unknown).collect()
    }

    pub fn equation(&self, v: Var) -> Option<&SaddleEquation> {
        self.equations.iter().find(|e| e.unknown == v)
    }

    /// Novikov labels in first-use order.
    pub fn labels(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for e in &self.equations {
            if !out.contains(&e.label) {
                out.push(e.label.clone());
            }
        }
        out
    }

    /// Parameters other than the unknowns.
    pub fn parameters(&self) -> BTreeSet<Var> {
        let unknowns: BTreeSet<Var> = self.unknowns().into_iter().collect();
        let mut out = BTreeSet::new();
        for e in &self.equations {
            for v in e.lhs.vars().0.into_iter().chain(e.rhs.vars().0) {
                if !unknowns.contains(&v) {
                    out.insert(v);
                }
            }
        }
        out
    }
}

impl fmt::Display for SaddleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.name)?;
        for e in &self.equations {
            writeln!(f, "[{}] {e}", e.unknown)?;
        }
        Ok(())
    }
}

/// Equal labels and `rhs_A·lhs_B = rhs_B·lhs_A` for every unknown.
pub fn compare_systems(a: &SaddleSystem, b: &SaddleSystem) -> Result<bool, BetheError> {
    let ua: BTreeSet<Var> = a.unknowns().into_iter().collect();
    let ub: BTreeSet<Var> = b.unknowns().into_iter().collect();
    if ua != ub || ua.len() != a.equations.len() || ub.len() != b.equations.len() {
        return Err(BetheError::VariableMismatch);
    }
    for ea in &a.equations {
        let eb = b.equation(ea.unknown).ok_or(BetheError::VariableMismatch)?;
        if ea.label != eb.label || &ea.rhs * &eb.lhs != &eb.rhs * &ea.lhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equation_text_round_trip() {
        let e = parse_equation(Var::S(1), "zbar * (s1*(s1 - s2 + h1)) = (s1 - s2 - h1)").unwrap();
        assert_eq!(e.label, "zbar");
        let again = parse_equation(Var::S(1), &e.to_string()).unwrap();
        assert_eq!(again, e);
    }

    #[test]
    fn self_comparison() {
        let s = saddle_hilb(2, false);
        assert!(compare_systems(&s, &s).unwrap());
        assert_eq!(compare_systems(&s, &saddle_hilb(1, false)), Err(BetheError::VariableMismatch));
    }
}
