//! Exact arithmetic over the rationals: linear forms, sparse multivariate
//! polynomials, reduced rational functions and the `Γ_{2ħ}` expression algebra.
//!
//! Every value in this module is immutable once built. Equality is structural
//! because every constructor returns canonical form.

mod factored;
mod gamma;
mod gcd;
mod linear;
mod parse;
mod poly;
mod ratfun;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use factored::FactoredRational;
pub(crate) use gamma::gamma_reduce_parts;
pub use gamma::{gamma_factor, gamma_reduce, gamma_residue, gamma_take_residue, GammaExpression};
pub use linear::LinearForm;
pub use parse::{parse_polynomial, parse_ratfun};
pub use poly::{Monomial, Polynomial};
pub use ratfun::RationalFunction;

/// Exact rational scalar.
pub type Q = BigRational;

pub(crate) fn q_int(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
pub(crate) fn q_frac(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A variable of the equivariant parameter ring.
///
/// The derived `Ord` is the session-wide variable order: `hbar` is the most
/// significant variable, then the flavor parameters, the mass, framing
/// parameters and finally solver unknowns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// `ħ = −c₁(q)`, the loop-rotation parameter of ℙ¹.
    Hbar,
    H1,
    H2,
    /// Mass parameter of the tautological insertion.
    Mass,
    /// Framing parameter `a_i` (1-based).
    A(u16),
    /// Solver unknown `s_i` (1-based).
    S(u16),
    /// Conifold white-node unknown `s⁰_i`.
    S0(u16),
    /// Conifold black-node unknown `s¹_i`.
    S1(u16),
}

impl Var {
    pub fn name(&self) -> String {
        match self {
            Var::Hbar => "hbar".into(),
            Var::H1 => "h1".into(),
            Var::H2 => "h2".into(),
            Var::Mass => "m".into(),
            Var::A(i) => format!("a{i}"),
            Var::S(i) => format!("s{i}"),
            Var::S0(i) => format!("s0_{i}"),
            Var::S1(i) => format!("s1_{i}"),
        }
    }

    /// True for the unknowns of a saddle-point system.
    pub fn is_unknown(&self) -> bool {
        matches!(self, Var::S(_) | Var::S0(_) | Var::S1(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Var {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SymbolicError::Parse(format!("unknown variable `{s}`"));
        let index = |t: &str| t.parse::<u16>().ok().filter(|&i| i > 0).ok_or_else(bad);
        match s {
            "hbar" => Ok(Var::Hbar),
            "h1" => Ok(Var::H1),
            "h2" => Ok(Var::H2),
            "m" => Ok(Var::Mass),
            _ => {
                if let Some(rest) = s.strip_prefix("s0_") {
                    Ok(Var::S0(index(rest)?))
                } else if let Some(rest) = s.strip_prefix("s1_") {
                    Ok(Var::S1(index(rest)?))
                } else if let Some(rest) = s.strip_prefix('s') {
                    Ok(Var::S(index(rest)?))
                } else if let Some(rest) = s.strip_prefix('a') {
                    Ok(Var::A(index(rest)?))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// The ordered set of variables a value actually mentions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarSet(pub std::collections::BTreeSet<Var>);

impl VarSet {
    pub fn contains(&self, v: Var) -> bool {
        self.0.contains(&v)
    }

    pub fn extend(&mut self, other: &VarSet) {
        self.0.extend(other.0.iter().copied());
    }

    pub fn unknowns(&self) -> VarSet {
        VarSet(self.0.iter().copied().filter(Var::is_unknown).collect())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("residue index must be nonnegative, got {0}")]
    NegativeIndex(i64),
    #[error("higher-order pole in {0}")]
    HigherOrderPole(Var),
    #[error("no Γ-factor is singular at the requested pole in {0}")]
    NoPole(Var),
    #[error("a Γ-factor with negative exponent vanishes at the requested pole in {0}")]
    ZeroAtPole(Var),
    #[error("reduction class of Γ({0}) has nonzero exponent sum {1}")]
    UnmatchedGamma(String, i64),
    #[error("power factor {0} has non-constant exponent")]
    NonConstantPower(String),
    #[error("zero factors do not cancel: net multiplicity {0}")]
    UncancelledZero(i64),
    #[error("inexact division")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
}

macro_rules! serde_via_string {
    ($t:ty, $parse:expr) => {
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> serde::Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let text = String::deserialize(d)?;
                $parse(&text).map_err(serde::de::Error::custom)
            }
        }
    };
}

serde_via_string!(Var, |s: &str| s.parse::<Var>());
serde_via_string!(Polynomial, parse_polynomial);
serde_via_string!(RationalFunction, parse_ratfun);
