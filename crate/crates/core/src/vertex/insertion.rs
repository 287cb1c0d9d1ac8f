use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::symbolic::{parse_ratfun, LinearForm, Polynomial, RationalFunction, SymbolicError, Var};

/// A descendent insertion `τ(p₁, p₂, …)` in power sums of the Chern roots of `𝒱`,
/// optionally together with the mass insertion.
///
/// Internally `p_k` is stored as the variable `s_k`; the coefficients may be any
/// rational functions of the equivariant parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Insertion {
    tau: RationalFunction,
    pub mass: bool,
}

impl Insertion {
    pub fn one() -> Self {
        Insertion { tau: RationalFunction::one(), mass: false }
    }

    pub fn with_mass(mut self, mass: bool) -> Self {
        self.mass = mass;
        self
    }

    /// `p_k`.
    pub fn power_sum(k: u16) -> Self {
        Insertion { tau: RationalFunction::var(Var::S(k)), mass: false }
    }

    pub fn from_ratfun(tau: RationalFunction) -> Result<Self, SymbolicError> {
        if !tau.denominator().vars().unknowns().0.is_empty() {
            return Err(SymbolicError::Parse("power sums may not occur in a denominator".into()));
        }
        Ok(Insertion { tau, mass: false })
    }

    pub fn tau(&self) -> &RationalFunction {
        &self.tau
    }

    pub fn is_trivial(&self) -> bool {
        self.tau.is_one() && !self.mass
    }

    /// The numerator of `τ` at the given Chern roots; the denominator of `τ` is
    /// free of power sums and common to every fixed point.
    pub(crate) fn eval_numerator(&self, roots: &[LinearForm]) -> Polynomial {
        let num = self.tau.numerator();
        let mut map = BTreeMap::new();
        for v in num.vars().unknowns().0 {
            if let Var::S(k) = v {
                map.insert(v, power_sum(roots, k as u32));
            }
        }
        num.substitute_all(&map)
    }
}

fn power_sum(roots: &[LinearForm], k: u32) -> Polynomial {
    roots.iter().fold(Polynomial::zero(), |acc, r| &acc + &r.to_polynomial().pow(k))
}

/// `τ` evaluated by substituting `p_k = Σ ρᵢ^k`.
pub fn insertion_eval(ins: &Insertion, roots: &[LinearForm]) -> RationalFunction {
    RationalFunction::normalize(ins.eval_numerator(roots), ins.tau.denominator().clone())
        .expect("denominator of an insertion is nonzero")
}

fn rename_idents(s: &str, from: char, to: char) -> String {
    let mut out = String::with_capacity(s.len());
    let mut prev_ident = false;
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        if c == from && !prev_ident && chars.peek().is_some_and(|d| d.is_ascii_digit()) {
            out.push(to);
        } else {
            out.push(c);
        }
        prev_ident = c.is_ascii_alphanumeric() || c == '_';
    }
    out
}

impl FromStr for Insertion {
    type Err = SymbolicError;

    /// Parse `1`, `p1`, `p1^2 - p2`, `hbar*p3 / h1`, …
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tau = parse_ratfun(&rename_idents(s.trim(), 'p', 's'))?;
        if parse_ratfun(s).is_ok_and(|r| !r.vars().unknowns().0.is_empty()) {
            return Err(SymbolicError::Parse(format!("insertions are written in p1, p2, ..., got `{s}`")));
        }
        Self::from_ratfun(tau)
    }
}

impl fmt::Display for Insertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = rename_idents(&self.tau.to_string(), 's', 'p');
        if self.mass {
            write!(f, "{text} [mass]")
        } else {
            f.write_str(&text)
        }
    }
}

impl Serialize for Insertion {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&rename_idents(&self.tau.to_string(), 's', 'p'))
    }
}

impl<'de> Deserialize<'de> for Insertion {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_polynomial;

    fn lf(s: &str) -> LinearForm {
        parse_polynomial(s).unwrap().as_linear().unwrap()
    }

    #[test]
    fn eval_examples() {
        let roots = [lf("4*hbar")];
        assert_eq!(insertion_eval(&Insertion::one(), &roots), RationalFunction::one());
        let p1: Insertion = "p1".parse().unwrap();
        assert_eq!(insertion_eval(&p1, &roots), parse_ratfun("4*hbar").unwrap());
        let e2: Insertion = "p1^2 - p2".parse().unwrap();
        let xy = [lf("h1"), lf("h2 + hbar")];
        assert_eq!(insertion_eval(&e2, &xy), parse_ratfun("2*h1*(h2 + hbar)").unwrap());
    }

    #[test]
    fn parse_and_print() {
        let t: Insertion = "hbar*p3 / h1".parse().unwrap();
        assert_eq!(t.to_string(), "1*hbar*p3 / 1*h1");
        assert_eq!(t.to_string().parse::<Insertion>().unwrap(), t);
        assert!("s1".parse::<Insertion>().is_err());
        assert!("1 / p1".parse::<Insertion>().is_err());
    }
}
