//! Contour integrands and their `ħ → 0` critical-point equations.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use super::{BetheError, SaddleEquation, SaddleSystem};
use crate::ktheory::{Endpoint, KError};
use crate::symbolic::{FactoredRational, LinearForm, Var};
use crate::vertex::{FamilyConfig, VertexError};

/// `Γ_{2ħ}(arg)^{exponent}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFamily {
    pub arg: LinearForm,
    pub exponent: i32,
}

/// `base^{ℓ/2ħ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerFactor {
    pub base: String,
    pub ell: LinearForm,
}

/// The unknowns and the `s`-dependent part of a contour integrand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrandSpec {
    pub name: String,
    pub unknowns: Vec<Var>,
    pub gammas: Vec<GammaFamily>,
    pub powers: Vec<PowerFactor>,
}

impl IntegrandSpec {
    fn gamma(&mut self, arg: LinearForm, exponent: i32) {
        self.gammas.push(GammaFamily { arg, exponent });
    }
}

/// `∏_□ Γ(s_□) [/Γ(s_□+m)] ∏_{□≠□'} ∏ᵢ Γ(s_□−s_□'+ħᵢ+σᵢħ) / Γ(s_□−s_□') · z^{Σs/2ħ}`.
pub fn integrand_hilb(n: usize, sigma: [i64; 3], mass: bool) -> Result<IntegrandSpec, BetheError> {
    integrand_for(&FamilyConfig::Hilb { n, sigma }, mass)
}

fn node_unknowns(family: &FamilyConfig) -> Vec<Vec<Var>> {
    let idx = |i: usize| u16::try_from(i).expect("dimension fits in u16");
    match family {
        FamilyConfig::Hilb { n, .. } => vec![(1..=*n).map(|i| Var::S(idx(i))).collect()],
        FamilyConfig::SpinChain { n, .. } => vec![(1..=*n as usize).map(|i| Var::S(idx(i))).collect()],
        FamilyConfig::Conifold { v0, v1, .. } => vec![
            (1..=*v0).map(|i| Var::S0(idx(i))).collect(),
            (1..=*v1).map(|i| Var::S1(idx(i))).collect(),
        ],
    }
}

fn novikov_label(family: &FamilyConfig, node: usize) -> String {
    match family {
        FamilyConfig::Conifold { .. } => format!("z{node}"),
        _ => "z".to_string(),
    }
}

fn vertex_err(e: VertexError) -> BetheError {
    match e {
        VertexError::InvalidConfig(s) | VertexError::K(KError::InvalidRCharge(s)) => BetheError::ConstraintViolation(s),
        other => BetheError::ConstraintViolation(other.to_string()),
    }
}

/// The integrand read off the matter content: for a field `source → target` of
/// weight `w`, `Γ(x_target − x_source + c₁(w) − deg(w)ħ)` over all basis pairs,
/// where `x` is an unknown on a gauge node and `c₁` of the framing character on
/// the framing. Each gauge node contributes `1/Γ(s − s')` and its Novikov power.
/// Factors independent of the unknowns are omitted.
pub fn integrand_for(family: &FamilyConfig, mass: bool) -> Result<IntegrandSpec, BetheError> {
    family.validate().map_err(vertex_err)?;
    if mass && !matches!(family, FamilyConfig::Hilb { .. }) {
        return Err(BetheError::ConstraintViolation("the mass insertion exists for the Hilbert scheme only".into()));
    }
    let r = family.rcharge().map_err(vertex_err)?;
    let rel = family.weight_relation();
    let matter = family.matter();
    let unknowns = node_unknowns(family);
    let framing: Vec<LinearForm> =
        matter.framing.iter().map(|c| rel.c1(c)).collect::<Result<_, _>>().map_err(|e| vertex_err(e.into()))?;
    let points = |e: Endpoint| -> Vec<LinearForm> {
        match e {
            Endpoint::Framing => framing.clone(),
            Endpoint::Node(i) => unknowns[i].iter().map(|&v| LinearForm::var(v)).collect(),
        }
    };
    let mut spec = IntegrandSpec {
        name: format!("{} integrand{}", family.name(), if mass { " with mass" } else { "" }),
        unknowns: unknowns.concat(),
        gammas: Vec::new(),
        powers: Vec::new(),
    };
    for field in &matter.fields {
        let w = rel.c1(&field.weight).map_err(|e| vertex_err(e.into()))? + LinearForm::hbar(-r.degree(&field.weight));
        for (ti, t) in points(field.target).iter().enumerate() {
            for (si, s) in points(field.source).iter().enumerate() {
                if field.source == field.target && ti == si {
                    continue;
                }
                spec.gamma(t.clone() - s.clone() + w.clone(), 1);
            }
        }
    }
    for (node, vars) in unknowns.iter().enumerate() {
        for &a in vars {
            for &b in vars {
                if a != b {
                    spec.gamma(LinearForm::var(a) - LinearForm::var(b), -1);
                }
            }
            if mass {
                spec.gamma(LinearForm::var(a) + LinearForm::var(Var::Mass), -1);
            }
        }
        let ell = vars.iter().fold(LinearForm::zero(), |acc, &v| acc + LinearForm::var(v));
        if !vars.is_empty() {
            spec.powers.push(PowerFactor { base: novikov_label(family, node), ell });
        }
    }
    Ok(spec)
}

/// Critical points of the integrand at `ħ → 0`.
///
/// By Stirling, `∂ ln Γ_{2ħ}(x)/∂s ≈ (∂x/∂s)·(ln x − ln 2ħ)/2ħ`, where summands of
/// `x` proportional to `ħ` alone are dropped. Exponentiating `∂/∂s ln(integrand) = 0`
/// gives `z^{∂ℓ/∂s} = ∏ x^{−e·∂x/∂s}` up to `(2ħ)^{Σ e·∂x/∂s}`; when that power is
/// nonzero it is absorbed into `z̄ = 2ħz` as in the Hilbert-scheme case.
pub fn derive_saddle(spec: &IntegrandSpec) -> Result<SaddleSystem, BetheError> {
    let mut equations = Vec::with_capacity(spec.unknowns.len());
    for &v in &spec.unknowns {
        let mut rhs = FactoredRational::one();
        let mut log_two_hbar = 0i64;
        for g in &spec.gammas {
            let c = g.arg.coeff(v);
            if c.is_zero() {
                continue;
            }
            let c = c.to_integer().to_i64().filter(|_| c.is_integer()).ok_or(BetheError::NonIntegerExponent(v))?;
            let x = g.arg.without(Var::Hbar);
            let e = -(g.exponent as i64) * c;
            rhs.mul_linear(&x, i32::try_from(e).map_err(|_| BetheError::NonIntegerExponent(v))?)?;
            log_two_hbar += g.exponent as i64 * c;
        }
        let mut coupled: BTreeMap<&str, i64> = BTreeMap::new();
        for p in &spec.powers {
            let c = p.ell.coeff(v);
            if !c.is_zero() {
                let c = c.to_integer().to_i64().filter(|_| c.is_integer()).ok_or(BetheError::NonIntegerExponent(v))?;
                *coupled.entry(p.base.as_str()).or_insert(0) += c;
            }
        }
        coupled.retain(|_, c| *c != 0);
        let (base, power) = match coupled.iter().next() {
            Some((b, p)) if coupled.len() == 1 && p.abs() == 1 => (*b, *p),
            _ => {
                let total = coupled.values().sum();
                return Err(BetheError::UnsupportedPower(v, coupled.len(), total));
            }
        };
        let r = rhs.to_ratfun();
        let (num, den) = (r.numerator().clone(), r.denominator().clone());
        let (lhs, rhs) = if power == 1 { (den, num) } else { (num, den) };
        let label = if log_two_hbar != 0 { base.replacen('z', "zbar", 1) } else { base.to_string() };
        equations.push(SaddleEquation::new(v, &label, lhs, rhs));
    }
    Ok(SaddleSystem { name: format!("saddle of {}", spec.name), equations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bethe::{compare_systems, saddle_hilb, saddle_spinchain};

    #[test]
    fn hilb_factor_counts() {
        let one = integrand_hilb(1, [1, 1, 0], false).unwrap();
        assert_eq!(one.gammas, vec![GammaFamily { arg: LinearForm::var(Var::S(1)), exponent: 1 }]);
        assert_eq!(one.powers[0].ell, LinearForm::var(Var::S(1)));
        let two = integrand_hilb(2, [1, 1, 0], false).unwrap();
        assert_eq!(two.gammas.len(), 2 + 2 * 3 + 2);
        let mass = integrand_hilb(1, [1, 1, 0], true).unwrap();
        assert!(mass.gammas.iter().any(|g| g.exponent == -1 && g.arg.contains(Var::Mass)));
        assert!(integrand_hilb(1, [1, 1, 1], false).is_err());
    }

    #[test]
    fn derives_one_box() {
        let s = derive_saddle(&integrand_hilb(1, [1, 1, 0], false).unwrap()).unwrap();
        assert!(compare_systems(&s, &saddle_hilb(1, false)).unwrap());
    }

    #[test]
    fn derives_hilb_and_mass() {
        for n in 1..=3 {
            for mass in [false, true] {
                let s = derive_saddle(&integrand_hilb(n, [2, 1, -1], mass).unwrap()).unwrap();
                assert!(compare_systems(&s, &saddle_hilb(n, mass)).unwrap(), "n={n} mass={mass}\n{s}");
            }
        }
    }

    #[test]
    fn derives_spin_chain() {
        let f = FamilyConfig::SpinChain { framings: 2, n: 1, k: 1, sigma1: 1, sigma2: 1, alpha: vec![0, 0] };
        let s = derive_saddle(&integrand_for(&f, false).unwrap()).unwrap();
        assert!(compare_systems(&s, &saddle_spinchain(2, 1, 1)).unwrap(), "{s}");
        let f = FamilyConfig::SpinChain { framings: 2, n: 3, k: 2, sigma1: 0, sigma2: 1, alpha: vec![1, 0] };
        let s = derive_saddle(&integrand_for(&f, false).unwrap()).unwrap();
        assert!(compare_systems(&s, &saddle_spinchain(2, 3, 2)).unwrap(), "{s}");
    }
}
