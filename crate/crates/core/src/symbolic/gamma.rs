//! The `Γ_{2ħ}` calculus: `Γ_{2ħ}(z + 2ħ) = (z/2ħ)·Γ_{2ħ}(z)`, residues at
//! `z = −2dħ`, and exact reduction of Γ-ratios.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{q_int, FactoredRational, LinearForm, RationalFunction, SymbolicError, Var, Q};

/// `(2ħ)^d · Γ_{2ħ}(u) / Γ_{2ħ}(u − 2dħ)` in factored form.
pub(crate) fn gamma_factor_factored(u: &LinearForm, d: i64) -> FactoredRational {
    let mut out = FactoredRational::one();
    if d >= 0 {
        for j in 1..=d {
            out.mul_linear(&(u.clone() - LinearForm::hbar(2 * j)), 1).expect("positive power");
        }
    } else {
        for j in 0..-d {
            if out.mul_linear(&(u.clone() + LinearForm::hbar(2 * j)), -1).is_err() {
                // a literal 1/0: leave the zero weight to the caller's ledger
                return FactoredRational::zero();
            }
        }
    }
    out
}

/// `∏_{j=1..d}(u − 2jħ)` for `d ≥ 0`, `1/∏_{j=0..−d−1}(u + 2jħ)` for `d < 0`.
///
/// When `d < 0` and `u` makes a denominator factor vanish the result is reported
/// as `0`; callers that care track zero weights separately.
pub fn gamma_factor(u: &LinearForm, d: i64) -> RationalFunction {
    gamma_factor_factored(u, d).to_ratfun()
}

/// `Res_{u=−2dħ} Γ_{2ħ}(u) = (−1)^d·2ħ/d!`.
pub fn gamma_residue(d: i64) -> Result<RationalFunction, SymbolicError> {
    if d < 0 {
        return Err(SymbolicError::NegativeIndex(d));
    }
    let mut fact = BigInt::one();
    for k in 2..=d {
        fact *= k;
    }
    let sign = if d % 2 == 0 { 2 } else { -2 };
    let c = Q::new(BigInt::from(sign), fact);
    Ok(RationalFunction::var(Var::Hbar).scale(&c))
}

/// `prefactor · ∏ Γ_{2ħ}(ℓᵢ)^{eᵢ} · ∏ z_b^{ℓ_b/2ħ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaExpression {
    prefactor: RationalFunction,
    gammas: BTreeMap<LinearForm, i32>,
    powers: BTreeMap<String, LinearForm>,
}

impl GammaExpression {
    pub fn new(prefactor: RationalFunction) -> Self {
        GammaExpression { prefactor, gammas: BTreeMap::new(), powers: BTreeMap::new() }
    }

    pub fn prefactor(&self) -> &RationalFunction {
        &self.prefactor
    }

    pub fn gammas(&self) -> impl Iterator<Item = (&LinearForm, i32)> {
        self.gammas.iter().map(|(l, &e)| (l, e))
    }

    pub fn powers(&self) -> impl Iterator<Item = (&str, &LinearForm)> {
        self.powers.iter().map(|(b, l)| (b.as_str(), l))
    }

    /// Multiply by `Γ_{2ħ}(arg)^e`.
    pub fn mul_gamma(&mut self, arg: LinearForm, e: i32) {
        if e == 0 {
            return;
        }
        let entry = self.gammas.entry(arg.clone()).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.gammas.remove(&arg);
        }
    }

    pub fn with_gamma(mut self, arg: LinearForm, e: i32) -> Self {
        self.mul_gamma(arg, e);
        self
    }

    /// Multiply by `base^{ℓ/2ħ}`.
    pub fn mul_power(&mut self, base: &str, ell: LinearForm) {
        let entry = self.powers.entry(base.to_string()).or_default();
        *entry = entry.clone() + ell;
        if entry.is_zero() {
            self.powers.remove(base);
        }
    }

    pub fn with_power(mut self, base: &str, ell: LinearForm) -> Self {
        self.mul_power(base, ell);
        self
    }

    pub fn mul_prefactor(&mut self, r: &RationalFunction) {
        self.prefactor = &self.prefactor * r;
    }

    /// The exponent `ℓ/2ħ` of `base`, which must be a constant.
    pub fn power_exponent(&self, base: &str) -> Result<Q, SymbolicError> {
        match self.powers.get(base) {
            None => Ok(Q::zero()),
            Some(ell) => ell
                .as_hbar_multiple()
                .map(|c| c / q_int(2))
                .ok_or_else(|| SymbolicError::NonConstantPower(format!("{base}^({ell})/2hbar"))),
        }
    }
}

impl fmt::Display for GammaExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.prefactor)?;
        for (l, e) in &self.gammas {
            write!(f, " * G({l})^{e}")?;
        }
        for (b, l) in &self.powers {
            write!(f, " * {b}^(({l})/2hbar)")?;
        }
        Ok(())
    }
}

/// Residue of `e` in `v` at `v = pole`.
///
/// Exactly one positive-exponent Γ-factor depending on `v` may be singular
/// there, to first order.
pub fn gamma_take_residue(
    e: &GammaExpression,
    v: Var,
    pole: &LinearForm,
) -> Result<GammaExpression, SymbolicError> {
    let mut singular: Option<(LinearForm, i64)> = None;
    let mut negative_singular = false;
    for (arg, &exp) in &e.gammas {
        if !arg.contains(v) {
            continue;
        }
        let at = arg.substitute(v, pole);
        let Some(k) = at.as_even_hbar_multiple().filter(|&k| k <= 0) else {
            continue;
        };
        if exp < 0 {
            negative_singular = true;
            continue;
        }
        if exp > 1 || singular.is_some() {
            return Err(SymbolicError::HigherOrderPole(v));
        }
        singular = Some((arg.clone(), -k));
    }
    let Some((arg, k)) = singular else {
        return Err(SymbolicError::NoPole(v));
    };
    if negative_singular {
        return Err(SymbolicError::ZeroAtPole(v));
    }
    let res = gamma_residue(k)?.scale(&arg.coeff(v).recip());
    let mut out = GammaExpression::new(&e.prefactor.substitute(v, pole)? * &res);
    for (a, &exp) in &e.gammas {
        if *a != arg {
            out.mul_gamma(a.substitute(v, pole), exp);
        }
    }
    for (b, l) in &e.powers {
        out.mul_power(b, l.substitute(v, pole));
    }
    Ok(out)
}

/// `ħ`-coefficient reduced into `[0, 2)` and the integer shift `k` with `r = r₀ + 2k`.
fn split_hbar(r: &Q) -> (Q, i64) {
    let two = q_int(2);
    let k = (r / &two).floor();
    let r0 = r - &k * &two;
    (r0, k.to_integer().to_i64().expect("shift fits in i64"))
}

/// Reduce a Γ-expression whose reduction classes fully cancel to a rational function.
///
/// Within a class every argument is written `x₀ + 2kħ` and the ratio to `Γ_{2ħ}(x₀)`
/// is expanded into linear factors `(x₀ + 2jħ)/2ħ`. Identical factors cancel before
/// anything is evaluated, which realizes the `0/0 = 1` convention for factors that
/// vanish. Constant power factors are ignored; read them with
/// [`GammaExpression::power_exponent`].
pub fn gamma_reduce(e: &GammaExpression) -> Result<RationalFunction, SymbolicError> {
    let (pre, acc) = gamma_reduce_parts(e)?;
    Ok(&pre * &acc.to_ratfun())
}

/// [`gamma_reduce`] as `(prefactor, reduced Γ-ratio)`, kept apart so that sums of
/// reductions can share a factored denominator.
pub(crate) fn gamma_reduce_parts(e: &GammaExpression) -> Result<(RationalFunction, FactoredRational), SymbolicError> {
    for b in e.powers.keys() {
        e.power_exponent(b)?;
    }
    // class base x₀ -> (j -> multiplicity of (x₀ + 2jħ)/2ħ), exponent sum
    let mut classes: BTreeMap<LinearForm, (BTreeMap<i64, i64>, i64)> = BTreeMap::new();
    for (arg, &exp) in &e.gammas {
        let (r0, k) = split_hbar(&arg.coeff(Var::Hbar));
        let base = arg.without(Var::Hbar) + LinearForm::term(Var::Hbar, r0);
        let (mult, sum) = classes.entry(base).or_default();
        *sum += exp as i64;
        if k > 0 {
            for j in 0..k {
                *mult.entry(j).or_insert(0) += exp as i64;
            }
        } else {
            for j in k..0 {
                *mult.entry(j).or_insert(0) -= exp as i64;
            }
        }
    }
    let mut acc = FactoredRational::one();
    for (base, (mult, sum)) in &classes {
        if *sum != 0 {
            return Err(SymbolicError::UnmatchedGamma(base.to_string(), *sum));
        }
        for (&j, &m) in mult {
            if m == 0 {
                continue;
            }
            let factor = base.clone() + LinearForm::hbar(2 * j);
            if factor.is_zero() {
                return Err(SymbolicError::UncancelledZero(m));
            }
            let m = i32::try_from(m).map_err(|_| SymbolicError::InexactDivision)?;
            acc.mul_linear(&factor, m)?;
            acc.mul_linear(&LinearForm::hbar(2), -m)?;
        }
    }
    Ok((e.prefactor.clone(), acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_ratfun;

    fn u() -> LinearForm {
        LinearForm::var(Var::H1) + LinearForm::int_term(Var::H2, 3)
    }

    fn s() -> LinearForm {
        LinearForm::var(Var::S(1))
    }

    #[test]
    fn gamma_factor_examples() {
        assert!(gamma_factor(&u(), 0).is_one());
        assert_eq!(gamma_factor(&u(), 2), parse_ratfun("(h1 + 3*h2 - 2*hbar)*(h1 + 3*h2 - 4*hbar)").unwrap());
        assert_eq!(gamma_factor(&u(), -2), parse_ratfun("1 / (h1 + 3*h2)*(h1 + 3*h2 + 2*hbar)").unwrap());
    }

    #[test]
    fn residue_values() {
        assert_eq!(gamma_residue(0).unwrap(), parse_ratfun("2*hbar").unwrap());
        assert_eq!(gamma_residue(1).unwrap(), parse_ratfun("-2*hbar").unwrap());
        assert_eq!(gamma_residue(3).unwrap(), parse_ratfun("-1/3*hbar").unwrap());
        assert_eq!(gamma_residue(-1), Err(SymbolicError::NegativeIndex(-1)));
    }

    #[test]
    fn take_residue_examples() {
        let e = GammaExpression::new(RationalFunction::one()).with_gamma(s(), 1).with_power("z", s());
        let r = gamma_take_residue(&e, Var::S(1), &LinearForm::hbar(-2)).unwrap();
        assert_eq!(r.prefactor(), &parse_ratfun("-2*hbar").unwrap());
        assert_eq!(r.gammas().count(), 0);
        assert_eq!(r.power_exponent("z").unwrap(), q_int(-1));

        let e = GammaExpression::new(RationalFunction::one()).with_gamma(s(), 1).with_gamma(u() - s(), 1);
        let r = gamma_take_residue(&e, Var::S(1), &LinearForm::zero()).unwrap();
        assert_eq!(r.prefactor(), &parse_ratfun("2*hbar").unwrap());
        assert_eq!(r.gammas().collect::<Vec<_>>(), vec![(&u(), 1)]);

        let e = GammaExpression::new(RationalFunction::one())
            .with_gamma(s(), 1)
            .with_gamma(s() + LinearForm::hbar(2), 1);
        assert_eq!(
            gamma_take_residue(&e, Var::S(1), &LinearForm::hbar(-2)),
            Err(SymbolicError::HigherOrderPole(Var::S(1)))
        );
        assert_eq!(gamma_take_residue(&e, Var::S(1), &LinearForm::hbar(2)), Err(SymbolicError::NoPole(Var::S(1))));
    }

    #[test]
    fn reduce_examples() {
        let e = GammaExpression::new(RationalFunction::one())
            .with_gamma(u() + LinearForm::hbar(4), 1)
            .with_gamma(u(), -1);
        assert_eq!(
            gamma_reduce(&e).unwrap(),
            parse_ratfun("(h1 + 3*h2)*(h1 + 3*h2 + 2*hbar) / 4*hbar^2").unwrap()
        );
        let e = GammaExpression::new(RationalFunction::one()).with_gamma(u(), 1).with_gamma(u(), -1);
        assert!(gamma_reduce(&e).unwrap().is_one());
        let e = GammaExpression::new(RationalFunction::one()).with_gamma(u(), 1);
        assert!(matches!(gamma_reduce(&e), Err(SymbolicError::UnmatchedGamma(_, 1))));
    }

    #[test]
    fn zero_over_zero_cancels() {
        // Γ(2ħ)Γ(−4ħ)/(Γ(0)Γ(4ħ)) = 1 · (1/2)Γ(0) / (Γ(0) · 1)
        let e = GammaExpression::new(RationalFunction::one())
            .with_gamma(LinearForm::hbar(2), 1)
            .with_gamma(LinearForm::hbar(-4), 1)
            .with_gamma(LinearForm::zero(), -1)
            .with_gamma(LinearForm::hbar(4), -1);
        assert_eq!(gamma_reduce(&e).unwrap(), parse_ratfun("1/2").unwrap());
        let e = GammaExpression::new(RationalFunction::one())
            .with_gamma(LinearForm::hbar(2), 1)
            .with_gamma(LinearForm::hbar(-2), 1)
            .with_gamma(LinearForm::zero(), -2);
        assert!(matches!(gamma_reduce(&e), Err(SymbolicError::UncancelledZero(1))));
    }

    #[test]
    fn cocycle() {
        for d in -4..=4 {
            for e in -4..=4 {
                let lhs = &gamma_factor(&u(), d) * &gamma_factor(&(u() - LinearForm::hbar(2 * d)), e);
                assert_eq!(lhs, gamma_factor(&u(), d + e), "d={d} e={e}");
            }
        }
    }
}
