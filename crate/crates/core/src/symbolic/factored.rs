use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::{LinearForm, Polynomial, RationalFunction, SymbolicError, Var, Q};

/// `scalar · ∏ ℓᵢ^{eᵢ}` with every `ℓᵢ` a primitive non-constant linear form.
///
/// Products of linear forms are the common shape of vertex coefficients; keeping
/// them factored avoids polynomial gcds until several terms must be summed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredRational {
    scalar: Q,
    factors: BTreeMap<LinearForm, i32>,
}

impl FactoredRational {
    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn zero() -> Self {
        Self::constant(Q::zero())
    }

    pub fn constant(c: Q) -> Self {
        FactoredRational { scalar: c, factors: BTreeMap::new() }
    }

    pub fn linear(f: &LinearForm) -> Self {
        let mut out = Self::one();
        out.mul_linear(f, 1).expect("positive power never divides by zero");
        out
    }

    pub fn scalar(&self) -> &Q {
        &self.scalar
    }

    pub fn factors(&self) -> impl Iterator<Item = (&LinearForm, i32)> {
        self.factors.iter().map(|(f, &e)| (f, e))
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// Multiply by `f^e`.
    pub fn mul_linear(&mut self, f: &LinearForm, e: i32) -> Result<(), SymbolicError> {
        if e == 0 || self.is_zero() {
            return Ok(());
        }
        if f.is_constant() {
            let c = f.constant_term().clone();
            if c.is_zero() {
                if e < 0 {
                    return Err(SymbolicError::ZeroDenominator);
                }
                *self = Self::zero();
                return Ok(());
            }
            self.scalar *= pow_q(&c, e);
            return Ok(());
        }
        let (s, p) = f.primitive();
        self.scalar *= pow_q(&s, e);
        let entry = self.factors.entry(p.clone()).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.factors.remove(&p);
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &FactoredRational) -> FactoredRational {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.scalar *= &rhs.scalar;
        for (f, &e) in &rhs.factors {
            let entry = out.factors.entry(f.clone()).or_insert(0);
            *entry += e;
            if *entry == 0 {
                out.factors.remove(f);
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> FactoredRational {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.scalar *= c;
        out
    }

    pub fn inv(&self) -> Result<FactoredRational, SymbolicError> {
        if self.is_zero() {
            return Err(SymbolicError::ZeroDenominator);
        }
        Ok(FactoredRational {
            scalar: self.scalar.recip(),
            factors: self.factors.iter().map(|(f, &e)| (f.clone(), -e)).collect(),
        })
    }

    pub fn substitute(&self, v: Var, value: &LinearForm) -> Result<FactoredRational, SymbolicError> {
        let mut out = Self::constant(self.scalar.clone());
        for (f, &e) in &self.factors {
            out.mul_linear(&f.substitute(v, value), e)?;
        }
        Ok(out)
    }

    /// A single-term polynomial `c·∏ vᵢ^{eᵢ}` in factored form.
    pub fn from_monomial(p: &Polynomial) -> Option<FactoredRational> {
        if p.len() != 1 {
            return None;
        }
        let (m, c) = p.leading_term()?;
        let mut out = Self::constant(c.clone());
        for &(v, e) in m.pairs() {
            out.mul_linear(&LinearForm::var(v), e as i32).ok()?;
        }
        Some(out)
    }

    pub fn to_ratfun(&self) -> RationalFunction {
        if self.is_zero() {
            return RationalFunction::zero();
        }
        let mut num = Polynomial::constant(self.scalar.clone());
        let mut den = Polynomial::one();
        for (f, &e) in &self.factors {
            let p = f.to_polynomial().pow(e.unsigned_abs());
            if e > 0 {
                num = &num * &p;
            } else {
                den = &den * &p;
            }
        }
        // distinct primitive linear forms are pairwise coprime
        RationalFunction::from_coprime(num, den)
    }

    pub fn eval(&self, point: &dyn Fn(Var) -> Complex64) -> Complex64 {
        let mut acc = Complex64::new(self.scalar.to_f64().unwrap_or(f64::NAN), 0.0);
        for (f, &e) in &self.factors {
            acc *= f.eval(point).powi(e);
        }
        acc
    }

    /// Exact sum over a common factored denominator.
    ///
    /// The denominator is the least common multiple of the linear factors; the
    /// result is reduced by trial division, which suffices because every
    /// denominator factor is irreducible.
    pub fn sum(terms: &[FactoredRational]) -> RationalFunction {
        let weighted: Vec<(Polynomial, FactoredRational)> = terms.iter().map(|t| (Polynomial::one(), t.clone())).collect();
        Self::sum_weighted(&weighted)
    }

    /// `Σ pᵢ·fᵢ` for polynomial weights `pᵢ`, reduced the same way as [`Self::sum`].
    ///
    /// Each linear form is first pulled out to its least exponent over all terms, so
    /// only the cofactors are expanded.
    pub fn sum_weighted(terms: &[(Polynomial, FactoredRational)]) -> RationalFunction {
        let live: Vec<&(Polynomial, FactoredRational)> =
            terms.iter().filter(|(p, t)| !t.is_zero() && !p.is_zero()).collect();
        if live.is_empty() {
            return RationalFunction::zero();
        }
        let mut common: BTreeMap<&LinearForm, i32> = BTreeMap::new();
        for (_, t) in &live {
            for f in t.factors.keys() {
                common.entry(f).or_insert(0);
            }
        }
        for (f, g) in common.iter_mut() {
            *g = live.iter().map(|(_, t)| t.factors.get(*f).copied().unwrap_or(0)).min().unwrap_or(0);
        }
        let mut num = Polynomial::zero();
        for (w, t) in &live {
            let mut p = w.scale(&t.scalar);
            for (f, &g) in &common {
                let e = t.factors.get(*f).copied().unwrap_or(0) - g;
                if e > 0 {
                    p = &p * &f.to_polynomial().pow(e as u32);
                }
            }
            num += &p;
        }
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let mut den = Polynomial::one();
        for (f, &g) in &common {
            let fp = f.to_polynomial();
            if g > 0 {
                num = &num * &fp.pow(g as u32);
                continue;
            }
            let mut left = -g;
            while left > 0 {
                match num.div_exact(&fp) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den = &den * &fp.pow(left as u32);
            }
        }
        RationalFunction::from_coprime(num, den)
    }
}

fn pow_q(c: &Q, e: i32) -> Q {
    let p = num_traits::pow(c.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::poly::fmt_q(&self.scalar))?;
        for (l, e) in &self.factors {
            write!(f, "*({l})^{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{parse_ratfun, q_int};

    fn lf(v: Var, c: i64, h: i64) -> LinearForm {
        LinearForm::int_term(v, c) + LinearForm::hbar(h)
    }

    #[test]
    fn factors_are_primitive() {
        let mut a = FactoredRational::one();
        a.mul_linear(&lf(Var::H1, 2, 4), 1).unwrap();
        a.mul_linear(&lf(Var::H1, -1, -2), -1).unwrap();
        assert_eq!(a.to_ratfun(), RationalFunction::int(-2));
    }

    #[test]
    fn sum_matches_ratfun_sum() {
        let mut a = FactoredRational::constant(q_int(3));
        a.mul_linear(&lf(Var::H1, 1, 2), -1).unwrap();
        a.mul_linear(&lf(Var::H2, 1, 0), -1).unwrap();
        let mut b = FactoredRational::constant(q_int(-3));
        b.mul_linear(&lf(Var::H1, 1, 2), -1).unwrap();
        b.mul_linear(&lf(Var::H2, 1, 2), -1).unwrap();
        let direct = &a.to_ratfun() + &b.to_ratfun();
        assert_eq!(FactoredRational::sum(&[a, b]), direct);
        assert_eq!(direct, parse_ratfun("6*hbar / (h1 + 2*hbar)*h2*(h2 + 2*hbar)").unwrap());
    }

    #[test]
    fn zero_factor_handling() {
        let mut a = FactoredRational::one();
        assert_eq!(a.mul_linear(&LinearForm::zero(), -1), Err(SymbolicError::ZeroDenominator));
        a.mul_linear(&LinearForm::zero(), 2).unwrap();
        assert!(a.is_zero());
    }
}
