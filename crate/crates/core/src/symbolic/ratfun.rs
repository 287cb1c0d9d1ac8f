use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gcd::{gcd, integer_primitive};
use super::{LinearForm, Polynomial, SymbolicError, Var, VarSet, Q};

/// Reduced quotient of polynomials.
///
/// Canonical form: `gcd(numerator, denominator) = 1`, the denominator is a
/// primitive integer polynomial with positive leading coefficient, and zero is
/// `0 / 1`. Structural equality is therefore mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Reduce `n / d` to canonical form.
    pub fn normalize(n: Polynomial, d: Polynomial) -> Result<Self, SymbolicError> {
        if d.is_zero() {
            return Err(SymbolicError::ZeroDenominator);
        }
        if n.is_zero() {
            return Ok(Self::zero());
        }
        let g = gcd(&n, &d);
        let (n, d) = if g.is_one() {
            (n, d)
        } else {
            (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
        };
        Ok(Self::from_coprime(n, d))
    }

    /// Canonical scaling of a pair already known to be coprime.
    pub(crate) fn from_coprime(n: Polynomial, d: Polynomial) -> Self {
        debug_assert!(!d.is_zero());
        if n.is_zero() {
            return Self::zero();
        }
        let (s, d) = integer_primitive(&d);
        RationalFunction { num: n.scale(&s.recip()), den: d }
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn int(c: i64) -> Self {
        Self::from_poly(Polynomial::int(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn from_linear(f: &LinearForm) -> Self {
        Self::from_poly(f.to_polynomial())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn vars(&self) -> VarSet {
        let mut v = self.num.vars();
        v.extend(&self.den.vars());
        v
    }

    pub fn inv(&self) -> Result<Self, SymbolicError> {
        if self.is_zero() {
            return Err(SymbolicError::ZeroDenominator);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, SymbolicError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, SymbolicError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Self::from_coprime(base.num.pow(k), base.den.pow(k)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn substitute(&self, v: Var, value: &LinearForm) -> Result<Self, SymbolicError> {
        Self::normalize(self.num.substitute_linear(v, value), self.den.substitute_linear(v, value))
    }

    pub fn substitute_all(
        &self,
        map: &std::collections::BTreeMap<Var, Polynomial>,
    ) -> Result<Self, SymbolicError> {
        Self::normalize(self.num.substitute_all(map), self.den.substitute_all(map))
    }

    pub fn eval(&self, point: &dyn Fn(Var) -> Complex64) -> Complex64 {
        self.num.eval(point) / self.den.eval(point)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel so the product stays reduced
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = rhs.den.div_exact(&g1).expect("gcd divides");
        let c = rhs.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        RationalFunction::from_coprime(&a * &c, &b * &d)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalize(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        let g = gcd(&self.den, &rhs.den);
        let bd = self.den.div_exact(&g).expect("gcd divides");
        let dd = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &dd) + &(&rhs.num * &bd);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        // only factors of g can survive in common with the new numerator
        let h = gcd(&num, &g);
        let num = num.div_exact(&h).expect("gcd divides");
        let g = g.div_exact(&h).expect("gcd divides");
        RationalFunction::from_coprime(num, &(&bd * &dd) * &g)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs.clone())
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -self.num, den: self.den }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

/// `numerator / denominator`, both in canonical polynomial text.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}

impl std::str::FromStr for RationalFunction {
    type Err = SymbolicError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse_ratfun(s)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let r = RationalFunction::normalize(p("h1*h2"), p("h2")).unwrap();
        assert_eq!(r, RationalFunction::var(Var::H1));
        let r = RationalFunction::normalize(p("h1 + h2"), p("1")).unwrap();
        assert_eq!(r.to_string(), "1*h1 + 1*h2 / 1");
        let r = RationalFunction::normalize(p("h1^2 - h2^2"), p("h1 - h2")).unwrap();
        assert_eq!(r, RationalFunction::from_poly(p("h1 + h2")));
        assert_eq!(RationalFunction::normalize(p("1"), p("0")), Err(SymbolicError::ZeroDenominator));
    }

    #[test]
    fn sign_and_scale_canonical() {
        let a = RationalFunction::normalize(p("1"), p("-2*hbar")).unwrap();
        let b = RationalFunction::normalize(p("-1/2"), p("hbar")).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "-1/2 / 1*hbar");
    }

    #[test]
    fn arithmetic_reduces() {
        let a = RationalFunction::normalize(p("1"), p("h1 - h2")).unwrap();
        let b = RationalFunction::normalize(p("1"), p("h1 + h2")).unwrap();
        let s = &a + &b;
        assert_eq!(s, RationalFunction::normalize(p("2*h1"), p("h1^2 - h2^2")).unwrap());
        let d = &s - &a;
        assert_eq!(d, b);
        let q = s.div(&s).unwrap();
        assert!(q.is_one());
    }
}
