use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{q_int, Polynomial, Var, VarSet, Q};

/// `Σ cᵥ·v + c₀` with exact rational coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LinearForm {
    coeffs: BTreeMap<Var, Q>,
    constant: Q,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self::term(v, Q::one())
    }

    pub fn term(v: Var, c: Q) -> Self {
        let mut f = Self::zero();
        if !c.is_zero() {
            f.coeffs.insert(v, c);
        }
        f
    }

    pub fn int_term(v: Var, c: i64) -> Self {
        Self::term(v, q_int(c))
    }

    pub fn constant(c: Q) -> Self {
        LinearForm { coeffs: BTreeMap::new(), constant: c }
    }

    /// `c·ħ`.
    pub fn hbar(c: i64) -> Self {
        Self::int_term(Var::Hbar, c)
    }

    pub fn from_terms<I: IntoIterator<Item = (Var, Q)>>(terms: I, constant: Q) -> Self {
        let mut f = Self::constant(constant);
        for (v, c) in terms {
            f.add_term(v, c);
        }
        f
    }

    fn add_term(&mut self, v: Var, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(v).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&v);
        }
    }

    pub fn coeff(&self, v: Var) -> Q {
        self.coeffs.get(&v).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> &Q {
        &self.constant
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Var, &Q)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn vars(&self) -> VarSet {
        VarSet(self.coeffs.keys().copied().collect())
    }

    pub fn contains(&self, v: Var) -> bool {
        self.coeffs.contains_key(&v)
    }

    /// `Some(c)` when the form is exactly `c·ħ`.
    pub fn as_hbar_multiple(&self) -> Option<Q> {
        if !self.constant.is_zero() {
            return None;
        }
        match self.coeffs.len() {
            0 => Some(Q::zero()),
            1 => self.coeffs.get(&Var::Hbar).cloned(),
            _ => None,
        }
    }

    /// `Some(k)` when the form is `2k·ħ` with `k` an integer.
    pub fn as_even_hbar_multiple(&self) -> Option<i64> {
        let c = self.as_hbar_multiple()?;
        let half = c / q_int(2);
        if half.is_integer() {
            half.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn without(&self, v: Var) -> Self {
        let mut f = self.clone();
        f.coeffs.remove(&v);
        f
    }

    /// Replace `v` by `value`.
    pub fn substitute(&self, v: Var, value: &LinearForm) -> Self {
        match self.coeffs.get(&v) {
            None => self.clone(),
            Some(c) => {
                let c = c.clone();
                self.without(v) + value.clone() * c
            }
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::constant(self.constant.clone());
        for (v, c) in &self.coeffs {
            p = p + Polynomial::var(*v) * c.clone();
        }
        p
    }

    /// Split into `(scalar, primitive)` with `self = scalar · primitive`, where the
    /// primitive form has coprime integer coefficients and a positive leading
    /// coefficient (the first variable in order, or the constant when there are none).
    pub fn primitive(&self) -> (Q, LinearForm) {
        if self.is_zero() {
            return (Q::one(), self.clone());
        }
        let all = || self.coeffs.values().chain(std::iter::once(&self.constant)).filter(|c| !c.is_zero());
        let mut den_lcm = num_bigint::BigInt::one();
        for c in all() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = num_bigint::BigInt::zero();
        for c in all() {
            let scaled = (c * Q::from_integer(den_lcm.clone())).to_integer();
            num_gcd = num_gcd.gcd(&scaled);
        }
        let mut scalar = Q::new(num_gcd, den_lcm);
        let lead = self.coeffs.values().next().unwrap_or(&self.constant);
        if lead.is_negative() {
            scalar = -scalar;
        }
        let inv = scalar.recip();
        (scalar, self.clone() * inv)
    }

    pub fn eval(&self, point: &dyn Fn(Var) -> Complex64) -> Complex64 {
        let mut acc = Complex64::new(self.constant.to_f64().unwrap_or(f64::NAN), 0.0);
        for (v, c) in &self.coeffs {
            acc += point(*v) * c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(mut self, rhs: LinearForm) -> LinearForm {
        for (v, c) in rhs.coeffs {
            self.add_term(v, c);
        }
        self.constant += rhs.constant;
        self
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: LinearForm) -> LinearForm {
        self + (-rhs)
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        self * -Q::one()
    }
}

impl Mul<Q> for LinearForm {
    type Output = LinearForm;
    fn mul(self, rhs: Q) -> LinearForm {
        if rhs.is_zero() {
            return LinearForm::zero();
        }
        LinearForm {
            coeffs: self.coeffs.into_iter().map(|(v, c)| (v, c * &rhs)).collect(),
            constant: self.constant * rhs,
        }
    }
}

impl Mul<i64> for LinearForm {
    type Output = LinearForm;
    fn mul(self, rhs: i64) -> LinearForm {
        self * q_int(rhs)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::q_frac;

    #[test]
    fn primitive_normalizes_sign_and_content() {
        let f = LinearForm::int_term(Var::H1, -4) + LinearForm::int_term(Var::H2, 6);
        let (s, p) = f.primitive();
        assert_eq!(s, q_int(-2));
        assert_eq!(p, LinearForm::int_term(Var::H1, 2) + LinearForm::int_term(Var::H2, -3));
        let g = LinearForm::term(Var::Hbar, q_frac(2, 3));
        let (s, p) = g.primitive();
        assert_eq!(s, q_frac(2, 3));
        assert_eq!(p, LinearForm::var(Var::Hbar));
    }

    #[test]
    fn even_hbar_detection() {
        assert_eq!(LinearForm::hbar(-4).as_even_hbar_multiple(), Some(-2));
        assert_eq!(LinearForm::hbar(3).as_even_hbar_multiple(), None);
        assert_eq!(LinearForm::zero().as_even_hbar_multiple(), Some(0));
        assert_eq!((LinearForm::hbar(2) + LinearForm::var(Var::H1)).as_even_hbar_multiple(), None);
    }

    #[test]
    fn substitution() {
        let f = LinearForm::var(Var::S(1)) + LinearForm::hbar(2);
        let g = f.substitute(Var::S(1), &LinearForm::hbar(-4));
        assert_eq!(g, LinearForm::hbar(-2));
    }
}
