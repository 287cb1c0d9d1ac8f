use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::{q_int, LinearForm, Var, VarSet, Q};

/// A monomial as a sorted list of `(variable, exponent)` with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_by_key(|&(v, _)| v);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    fn cmp_lex(&self, other: &Monomial) -> Ordering {
        // first variable (in Var order) where the exponents differ decides
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(a, e)), Some(&(b, f))) => match a.cmp(&b) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if e != f {
                            return e.cmp(&f);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

/// Graded-lexicographic order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.cmp_lex(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over ℚ in graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(q_int(c))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Q::one())
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Q {
        self.leading_term().map_or_else(Q::zero, |(_, c)| c.clone())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> VarSet {
        VarSet(self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect())
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let lowered = Monomial::from_pairs(
                m.0.iter().map(|&(w, f)| if w == v { (w, f - 1) } else { (w, f) }).collect(),
            );
            out.add_term(lowered, c * q_int(e as i64));
        }
        out
    }

    /// Replace `v` by the polynomial `value`.
    pub fn substitute(&self, v: Var, value: &Polynomial) -> Polynomial {
        if self.degree_in(v) == 0 {
            return self.clone();
        }
        let coeffs = self.coefficients_in(v);
        // Horner in v
        let mut acc = Polynomial::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    pub fn substitute_linear(&self, v: Var, value: &LinearForm) -> Polynomial {
        self.substitute(v, &value.to_polynomial())
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_all(&self, map: &BTreeMap<Var, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            let mut rest = Vec::new();
            for &(w, e) in &m.0 {
                match map.get(&w) {
                    Some(p) => term = &term * &p.pow(e),
                    None => rest.push((w, e)),
                }
            }
            let rest = Monomial(rest);
            out += &term.mul_monomial(&rest, &Q::one());
        }
        out
    }

    /// Coefficients of `self` as a polynomial in `v`, lowest degree first.
    pub fn coefficients_in(&self, v: Var) -> Vec<Polynomial> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Polynomial::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            out[e].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(v: Var, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let m = Monomial::from_pairs(vec![(v, e as u32)]);
            for (n, a) in &c.terms {
                out.add_term(n.mul(&m), a.clone());
            }
        }
        out
    }

    /// Exact multivariate division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = divisor.leading_term()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(&dm)?;
            let c = rc / &dc;
            for (n, a) in &divisor.terms {
                rem.add_term(n.mul(&m), -(a * &c));
            }
            quot.add_term(m, c);
        }
        Some(quot)
    }

    pub fn eval(&self, point: &dyn Fn(Var) -> Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for &(v, e) in &m.0 {
                t *= point(v).powu(e);
            }
            acc += t;
        }
        acc
    }

    /// Exact evaluation at rational values for every variable in `values`.
    pub fn eval_exact(&self, values: &BTreeMap<Var, Q>) -> Polynomial {
        let map = values.iter().map(|(v, c)| (*v, Polynomial::constant(c.clone()))).collect();
        self.substitute_all(&map)
    }

    /// `Some(form)` when the polynomial has total degree ≤ 1.
    pub fn as_linear(&self) -> Option<LinearForm> {
        let mut f = LinearForm::zero();
        for (m, c) in &self.terms {
            match m.0.as_slice() {
                [] => f = f + LinearForm::constant(c.clone()),
                [(v, 1)] => f = f + LinearForm::term(*v, c.clone()),
                _ => return None,
            }
        }
        Some(f)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Mul<Q> for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Q) -> Polynomial {
        self.scale(&rhs)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Q::one())
    }
}

pub(crate) fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text: monomials in descending graded-lex order joined by ` + `,
/// each written `coeff*var^exp*...` (exponent 1 omitted, constant as bare coefficient).
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            f.write_str(&fmt_q(c))?;
            for &(v, e) in &m.0 {
                if e == 1 {
                    write!(f, "*{v}")?;
                } else {
                    write!(f, "*{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h1() -> Polynomial {
        Polynomial::var(Var::H1)
    }
    fn h2() -> Polynomial {
        Polynomial::var(Var::H2)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_pairs(vec![(Var::Hbar, 1)]);
        let b = Monomial::from_pairs(vec![(Var::H1, 1)]);
        let c = Monomial::from_pairs(vec![(Var::H2, 2)]);
        let d = Monomial::from_pairs(vec![(Var::Hbar, 1), (Var::H2, 1)]);
        assert!(a > b);
        assert!(c > a);
        assert!(d > c);
        assert!(Monomial::one() < b);
    }

    #[test]
    fn display_is_descending() {
        let p = &(&h1() * &h1()) - &(&h2() * &Polynomial::int(3));
        assert_eq!(p.to_string(), "1*h1^2 + -3*h2");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = &(&h1() * &h1()) - &(&h2() * &h2());
        let b = &h1() - &h2();
        assert_eq!(a.div_exact(&b), Some(&h1() + &h2()));
        assert_eq!(a.div_exact(&(&h1() + &Polynomial::one())), None);
    }

    #[test]
    fn substitution_and_derivative() {
        let p = &(&h1() * &h1()) + &h2();
        let q = p.substitute(Var::H1, &(&h2() + &Polynomial::one()));
        assert_eq!(q, &(&(&h2() * &h2()) + &(&h2() * &Polynomial::int(3))) + &Polynomial::one());
        assert_eq!(p.derivative(Var::H1), &h1() * &Polynomial::int(2));
    }
}
