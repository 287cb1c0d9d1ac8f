//! Saddle-point systems written out in closed form.

use super::{SaddleEquation, SaddleSystem};
use crate::symbolic::{LinearForm, Polynomial, Var};

fn lf(v: Var) -> LinearForm {
    LinearForm::var(v)
}

fn prod<I: IntoIterator<Item = LinearForm>>(it: I) -> Polynomial {
    it.into_iter().fold(Polynomial::one(), |acc, f| &acc * &f.to_polynomial())
}

fn hbars() -> [LinearForm; 3] {
    let h1 = lf(Var::H1);
    let h2 = lf(Var::H2);
    [h1.clone(), h2.clone(), -(h1 + h2)]
}

/// `z̄ = (1/sᵢ) ∏_{s=1..3} ∏_{j≠i} (sᵢ−sⱼ−ħ_s)/(sᵢ−sⱼ+ħ_s)`, or with the mass
/// `z = ((sᵢ+m)/sᵢ) ∏ …`.
pub fn saddle_hilb(n: usize, mass: bool) -> SaddleSystem {
    let s = |i: usize| lf(Var::S(i as u16));
    let h = hbars();
    let mut equations = Vec::with_capacity(n);
    for i in 1..=n {
        let others: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
        let plus = prod(others.iter().flat_map(|&j| h.iter().map(move |hs| s(i) - s(j) + hs.clone())));
        let minus = prod(others.iter().flat_map(|&j| h.iter().map(move |hs| s(i) - s(j) - hs.clone())));
        let lhs = &s(i).to_polynomial() * &plus;
        let (label, rhs) = if mass {
            ("z", &(s(i) + lf(Var::Mass)).to_polynomial() * &minus)
        } else {
            ("zbar", minus)
        };
        equations.push(SaddleEquation::new(Var::S(i as u16), label, lhs, rhs));
    }
    let name = if mass { format!("hilb n={n} mass") } else { format!("hilb n={n}") };
    SaddleSystem { name, equations }
}

/// The two families of conifold equations in `s⁰_{1..v0}`, `s¹_{1..v1}`:
///
/// `z̄₀ = ∏_{i=1..m}(s⁰ⱼ+(1−i)ħ₃) · ∏ᵢ(s⁰ⱼ−s¹ᵢ−ħ₃)(s⁰ⱼ−s¹ᵢ) / ∏ᵢ(s⁰ⱼ−s¹ᵢ+ħ₁)(s⁰ⱼ−s¹ᵢ+ħ₂)`,
/// `z̄₁ = 1/∏_{i=1..m+1}(s¹ⱼ+(1−i)ħ₃) · ∏ᵢ(s¹ⱼ−s⁰ᵢ−ħ₁)(s¹ⱼ−s⁰ᵢ−ħ₂) / ∏ᵢ(s¹ⱼ−s⁰ᵢ+ħ₃)(s¹ⱼ−s⁰ᵢ)`.
pub fn saddle_conifold(m: u32, v0: usize, v1: usize) -> SaddleSystem {
    let s0 = |i: usize| lf(Var::S0(i as u16));
    let s1 = |i: usize| lf(Var::S1(i as u16));
    let [h1, h2, h3] = hbars();
    let mut equations = Vec::with_capacity(v0 + v1);
    for j in 1..=v0 {
        let framing = prod((1..=m as i64).map(|i| s0(j) + h3.clone() * (1 - i)));
        let num = prod((1..=v1).flat_map(|i| [s0(j) - s1(i) - h3.clone(), s0(j) - s1(i)]));
        let den = prod((1..=v1).flat_map(|i| [s0(j) - s1(i) + h1.clone(), s0(j) - s1(i) + h2.clone()]));
        equations.push(SaddleEquation::new(Var::S0(j as u16), "zbar0", den, &framing * &num));
    }
    for j in 1..=v1 {
        let framing = prod((1..=m as i64 + 1).map(|i| s1(j) + h3.clone() * (1 - i)));
        let num = prod((1..=v0).flat_map(|i| [s1(j) - s0(i) - h1.clone(), s1(j) - s0(i) - h2.clone()]));
        let den = prod((1..=v0).flat_map(|i| [s1(j) - s0(i) + h3.clone(), s1(j) - s0(i)]));
        equations.push(SaddleEquation::new(Var::S1(j as u16), "zbar1", &framing * &den, num));
    }
    SaddleSystem { name: format!("conifold m={m} v=({v0},{v1})"), equations }
}

/// `∏_{j=1..N} (sᵢ−aⱼ)/(aⱼ−sᵢ+kħ) = z ∏_{j≠i} (sᵢ−sⱼ+ħ)/(sᵢ−sⱼ−ħ)` with `ħ = h2`.
pub fn saddle_spinchain(framings: usize, n: usize, k: u32) -> SaddleSystem {
    spin_chain(framings, n, LinearForm::int_term(Var::H2, k as i64), format!("spinchain N={framings} n={n} k={k}"))
}

/// The spin chain at `k = 1`: `∏ⱼ (sᵢ−aⱼ)/(aⱼ−sᵢ+ħ) = z ∏_{j≠i} (sᵢ−sⱼ+ħ)/(sᵢ−sⱼ−ħ)`.
pub fn saddle_spinchain_k1(framings: usize, n: usize) -> SaddleSystem {
    spin_chain(framings, n, lf(Var::H2), format!("spinchain N={framings} n={n} k=1"))
}

fn spin_chain(framings: usize, n: usize, k_hbar: LinearForm, name: String) -> SaddleSystem {
    let s = |i: usize| lf(Var::S(i as u16));
    let a = |j: usize| lf(Var::A(j as u16));
    let hbar = lf(Var::H2);
    let mut equations = Vec::with_capacity(n);
    for i in 1..=n {
        let others: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
        let lhs = &prod(others.iter().map(|&j| s(i) - s(j) + hbar.clone()))
            * &prod((1..=framings).map(|j| a(j) - s(i) + k_hbar.clone()));
        let rhs = &prod((1..=framings).map(|j| s(i) - a(j)))
            * &prod(others.iter().map(|&j| s(i) - s(j) - hbar.clone()));
        equations.push(SaddleEquation::new(Var::S(i as u16), "z", lhs, rhs));
    }
    SaddleSystem { name, equations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bethe::{compare_systems, parse_equation};

    fn check(sys: &SaddleSystem, lines: &[(Var, &str)]) {
        let expect = SaddleSystem {
            name: String::new(),
            equations: lines.iter().map(|(v, s)| parse_equation(*v, s).unwrap()).collect(),
        };
        assert!(compare_systems(sys, &expect).unwrap(), "{sys}");
    }

    #[test]
    fn hilb_examples() {
        check(&saddle_hilb(1, false), &[(Var::S(1), "zbar * (s1) = 1")]);
        check(&saddle_hilb(1, true), &[(Var::S(1), "z * (s1) = s1 + m")]);
        let e = &saddle_hilb(2, false).equations[0];
        let expect =
            parse_equation(Var::S(1), "zbar * (s1*(s1-s2+h1)*(s1-s2+h2)*(s1-s2+h3)) = (s1-s2-h1)*(s1-s2-h2)*(s1-s2-h3)")
                .unwrap();
        assert_eq!(*e, expect);
    }

    #[test]
    fn conifold_examples() {
        check(&saddle_conifold(2, 0, 1), &[(Var::S1(1), "zbar1 * (s1_1*(s1_1 - h3)*(s1_1 - 2*h3)) = 1")]);
        check(&saddle_conifold(2, 1, 0), &[(Var::S0(1), "zbar0 * (1) = s0_1*(s0_1 - h3)")]);
    }

    #[test]
    fn spin_examples() {
        check(&saddle_spinchain(2, 1, 1), &[(Var::S(1), "z * ((a1 - s1 + h2)*(a2 - s1 + h2)) = (s1 - a1)*(s1 - a2)")]);
        check(&saddle_spinchain(1, 1, 3), &[(Var::S(1), "z * (a1 - s1 + 3*h2) = s1 - a1")]);
        for (big_n, n) in [(1, 1), (2, 2), (3, 2)] {
            assert!(compare_systems(&saddle_spinchain(big_n, n, 1), &saddle_spinchain_k1(big_n, n)).unwrap());
        }
    }
}
