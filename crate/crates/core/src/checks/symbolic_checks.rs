use std::collections::BTreeMap;

use num_complex::Complex64;

use super::Tally;
use crate::ktheory::{chi_p1, euler, Character, KClass, LineData, WeightRelation};
use crate::symbolic::{gamma_factor, gamma_residue, parse_ratfun, LinearForm, RationalFunction, Var};

fn two_hbar() -> RationalFunction {
    RationalFunction::from_linear(&LinearForm::hbar(2))
}

/// `(2ħ)^d Γ(u)/Γ(u−2dħ)` by stepping the quasi-periodicity `d` times.
fn quasi_periodic(u: &RationalFunction, d: i64) -> RationalFunction {
    let th = two_hbar();
    let mut ratio = RationalFunction::one();
    if d >= 0 {
        // Γ(z) = (z−2ħ)/(2ħ)·Γ(z−2ħ)
        let mut z = u.clone();
        for _ in 0..d {
            z = &z - &th;
            ratio = &ratio * &z.div(&th).unwrap();
        }
    } else {
        // Γ(z) = 2ħ/z·Γ(z+2ħ)
        let mut z = u.clone();
        for _ in 0..-d {
            ratio = &ratio * &th.div(&z).unwrap();
            z = &z + &th;
        }
    }
    &ratio * &th.pow(d as i32).unwrap()
}

fn tgamma_ratio(u: f64, d: i64, hbar: f64) -> f64 {
    let th = 2.0 * hbar;
    th.powi(d as i32) * libm::tgamma(u / th) / libm::tgamma((u - d as f64 * th) / th)
}

pub(crate) fn gamma_calculus(t: &mut Tally) {
    let rel = WeightRelation::three_torus();
    let chars = [Character::flavor(&[1, 3, 0]), Character::flavor(&[2, -1, 0]), Character::flavor(&[0, 1, 1])];
    let (h1, h2, hb) = (1.3, 0.45, 0.37);
    let point = |v: Var| {
        Complex64::new(
            match v {
                Var::H1 => h1,
                Var::H2 => h2,
                _ => hb,
            },
            0.0,
        )
    };
    for a in &chars {
        let u = rel.c1(a).unwrap();
        let ur = RationalFunction::from_linear(&u);
        for d in -5..=5 {
            let got = gamma_factor(&u, d);
            t.check(got == quasi_periodic(&ur, d), || format!("gamma_factor({u}, {d}) = {got}"));
            let mut k = chi_p1(&LineData::new(d, d, a.clone()));
            k.add_term(a.clone(), -1);
            let e = euler(&k, &rel).map(|v| v.to_ratfun());
            t.check(e.as_ref() == Ok(&got), || format!("euler(chi(O({d})q^{d}a) - a) = {e:?} for a = {a:?}"));
            let x = got.eval(&point);
            let uv = u.eval(&point);
            let want = tgamma_ratio(uv.re, d, hb);
            t.check((x.re - want).abs() <= 1e-9 * want.abs().max(1.0), || {
                format!("gamma_factor({u}, {d}) = {} numerically, Γ ratio {want}", x.re)
            });
        }
    }
    for d in 0..=6 {
        let got = gamma_residue(d).unwrap();
        let fact: i64 = (1..=d).product();
        let sign = if d % 2 == 0 { "" } else { "-" };
        let closed = parse_ratfun(&format!("{sign}2*hbar/{fact}")).unwrap();
        t.check(got == closed, || format!("gamma_residue({d}) = {got}"));
        // lim (u+2dħ)·(2ħ)^{d+1}/(u(u+2ħ)…(u+2dħ)) at u = −2dħ
        let mut den = RationalFunction::one();
        for j in 0..d {
            den = &den * &RationalFunction::from_linear(&LinearForm::hbar(2 * (j - d)));
        }
        let limit = two_hbar().pow(d as i32 + 1).unwrap().div(&den).unwrap();
        t.check(got == limit, || format!("gamma_residue({d}) vs limit {limit}"));
        let mut k = chi_p1(&LineData::new(d, d, Character::trivial()));
        k.add_term(Character::trivial(), -1);
        let e = euler(&k, &WeightRelation::three_torus()).unwrap().to_ratfun();
        let via_euler = two_hbar().pow(d as i32 + 1).unwrap().div(&e).unwrap();
        t.check(got == via_euler, || format!("gamma_residue({d}) vs (2ħ)^(d+1)/euler = {via_euler}"));
    }
}

fn q_exponents(k: &KClass) -> BTreeMap<i64, i64> {
    k.terms().map(|(c, m)| (c.q, m)).collect()
}

pub(crate) fn chi_table(t: &mut Tally) {
    for d in -5i64..=5 {
        let k = chi_p1(&LineData::new(d, d, Character::trivial()));
        let got = q_exponents(&k);
        let row: BTreeMap<i64, i64> = if d >= 0 {
            (0..=d).map(|j| (2 * j, 1)).collect()
        } else if d == -1 {
            BTreeMap::new()
        } else {
            (1..=-d - 1).map(|j| (-2 * j, -1)).collect()
        };
        t.check(got == row, || format!("chi(O({d})q^{d}) = {got:?}, display row {row:?}"));
        t.check(k.terms().all(|(c, _)| c.flavor.iter().all(|&e| e == 0)), || format!("flavor part at d={d}"));
        // χ·(1 − q²) = 1 − q^{2d+2}
        let mut prod: BTreeMap<i64, i64> = BTreeMap::new();
        for (&e, &m) in &got {
            *prod.entry(e).or_default() += m;
            *prod.entry(e + 2).or_default() -= m;
        }
        *prod.entry(0).or_default() -= 1;
        *prod.entry(2 * d + 2).or_default() += 1;
        prod.retain(|_, m| *m != 0);
        t.check(prod.is_empty(), || format!("chi(O({d})q^{d})·(1-q^2) differs from 1-q^(2d+2) by {prod:?}"));
    }
}
