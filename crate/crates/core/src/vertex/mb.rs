//! Iterated residues of the contour-integral form of the Hilbert-scheme vertex.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::gamma_form::hilb_data;
use super::{insertion_eval, selected_fixed_points, selection_label, FamilyConfig, FixedPointSelection, Insertion};
use super::{VertexError, VertexSeries};
use crate::combinat::{min_degree, Stone};
use crate::symbolic::{
    gamma_reduce_parts, gamma_take_residue, FactoredRational, GammaExpression, LinearForm, Polynomial, RationalFunction,
    SymbolicError, Var, Q,
};

const POWER: &str = "z";

fn unknown(i: usize) -> Var {
    Var::S(u16::try_from(i + 1).expect("fewer than 65535 boxes"))
}

/// Integrand times `A_λ`, in the unknowns `s_□`.
fn integrand(family: &FamilyConfig, stones: &[Stone], ins: &Insertion) -> Result<GammaExpression, VertexError> {
    let hd = hilb_data(family, stones)?;
    let hbar = LinearForm::hbar;
    let m = LinearForm::var(Var::Mass);
    let n = stones.len();
    let s: Vec<LinearForm> = (0..n).map(|i| LinearForm::var(unknown(i))).collect();
    let rel = family.weight_relation();
    let mut roots = Vec::with_capacity(n);
    for (st, si) in stones.iter().zip(&s) {
        roots.push(rel.c1(&st.chi)? * 2 - si.clone());
    }
    let two_hbar = RationalFunction::from_linear(&hbar(2));
    let norm = if ins.mass { -(n as i32) } else { -2 * n as i32 };
    let mut e = GammaExpression::new(&insertion_eval(ins, &roots) * &two_hbar.pow(norm)?);
    for (a, si) in hd.a.iter().zip(&s) {
        e.mul_power(POWER, a.clone() - si.clone());
        e.mul_gamma(si.clone(), 1);
        e.mul_gamma(a.clone() + hbar(2), -1);
        if ins.mass {
            e.mul_gamma(si.clone() + m.clone(), -1);
            e.mul_gamma(a.clone() + m.clone() + hbar(2), 1);
        }
        for (h, &sg) in hd.h.iter().zip(&hd.sigma) {
            e.mul_gamma(h.clone() + hbar(sg), 1);
        }
    }
    for i in 0..n {
        for j in 0..n {
            let x = hd.a[i].clone() - hd.a[j].clone();
            e.mul_gamma(x.clone() + hbar(2), 1);
            for (h, &sg) in hd.h.iter().zip(&hd.sigma) {
                e.mul_gamma(x.clone() + h.clone() - hbar(sg) + hbar(2), -1);
            }
            if i == j {
                continue;
            }
            let ds = s[i].clone() - s[j].clone();
            for (h, &sg) in hd.h.iter().zip(&hd.sigma) {
                e.mul_gamma(ds.clone() + h.clone() + hbar(sg), 1);
            }
            e.mul_gamma(ds, -1);
        }
    }
    Ok(e)
}

/// The pole family of `v`: the positive Γ-factor `Γ(v + c)` that becomes a pure
/// multiple of `ħ` at `v = a`. Returns `c`.
fn pole_family(e: &GammaExpression, v: Var, a: &LinearForm) -> Result<LinearForm, VertexError> {
    let mut found: Option<LinearForm> = None;
    for (arg, exp) in e.gammas() {
        if exp <= 0 || !arg.contains(v) || arg.substitute(v, a).as_hbar_multiple().is_none() {
            continue;
        }
        if arg.coeff(v) != Q::from_integer(1.into()) || found.is_some() {
            return Err(VertexError::Unsupported(format!("ambiguous pole family for {v}")));
        }
        found = Some(arg.clone() - LinearForm::var(v));
    }
    found.ok_or(VertexError::Symbolic(SymbolicError::NoPole(v)))
}

struct Residues<'a> {
    stones: &'a [Stone],
    a: Vec<LinearForm>,
    max_degree: i64,
    mass: bool,
    out: BTreeMap<i64, Vec<(Polynomial, FactoredRational)>>,
}

impl Residues<'_> {
    fn run(&mut self, e: GammaExpression, i: usize, done: i64) -> Result<(), VertexError> {
        if i == self.stones.len() {
            let total = e.power_exponent(POWER)?;
            let total = total.to_integer().to_i64().filter(|_| total.is_integer()).ok_or_else(|| {
                VertexError::Unsupported(format!("non-integral degree {total}"))
            })?;
            let (mut pre, value) = gamma_reduce_parts(&e)?;
            if !self.mass {
                pre = &pre * &RationalFunction::from_linear(&LinearForm::hbar(2)).pow(-total as i32)?;
            }
            let den = FactoredRational::from_monomial(pre.denominator())
                .ok_or_else(|| VertexError::Unsupported(format!("prefactor {pre}")))?;
            let term = (pre.numerator().clone(), value.mul(&den.inv()?));
            self.out.entry(total).or_default().push(term);
            return Ok(());
        }
        let v = unknown(i);
        let c = pole_family(&e, v, &self.a[i])?;
        let remaining: i64 = self.stones[i + 1..].iter().map(|s| s.pairing).sum();
        // at v = −c − 2kħ the box has degree d = (a + c)/2ħ + k
        let base = (self.a[i].clone() + c.clone())
            .as_hbar_multiple()
            .and_then(|q| (q / Q::from_integer(2.into())).to_integer().to_i64())
            .expect("pole family is pure ħ at the box weight");
        for k in 0.. {
            let d = base + k;
            if d < self.stones[i].pairing {
                continue;
            }
            if done + d + remaining > self.max_degree {
                break;
            }
            let pole = -c.clone() - LinearForm::hbar(2 * k);
            match gamma_take_residue(&e, v, &pole) {
                Ok(r) => self.run(r, i + 1, done + d)?,
                // a removable singularity carries no residue
                Err(SymbolicError::ZeroAtPole(_)) => {}
                Err(err) => return Err(err.into()),
            }
        }
        Ok(())
    }
}

/// The vertex series by iterated residues of its contour-integral form.
///
/// Supported for Hilbert-scheme fixed points with at most three boxes, where
/// every box has a unique predecessor.
pub fn mb_series(
    family: &FamilyConfig,
    sel: &FixedPointSelection,
    ins: &Insertion,
    max_degree: i64,
) -> Result<VertexSeries, VertexError> {
    family.validate()?;
    let fps = selected_fixed_points(family, sel)?;
    let mut grouped: BTreeMap<i64, Vec<(Polynomial, FactoredRational)>> = BTreeMap::new();
    let mut lowest = i64::MAX;
    for fp in &fps {
        let stones = family.stones(fp)?;
        if stones.len() > 3 {
            return Err(VertexError::Unsupported("Mellin–Barnes residues beyond three boxes".into()));
        }
        let min = min_degree(&stones);
        lowest = lowest.min(min);
        let hd = hilb_data(family, &stones)?;
        let e = integrand(family, &stones, ins)?;
        let mut r = Residues { stones: &stones, a: hd.a, max_degree, mass: ins.mass, out: BTreeMap::new() };
        if min <= max_degree {
            r.run(e, 0, 0)?;
        }
        for (d, vals) in r.out {
            grouped.entry(d).or_default().extend(vals);
        }
    }
    let mut coefficients = BTreeMap::new();
    for (d, vals) in grouped {
        let c = FactoredRational::sum_weighted(&vals);
        if !c.is_zero() {
            coefficients.insert(vec![d], c);
        }
    }
    Ok(VertexSeries {
        family: family.clone(),
        fixed_point: selection_label(&fps, sel),
        min_degree: if lowest == i64::MAX { 0 } else { lowest },
        max_degree,
        coefficients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::series;

    #[test]
    fn one_box_matches_series() {
        let f = FamilyConfig::Hilb { n: 1, sigma: [1, 1, 0] };
        let sel = FixedPointSelection::All;
        let one = Insertion::one();
        assert_eq!(mb_series(&f, &sel, &one, 3).unwrap(), series(&f, &sel, &one, 3).unwrap());
        assert!(mb_series(&f, &sel, &one, -1).unwrap().is_empty());
    }

    #[test]
    fn two_boxes_match_series() {
        let one = Insertion::one();
        for sigma in [[1, 1, 0], [2, -1, 1]] {
            let f = FamilyConfig::Hilb { n: 2, sigma };
            for i in 0..3 {
                let sel = FixedPointSelection::Index(i);
                let s = series(&f, &sel, &one, 2).unwrap();
                let max = s.min_degree + 2;
                let s = series(&f, &sel, &one, max).unwrap();
                assert_eq!(mb_series(&f, &sel, &one, max).unwrap(), s, "sigma {sigma:?} fp {i}");
            }
        }
    }

    #[test]
    fn three_boxes_with_insertions() {
        let f = FamilyConfig::Hilb { n: 3, sigma: [0, 3, -1] };
        let inss: Vec<Insertion> = vec!["p1^2 - p2".parse().unwrap(), Insertion::one().with_mass(true)];
        for ins in &inss {
            for i in 0..f.fixed_points().len() {
                let sel = FixedPointSelection::Index(i);
                let max = series(&f, &sel, ins, 0).unwrap().min_degree + 1;
                assert_eq!(mb_series(&f, &sel, ins, max).unwrap(), series(&f, &sel, ins, max).unwrap(), "{ins} fp {i}");
            }
        }
    }
}
