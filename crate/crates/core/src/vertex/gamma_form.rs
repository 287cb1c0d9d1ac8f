use super::{descendent_roots, insertion_eval, FamilyConfig, Insertion, VertexError};
use crate::combinat::{DegreeAssignment, FixedPoint, Stone};
use crate::symbolic::{gamma_reduce, GammaExpression, LinearForm, RationalFunction, Var};

pub(crate) struct HilbData {
    pub sigma: [i64; 3],
    pub h: Vec<LinearForm>,
    /// `a_□ = c₁(χ_□) + ⟨σ,□⟩ħ`.
    pub a: Vec<LinearForm>,
}

pub(crate) fn hilb_data(family: &FamilyConfig, stones: &[Stone]) -> Result<HilbData, VertexError> {
    let FamilyConfig::Hilb { sigma, .. } = family else {
        return Err(VertexError::HilbOnly("the Γ-form"));
    };
    let rel = family.weight_relation();
    let a = stones
        .iter()
        .map(|s| Ok(rel.c1(&s.chi)? + LinearForm::hbar(s.pairing)))
        .collect::<Result<_, VertexError>>()?;
    Ok(HilbData { sigma: *sigma, h: rel.basis().to_vec(), a })
}

fn two_hbar_pow(e: i64) -> RationalFunction {
    RationalFunction::from_linear(&LinearForm::hbar(2)).pow(e as i32).expect("2ħ is nonzero")
}

/// The coefficient rewritten as a ratio of `Γ_{2ħ}` functions and reduced exactly.
pub fn coefficient_gamma_form(
    family: &FamilyConfig,
    fp: &FixedPoint,
    assign: &DegreeAssignment,
    ins: &Insertion,
) -> Result<RationalFunction, VertexError> {
    let stones = family.stones(fp)?;
    let hd = hilb_data(family, &stones)?;
    let d = assign.d(&stones);
    let n = stones.len() as i64;
    let total: i64 = d.iter().sum();
    let hbar = LinearForm::hbar;
    let tau = insertion_eval(ins, &descendent_roots(family, &stones, assign)?);
    let norm = if ins.mass { RationalFunction::one() } else { two_hbar_pow(-total - n) };
    let mut e = GammaExpression::new(&tau * &norm);
    let m = LinearForm::var(Var::Mass);
    for (a, &db) in hd.a.iter().zip(&d) {
        e.mul_gamma(a.clone() - hbar(2 * db), 1);
        e.mul_gamma(a.clone() + hbar(2), -1);
        if ins.mass {
            e.mul_gamma(a.clone() - hbar(2 * db) + m.clone(), -1);
            e.mul_gamma(a.clone() + hbar(2) + m.clone(), 1);
        }
    }
    for (a1, d1) in hd.a.iter().zip(&d) {
        for (a2, d2) in hd.a.iter().zip(&d) {
            let x = a1.clone() - a2.clone();
            let shift = hbar(2 * (d1 - d2));
            for (h, &s) in hd.h.iter().zip(&hd.sigma) {
                e.mul_gamma(x.clone() - shift.clone() + h.clone() + hbar(s), 1);
                e.mul_gamma(x.clone() + h.clone() - hbar(s) + hbar(2), -1);
            }
            e.mul_gamma(x.clone() - shift, -1);
            e.mul_gamma(x + hbar(2), 1);
        }
    }
    Ok(gamma_reduce(&e)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::PlanePartition;
    use crate::symbolic::parse_ratfun;
    use crate::vertex::coefficient;

    #[test]
    fn one_box() {
        let f = FamilyConfig::Hilb { n: 1, sigma: [1, 1, 0] };
        let fp = FixedPoint::Plane(PlanePartition::new(vec![[0, 0, 0]]).unwrap());
        let one = Insertion::one();
        let g0 = coefficient_gamma_form(&f, &fp, &DegreeAssignment { z: vec![0] }, &one).unwrap();
        assert_eq!(g0, parse_ratfun("-1 / h1 + h2").unwrap());
        let g1 = coefficient_gamma_form(&f, &fp, &DegreeAssignment { z: vec![1] }, &one).unwrap();
        assert_eq!(g1, parse_ratfun("1 / 2*hbar*(h1 + h2)").unwrap());
    }

    #[test]
    fn agrees_with_euler_form_small() {
        let one = Insertion::one();
        for sigma in [[1, 1, 0], [2, 1, -1], [0, 0, 2]] {
            let f = FamilyConfig::Hilb { n: 2, sigma };
            for fp in f.fixed_points() {
                let stones = f.stones(&fp).unwrap();
                for a in crate::combinat::enum_degree_assignments_up_to(&stones, 2) {
                    let e = coefficient(&f, &fp, &a, &one).unwrap();
                    let g = coefficient_gamma_form(&f, &fp, &a, &one).unwrap();
                    assert_eq!(e, g, "{fp} {:?} sigma {sigma:?}", a.z);
                }
            }
        }
    }

    #[test]
    fn agrees_with_insertions() {
        let inss: Vec<Insertion> = vec!["p1".parse().unwrap(), "p1^2 - p2".parse().unwrap(), Insertion::one().with_mass(true)];
        let f = FamilyConfig::Hilb { n: 3, sigma: [3, -2, 1] };
        for ins in &inss {
            for fp in f.fixed_points() {
                let stones = f.stones(&fp).unwrap();
                for a in crate::combinat::enum_degree_assignments_up_to(&stones, 1) {
                    let e = coefficient(&f, &fp, &a, ins).unwrap();
                    let g = coefficient_gamma_form(&f, &fp, &a, ins).unwrap();
                    assert_eq!(e, g, "{fp} {:?} {ins}", a.z);
                }
            }
        }
    }
}
