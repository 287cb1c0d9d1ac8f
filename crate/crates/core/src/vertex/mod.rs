//! Vertex functions by torus localization on the quasimap moduli.
//!
//! A fixed point is a decorated stone configuration; each decoration contributes
//! `τ(ρ) · e(−√T^vir)` to the coefficient of its Novikov degree.

mod family;
mod gamma_form;
mod insertion;
mod mb;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinat::{enum_degree_assignments_up_to, min_degree, CombinatError, DegreeAssignment, FixedPoint, Stone};
use crate::ktheory::{chi_p1, euler, euler_shifted, sqrt_tangent, KClass, KError, LineData};
use crate::symbolic::{FactoredRational, LinearForm, Polynomial, RationalFunction, SymbolicError, Var};

pub use family::FamilyConfig;
pub use gamma_form::coefficient_gamma_form;
pub use insertion::{insertion_eval, Insertion};
pub use mb::mb_series;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VertexError {
    #[error("invalid family: {0}")]
    InvalidConfig(String),
    #[error("fixed point is not reduced: zero weight of multiplicity {0} in the tangent space")]
    NonReducedFixedPoint(i64),
    #[error("{0} is only available for the Hilbert scheme")]
    HilbOnly(&'static str),
    #[error("fixed point index {0} out of range ({1} fixed points)")]
    FixedPointIndex(usize, usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Combinat(#[from] CombinatError),
    #[error("{0}")]
    K(KError),
}

impl From<KError> for VertexError {
    fn from(e: KError) -> Self {
        match e {
            KError::PoleAtZeroWeight(m) => VertexError::NonReducedFixedPoint(m),
            KError::InvalidRCharge(s) => VertexError::InvalidConfig(s),
            other => VertexError::K(other),
        }
    }
}

/// Which fixed points a series runs over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixedPointSelection {
    All,
    Index(usize),
}

/// A truncated series `Σ_d c_d z^d`; conifold keys are `(d₀, d₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSeries {
    pub family: FamilyConfig,
    /// Label of the fixed point, or `None` for the sum over all fixed points.
    pub fixed_point: Option<String>,
    pub min_degree: i64,
    /// Bound on the total degree.
    pub max_degree: i64,
    pub coefficients: BTreeMap<Vec<i64>, RationalFunction>,
}

impl VertexSeries {
    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn get(&self, key: &[i64]) -> RationalFunction {
        self.coefficients.get(key).cloned().unwrap_or_else(RationalFunction::zero)
    }
}

/// `ℒ_□ = O(d_□) q^{d_□ − ⟨σ,□⟩} χ_□` for every stone.
pub fn fixed_line_bundles(stones: &[Stone], assign: &DegreeAssignment) -> Vec<LineData> {
    stones
        .iter()
        .zip(assign.d(stones))
        .zip(&assign.z)
        .map(|((s, d), &z)| LineData::new(d, z, s.chi.clone()))
        .collect()
}

/// `ρ_□ = c₁(χ_□) − ⟨σ,□⟩ħ + 2d_□ħ`, the Chern roots of `𝒱` at `0 ∈ ℙ¹`.
pub fn descendent_roots(
    family: &FamilyConfig,
    stones: &[Stone],
    assign: &DegreeAssignment,
) -> Result<Vec<LinearForm>, VertexError> {
    let rel = family.weight_relation();
    stones
        .iter()
        .zip(assign.d(stones))
        .map(|(s, d)| Ok(rel.c1(&s.chi)? + LinearForm::hbar(2 * d - s.pairing)))
        .collect()
}

fn node_lines(family: &FamilyConfig, stones: &[Stone], lines: Vec<LineData>) -> Vec<Vec<LineData>> {
    let mut out = vec![Vec::new(); family.nodes()];
    for (s, l) in stones.iter().zip(lines) {
        out[s.node].push(l);
    }
    out
}

/// `√T^vir` of the quasimap space at a decorated fixed point.
pub fn tangent_class(family: &FamilyConfig, stones: &[Stone], assign: &DegreeAssignment) -> Result<KClass, VertexError> {
    let r = family.rcharge()?;
    let lines = node_lines(family, stones, fixed_line_bundles(stones, assign));
    Ok(sqrt_tangent(&lines, &family.matter(), &r))
}

/// The coefficient split as `(numerator of τ(ρ), rest)`; the full value is
/// `weight · rest / denominator(τ)`.
fn coefficient_parts(
    family: &FamilyConfig,
    stones: &[Stone],
    assign: &DegreeAssignment,
    ins: &Insertion,
) -> Result<(Polynomial, FactoredRational), VertexError> {
    if ins.mass && !matches!(family, FamilyConfig::Hilb { .. }) {
        return Err(VertexError::HilbOnly("the mass insertion"));
    }
    let rel = family.weight_relation();
    let weight = ins.eval_numerator(&descendent_roots(family, stones, assign)?);
    if weight.is_zero() {
        return Ok((weight, FactoredRational::zero()));
    }
    let mut rest = euler(&tangent_class(family, stones, assign)?.neg(), &rel)?.into_factored();
    if ins.mass {
        let mut v = KClass::zero();
        for l in fixed_line_bundles(stones, assign) {
            v.add(&chi_p1(&l));
        }
        rest = rest.mul(&euler_shifted(&v, &rel, &LinearForm::var(Var::Mass))?.into_factored());
    }
    Ok((weight, rest))
}

/// The contribution of one decorated fixed point.
pub fn coefficient(
    family: &FamilyConfig,
    fp: &FixedPoint,
    assign: &DegreeAssignment,
    ins: &Insertion,
) -> Result<RationalFunction, VertexError> {
    let stones = family.stones(fp)?;
    if !assign.is_valid(&stones) {
        return Err(VertexError::Combinat(CombinatError::InvalidFixedPoint(format!(
            "decoration {:?} is not monotone on {fp}",
            assign.z
        ))));
    }
    let (w, rest) = coefficient_parts(family, &stones, assign, ins)?;
    Ok((&RationalFunction::from_poly(w) * &rest.to_ratfun()).div(&RationalFunction::from_poly(
        ins.tau().denominator().clone(),
    ))?)
}

pub(crate) fn selected_fixed_points(
    family: &FamilyConfig,
    sel: &FixedPointSelection,
) -> Result<Vec<FixedPoint>, VertexError> {
    let all = family.fixed_points();
    match sel {
        FixedPointSelection::All => Ok(all),
        FixedPointSelection::Index(i) => {
            all.get(*i).cloned().map(|f| vec![f]).ok_or(VertexError::FixedPointIndex(*i, all.len()))
        }
    }
}

pub(crate) fn selection_label(fps: &[FixedPoint], sel: &FixedPointSelection) -> Option<String> {
    match sel {
        FixedPointSelection::All => None,
        FixedPointSelection::Index(_) => fps.first().map(|f| f.to_string()),
    }
}

/// The vertex series truncated at total degree `max_degree`.
pub fn series(
    family: &FamilyConfig,
    sel: &FixedPointSelection,
    ins: &Insertion,
    max_degree: i64,
) -> Result<VertexSeries, VertexError> {
    family.validate()?;
    if ins.mass && !matches!(family, FamilyConfig::Hilb { .. }) {
        return Err(VertexError::HilbOnly("the mass insertion"));
    }
    let fps = selected_fixed_points(family, sel)?;
    let mut jobs: Vec<(usize, DegreeAssignment)> = Vec::new();
    let mut all_stones = Vec::with_capacity(fps.len());
    let mut lowest = i64::MAX;
    for (i, fp) in fps.iter().enumerate() {
        let stones = family.stones(fp)?;
        let min = min_degree(&stones);
        lowest = lowest.min(min);
        for a in enum_degree_assignments_up_to(&stones, max_degree - min) {
            jobs.push((i, a));
        }
        all_stones.push(stones);
    }
    let terms: Vec<(Vec<i64>, Polynomial, FactoredRational)> = jobs
        .par_iter()
        .map(|(i, a)| {
            let stones = &all_stones[*i];
            let (w, rest) = coefficient_parts(family, stones, a, ins)?;
            Ok((family.degree_key(stones, a), w, rest))
        })
        .collect::<Result<_, VertexError>>()?;
    let mut grouped: BTreeMap<Vec<i64>, Vec<(Polynomial, FactoredRational)>> = BTreeMap::new();
    for (key, w, rest) in terms {
        grouped.entry(key).or_default().push((w, rest));
    }
    let den = RationalFunction::from_poly(ins.tau().denominator().clone());
    let mut coefficients = BTreeMap::new();
    for (key, group) in grouped {
        let c = FactoredRational::sum_weighted(&group).div(&den)?;
        if !c.is_zero() {
            coefficients.insert(key, c);
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
    use crate::combinat::{build_stones, PlanePartition};
    use crate::ktheory::Character;
    use crate::symbolic::parse_ratfun;

    fn hilb(n: usize, sigma: [i64; 3]) -> FamilyConfig {
        FamilyConfig::Hilb { n, sigma }
    }

    fn point(boxes: &[[u32; 3]]) -> FixedPoint {
        FixedPoint::Plane(PlanePartition::new(boxes.to_vec()).unwrap())
    }

    #[test]
    fn line_bundle_examples() {
        let f = hilb(2, [1, 1, 0]);
        let fp = point(&[[0, 0, 0], [1, 0, 0]]);
        let stones = f.stones(&fp).unwrap();
        let l = fixed_line_bundles(&stones, &DegreeAssignment::zero(2));
        assert_eq!(l[0], LineData::trivial());
        assert_eq!(l[1], LineData::new(1, 0, Character::basis(0).inv()));
        let one = f.stones(&point(&[[0, 0, 0]])).unwrap();
        assert_eq!(fixed_line_bundles(&one, &DegreeAssignment { z: vec![3] })[0], LineData::new(3, 3, Character::trivial()));
    }

    #[test]
    fn root_examples() {
        let f = hilb(2, [1, 1, 0]);
        let stones = f.stones(&point(&[[0, 0, 0], [1, 0, 0]])).unwrap();
        let roots = descendent_roots(&f, &stones, &DegreeAssignment { z: vec![0, 0] }).unwrap();
        assert!(roots[0].is_zero());
        assert_eq!(roots[1].to_string(), parse_ratfun("-h1 + hbar").unwrap().numerator().as_linear().unwrap().to_string());
        let one = f.stones(&point(&[[0, 0, 0]])).unwrap();
        let r = descendent_roots(&f, &one, &DegreeAssignment { z: vec![2] }).unwrap();
        assert_eq!(r[0], LinearForm::hbar(4));
    }

    #[test]
    fn one_box_coefficients() {
        let f = hilb(1, [1, 1, 0]);
        let fp = point(&[[0, 0, 0]]);
        let one = Insertion::one();
        let c0 = coefficient(&f, &fp, &DegreeAssignment { z: vec![0] }, &one).unwrap();
        assert_eq!(c0, parse_ratfun("-1 / h1 + h2").unwrap());
        let c1 = coefficient(&f, &fp, &DegreeAssignment { z: vec![1] }, &one).unwrap();
        assert_eq!(c1, parse_ratfun("1 / 2*hbar*(h1 + h2)").unwrap());
        let zero = Insertion::from_ratfun(RationalFunction::zero()).unwrap();
        assert!(coefficient(&f, &fp, &DegreeAssignment { z: vec![1] }, &zero).unwrap().is_zero());
    }

    #[test]
    fn one_box_series() {
        let f = hilb(1, [1, 1, 0]);
        let s = series(&f, &FixedPointSelection::All, &Insertion::one(), 1).unwrap();
        assert_eq!(s.coefficients.len(), 2);
        assert_eq!(s.get(&[0]), parse_ratfun("-1 / h1 + h2").unwrap());
        assert_eq!(s.get(&[1]), parse_ratfun("1 / 2*hbar*(h1 + h2)").unwrap());
        assert!(series(&f, &FixedPointSelection::All, &Insertion::one(), -1).unwrap().is_empty());
    }

    #[test]
    fn lowest_term_is_zero_decoration() {
        let f = hilb(3, [2, 1, -1]);
        for fp in f.fixed_points() {
            let stones = build_stones(f.shape(), &fp, &f.rcharge().unwrap()).unwrap();
            let idx = f.fixed_points().iter().position(|x| *x == fp).unwrap();
            let min = min_degree(&stones);
            let s = series(&f, &FixedPointSelection::Index(idx), &Insertion::one(), min).unwrap();
            let c = coefficient(&f, &fp, &DegreeAssignment::zero(stones.len()), &Insertion::one()).unwrap();
            assert_eq!(s.get(&[min]), c);
        }
    }

    #[test]
    fn mass_is_hilb_only() {
        let f = FamilyConfig::SpinChain { framings: 1, n: 1, k: 1, sigma1: 1, sigma2: 1, alpha: vec![0] };
        let r = series(&f, &FixedPointSelection::All, &Insertion::one().with_mass(true), 1);
        assert_eq!(r, Err(VertexError::HilbOnly("the mass insertion")));
    }

    #[test]
    fn families_validate() {
        hilb(2, [1, 1, 0]).validate().unwrap();
        FamilyConfig::Conifold { m: 2, v0: 1, v1: 2, sigma: [1, 1, 0] }.validate().unwrap();
        FamilyConfig::SpinChain { framings: 2, n: 2, k: 2, sigma1: 0, sigma2: 1, alpha: vec![0, 1] }.validate().unwrap();
        assert!(hilb(1, [1, 1, 1]).validate().is_err());
    }
}
