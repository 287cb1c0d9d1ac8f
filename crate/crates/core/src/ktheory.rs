//! Torus characters, K-theory of ℙ¹ and equivariant Euler classes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::symbolic::{FactoredRational, LinearForm, RationalFunction, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KError {
    #[error("character has a component outside the weight relation's basis (index {0})")]
    UnknownBasisCharacter(usize),
    #[error("zero weight with negative multiplicity {0}: the fixed point is not reduced")]
    PoleAtZeroWeight(i64),
    #[error("invalid R-charge: {0}")]
    InvalidRCharge(String),
}

/// `q^q · ∏ xᵢ^{flavor[i]}` over a family's flavor basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Character {
    pub q: i64,
    pub flavor: Vec<i64>,
}

impl Character {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn flavor(exps: &[i64]) -> Self {
        Character { q: 0, flavor: exps.to_vec() }.trimmed()
    }

    pub fn q_power(e: i64) -> Self {
        Character { q: e, flavor: Vec::new() }
    }

    /// The basis character `xᵢ`.
    pub fn basis(i: usize) -> Self {
        let mut flavor = vec![0; i + 1];
        flavor[i] = 1;
        Character { q: 0, flavor }
    }

    fn trimmed(mut self) -> Self {
        while self.flavor.last() == Some(&0) {
            self.flavor.pop();
        }
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.q == 0 && self.flavor.iter().all(|&e| e == 0)
    }

    pub fn exponent(&self, i: usize) -> i64 {
        self.flavor.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Character) -> Character {
        let n = self.flavor.len().max(other.flavor.len());
        let flavor = (0..n).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Character { q: self.q + other.q, flavor }.trimmed()
    }

    pub fn inv(&self) -> Character {
        Character { q: -self.q, flavor: self.flavor.iter().map(|e| -e).collect() }
    }

    pub fn pow(&self, k: i64) -> Character {
        Character { q: self.q * k, flavor: self.flavor.iter().map(|e| e * k).collect() }.trimmed()
    }

    pub fn with_q(&self, q: i64) -> Character {
        Character { q: self.q + q, flavor: self.flavor.clone() }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}", self.q)?;
        for (i, e) in self.flavor.iter().enumerate() {
            if *e != 0 {
                write!(f, "*x{}^{e}", i + 1)?;
            }
        }
        Ok(())
    }
}

/// Virtual sum of characters with integer multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KClass(BTreeMap<Character, i64>);

impl KClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(ch: Character, mult: i64) -> Self {
        let mut k = Self::zero();
        k.add_term(ch, mult);
        k
    }

    pub fn add_term(&mut self, ch: Character, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.0.entry(ch.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.0.remove(&ch);
        }
    }

    pub fn add(&mut self, other: &KClass) {
        for (c, &m) in &other.0 {
            self.add_term(c.clone(), m);
        }
    }

    pub fn sub(&mut self, other: &KClass) {
        for (c, &m) in &other.0 {
            self.add_term(c.clone(), -m);
        }
    }

    pub fn neg(&self) -> KClass {
        KClass(self.0.iter().map(|(c, &m)| (c.clone(), -m)).collect())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Character, i64)> {
        self.0.iter().map(|(c, &m)| (c, m))
    }

    pub fn multiplicity(&self, ch: &Character) -> i64 {
        self.0.get(ch).copied().unwrap_or(0)
    }

    /// Total multiplicity, i.e. the virtual rank.
    pub fn rank(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(c, m)| format!("{c}:{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `c₁` of the basis characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightRelation {
    basis: Vec<LinearForm>,
}

impl WeightRelation {
    /// `t₁, t₂, t₃ ↦ h1, h2, −h1 − h2`.
    pub fn three_torus() -> Self {
        let h1 = LinearForm::var(Var::H1);
        let h2 = LinearForm::var(Var::H2);
        WeightRelation { basis: vec![h1.clone(), h2.clone(), -(h1 + h2)] }
    }

    /// `t₁ ↦ −k·h2`, `t₂ ↦ h2`, `e^{aᵢ} ↦ aᵢ` for `n` framings.
    pub fn spin_chain(k: i64, n: usize) -> Self {
        let mut basis = vec![LinearForm::int_term(Var::H2, -k), LinearForm::var(Var::H2)];
        basis.extend((1..=n).map(|i| LinearForm::var(Var::A(i as u16))));
        WeightRelation { basis }
    }

    pub fn from_basis(basis: Vec<LinearForm>) -> Self {
        WeightRelation { basis }
    }

    pub fn basis(&self) -> &[LinearForm] {
        &self.basis
    }

    pub fn c1(&self, ch: &Character) -> Result<LinearForm, KError> {
        let mut out = LinearForm::hbar(-ch.q);
        for (i, &e) in ch.flavor.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let b = self.basis.get(i).ok_or(KError::UnknownBasisCharacter(i))?;
            out = out + b.clone() * e;
        }
        Ok(out)
    }
}

/// `O(D)` on ℙ¹ twisted by `q^{qtwist}·flavor`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LineData {
    pub degree: i64,
    pub qtwist: i64,
    pub flavor: Character,
}

impl LineData {
    pub fn new(degree: i64, qtwist: i64, flavor: Character) -> Self {
        LineData { degree, qtwist, flavor }
    }

    pub fn trivial() -> Self {
        Self::new(0, 0, Character::trivial())
    }

    pub fn dual(&self) -> LineData {
        LineData { degree: -self.degree, qtwist: -self.qtwist, flavor: self.flavor.inv() }
    }

    pub fn tensor(&self, other: &LineData) -> LineData {
        LineData {
            degree: self.degree + other.degree,
            qtwist: self.qtwist + other.qtwist,
            flavor: self.flavor.mul(&other.flavor),
        }
    }
}

/// Equivariant `RΓ(ℙ¹, line)`.
pub fn chi_p1(line: &LineData) -> KClass {
    let mut k = KClass::zero();
    let (d, w) = (line.degree, line.qtwist);
    if d >= 0 {
        for j in 0..=d {
            k.add_term(line.flavor.with_q(w - d + 2 * j), 1);
        }
    } else {
        for j in 1..-d {
            k.add_term(line.flavor.with_q(w - d - 2 * j), -1);
        }
    }
    k
}

/// Result of an Euler class with the zero-weight ledger applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EulerValue {
    /// A net positive multiplicity of zero weights: the class vanishes.
    Zero,
    Value(FactoredRational),
}

impl EulerValue {
    pub fn to_ratfun(&self) -> RationalFunction {
        match self {
            EulerValue::Zero => RationalFunction::zero(),
            EulerValue::Value(f) => f.to_ratfun(),
        }
    }

    pub fn into_factored(self) -> FactoredRational {
        match self {
            EulerValue::Zero => FactoredRational::zero(),
            EulerValue::Value(f) => f,
        }
    }
}

/// `∏ c₁(w)^{mult(w)}`.
///
/// Characters are grouped by their `c₁` before the ledger is read, so two
/// distinct characters with equal weight cancel.
pub fn euler(k: &KClass, rel: &WeightRelation) -> Result<EulerValue, KError> {
    euler_shifted(k, rel, &LinearForm::zero())
}

/// `∏ (c₁(w) + shift)^{mult(w)}`; the shift is the mass of a tautological insertion.
pub fn euler_shifted(k: &KClass, rel: &WeightRelation, shift: &LinearForm) -> Result<EulerValue, KError> {
    let mut by_weight: BTreeMap<LinearForm, i64> = BTreeMap::new();
    for (ch, m) in k.terms() {
        let w = rel.c1(ch)? + shift.clone();
        *by_weight.entry(w).or_insert(0) += m;
    }
    let zero_mult = by_weight.remove(&LinearForm::zero()).unwrap_or(0);
    if zero_mult < 0 {
        return Err(KError::PoleAtZeroWeight(zero_mult));
    }
    if zero_mult > 0 {
        return Ok(EulerValue::Zero);
    }
    let mut out = FactoredRational::one();
    for (w, m) in by_weight {
        let m = i32::try_from(m).expect("multiplicity fits in i32");
        out.mul_linear(&w, m).expect("nonzero weight");
    }
    Ok(EulerValue::Value(out))
}

/// Pairing of characters against the R-charge, which fixes line degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RChargeData {
    /// `deg` assigned to each basis character: `−σᵢ` for `tᵢ`, `−αᵢ` for `e^{aᵢ}`.
    pairing: Vec<i64>,
}

impl RChargeData {
    /// Three-torus families with `σ₁ + σ₂ + σ₃ = 2`.
    pub fn three_torus(sigma: [i64; 3]) -> Result<Self, KError> {
        if sigma.iter().sum::<i64>() != 2 {
            return Err(KError::InvalidRCharge(format!("sigma {sigma:?} must sum to 2")));
        }
        Ok(RChargeData { pairing: sigma.iter().map(|s| -s).collect() })
    }

    /// Spin chain with `σ₁ + k·σ₂ = 2` and one `αᵢ` per framing.
    pub fn spin_chain(sigma1: i64, sigma2: i64, alpha: &[i64], k: i64) -> Result<Self, KError> {
        if sigma1 + k * sigma2 != 2 {
            return Err(KError::InvalidRCharge(format!("sigma1 + k*sigma2 = {} != 2", sigma1 + k * sigma2)));
        }
        let mut pairing = vec![-sigma1, -sigma2];
        pairing.extend(alpha.iter().map(|a| -a));
        Ok(RChargeData { pairing })
    }

    pub fn pairing(&self) -> &[i64] {
        &self.pairing
    }

    /// `⟨σ_R, exponent vector of ch⟩`.
    pub fn degree(&self, ch: &Character) -> i64 {
        ch.flavor.iter().enumerate().map(|(i, e)| e * self.pairing.get(i).copied().unwrap_or(0)).sum()
    }
}

/// The associated line bundle of a field of flavor weight `flavor`.
pub fn line_for_weight(flavor: &Character, r: &RChargeData) -> LineData {
    LineData::new(r.degree(flavor), 0, flavor.clone())
}

/// One end of a matter field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Endpoint {
    Framing,
    Node(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatterField {
    pub name: String,
    pub source: Endpoint,
    pub target: Endpoint,
    pub weight: Character,
}

/// Gauge nodes, framing characters and the fields between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatterSpec {
    pub nodes: usize,
    pub framing: Vec<Character>,
    pub fields: Vec<MatterField>,
}

impl MatterSpec {
    pub fn field(&self, name: &str) -> Option<&MatterField> {
        self.fields.iter().find(|f| f.name == name)
    }
}

/// `√T^vir = Σ_fields RΓ(Hom(source, target) ⊗ ℒ_w) − Σ_nodes RΓ(End 𝒱)`.
///
/// `node_lines[i]` lists the line summands of the bundle on gauge node `i`.
pub fn sqrt_tangent(node_lines: &[Vec<LineData>], matter: &MatterSpec, r: &RChargeData) -> KClass {
    let framing: Vec<LineData> = matter.framing.iter().map(|c| line_for_weight(c, r)).collect();
    let lines = |e: Endpoint| -> &[LineData] {
        match e {
            Endpoint::Framing => &framing,
            Endpoint::Node(i) => node_lines.get(i).map_or(&[], Vec::as_slice),
        }
    };
    let mut k = KClass::zero();
    for field in &matter.fields {
        let lw = line_for_weight(&field.weight, r);
        for t in lines(field.target) {
            for s in lines(field.source) {
                k.add(&chi_p1(&t.tensor(&s.dual()).tensor(&lw)));
            }
        }
    }
    for node in node_lines.iter().take(matter.nodes) {
        for t in node {
            for s in node {
                k.sub(&chi_p1(&t.tensor(&s.dual())));
            }
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_ratfun;

    fn hilb_matter() -> MatterSpec {
        let mut fields = vec![MatterField {
            name: "i".into(),
            source: Endpoint::Framing,
            target: Endpoint::Node(0),
            weight: Character::trivial(),
        }];
        for i in 0..3 {
            fields.push(MatterField {
                name: format!("B{}", i + 1),
                source: Endpoint::Node(0),
                target: Endpoint::Node(0),
                weight: Character::basis(i),
            });
        }
        MatterSpec { nodes: 1, framing: vec![Character::trivial()], fields }
    }

    #[test]
    fn c1_examples() {
        let rel = WeightRelation::three_torus();
        assert_eq!(rel.c1(&Character::q_power(2)).unwrap(), LinearForm::hbar(-2));
        assert!(rel.c1(&Character::flavor(&[1, 1, 1])).unwrap().is_zero());
        let spin = WeightRelation::spin_chain(2, 2);
        let ch = Character::basis(0).mul(&Character::basis(3));
        assert_eq!(spin.c1(&ch).unwrap(), LinearForm::var(Var::A(2)) + LinearForm::int_term(Var::H2, -2));
        assert_eq!(rel.c1(&Character::basis(3)), Err(KError::UnknownBasisCharacter(3)));
    }

    #[test]
    fn chi_examples() {
        let k = chi_p1(&LineData::new(2, 2, Character::trivial()));
        let expect: Vec<_> = [0, 2, 4].iter().map(|&e| (Character::q_power(e), 1)).collect();
        assert_eq!(k.terms().map(|(c, m)| (c.clone(), m)).collect::<Vec<_>>(), expect);
        assert!(chi_p1(&LineData::new(-1, 5, Character::basis(1))).is_empty());
        let k = chi_p1(&LineData::new(-3, -3, Character::trivial()));
        assert_eq!(k.multiplicity(&Character::q_power(-2)), -1);
        assert_eq!(k.multiplicity(&Character::q_power(-4)), -1);
        assert_eq!(k.rank(), -2);
    }

    #[test]
    fn euler_examples() {
        let rel = WeightRelation::three_torus();
        let mut k = KClass::zero();
        for i in 0..3 {
            k.add_term(Character::basis(i), 1);
        }
        assert_eq!(euler(&k, &rel).unwrap().to_ratfun(), parse_ratfun("-h1*h2*(h1 + h2)").unwrap());
        let q2 = KClass::single(Character::q_power(2), 1);
        assert_eq!(euler(&q2, &rel).unwrap().to_ratfun(), parse_ratfun("-2*hbar").unwrap());
        let pole = KClass::single(Character::trivial(), -1);
        assert_eq!(euler(&pole, &rel), Err(KError::PoleAtZeroWeight(-1)));
        assert_eq!(euler(&KClass::single(Character::trivial(), 2), &rel), Ok(EulerValue::Zero));
    }

    #[test]
    fn line_for_weight_examples() {
        let r = RChargeData::three_torus([1, 1, 0]).unwrap();
        assert_eq!(line_for_weight(&Character::basis(0), &r), LineData::new(-1, 0, Character::basis(0)));
        assert_eq!(line_for_weight(&Character::trivial(), &r), LineData::trivial());
        let ch = Character::flavor(&[1, 1, 1]);
        assert_eq!(line_for_weight(&ch, &r).degree, -2);
        assert!(RChargeData::three_torus([1, 1, 1]).is_err());
    }

    #[test]
    fn hilb_one_box_tangent() {
        let r = RChargeData::three_torus([1, 1, 0]).unwrap();
        let m = hilb_matter();
        let t0 = sqrt_tangent(&[vec![LineData::trivial()]], &m, &r);
        assert_eq!(t0, KClass::single(Character::basis(2), 1));
        let t1 = sqrt_tangent(&[vec![LineData::new(1, 1, Character::trivial())]], &m, &r);
        let mut expect = KClass::single(Character::basis(2), 1);
        expect.add_term(Character::q_power(2), 1);
        assert_eq!(t1, expect);
    }

    #[test]
    fn empty_matter_is_minus_end() {
        let r = RChargeData::three_torus([2, 0, 0]).unwrap();
        let m = MatterSpec { nodes: 1, framing: vec![], fields: vec![] };
        let lines = vec![LineData::new(0, 0, Character::trivial()), LineData::new(1, 1, Character::basis(0))];
        let t = sqrt_tangent(std::slice::from_ref(&lines), &m, &r);
        let mut expect = KClass::zero();
        for a in &lines {
            for b in &lines {
                expect.sub(&chi_p1(&a.tensor(&b.dual())));
            }
        }
        assert_eq!(t, expect);
    }
}
