use serde::{Deserialize, Serialize};

use super::VertexError;
use crate::combinat::{
    build_stones, enum_plane_partitions, enum_pyramid_partitions, enum_spinchain_states, DegreeAssignment,
    FixedPoint, Shape, Stone,
};
use crate::ktheory::{Character, Endpoint, MatterField, MatterSpec, RChargeData, WeightRelation};

/// A quiver with potential together with its dimension data and R-charge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilyConfig {
    /// `Hilbⁿ(ℂ³)`: one node, three loops, potential `B₁[B₂, B₃]`.
    Hilb { n: usize, sigma: [i64; 3] },
    /// The length-`m` conifold quiver with dimension vector `(v0, v1)`.
    Conifold { m: u32, v0: usize, v1: usize, sigma: [i64; 3] },
    /// One node with loop `l`, `N` framings and potential `tr(l^k Q Q̄)`.
    #[serde(rename = "spinchain")]
    SpinChain {
        #[serde(rename = "N")]
        framings: usize,
        n: u32,
        k: u32,
        sigma1: i64,
        sigma2: i64,
        alpha: Vec<i64>,
    },
}

fn field(name: &str, source: Endpoint, target: Endpoint, weight: Character) -> MatterField {
    MatterField { name: name.to_string(), source, target, weight }
}

impl FamilyConfig {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyConfig::Hilb { .. } => "hilb",
            FamilyConfig::Conifold { .. } => "conifold",
            FamilyConfig::SpinChain { .. } => "spinchain",
        }
    }

    pub fn shape(&self) -> Shape {
        match self {
            FamilyConfig::Hilb { .. } => Shape::Hilb,
            FamilyConfig::Conifold { m, .. } => Shape::Conifold { m: *m },
            FamilyConfig::SpinChain { framings, k, .. } => Shape::SpinChain { framings: *framings, k: *k },
        }
    }

    pub fn nodes(&self) -> usize {
        match self {
            FamilyConfig::Conifold { .. } => 2,
            _ => 1,
        }
    }

    pub fn rcharge(&self) -> Result<RChargeData, VertexError> {
        Ok(match self {
            FamilyConfig::Hilb { sigma, .. } | FamilyConfig::Conifold { sigma, .. } => RChargeData::three_torus(*sigma)?,
            FamilyConfig::SpinChain { framings, k, sigma1, sigma2, alpha, .. } => {
                if alpha.len() != *framings {
                    return Err(VertexError::InvalidConfig(format!(
                        "alpha has {} entries for N = {framings}",
                        alpha.len()
                    )));
                }
                RChargeData::spin_chain(*sigma1, *sigma2, alpha, *k as i64)?
            }
        })
    }

    pub fn weight_relation(&self) -> WeightRelation {
        match self {
            FamilyConfig::SpinChain { framings, k, .. } => WeightRelation::spin_chain(*k as i64, *framings),
            _ => WeightRelation::three_torus(),
        }
    }

    /// The character of the potential, which the Calabi–Yau torus fixes.
    pub fn potential_character(&self) -> Character {
        match self {
            FamilyConfig::SpinChain { k, .. } => Character::flavor(&[1, *k as i64]),
            _ => Character::flavor(&[1, 1, 1]),
        }
    }

    pub fn matter(&self) -> MatterSpec {
        use Endpoint::{Framing, Node};
        match self {
            FamilyConfig::Hilb { .. } => {
                let mut fields = vec![field("I", Framing, Node(0), Character::trivial())];
                for i in 0..3 {
                    fields.push(field(&format!("B{}", i + 1), Node(0), Node(0), Character::basis(i)));
                }
                MatterSpec { nodes: 1, framing: vec![Character::trivial()], fields }
            }
            FamilyConfig::Conifold { m, .. } => {
                let m = *m as i64;
                let mut fields = vec![
                    field("a1", Node(0), Node(1), Character::basis(0)),
                    field("a2", Node(0), Node(1), Character::basis(1)),
                    field("b1", Node(1), Node(0), Character::trivial()),
                    field("b2", Node(1), Node(0), Character::basis(2)),
                ];
                for i in 1..=m {
                    fields.push(field(&format!("q{i}"), Framing, Node(1), Character::flavor(&[0, 0, i - 1])));
                }
                for i in 1..=m + 1 {
                    fields.push(field(&format!("p{i}"), Node(0), Framing, Character::flavor(&[1, 1, 2 - i])));
                }
                MatterSpec { nodes: 2, framing: vec![Character::trivial()], fields }
            }
            FamilyConfig::SpinChain { framings, .. } => {
                let fields = vec![
                    field("Q", Framing, Node(0), Character::basis(0)),
                    field("Qbar", Node(0), Framing, Character::trivial()),
                    field("l", Node(0), Node(0), Character::basis(1)),
                ];
                let framing = (0..*framings).map(|i| Character::basis(2 + i)).collect();
                MatterSpec { nodes: 1, framing, fields }
            }
        }
    }

    /// Cyclic words of the potential, as field names (with multiplicity).
    pub fn potential_terms(&self) -> Vec<Vec<String>> {
        let words = |ws: &[&str]| ws.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        match self {
            FamilyConfig::Hilb { .. } => vec![words(&["B1", "B2", "B3"]), words(&["B1", "B3", "B2"])],
            FamilyConfig::Conifold { m, .. } => {
                let mut out = vec![words(&["a1", "b1", "a2", "b2"]), words(&["a1", "b2", "a2", "b1"])];
                for i in 1..=*m {
                    out.push(vec![format!("q{i}"), "b1".into(), format!("p{i}")]);
                    out.push(vec![format!("q{i}"), "b2".into(), format!("p{}", i + 1)]);
                }
                out
            }
            FamilyConfig::SpinChain { k, .. } => {
                let mut w = vec!["l".to_string(); *k as usize];
                w.push("Q".into());
                w.push("Qbar".into());
                vec![w]
            }
        }
    }

    /// Check the R-charge constraint and that every potential term has the potential's weight.
    pub fn validate(&self) -> Result<(), VertexError> {
        self.rcharge()?;
        let matter = self.matter();
        let chi = self.potential_character();
        for word in self.potential_terms() {
            let mut w = Character::trivial();
            for name in &word {
                let f = matter
                    .field(name)
                    .ok_or_else(|| VertexError::InvalidConfig(format!("potential uses unknown field {name}")))?;
                w = w.mul(&f.weight);
            }
            if w != chi {
                return Err(VertexError::InvalidConfig(format!("potential term {word:?} has weight {w}")));
            }
        }
        Ok(())
    }

    pub fn fixed_points(&self) -> Vec<FixedPoint> {
        match self {
            FamilyConfig::Hilb { n, .. } => enum_plane_partitions(*n).into_iter().map(FixedPoint::Plane).collect(),
            FamilyConfig::Conifold { m, v0, v1, .. } => {
                enum_pyramid_partitions(*m, *v0, *v1).into_iter().map(FixedPoint::Pyramid).collect()
            }
            FamilyConfig::SpinChain { framings, n, k, .. } => {
                enum_spinchain_states(*framings, *n, *k).into_iter().map(FixedPoint::Spin).collect()
            }
        }
    }

    pub fn stones(&self, fp: &FixedPoint) -> Result<Vec<Stone>, VertexError> {
        Ok(build_stones(self.shape(), fp, &self.rcharge()?)?)
    }

    /// Novikov degree of a decoration: `[Σd]`, or `[Σd_∘, Σd_•]` for the conifold.
    pub fn degree_key(&self, stones: &[Stone], assign: &DegreeAssignment) -> Vec<i64> {
        match self {
            FamilyConfig::Conifold { .. } => assign.node_totals(stones, 2),
            _ => vec![assign.total(stones)],
        }
    }
}
