//! Torus-fixed points and their quasimap degree decorations.
//!
//! Three shapes of fixed points occur: plane partitions (Hilbert scheme of ℂ³),
//! finite-type pyramid partitions (conifold quiver of length `m`) and column
//! tuples (higher-spin chain). Each is turned into a list of [`Stone`]s that
//! carry their flavor character, R-charge pairing and generating edges; the
//! degree decorations are monotone labelings of that poset.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ktheory::{Character, RChargeData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatError {
    #[error("inconsistent weights for stone {0}")]
    InconsistentWeights(String),
    #[error("invalid fixed point: {0}")]
    InvalidFixedPoint(String),
}

/// A 3d Young diagram: a finite downward-closed set of boxes in ℕ³.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PlanePartition {
    boxes: Vec<[u32; 3]>,
}

/// Graded order: by coordinate sum, then lexicographic. Predecessors come first.
fn box_key(b: &[u32; 3]) -> (u32, [u32; 3]) {
    (b[0] + b[1] + b[2], *b)
}

impl PlanePartition {
    pub fn new(mut boxes: Vec<[u32; 3]>) -> Result<Self, CombinatError> {
        boxes.sort_by_key(box_key);
        boxes.dedup();
        let p = PlanePartition { boxes };
        if !p.is_downward_closed() {
            return Err(CombinatError::InvalidFixedPoint(format!("{p} is not downward closed")));
        }
        Ok(p)
    }

    pub fn boxes(&self) -> &[[u32; 3]] {
        &self.boxes
    }

    pub fn size(&self) -> usize {
        self.boxes.len()
    }

    pub fn contains(&self, b: &[u32; 3]) -> bool {
        self.boxes.binary_search_by_key(&box_key(b), box_key).is_ok()
    }

    pub fn is_downward_closed(&self) -> bool {
        self.boxes.iter().all(|b| {
            (0..3).all(|i| {
                b[i] == 0 || {
                    let mut p = *b;
                    p[i] -= 1;
                    self.contains(&p)
                }
            })
        })
    }

    /// Apply a permutation of the three axes: coordinate `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: [usize; 3]) -> PlanePartition {
        let boxes = self
            .boxes
            .iter()
            .map(|b| {
                let mut out = [0; 3];
                for i in 0..3 {
                    out[perm[i]] = b[i];
                }
                out
            })
            .collect();
        PlanePartition::new(boxes).expect("permutation preserves closure")
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.boxes.iter().map(|b| format!("({},{},{})", b[0], b[1], b[2])).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All plane partitions of size `n`, sorted.
pub fn enum_plane_partitions(n: usize) -> Vec<PlanePartition> {
    let mut level: BTreeSet<Vec<[u32; 3]>> = BTreeSet::new();
    level.insert(Vec::new());
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for boxes in &level {
            let set: BTreeSet<[u32; 3]> = boxes.iter().copied().collect();
            let mut candidates = vec![[0, 0, 0]];
            for b in boxes {
                for i in 0..3 {
                    let mut c = *b;
                    c[i] += 1;
                    candidates.push(c);
                }
            }
            for c in candidates {
                if set.contains(&c) {
                    continue;
                }
                let addable = (0..3).all(|i| {
                    c[i] == 0 || {
                        let mut p = c;
                        p[i] -= 1;
                        set.contains(&p)
                    }
                });
                if addable {
                    let mut grown = boxes.clone();
                    grown.push(c);
                    grown.sort_by_key(box_key);
                    next.insert(grown);
                }
            }
        }
        level = next;
    }
    let mut out: Vec<PlanePartition> = level.into_iter().map(|boxes| PlanePartition { boxes }).collect();
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    White,
    Black,
}

/// Position in the length-`m` pyramid arrangement.
///
/// A black stone `(α, β, c)` sits on layer `2(α+β)+1` with weight `t₁^α t₂^β t₃^c`,
/// `α+β ≤ c ≤ m−1`; a white stone `(α, β, c)` sits on layer `2(α+β)+2` with the same
/// weight and `α+β+1 ≤ c ≤ m−1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PyramidStone {
    pub color: Color,
    pub alpha: u32,
    pub beta: u32,
    pub c: u32,
}

impl PyramidStone {
    pub fn layer(&self) -> u32 {
        let j = 2 * (self.alpha + self.beta);
        match self.color {
            Color::Black => j + 1,
            Color::White => j + 2,
        }
    }

    pub fn weight(&self) -> [i64; 3] {
        [self.alpha as i64, self.beta as i64, self.c as i64]
    }

    /// Stones directly above, with the flavor weight of the arrow from each to `self`.
    pub fn above(&self) -> Vec<(PyramidStone, [i64; 3])> {
        let mut out = Vec::new();
        match self.color {
            Color::White => {
                out.push((PyramidStone { color: Color::Black, ..*self }, [0, 0, 0]));
                out.push((PyramidStone { color: Color::Black, c: self.c - 1, ..*self }, [0, 0, 1]));
            }
            Color::Black => {
                if self.alpha > 0 {
                    out.push((PyramidStone { color: Color::White, alpha: self.alpha - 1, ..*self }, [1, 0, 0]));
                }
                if self.beta > 0 {
                    out.push((PyramidStone { color: Color::White, beta: self.beta - 1, ..*self }, [0, 1, 0]));
                }
            }
        }
        out
    }
}

impl fmt::Display for PyramidStone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.color {
            Color::White => 'w',
            Color::Black => 'b',
        };
        write!(f, "{tag}({},{},{})", self.alpha, self.beta, self.c)
    }
}

/// Every stone of the length-`m` arrangement, layer by layer.
pub fn pyramid_arrangement(m: u32) -> Vec<PyramidStone> {
    let mut out = Vec::new();
    for layer in 1..2 * m {
        let j = (layer - 1) / 2;
        let (color, cmin) = if layer % 2 == 1 { (Color::Black, j) } else { (Color::White, j + 1) };
        for c in cmin..m {
            for alpha in (0..=j).rev() {
                out.push(PyramidStone { color, alpha, beta: j - alpha, c });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PyramidPartition {
    m: u32,
    stones: Vec<PyramidStone>,
}

impl PyramidPartition {
    pub fn new(m: u32, stones: Vec<PyramidStone>) -> Result<Self, CombinatError> {
        let order = pyramid_arrangement(m);
        let set: BTreeSet<PyramidStone> = stones.iter().copied().collect();
        if set.iter().any(|s| !order.contains(s)) {
            return Err(CombinatError::InvalidFixedPoint("stone outside the arrangement".into()));
        }
        let p = PyramidPartition { m, stones: order.into_iter().filter(|s| set.contains(s)).collect() };
        if !p.is_closed() {
            return Err(CombinatError::InvalidFixedPoint("stones above a stone are missing".into()));
        }
        Ok(p)
    }

    pub fn length(&self) -> u32 {
        self.m
    }

    pub fn stones(&self) -> &[PyramidStone] {
        &self.stones
    }

    pub fn count(&self, color: Color) -> usize {
        self.stones.iter().filter(|s| s.color == color).count()
    }

    pub fn is_closed(&self) -> bool {
        self.stones.iter().all(|s| s.above().iter().all(|(a, _)| self.stones.contains(a)))
    }
}

impl fmt::Display for PyramidPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.stones.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All length-`m` pyramid partitions with `v0` white and `v1` black stones.
pub fn enum_pyramid_partitions(m: u32, v0: usize, v1: usize) -> Vec<PyramidPartition> {
    let order = pyramid_arrangement(m);
    let mut out = Vec::new();
    let mut chosen = vec![false; order.len()];
    let white_after: Vec<usize> =
        (0..=order.len()).map(|i| order[i..].iter().filter(|s| s.color == Color::White).count()).collect();
    let black_after: Vec<usize> =
        (0..=order.len()).map(|i| order[i..].iter().filter(|s| s.color == Color::Black).count()).collect();

    struct Ctx<'a> {
        order: &'a [PyramidStone],
        white_after: &'a [usize],
        black_after: &'a [usize],
        m: u32,
    }

    fn go(ctx: &Ctx, i: usize, w: usize, b: usize, chosen: &mut Vec<bool>, out: &mut Vec<PyramidPartition>) {
        if w == 0 && b == 0 {
            let stones = ctx.order.iter().zip(chosen.iter()).filter(|(_, &c)| c).map(|(s, _)| *s).collect();
            out.push(PyramidPartition { m: ctx.m, stones });
            return;
        }
        if i == ctx.order.len() || ctx.white_after[i] < w || ctx.black_after[i] < b {
            return;
        }
        let s = ctx.order[i];
        let room = match s.color {
            Color::White => w > 0,
            Color::Black => b > 0,
        };
        let supported =
            s.above().iter().all(|(a, _)| ctx.order.iter().position(|x| x == a).is_some_and(|k| chosen[k]));
        if room && supported {
            chosen[i] = true;
            let (w2, b2) = match s.color {
                Color::White => (w - 1, b),
                Color::Black => (w, b - 1),
            };
            go(ctx, i + 1, w2, b2, chosen, out);
            chosen[i] = false;
        }
        go(ctx, i + 1, w, b, chosen, out);
    }

    let ctx = Ctx { order: &order, white_after: &white_after, black_after: &black_after, m };
    go(&ctx, 0, v0, v1, &mut chosen, &mut out);
    out.sort();
    out
}

/// Column heights `(k₁, …, k_N)` of the spin-chain fixed point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpinChainState(pub Vec<u32>);

impl SpinChainState {
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for SpinChainState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All `(k₁..k_N)` with `0 ≤ kᵢ ≤ k` and `Σkᵢ = n`, in decreasing lexicographic order.
pub fn enum_spinchain_states(big_n: usize, n: u32, k: u32) -> Vec<SpinChainState> {
    fn go(slots: usize, left: u32, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<SpinChainState>) {
        if slots == 0 {
            if left == 0 {
                out.push(SpinChainState(prefix.clone()));
            }
            return;
        }
        for h in (0..=k.min(left)).rev() {
            if left - h > k * (slots as u32 - 1) {
                continue;
            }
            prefix.push(h);
            go(slots - 1, left - h, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(big_n, n, k, &mut Vec::new(), &mut out);
    out
}

/// The kind of quiver a fixed point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    Hilb,
    Conifold { m: u32 },
    SpinChain { framings: usize, k: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FixedPoint {
    Plane(PlanePartition),
    Pyramid(PyramidPartition),
    Spin(SpinChainState),
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedPoint::Plane(p) => p.fmt(f),
            FixedPoint::Pyramid(p) => p.fmt(f),
            FixedPoint::Spin(s) => s.fmt(f),
        }
    }
}

/// One basis vector of the tautological bundles at a fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stone {
    pub id: usize,
    /// Gauge node (0 for single-node quivers; 0 = white, 1 = black for the conifold).
    pub node: usize,
    pub label: String,
    pub chi: Character,
    /// `⟨σ, □⟩`.
    pub pairing: i64,
    /// Generating predecessors with the flavor weight of the generating arrow.
    pub preds: Vec<(usize, Character)>,
    /// Framing index and arrow weight when the stone is generated from the framing.
    pub framing: Option<(usize, Character)>,
}

struct StoneBuilder<'a> {
    stones: Vec<Stone>,
    r: &'a RChargeData,
}

impl StoneBuilder<'_> {
    fn push(
        &mut self,
        node: usize,
        label: String,
        framing: Option<(usize, Character, Character)>,
        preds: Vec<(usize, Character)>,
    ) -> Result<(), CombinatError> {
        let mut candidates: Vec<Character> = Vec::new();
        if let Some((_, fchar, w)) = &framing {
            candidates.push(fchar.mul(&w.inv()));
        }
        for (p, w) in &preds {
            candidates.push(self.stones[*p].chi.mul(&w.inv()));
        }
        let chi = candidates.first().cloned().ok_or_else(|| CombinatError::InconsistentWeights(label.clone()))?;
        if candidates.iter().any(|c| *c != chi) {
            return Err(CombinatError::InconsistentWeights(label));
        }
        let id = self.stones.len();
        self.stones.push(Stone {
            id,
            node,
            label,
            pairing: self.r.degree(&chi),
            chi,
            preds,
            framing: framing.map(|(i, _, w)| (i, w)),
        });
        Ok(())
    }
}

/// Stones of a fixed point in an order where predecessors precede their successors.
pub fn build_stones(shape: Shape, fp: &FixedPoint, r: &RChargeData) -> Result<Vec<Stone>, CombinatError> {
    let mut b = StoneBuilder { stones: Vec::new(), r };
    match (shape, fp) {
        (Shape::Hilb, FixedPoint::Plane(p)) => {
            for bx in p.boxes() {
                let mut preds = Vec::new();
                for i in 0..3 {
                    if bx[i] > 0 {
                        let mut q = *bx;
                        q[i] -= 1;
                        let id = p.boxes().iter().position(|x| *x == q).ok_or_else(|| {
                            CombinatError::InvalidFixedPoint(format!("{p} is not downward closed"))
                        })?;
                        preds.push((id, Character::basis(i)));
                    }
                }
                let framing = (*bx == [0, 0, 0]).then(|| (0, Character::trivial(), Character::trivial()));
                b.push(0, format!("({},{},{})", bx[0], bx[1], bx[2]), framing, preds)?;
            }
        }
        (Shape::Conifold { m }, FixedPoint::Pyramid(p)) => {
            if p.length() != m {
                return Err(CombinatError::InvalidFixedPoint(format!("pyramid of length {} for m={m}", p.length())));
            }
            for s in p.stones() {
                let mut preds = Vec::new();
                for (a, w) in s.above() {
                    let id = p
                        .stones()
                        .iter()
                        .position(|x| *x == a)
                        .ok_or_else(|| CombinatError::InvalidFixedPoint(format!("{s} is missing {a}")))?;
                    preds.push((id, Character::flavor(&w)));
                }
                let framing = (s.color == Color::Black && s.layer() == 1)
                    .then(|| (0, Character::trivial(), Character::flavor(&[0, 0, s.c as i64])));
                let node = match s.color {
                    Color::White => 0,
                    Color::Black => 1,
                };
                b.push(node, s.to_string(), framing, preds)?;
            }
        }
        (Shape::SpinChain { framings, k }, FixedPoint::Spin(st)) => {
            if st.0.len() != framings || st.0.iter().any(|&h| h > k) {
                return Err(CombinatError::InvalidFixedPoint(format!("{st} for N={framings}, k={k}")));
            }
            for (i, &height) in st.0.iter().enumerate() {
                for h in 0..height {
                    let label = format!("({},{h})", i + 1);
                    if h == 0 {
                        let a = Character::basis(2 + i);
                        b.push(0, label, Some((i, a, Character::basis(0))), vec![])?;
                    } else {
                        let prev = b.stones.len() - 1;
                        b.push(0, label, None, vec![(prev, Character::basis(1))])?;
                    }
                }
            }
        }
        _ => return Err(CombinatError::InvalidFixedPoint(format!("{fp} does not match {shape:?}"))),
    }
    Ok(b.stones)
}

/// `Σ_□ ⟨σ, □⟩`, the degree of the all-zero decoration.
pub fn min_degree(stones: &[Stone]) -> i64 {
    stones.iter().map(|s| s.pairing).sum()
}

/// `z_□ ∈ ℕ` per stone, monotone along generating edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DegreeAssignment {
    pub z: Vec<i64>,
}

impl DegreeAssignment {
    pub fn zero(n: usize) -> Self {
        DegreeAssignment { z: vec![0; n] }
    }

    /// `d_□ = z_□ + ⟨σ, □⟩`.
    pub fn d(&self, stones: &[Stone]) -> Vec<i64> {
        self.z.iter().zip(stones).map(|(z, s)| z + s.pairing).collect()
    }

    pub fn total(&self, stones: &[Stone]) -> i64 {
        self.d(stones).iter().sum()
    }

    /// `Σ d_□` per gauge node.
    pub fn node_totals(&self, stones: &[Stone], nodes: usize) -> Vec<i64> {
        let mut out = vec![0; nodes];
        for (d, s) in self.d(stones).into_iter().zip(stones) {
            out[s.node] += d;
        }
        out
    }

    pub fn is_valid(&self, stones: &[Stone]) -> bool {
        self.z.len() == stones.len()
            && self.z.iter().all(|&z| z >= 0)
            && stones.iter().all(|s| s.preds.iter().all(|(p, _)| self.z[s.id] >= self.z[*p]))
    }
}

/// All monotone decorations with `Σ z_□ = excess`, in lexicographic order.
fn assignments_with_excess(stones: &[Stone], excess: i64) -> Vec<DegreeAssignment> {
    fn go(stones: &[Stone], i: usize, left: i64, z: &mut Vec<i64>, out: &mut Vec<DegreeAssignment>) {
        if i == stones.len() {
            if left == 0 {
                out.push(DegreeAssignment { z: z.clone() });
            }
            return;
        }
        let lo = stones[i].preds.iter().map(|(p, _)| z[*p]).max().unwrap_or(0);
        for v in lo..=left {
            z.push(v);
            go(stones, i + 1, left - v, z, out);
            z.pop();
        }
    }
    if excess < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(stones, 0, excess, &mut Vec::with_capacity(stones.len()), &mut out);
    out
}

/// All decorations of total degree `Σ d_□ = total`.
pub fn enum_degree_assignments(stones: &[Stone], total: i64) -> Vec<DegreeAssignment> {
    assignments_with_excess(stones, total - min_degree(stones))
}

/// All decorations with `Σ z_□ ≤ max_excess`, grouped by increasing excess.
pub fn enum_degree_assignments_up_to(stones: &[Stone], max_excess: i64) -> Vec<DegreeAssignment> {
    (0..=max_excess).flat_map(|e| assignments_with_excess(stones, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hilb_r(s: [i64; 3]) -> RChargeData {
        RChargeData::three_torus(s).unwrap()
    }

    #[test]
    fn plane_partition_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| enum_plane_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 6, 13, 24, 48]);
        assert!(enum_plane_partitions(4).iter().all(PlanePartition::is_downward_closed));
    }

    #[test]
    fn pyramid_arrangement_sizes() {
        assert_eq!(pyramid_arrangement(1).len(), 1);
        assert_eq!(pyramid_arrangement(2).len(), 5);
        for m in 1..=4u32 {
            let a = pyramid_arrangement(m);
            for j in 0..m {
                let black = a.iter().filter(|s| s.layer() == 2 * j + 1).count() as u32;
                assert_eq!(black, (j + 1) * (m - j));
                let white = a.iter().filter(|s| s.layer() == 2 * j + 2).count() as u32;
                assert_eq!(white, (j + 1) * (m - j - 1));
            }
        }
    }

    #[test]
    fn pyramid_examples() {
        assert_eq!(enum_pyramid_partitions(1, 0, 0).len(), 1);
        assert_eq!(enum_pyramid_partitions(1, 0, 1).len(), 1);
        assert_eq!(enum_pyramid_partitions(1, 1, 0).len(), 0);
        for p in enum_pyramid_partitions(3, 2, 3) {
            assert!(p.is_closed());
            assert_eq!((p.count(Color::White), p.count(Color::Black)), (2, 3));
        }
    }

    #[test]
    fn conifold_weights_match_layer_lists() {
        let m = 4;
        let all = pyramid_arrangement(m);
        let p = PyramidPartition::new(m, all.clone()).unwrap();
        let r = hilb_r([1, 1, 0]);
        let stones = build_stones(Shape::Conifold { m }, &FixedPoint::Pyramid(p), &r).unwrap();
        for (s, st) in stones.iter().zip(&all) {
            let w = st.weight();
            assert_eq!(s.chi, Character::flavor(&[-w[0], -w[1], -w[2]]));
        }
        let tops: Vec<_> = stones.iter().filter(|s| s.framing.is_some()).map(|s| s.chi.clone()).collect();
        let expect: Vec<_> = (0..m as i64).map(|c| Character::flavor(&[0, 0, -c])).collect();
        assert_eq!(tops, expect);
    }

    #[test]
    fn second_top_black_pairing() {
        let m = 3;
        let p = PyramidPartition::new(m, vec![PyramidStone { color: Color::Black, alpha: 0, beta: 0, c: 1 }]).unwrap();
        let r = hilb_r([1, -1, 2]);
        let stones = build_stones(Shape::Conifold { m }, &FixedPoint::Pyramid(p), &r).unwrap();
        assert_eq!(stones[0].pairing, 2);
    }

    #[test]
    fn spin_states() {
        let s = |v: &[u32]| SpinChainState(v.to_vec());
        assert_eq!(enum_spinchain_states(2, 1, 1), vec![s(&[1, 0]), s(&[0, 1])]);
        assert_eq!(enum_spinchain_states(2, 2, 2), vec![s(&[2, 0]), s(&[1, 1]), s(&[0, 2])]);
        assert!(enum_spinchain_states(1, 2, 1).is_empty());
    }

    #[test]
    fn spin_stone_pairing() {
        let r = RChargeData::spin_chain(2, 0, &[0, 3], 2).unwrap();
        let fp = FixedPoint::Spin(SpinChainState(vec![2, 1]));
        let stones = build_stones(Shape::SpinChain { framings: 2, k: 2 }, &fp, &r).unwrap();
        let pairings: Vec<i64> = stones.iter().map(|s| s.pairing).collect();
        assert_eq!(pairings, vec![2, 2, -1]);
        assert_eq!(min_degree(&stones[..2]), 4);
    }

    #[test]
    fn hilb_min_degrees() {
        let r = hilb_r([1, 1, 0]);
        let one = FixedPoint::Plane(PlanePartition::new(vec![[0, 0, 0]]).unwrap());
        assert_eq!(min_degree(&build_stones(Shape::Hilb, &one, &r).unwrap()), 0);
        let col = FixedPoint::Plane(PlanePartition::new(vec![[0, 0, 0], [0, 0, 1]]).unwrap());
        let stones = build_stones(Shape::Hilb, &col, &r).unwrap();
        assert_eq!(stones[0].pairing, 0);
        assert_eq!(min_degree(&stones), 0);
    }

    #[test]
    fn degree_assignment_examples() {
        let r = hilb_r([1, 1, 0]);
        let one = FixedPoint::Plane(PlanePartition::new(vec![[0, 0, 0]]).unwrap());
        let stones = build_stones(Shape::Hilb, &one, &r).unwrap();
        let a = enum_degree_assignments(&stones, 5);
        assert_eq!(a, vec![DegreeAssignment { z: vec![5] }]);

        let col = FixedPoint::Plane(PlanePartition::new(vec![[0, 0, 0], [0, 0, 1]]).unwrap());
        let stones = build_stones(Shape::Hilb, &col, &r).unwrap();
        let a = enum_degree_assignments(&stones, 2);
        assert_eq!(a, vec![DegreeAssignment { z: vec![0, 2] }, DegreeAssignment { z: vec![1, 1] }]);

        let r = hilb_r([0, 0, 2]);
        let l = FixedPoint::Plane(PlanePartition::new(vec![[0, 0, 0], [1, 0, 0], [0, 1, 0]]).unwrap());
        let stones = build_stones(Shape::Hilb, &l, &r).unwrap();
        assert_eq!(enum_degree_assignments(&stones, min_degree(&stones) + 1).len(), 2);
        assert!(enum_degree_assignments(&stones, min_degree(&stones) - 1).is_empty());
    }
}
