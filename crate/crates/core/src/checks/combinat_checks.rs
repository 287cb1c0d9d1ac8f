use std::collections::HashSet;

use super::oracles::{
    box_edges, is_plane_partition, macmahon, monotone_count, plane_partition_count, pyramid_counts, spin_state_count,
    supports, Slot,
};
use super::Tally;
use crate::combinat::{
    build_stones, enum_degree_assignments, enum_plane_partitions, enum_pyramid_partitions, enum_spinchain_states,
    min_degree, pyramid_arrangement, Color, FixedPoint, Shape, Stone,
};
use crate::ktheory::RChargeData;

fn slot(s: &crate::combinat::PyramidStone) -> Slot {
    (s.color == Color::Black, s.weight())
}

fn plane_partitions(t: &mut Tally) {
    for (n, &expected) in macmahon(6).iter().enumerate() {
        let pps = enum_plane_partitions(n);
        let brute = plane_partition_count(n);
        t.check(pps.len() == brute && brute as u64 == expected, || {
            format!("plane partitions of {n}: {} enumerated, {brute} height matrices, {expected} MacMahon", pps.len())
        });
        let distinct: HashSet<_> = pps.iter().map(|p| p.boxes().to_vec()).collect();
        t.check(distinct.len() == pps.len(), || format!("duplicate plane partitions of {n}"));
        for p in &pps {
            t.check(is_plane_partition(p.boxes()) && p.size() == n, || format!("{p} is not a plane partition of {n}"));
        }
    }
}

fn pyramids(t: &mut Tally) {
    for m in 1..=3u32 {
        let arrangement: Vec<Slot> = pyramid_arrangement(m).iter().map(slot).collect();
        for layer in 1..2 * m {
            let j = (layer - 1) / 2;
            let want = if layer % 2 == 1 { (j + 1) * (m - j) } else { (j + 1) * (m - j - 1) };
            let got = pyramid_arrangement(m).iter().filter(|s| s.layer() == layer).count() as u32;
            t.check(got == want, || format!("length {m} layer {layer}: {got} stones, expected {want}"));
        }
        let brute = pyramid_counts(&arrangement);
        let whites = arrangement.iter().filter(|s| !s.0).count();
        let blacks = arrangement.len() - whites;
        for v0 in 0..=whites {
            for v1 in 0..=blacks {
                let got = enum_pyramid_partitions(m, v0, v1).len();
                let want = brute.get(&(v0, v1)).copied().unwrap_or(0);
                t.check(got == want, || format!("pyramids m={m} v=({v0},{v1}): {got}, brute force {want}"));
            }
        }
    }
}

fn spin_states(t: &mut Tally) {
    for big_n in 1..=4usize {
        for k in 1..=4u32 {
            for n in 0..=4u32 {
                let got = enum_spinchain_states(big_n, n, k).len();
                let want = spin_state_count(big_n, n, k);
                t.check(got == want, || format!("spin states N={big_n} n={n} k={k}: {got}, brute force {want}"));
            }
        }
    }
}

fn compare_assignments(t: &mut Tally, what: &str, stones: &[Stone], edges: &[(usize, usize)]) {
    let min = min_degree(stones);
    for excess in 0..=4 {
        let got = enum_degree_assignments(stones, min + excess).len();
        let want = monotone_count(stones.len(), edges, excess);
        t.check(got == want, || format!("{what}: {got} assignments of degree min+{excess}, brute force {want}"));
    }
    t.check(enum_degree_assignments(stones, min - 1).is_empty(), || format!("{what}: assignments below min_degree"));
}

fn degree_assignments(t: &mut Tally) {
    for sigma in [[1, 1, 0], [0, 0, 2], [2, -1, 1]] {
        let r = RChargeData::three_torus(sigma).unwrap();
        for n in 1..=5 {
            for p in enum_plane_partitions(n) {
                let fp = FixedPoint::Plane(p.clone());
                let stones = build_stones(Shape::Hilb, &fp, &r).unwrap();
                compare_assignments(t, &format!("hilb {p} σ={sigma:?}"), &stones, &box_edges(p.boxes()));
            }
        }
        for m in 1..=2u32 {
            let all: HashSet<Slot> = pyramid_arrangement(m).iter().map(slot).collect();
            let whites = all.iter().filter(|s| !s.0).count();
            for v0 in 0..=whites {
                for v1 in 0..=(all.len() - whites).min(5 - v0) {
                    for p in enum_pyramid_partitions(m, v0, v1) {
                        let slots: Vec<Slot> = p.stones().iter().map(slot).collect();
                        let mut edges = Vec::new();
                        for (s, x) in slots.iter().enumerate() {
                            for y in supports(x, &all) {
                                edges.push((slots.iter().position(|z| *z == y).unwrap(), s));
                            }
                        }
                        let fp = FixedPoint::Pyramid(p.clone());
                        let stones = build_stones(Shape::Conifold { m }, &fp, &r).unwrap();
                        compare_assignments(t, &format!("conifold m={m} {p} σ={sigma:?}"), &stones, &edges);
                    }
                }
            }
        }
    }
    for (k, s1, s2) in [(1u32, 1i64, 1i64), (2, 0, 1), (3, 2, 0)] {
        for big_n in 1..=2usize {
            let r = RChargeData::spin_chain(s1, s2, &vec![0; big_n], k as i64).unwrap();
            for n in 1..=5u32 {
                for st in enum_spinchain_states(big_n, n, k) {
                    let mut edges = Vec::new();
                    let mut id = 0;
                    for &h in &st.0 {
                        for j in 0..h {
                            if j > 0 {
                                edges.push((id - 1, id));
                            }
                            id += 1;
                        }
                    }
                    let fp = FixedPoint::Spin(st.clone());
                    let stones = build_stones(Shape::SpinChain { framings: big_n, k }, &fp, &r).unwrap();
                    compare_assignments(t, &format!("spin N={big_n} k={k} {st}"), &stones, &edges);
                }
            }
        }
    }
}

pub(crate) fn counts(t: &mut Tally) {
    plane_partitions(t);
    pyramids(t);
    spin_states(t);
    degree_assignments(t);
}
