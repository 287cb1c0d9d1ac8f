//! Brute-force counterparts of the enumerators, written from the definitions.

use std::collections::{BTreeMap, HashSet};

/// Plane partitions of `n` counted as weakly decreasing height matrices.
pub fn plane_partition_count(n: usize) -> usize {
    fn go(n: usize, cell: usize, left: usize, heights: &mut Vec<usize>) -> usize {
        if left == 0 {
            return 1;
        }
        if cell == n * n {
            return 0;
        }
        let (i, j) = (cell / n, cell % n);
        let up = if i > 0 { heights[cell - n] } else { left };
        let before = if j > 0 { heights[cell - 1] } else { left };
        let bound = up.min(before).min(left);
        let mut total = 0;
        for h in (0..=bound).rev() {
            heights[cell] = h;
            total += go(n, cell + 1, left - h, heights);
        }
        heights[cell] = 0;
        total
    }
    if n == 0 {
        return 1;
    }
    go(n, 0, n, &mut vec![0; n * n])
}

/// Coefficients of `∏_{k≥1} (1 − x^k)^{−k}` up to `x^max`.
pub fn macmahon(max: usize) -> Vec<u64> {
    let mut c = vec![0u64; max + 1];
    c[0] = 1;
    for k in 1..=max {
        for _ in 0..k {
            for i in k..=max {
                c[i] += c[i - k];
            }
        }
    }
    c
}

/// Every box other than the origin has all its coordinate predecessors.
pub fn is_plane_partition(boxes: &[[u32; 3]]) -> bool {
    let set: HashSet<[u32; 3]> = boxes.iter().copied().collect();
    set.len() == boxes.len()
        && boxes.iter().all(|b| {
            (0..3).all(|i| {
                if b[i] == 0 {
                    return true;
                }
                let mut p = *b;
                p[i] -= 1;
                set.contains(&p)
            })
        })
}

/// Stone of the length-`m` arrangement as `(black, weight exponents of t₁, t₂, t₃)`.
pub type Slot = (bool, [i64; 3]);

/// Stones that must lie in a partition containing `s`: a white stone of weight
/// `w` rests on the black stones of weights `w` and `w/t₃`; a black stone off the
/// top layer rests on the white stones of weights `w/t₁` and `w/t₂`.
pub fn supports(s: &Slot, arrangement: &HashSet<Slot>) -> Vec<Slot> {
    let (black, [a, b, c]) = *s;
    let candidates: Vec<Slot> = if black {
        vec![(false, [a - 1, b, c]), (false, [a, b - 1, c])]
    } else {
        vec![(true, [a, b, c]), (true, [a, b, c - 1])]
    };
    candidates.into_iter().filter(|x| arrangement.contains(x)).collect()
}

/// Counts of closed subsets of `arrangement` keyed by `(white, black)`.
pub fn pyramid_counts(arrangement: &[Slot]) -> BTreeMap<(usize, usize), usize> {
    let all: HashSet<Slot> = arrangement.iter().copied().collect();
    let sup: Vec<Vec<usize>> = arrangement
        .iter()
        .map(|s| supports(s, &all).iter().map(|x| arrangement.iter().position(|y| y == x).unwrap()).collect())
        .collect();
    let mut out = BTreeMap::new();
    for mask in 0u64..(1u64 << arrangement.len()) {
        let inside = |i: usize| mask >> i & 1 == 1;
        if (0..arrangement.len()).all(|i| !inside(i) || sup[i].iter().all(|&j| inside(j))) {
            let black = (0..arrangement.len()).filter(|&i| inside(i) && arrangement[i].0).count();
            let white = mask.count_ones() as usize - black;
            *out.entry((white, black)).or_insert(0) += 1;
        }
    }
    out
}

/// Tuples in `[0, k]^N` summing to `n`.
pub fn spin_state_count(big_n: usize, n: u32, k: u32) -> usize {
    let mut count = 0;
    let mut digits = vec![0u32; big_n];
    loop {
        if digits.iter().sum::<u32>() == n {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == big_n {
                return count;
            }
            if digits[i] < k {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Vectors in `[0, excess]^stones` with sum `excess` and `z[succ] ≥ z[pred]` on every edge.
pub fn monotone_count(stones: usize, edges: &[(usize, usize)], excess: i64) -> usize {
    if excess < 0 {
        return 0;
    }
    if stones == 0 {
        return usize::from(excess == 0);
    }
    let mut z = vec![0i64; stones];
    let mut count = 0;
    loop {
        if z.iter().sum::<i64>() == excess && edges.iter().all(|&(p, s)| z[s] >= z[p]) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == stones {
                return count;
            }
            if z[i] < excess {
                z[i] += 1;
                break;
            }
            z[i] = 0;
            i += 1;
        }
    }
}

/// `(pred, succ)` edges between boxes differing by one unit in one coordinate.
pub fn box_edges(boxes: &[[u32; 3]]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (s, b) in boxes.iter().enumerate() {
        for i in 0..3 {
            if b[i] > 0 {
                let mut p = *b;
                p[i] -= 1;
                if let Some(pi) = boxes.iter().position(|x| *x == p) {
                    out.push((pi, s));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(macmahon(6), vec![1, 1, 3, 6, 13, 24, 48]);
        assert_eq!((0..=4).map(plane_partition_count).collect::<Vec<_>>(), vec![1, 1, 3, 6, 13]);
        assert_eq!(spin_state_count(2, 2, 2), 3);
        assert_eq!(spin_state_count(1, 2, 1), 0);
        assert_eq!(monotone_count(2, &[(0, 1)], 2), 2);
        assert!(!is_plane_partition(&[[0, 0, 0], [0, 2, 0]]));
    }
}
