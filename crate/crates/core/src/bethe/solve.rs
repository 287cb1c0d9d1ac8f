//! Newton iteration with continuation in the Novikov variables.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BetheError, SaddleSystem};
use crate::combinat::enum_plane_partitions;
use crate::symbolic::{Polynomial, Var};

const NEWTON_STEP_TOL: f64 = 1e-12;
const MAX_NEWTON_ITERS: usize = 100;
const DENOMINATOR_TOL: f64 = 1e-8;
const COINCIDENCE_TOL: f64 = 1e-6;
const CONTINUATION_START: f64 = 1e6;
const CONTINUATION_FACTOR: f64 = 1.5;

/// Numeric values of the parameters and of every Novikov label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericParams {
    pub values: BTreeMap<String, f64>,
    pub z: BTreeMap<String, f64>,
    pub tol: f64,
}

impl NumericParams {
    pub fn new(tol: f64) -> Self {
        NumericParams { values: BTreeMap::new(), z: BTreeMap::new(), tol }
    }

    pub fn with(mut self, v: Var, x: f64) -> Self {
        self.values.insert(v.name(), x);
        self
    }

    pub fn with_z(mut self, label: &str, x: f64) -> Self {
        self.z.insert(label.to_string(), x);
        self
    }
}

/// Where Newton iterations start.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Seeds {
    /// Start points valid at `|z| → ∞`, continued down to the target values.
    Continuation(Vec<Vec<Complex64>>),
    /// Start points used directly at the target values.
    Direct(Vec<Vec<Complex64>>),
    /// Uniform points in the square `[−radius, radius]²` per coordinate.
    Random { count: usize, seed: u64, radius: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub s: Vec<Complex64>,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub unknowns: Vec<String>,
    pub params: NumericParams,
    pub roots: Vec<Root>,
    /// Seeds that did not end on an admissible root.
    pub failed_seeds: usize,
}

/// Box weights `c₁(χ_□)` of every plane partition of size `n`.
pub fn hilb_box_seeds(n: usize, h1: f64, h2: f64) -> Vec<Vec<Complex64>> {
    enum_plane_partitions(n)
        .iter()
        .map(|p| {
            p.boxes()
                .iter()
                .map(|b| {
                    let [i, j, k] = b.map(f64::from);
                    Complex64::new(-i * h1 - j * h2 + k * (h1 + h2), 0.0)
                })
                .collect()
        })
        .collect()
}

struct Compiled {
    unknowns: Vec<Var>,
    labels: Vec<usize>,
    lhs: Vec<Polynomial>,
    rhs: Vec<Polynomial>,
    dlhs: Vec<Vec<Polynomial>>,
    drhs: Vec<Vec<Polynomial>>,
    params: BTreeMap<Var, f64>,
    z: Vec<Complex64>,
}

impl Compiled {
    fn new(sys: &SaddleSystem, p: &NumericParams) -> Result<Self, BetheError> {
        let unknowns = sys.unknowns();
        let mut params = BTreeMap::new();
        for v in sys.parameters() {
            let x = p.values.get(&v.name()).ok_or_else(|| BetheError::MissingParameter(v.name()))?;
            params.insert(v, *x);
        }
        let names = sys.labels();
        let z = names
            .iter()
            .map(|l| p.z.get(l).map(|&x| Complex64::new(x, 0.0)).ok_or_else(|| BetheError::MissingParameter(l.clone())))
            .collect::<Result<_, _>>()?;
        let labels = sys.equations.iter().map(|e| names.iter().position(|l| *l == e.label).unwrap_or(0)).collect();
        let lhs: Vec<Polynomial> = sys.equations.iter().map(|e| e.lhs.clone()).collect();
        let rhs: Vec<Polynomial> = sys.equations.iter().map(|e| e.rhs.clone()).collect();
        let diff = |ps: &[Polynomial]| -> Vec<Vec<Polynomial>> {
            ps.iter().map(|p| unknowns.iter().map(|&v| p.derivative(v)).collect()).collect()
        };
        Ok(Compiled { dlhs: diff(&lhs), drhs: diff(&rhs), unknowns, labels, lhs, rhs, params, z })
    }

    fn point<'a>(&'a self, s: &'a [Complex64]) -> impl Fn(Var) -> Complex64 + 'a {
        move |v| match self.unknowns.iter().position(|&u| u == v) {
            Some(i) => s[i],
            None => Complex64::new(self.params.get(&v).copied().unwrap_or(f64::NAN), 0.0),
        }
    }

    fn residual(&self, s: &[Complex64], z: &[Complex64]) -> Vec<f64> {
        let pt = self.point(s);
        (0..self.lhs.len())
            .map(|i| {
                let r = self.rhs[i].eval(&pt);
                (z[self.labels[i]] * self.lhs[i].eval(&pt) - r).norm() / (1.0 + r.norm())
            })
            .collect()
    }

    fn newton(&self, start: &[Complex64], z: &[Complex64]) -> Option<Vec<Complex64>> {
        let n = start.len();
        let mut s = start.to_vec();
        for _ in 0..MAX_NEWTON_ITERS {
            let (f, j) = {
                let pt = self.point(&s);
                let f = DVector::from_fn(n, |i, _| z[self.labels[i]] * self.lhs[i].eval(&pt) - self.rhs[i].eval(&pt));
                let j = DMatrix::from_fn(n, n, |i, k| z[self.labels[i]] * self.dlhs[i][k].eval(&pt) - self.drhs[i][k].eval(&pt));
                (f, j)
            };
            let step = j.lu().solve(&(-f))?;
            let size: f64 = step.iter().map(|c| c.norm()).fold(0.0, f64::max);
            if !size.is_finite() {
                return None;
            }
            for (x, d) in s.iter_mut().zip(step.iter()) {
                *x += d;
            }
            let scale = s.iter().map(|c| c.norm()).fold(1.0, f64::max);
            if size <= NEWTON_STEP_TOL * scale {
                return Some(s);
            }
        }
        None
    }

    /// Follow a start point from `λ·z` at large `λ` down to `λ = 1`.
    fn continue_from(&self, start: &[Complex64]) -> Option<Vec<Complex64>> {
        let zmax = self.z.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut lambda = if zmax > 0.0 { (CONTINUATION_START / zmax).max(1.0) } else { 1.0 };
        let at = |l: f64| self.z.iter().map(|c| c * l).collect::<Vec<_>>();
        let mut s = self.newton(start, &at(lambda))?;
        let mut factor = CONTINUATION_FACTOR;
        while lambda > 1.0 {
            let next = (lambda / factor).max(1.0);
            match self.newton(&s, &at(next)) {
                Some(t) => {
                    s = t;
                    lambda = next;
                    factor = (factor * factor).min(CONTINUATION_FACTOR);
                }
                None => {
                    factor = factor.sqrt();
                    if factor < 1.0 + 1e-6 {
                        return None;
                    }
                }
            }
        }
        Some(s)
    }

    fn admissible(&self, s: &[Complex64], tol: f64) -> Option<f64> {
        let pt = self.point(s);
        if s.iter().any(|c| !c.is_finite()) || self.lhs.iter().any(|l| l.eval(&pt).norm() < DENOMINATOR_TOL) {
            return None;
        }
        for i in 0..s.len() {
            for j in 0..i {
                if same_kind(self.unknowns[i], self.unknowns[j]) && (s[i] - s[j]).norm() < COINCIDENCE_TOL {
                    return None;
                }
            }
        }
        let r = self.residual(s, &self.z).into_iter().fold(0.0, f64::max);
        (r < tol).then_some(r)
    }
}

fn same_kind(a: Var, b: Var) -> bool {
    std::mem::discriminant(&a) == std::mem::discriminant(&b)
}

/// Sort coordinates within each kind of unknown, so permuted roots coincide.
fn canonical(unknowns: &[Var], s: &[Complex64]) -> Vec<Complex64> {
    let mut out = s.to_vec();
    let mut i = 0;
    while i < unknowns.len() {
        let mut j = i;
        while j < unknowns.len() && same_kind(unknowns[i], unknowns[j]) {
            j += 1;
        }
        out[i..j].sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        i = j;
    }
    out
}

/// Equal up to reordering coordinates within each kind of unknown.
///
/// Sorting alone is not enough: coordinates with equal real parts up to
/// rounding may sort differently in two copies of the same root.
fn same_root(unknowns: &[Var], a: &[Complex64], b: &[Complex64], eps: f64) -> bool {
    let mut i = 0;
    while i < unknowns.len() {
        let mut j = i;
        while j < unknowns.len() && same_kind(unknowns[i], unknowns[j]) {
            j += 1;
        }
        let mut used = vec![false; j - i];
        for x in &a[i..j] {
            match (i..j).find(|&k| !used[k - i] && (x - b[k]).norm() < eps) {
                Some(k) => used[k - i] = true,
                None => return false,
            }
        }
        i = j;
    }
    true
}

/// Roots of the cleared system `z·lhs − rhs = 0` admissible for the rational one.
pub fn solve(sys: &SaddleSystem, params: &NumericParams, seeds: &Seeds) -> Result<RootSet, BetheError> {
    let c = Compiled::new(sys, params)?;
    let n = c.unknowns.len();
    let (starts, continuation) = match seeds {
        Seeds::Continuation(v) => (v.clone(), true),
        Seeds::Direct(v) => (v.clone(), false),
        Seeds::Random { count, seed, radius } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let pts = (0..*count)
                .map(|_| (0..n).map(|_| Complex64::new(rng.gen_range(-radius..=*radius), rng.gen_range(-radius..=*radius))).collect())
                .collect();
            (pts, false)
        }
    };
    let found: Vec<Option<Root>> = starts
        .par_iter()
        .map(|st| {
            if st.len() != n {
                return None;
            }
            let s = if continuation { c.continue_from(st) } else { c.newton(st, &c.z) }?;
            let residual = c.admissible(&s, params.tol)?;
            Some(Root { s: canonical(&c.unknowns, &s), residual })
        })
        .collect();
    let failed_seeds = found.iter().filter(|r| r.is_none()).count();
    let mut roots: Vec<Root> = Vec::new();
    for r in found.into_iter().flatten() {
        let dup = roots.iter().any(|q| same_root(&c.unknowns, &q.s, &r.s, 10.0 * params.tol));
        if !dup {
            roots.push(r);
        }
    }
    if roots.is_empty() {
        return Err(BetheError::NoConvergence);
    }
    Ok(RootSet { unknowns: c.unknowns.iter().map(Var::name).collect(), params: params.clone(), roots, failed_seeds })
}

/// `|z·lhs − rhs| / (1 + |rhs|)` per root and equation.
pub fn verify(sys: &SaddleSystem, roots: &[Vec<Complex64>], params: &NumericParams) -> Result<Vec<Vec<f64>>, BetheError> {
    let c = Compiled::new(sys, params)?;
    Ok(roots.iter().map(|s| if s.len() == c.unknowns.len() { c.residual(s, &c.z) } else { vec![f64::INFINITY] }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bethe::{saddle_conifold, saddle_hilb, saddle_spinchain};

    #[test]
    fn one_box_root() {
        let sys = saddle_hilb(1, false);
        let p = NumericParams::new(1e-9).with(Var::H1, 0.3).with(Var::H2, 0.7).with_z("zbar", 0.1);
        let r = solve(&sys, &p, &Seeds::Continuation(hilb_box_seeds(1, 0.3, 0.7))).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert!((r.roots[0].s[0] - Complex64::new(10.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn spin_chain_quadratic() {
        let sys = saddle_spinchain(2, 1, 1);
        let p = NumericParams::new(1e-9).with(Var::H2, 0.3).with(Var::A(1), 0.0).with(Var::A(2), 1.0).with_z("z", 2.0);
        let r = solve(&sys, &p, &Seeds::Random { count: 32, seed: 7, radius: 3.0 }).unwrap();
        let mut got: Vec<f64> = r.roots.iter().map(|x| x.s[0].re).collect();
        got.sort_by(f64::total_cmp);
        let disc = (2.2f64 * 2.2 - 4.0 * 0.78).sqrt();
        let expect = [(2.2 - disc) / 2.0, (2.2 + disc) / 2.0];
        assert_eq!(got.len(), 2);
        for (g, e) in got.iter().zip(expect) {
            assert!((g - e).abs() < 1e-9);
        }
    }

    #[test]
    fn permuted_roots_are_duplicates() {
        let u = [Var::S(1), Var::S(2)];
        let (x, y) = (Complex64::new(-1.7243281523196574, -0.64), Complex64::new(-1.724328152319657, 0.64));
        assert!(same_root(&u, &canonical(&u, &[x, y]), &canonical(&u, &[y, x]), 1e-8));
        assert!(!same_root(&u, &[x, y], &[x, x], 1e-8));
    }

    #[test]
    fn conifold_single_black() {
        let sys = saddle_conifold(1, 0, 1);
        // h3 = -h1 - h2 = -0.7
        let p = NumericParams::new(1e-9).with(Var::H1, 0.3).with(Var::H2, 0.4).with_z("zbar1", 0.5);
        let r = solve(&sys, &p, &Seeds::Random { count: 16, seed: 1, radius: 3.0 }).unwrap();
        let pos: Vec<f64> = r.roots.iter().map(|x| x.s[0].re).filter(|&x| x > 0.0).collect();
        let expect = (-0.7 + (0.49f64 + 8.0).sqrt()) / 2.0;
        assert_eq!(pos.len(), 1);
        assert!((pos[0] - expect).abs() < 1e-9);
    }

    #[test]
    fn residual_report() {
        let sys = saddle_hilb(1, false);
        let p = NumericParams::new(1e-9).with_z("zbar", 0.5);
        let res = verify(&sys, &[vec![Complex64::new(2.0, 0.0)], vec![Complex64::new(2.001, 0.0)]], &p).unwrap();
        assert_eq!(res[0][0], 0.0);
        assert!(res[1][0] > 1e-9);
    }

    #[test]
    fn two_box_roots_verify() {
        let sys = saddle_hilb(2, false);
        let p = NumericParams::new(1e-9).with(Var::H1, 0.31).with(Var::H2, 0.52).with_z("zbar", 0.8);
        let r = solve(&sys, &p, &Seeds::Continuation(hilb_box_seeds(2, 0.31, 0.52))).unwrap();
        assert!(!r.roots.is_empty());
        let pts: Vec<Vec<Complex64>> = r.roots.iter().map(|x| x.s.clone()).collect();
        for res in verify(&sys, &pts, &p).unwrap() {
            assert!(res.iter().all(|&x| x < 1e-9));
        }
    }
}
