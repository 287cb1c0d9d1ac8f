use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::Tally;
use crate::combinat::{enum_degree_assignments_up_to, min_degree, DegreeAssignment, FixedPoint, PlanePartition};
use crate::ktheory::euler;
use crate::symbolic::{Polynomial, RationalFunction, Var};
use crate::vertex::{
    coefficient, coefficient_gamma_form, mb_series, series, tangent_class, FamilyConfig, FixedPointSelection,
    Insertion, VertexError,
};

const SIGMA_SEED: u64 = 0x5ea1;

/// Five distinct integer σ with `σ₁+σ₂+σ₃ = 2`, drawn from a fixed seed.
pub fn random_sigmas() -> Vec<[i64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(SIGMA_SEED);
    let mut out: Vec<[i64; 3]> = Vec::new();
    while out.len() < 5 {
        let (a, b) = (rng.gen_range(-1..=2), rng.gen_range(-1..=2));
        let s = [a, b, 2 - a - b];
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn insertions() -> Vec<(&'static str, Insertion)> {
    vec![
        ("1", Insertion::one()),
        ("p1", Insertion::power_sum(1)),
        ("p1^2-p2", "p1^2 - p2".parse().expect("valid insertion")),
        ("mass", Insertion::one().with_mass(true)),
    ]
}

fn outcome(r: Result<RationalFunction, VertexError>) -> Result<RationalFunction, String> {
    r.map_err(|e| e.to_string())
}

pub(crate) fn gamma_form(t: &mut Tally) {
    let mut jobs = Vec::new();
    for sigma in random_sigmas() {
        for n in 1..=3 {
            let family = FamilyConfig::Hilb { n, sigma };
            for fp in family.fixed_points() {
                let stones = family.stones(&fp).expect("stones");
                for a in enum_degree_assignments_up_to(&stones, 3) {
                    for (name, ins) in insertions() {
                        jobs.push((family.clone(), fp.clone(), a.clone(), name, ins));
                    }
                }
            }
        }
    }
    let results: Vec<Option<String>> = jobs
        .par_iter()
        .map(|(family, fp, a, name, ins)| {
            let euler_form = outcome(coefficient(family, fp, a, ins));
            let gamma = outcome(coefficient_gamma_form(family, fp, a, ins));
            (euler_form != gamma).then(|| {
                format!("{family:?} {fp} z={:?} τ={name}: Euler form {euler_form:?}, Γ form {gamma:?}", a.z)
            })
        })
        .collect();
    t.record(results);
}

fn lowest_min_degree(family: &FamilyConfig) -> i64 {
    family.fixed_points().iter().map(|fp| min_degree(&family.stones(fp).expect("stones"))).min().unwrap_or(0)
}

pub(crate) fn mellin_barnes(t: &mut Tally) {
    let mut sigmas = vec![[1, 1, 0]];
    sigmas.extend(random_sigmas().into_iter().take(2));
    for sigma in sigmas {
        for n in 1..=2 {
            let family = FamilyConfig::Hilb { n, sigma };
            let max = lowest_min_degree(&family) + 3;
            for (name, ins) in insertions() {
                let a = series(&family, &FixedPointSelection::All, &ins, max);
                let b = mb_series(&family, &FixedPointSelection::All, &ins, max);
                let same = match (&a, &b) {
                    (Ok(a), Ok(b)) => a.coefficients == b.coefficients && a.min_degree == b.min_degree,
                    _ => false,
                };
                t.check(same, || format!("n={n} σ={sigma:?} τ={name}: series {a:?} vs residues {b:?}"));
            }
        }
    }
}

fn grid_families() -> Vec<FamilyConfig> {
    let mut out = Vec::new();
    for sigma in [[1, 1, 0], [0, 0, 2], [2, -1, 1]] {
        for n in 1..=3 {
            out.push(FamilyConfig::Hilb { n, sigma });
        }
        for m in 1..=2 {
            for v0 in 0..=2 {
                for v1 in 0..=2 {
                    out.push(FamilyConfig::Conifold { m, v0, v1, sigma });
                }
            }
        }
    }
    for (k, sigma1, sigma2) in [(1, 1, 1), (2, 0, 1), (2, 2, 0)] {
        for framings in 1..=2 {
            for n in 1..=3 {
                out.push(FamilyConfig::SpinChain { framings, n, k, sigma1, sigma2, alpha: vec![0; framings] });
            }
        }
    }
    out
}

fn zero_ledger(t: &mut Tally) {
    for family in grid_families() {
        let rel = family.weight_relation();
        for fp in family.fixed_points() {
            let stones = family.stones(&fp).expect("stones");
            for a in enum_degree_assignments_up_to(&stones, 2) {
                let net: Result<i64, String> = tangent_class(&family, &stones, &a).map_err(|e| e.to_string()).and_then(|k| {
                    let mut net = 0;
                    for (ch, m) in k.terms() {
                        if rel.c1(ch).map_err(|e| e.to_string())?.is_zero() {
                            net += m;
                        }
                    }
                    Ok(net)
                });
                t.check(net == Ok(0), || format!("{family:?} {fp} z={:?}: net zero-weight multiplicity {net:?}", a.z));
            }
        }
    }
}

fn lowest_term(t: &mut Tally) {
    for family in grid_families() {
        let rel = family.weight_relation();
        for (i, fp) in family.fixed_points().iter().enumerate() {
            let stones = family.stones(fp).expect("stones");
            let zero = DegreeAssignment::zero(stones.len());
            let min = min_degree(&stones);
            let s = match series(&family, &FixedPointSelection::Index(i), &Insertion::one(), min + 1) {
                Ok(s) => s,
                Err(e) => {
                    t.fail(format!("{family:?} {fp}: {e}"));
                    continue;
                }
            };
            let want = tangent_class(&family, &stones, &zero)
                .map_err(|e| e.to_string())
                .and_then(|k| euler(&k.neg(), &rel).map_err(|e| e.to_string()))
                .map(|v| v.to_ratfun());
            let key = family.degree_key(&stones, &zero);
            let got = s.get(&key);
            let below = s.coefficients.keys().any(|k| k.iter().sum::<i64>() < min);
            t.check(want.as_ref() == Ok(&got) && !below, || {
                format!("{family:?} {fp}: lowest coefficient {got}, euler(-T) {want:?}")
            });
        }
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn h(k: usize) -> Polynomial {
    match k {
        0 => Polynomial::var(Var::H1),
        1 => Polynomial::var(Var::H2),
        _ => -(Polynomial::var(Var::H1) + Polynomial::var(Var::H2)),
    }
}

/// Whether `a = b|_{hᵢ ↦ h_{perm[i]}}`, by cross-multiplication.
fn equal_after_permuting(a: &RationalFunction, b: &RationalFunction, perm: [usize; 3]) -> bool {
    let map: BTreeMap<Var, Polynomial> = [(Var::H1, h(perm[0])), (Var::H2, h(perm[1]))].into_iter().collect();
    let (n, d) = (b.numerator().substitute_all(&map), b.denominator().substitute_all(&map));
    a.numerator() * &d == &n * a.denominator()
}

type PermJob = (FamilyConfig, FixedPoint, DegreeAssignment, FamilyConfig, FixedPoint, DegreeAssignment, [usize; 3]);

fn permutation_jobs(sigma: [i64; 3]) -> Vec<PermJob> {
    let mut jobs = Vec::new();
    for n in 1..=3 {
        let family = FamilyConfig::Hilb { n, sigma };
        for perm in PERMUTATIONS {
            let mut sigma_p = [0; 3];
            for i in 0..3 {
                sigma_p[perm[i]] = sigma[i];
            }
            let family_p = FamilyConfig::Hilb { n, sigma: sigma_p };
            for fp in family.fixed_points() {
                let FixedPoint::Plane(p) = &fp else { unreachable!() };
                let q: PlanePartition = p.permuted(perm);
                let stones = family.stones(&fp).expect("stones");
                for a in enum_degree_assignments_up_to(&stones, 2) {
                    let mut z = vec![0; a.z.len()];
                    for (s, b) in p.boxes().iter().enumerate() {
                        let mut c = [0; 3];
                        for i in 0..3 {
                            c[perm[i]] = b[i];
                        }
                        z[q.boxes().iter().position(|x| *x == c).expect("permuted box")] = a.z[s];
                    }
                    jobs.push((
                        family.clone(),
                        fp.clone(),
                        a,
                        family_p.clone(),
                        FixedPoint::Plane(q.clone()),
                        DegreeAssignment { z },
                        perm,
                    ));
                }
            }
        }
    }
    jobs
}

fn permutation_covariance(t: &mut Tally) {
    let mut sigmas = vec![[1, 1, 0], [2, -1, 1]];
    sigmas.push(random_sigmas()[0]);
    for sigma in sigmas {
        let results: Vec<Option<String>> = permutation_jobs(sigma)
            .par_iter()
            .map(|(family, fp, a, family_p, fq, b, perm)| {
                let lhs = outcome(coefficient(family_p, fq, b, &Insertion::one()));
                let rhs = outcome(coefficient(family, fp, a, &Insertion::one()));
                let same = match (&lhs, &rhs) {
                    (Ok(x), Ok(y)) => equal_after_permuting(x, y, *perm),
                    (x, y) => x == y,
                };
                (!same).then(|| format!("{fp} σ={sigma:?} z={:?} perm={perm:?}: {lhs:?} vs {rhs:?}", a.z))
            })
            .collect();
        t.record(results);
        if sigma[0] == sigma[1] {
            for n in 1..=3 {
                let family = FamilyConfig::Hilb { n, sigma };
                let s = series(&family, &FixedPointSelection::All, &Insertion::one(), lowest_min_degree(&family) + 2)
                    .expect("series");
                let symmetric = s.coefficients.values().all(|v| equal_after_permuting(v, v, [1, 0, 2]));
                t.check(symmetric, || format!("n={n} σ={sigma:?}: series not symmetric in h1, h2"));
            }
        }
    }
}

pub(crate) fn invariants(t: &mut Tally) {
    zero_ledger(t);
    lowest_term(t);
    permutation_covariance(t);
}

