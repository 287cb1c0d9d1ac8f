use num_complex::Complex64;

use super::transcription::{
    conifold_matches, hilb_env, matches_display, spin_env, HILB, HILB_MASS, SPINCHAIN,
};
use super::vertex_checks::random_sigmas;
use super::Tally;
use crate::bethe::{
    compare_systems, derive_saddle, hilb_box_seeds, integrand_hilb, saddle_conifold, saddle_hilb, saddle_spinchain,
    saddle_spinchain_k1, solve, verify, NumericParams, RootSet, SaddleSystem, Seeds,
};
use crate::symbolic::Var;

pub(crate) fn derivation(t: &mut Tally) {
    let mut sigmas = vec![[1, 1, 0]];
    sigmas.extend(random_sigmas().into_iter().take(2));
    for sigma in sigmas {
        for n in 1..=3 {
            for mass in [false, true] {
                let derived = integrand_hilb(n, sigma, mass).and_then(|s| derive_saddle(&s));
                let same = derived.as_ref().map_err(|e| e.to_string()).and_then(|d| {
                    compare_systems(d, &saddle_hilb(n, mass)).map_err(|e| e.to_string())
                });
                t.check(same == Ok(true), || format!("n={n} σ={sigma:?} mass={mass}: derived {derived:?}"));
            }
        }
    }
}

pub(crate) fn transcriptions(t: &mut Tally) {
    for n in 1..=3 {
        t.check(matches_display(&saddle_hilb(n, false), HILB, &hilb_env(n, false)), || format!("hilb n={n}"));
        t.check(matches_display(&saddle_hilb(n, true), HILB_MASS, &hilb_env(n, true)), || format!("hilb mass n={n}"));
    }
    for m in 1..=2 {
        for v0 in 0..=2 {
            for v1 in 0..=2 {
                t.check(conifold_matches(&saddle_conifold(m, v0, v1), m, v0, v1), || {
                    format!("conifold m={m} v=({v0},{v1})")
                });
            }
        }
    }
    for big_n in 1..=3 {
        for n in 1..=3 {
            for k in 1..=3 {
                t.check(matches_display(&saddle_spinchain(big_n, n, k), SPINCHAIN, &spin_env(big_n, n, k)), || {
                    format!("spin chain N={big_n} n={n} k={k}")
                });
            }
            let k1 = saddle_spinchain_k1(big_n, n);
            t.check(
                matches_display(&k1, SPINCHAIN, &spin_env(big_n, n, 1))
                    && compare_systems(&k1, &saddle_spinchain(big_n, n, 1)).unwrap_or(false),
                || format!("spin chain k=1 variant N={big_n} n={n}"),
            );
        }
    }
}

fn residuals_ok(t: &mut Tally, what: &str, sys: &SaddleSystem, params: &NumericParams, roots: &RootSet) {
    let pts: Vec<Vec<Complex64>> = roots.roots.iter().map(|r| r.s.clone()).collect();
    match verify(sys, &pts, params) {
        Ok(res) => {
            let worst = res.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
            t.check(worst < 1e-9, || format!("{what}: residual {worst:e}"));
        }
        Err(e) => t.fail(format!("{what}: {e}")),
    }
}

pub(crate) fn numeric(t: &mut Tally) {
    let hilb1 = saddle_hilb(1, false);
    for zbar in [0.1, 0.25, 0.5, 1.0, 2.0, 3.7, 10.0, -0.8, -2.0, 0.03] {
        let p = NumericParams::new(1e-9).with(Var::H1, 0.3).with(Var::H2, 0.7).with_z("zbar", zbar);
        match solve(&hilb1, &p, &Seeds::Continuation(hilb_box_seeds(1, 0.3, 0.7))) {
            Ok(r) => {
                let ok = r.roots.len() == 1 && (r.roots[0].s[0] - Complex64::new(1.0 / zbar, 0.0)).norm() < 1e-10;
                t.check(ok, || format!("hilb n=1 z̄={zbar}: roots {:?}", r.roots));
                residuals_ok(t, &format!("hilb n=1 z̄={zbar}"), &hilb1, &p, &r);
            }
            Err(e) => t.fail(format!("hilb n=1 z̄={zbar}: {e}")),
        }
    }

    let spin = saddle_spinchain(2, 1, 1);
    let p = NumericParams::new(1e-9).with(Var::A(1), 0.0).with(Var::A(2), 1.0).with(Var::H2, 0.3).with_z("z", 2.0);
    // (s−a₁)(s−a₂) = z(a₁−s+ħ)(a₂−s+ħ) ⇔ (1−z)s² + (z(a₁+a₂+2ħ) − a₁ − a₂)s + a₁a₂ − z(a₁+ħ)(a₂+ħ) = 0
    let (a1, a2, hb, z): (f64, f64, f64, f64) = (0.0, 1.0, 0.3, 2.0);
    let (qa, qb, qc) = (1.0 - z, z * (a1 + a2 + 2.0 * hb) - a1 - a2, a1 * a2 - z * (a1 + hb) * (a2 + hb));
    let disc = (qb * qb - 4.0 * qa * qc).sqrt();
    let mut expect = [(-qb - disc) / (2.0 * qa), (-qb + disc) / (2.0 * qa)];
    expect.sort_by(f64::total_cmp);
    match solve(&spin, &p, &Seeds::Random { count: 32, seed: 11, radius: 3.0 }) {
        Ok(r) => {
            let mut got: Vec<Complex64> = r.roots.iter().map(|x| x.s[0]).collect();
            got.sort_by(|a, b| a.re.total_cmp(&b.re));
            let ok = got.len() == 2 && got.iter().zip(expect).all(|(g, e)| (g - Complex64::new(e, 0.0)).norm() < 1e-9);
            t.check(ok, || format!("spin chain (2,1,1): roots {got:?}, quadratic formula {expect:?}"));
            residuals_ok(t, "spin chain (2,1,1)", &spin, &p, &r);
        }
        Err(e) => t.fail(format!("spin chain (2,1,1): {e}")),
    }

    for (n, zbar) in [(2, 0.8), (3, 0.6), (3, -1.5)] {
        let sys = saddle_hilb(n, false);
        let p = NumericParams::new(1e-9).with(Var::H1, 0.31).with(Var::H2, 0.52).with_z("zbar", zbar);
        match solve(&sys, &p, &Seeds::Continuation(hilb_box_seeds(n, 0.31, 0.52))) {
            Ok(r) => residuals_ok(t, &format!("hilb n={n} z̄={zbar}"), &sys, &p, &r),
            Err(e) => t.fail(format!("hilb n={n} z̄={zbar}: {e}")),
        }
    }
    let coni = saddle_conifold(1, 1, 1);
    let p = NumericParams::new(1e-9).with(Var::H1, 0.3).with(Var::H2, 0.4).with_z("zbar0", 0.7).with_z("zbar1", 0.5);
    match solve(&coni, &p, &Seeds::Random { count: 64, seed: 3, radius: 3.0 }) {
        Ok(r) => residuals_ok(t, "conifold (1,1,1)", &coni, &p, &r),
        Err(e) => t.fail(format!("conifold (1,1,1): {e}")),
    }
}
