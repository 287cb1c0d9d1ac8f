use qvp_core::bethe::{
    compare_systems, derive_saddle, hilb_box_seeds, integrand_for, saddle_conifold, saddle_hilb, saddle_spinchain,
    solve, BetheError, NumericParams, SaddleSystem, Seeds,
};
use qvp_core::symbolic::Var;
use qvp_core::vertex::FamilyConfig;
use serde_json::{json, Value};

use crate::args::{DeriveArgs, SolveArgs};
use crate::error::{usage, CliError};
use crate::family::{family_config, parse_float_list};
use crate::output::Rendered;

/// The closed-form system of a family.
pub fn closed_form(family: &FamilyConfig, mass: bool) -> SaddleSystem {
    match family {
        FamilyConfig::Hilb { n, .. } => saddle_hilb(*n, mass),
        FamilyConfig::Conifold { m, v0, v1, .. } => saddle_conifold(*m, *v0, *v1),
        FamilyConfig::SpinChain { framings, n, k, .. } => saddle_spinchain(*framings, *n as usize, *k),
    }
}

fn system_json(sys: &SaddleSystem) -> Value {
    let eqs: Vec<Value> = sys
        .equations
        .iter()
        .map(|e| {
            json!({
                "unknown": e.unknown.name(),
                "label": e.label,
                "lhs": e.lhs.to_string(),
                "rhs": e.rhs.to_string(),
            })
        })
        .collect();
    json!({ "name": sys.name, "equations": eqs })
}

fn derived(a: &DeriveArgs) -> Result<(FamilyConfig, SaddleSystem), CliError> {
    let family = family_config(&a.family)?;
    let spec = integrand_for(&family, a.mass)?;
    Ok((family, derive_saddle(&spec)?))
}

pub fn derive(a: &DeriveArgs) -> Result<Rendered, CliError> {
    let (family, sys) = derived(a)?;
    let payload = json!({ "family": family.name(), "system": system_json(&sys) });
    Ok(Rendered { payload, csv: None, text: Some(sys.to_string()), failure: None })
}

pub fn compare(a: &DeriveArgs) -> Result<Rendered, CliError> {
    let (family, sys) = derived(a)?;
    let closed = closed_form(&family, a.mass);
    let equal = compare_systems(&sys, &closed)?;
    let payload = json!({
        "family": family.name(),
        "derived": system_json(&sys),
        "closed_form": system_json(&closed),
        "equal": equal,
    });
    let text = format!("{sys}{closed}{}\n", if equal { "equal" } else { "different" });
    let failure = (!equal).then(|| CliError::Invariant("derived system differs from the closed form".into()));
    Ok(Rendered { payload, csv: None, text: Some(text), failure })
}

fn numeric_params(a: &SolveArgs, family: &FamilyConfig, sys: &SaddleSystem) -> Result<NumericParams, CliError> {
    let mut p = NumericParams::new(a.tol);
    let spin = matches!(family, FamilyConfig::SpinChain { .. });
    let mut set = |v: Var, x: Option<f64>| {
        if let Some(x) = x {
            p.values.insert(v.name(), x);
        }
    };
    set(Var::H1, a.h1);
    // the spin-chain ħ is the second torus weight
    if spin && a.hbar.is_some() && a.h2.is_some() {
        return Err(usage("--hbar and --h2 name the same spin-chain parameter"));
    }
    set(Var::H2, if spin { a.hbar.or(a.h2) } else { a.h2 });
    if !spin && a.hbar.is_some() {
        return Err(usage("--hbar only applies to the spin chain"));
    }
    set(Var::Mass, a.mass);
    if let Some(list) = &a.a {
        for (i, x) in parse_float_list("a", list)?.into_iter().enumerate() {
            set(Var::A(i as u16 + 1), Some(x));
        }
    }
    for label in sys.labels() {
        let x = match label.as_str() {
            "zbar0" => a.z0,
            "zbar1" => a.z1,
            _ => a.z,
        };
        let flag = match label.as_str() {
            "zbar0" => "--z0",
            "zbar1" => "--z1",
            _ => "--z",
        };
        p.z.insert(label.clone(), x.ok_or_else(|| usage(format!("{flag} is required for this system")))?);
    }
    let missing: Vec<String> =
        sys.parameters().into_iter().map(|v| v.name()).filter(|n| !p.values.contains_key(n)).collect();
    if !missing.is_empty() {
        return Err(usage(format!("missing numeric values for {}", missing.join(", "))));
    }
    Ok(p)
}

/// Shortest round-trip text, matching the JSON output.
fn float(x: f64) -> String {
    Value::from(x).to_string()
}

pub fn solve_cmd(a: &SolveArgs) -> Result<Rendered, CliError> {
    let family = family_config(&a.family)?;
    if a.mass.is_some() && !matches!(family, FamilyConfig::Hilb { .. }) {
        return Err(usage("--mass applies to the Hilbert scheme only"));
    }
    let sys = closed_form(&family, a.mass.is_some());
    let p = numeric_params(a, &family, &sys)?;
    // box weights are the large-z̄ roots only without the mass
    let seeds = match (&family, a.h1, a.h2, a.mass) {
        (FamilyConfig::Hilb { n, .. }, Some(h1), Some(h2), None) => Seeds::Continuation(hilb_box_seeds(*n, h1, h2)),
        _ => Seeds::Random { count: a.seeds, seed: a.seed, radius: a.radius },
    };
    let roots = match solve(&sys, &p, &seeds) {
        Ok(r) if !r.roots.is_empty() => r,
        Ok(_) => return Err(BetheError::NoConvergence.into()),
        Err(e) => return Err(e.into()),
    };
    let rows_json: Vec<Value> = roots
        .roots
        .iter()
        .map(|r| json!({ "s": r.s.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(), "residual": r.residual }))
        .collect();
    let payload = json!({
        "system": sys.name,
        "unknowns": roots.unknowns,
        "params": { "values": p.values, "z": p.z, "tol": p.tol },
        "roots": rows_json,
        "failed_seeds": roots.failed_seeds,
    });
    let mut header = vec!["root".to_string()];
    for u in &roots.unknowns {
        header.push(format!("{u}_re"));
        header.push(format!("{u}_im"));
    }
    header.push("residual".into());
    let mut rows = vec![header];
    for (i, r) in roots.roots.iter().enumerate() {
        let mut row = vec![i.to_string()];
        for c in &r.s {
            row.push(float(c.re));
            row.push(float(c.im));
        }
        row.push(float(r.residual));
        rows.push(row);
    }
    Ok(Rendered { payload, csv: Some(rows), text: None, failure: None })
}
