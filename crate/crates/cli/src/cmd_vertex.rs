use std::collections::BTreeMap;

use qvp_core::combinat::{enum_degree_assignments_up_to, min_degree};
use qvp_core::symbolic::RationalFunction;
use qvp_core::vertex::{
    coefficient, coefficient_gamma_form, mb_series, series, FamilyConfig, FixedPointSelection, Insertion, VertexSeries,
};
use serde_json::{json, Value};

use crate::args::{Oracle, VertexArgs};
use crate::error::{usage, CliError};
use crate::family::family_config;
use crate::output::Rendered;

pub fn parse_insertion(tau: &str, mass: bool) -> Result<Insertion, CliError> {
    let ins: Insertion = tau.parse().map_err(|e| usage(format!("--tau: {e}")))?;
    Ok(ins.with_mass(mass))
}

fn parse_selection(s: &str) -> Result<FixedPointSelection, CliError> {
    if s == "all" {
        return Ok(FixedPointSelection::All);
    }
    s.parse()
        .map(FixedPointSelection::Index)
        .map_err(|_| usage(format!("--fixed-point must be `all` or an index, got `{s}`")))
}

fn lowest_degree(family: &FamilyConfig, sel: &FixedPointSelection) -> Result<i64, CliError> {
    let mut lowest = None::<i64>;
    for (i, fp) in family.fixed_points().iter().enumerate() {
        if matches!(sel, FixedPointSelection::Index(j) if *j != i) {
            continue;
        }
        let m = min_degree(&family.stones(fp)?);
        lowest = Some(lowest.map_or(m, |l| l.min(m)));
    }
    Ok(lowest.unwrap_or(0))
}

fn degree_json(key: &[i64]) -> Value {
    match key {
        [d] => json!(d),
        _ => json!(key),
    }
}

/// Degrees at which some decoration's Γ-ratio coefficient differs from its
/// Euler-class coefficient.
fn gamma_mismatches(
    family: &FamilyConfig,
    sel: &FixedPointSelection,
    ins: &Insertion,
    max_degree: i64,
) -> Result<Vec<Vec<i64>>, CliError> {
    let mut bad = Vec::new();
    for (i, fp) in family.fixed_points().iter().enumerate() {
        if matches!(sel, FixedPointSelection::Index(j) if *j != i) {
            continue;
        }
        let stones = family.stones(fp)?;
        for a in enum_degree_assignments_up_to(&stones, max_degree - min_degree(&stones)) {
            if coefficient_gamma_form(family, fp, &a, ins)? != coefficient(family, fp, &a, ins)? {
                bad.push(family.degree_key(&stones, &a));
            }
        }
    }
    bad.sort();
    bad.dedup();
    Ok(bad)
}

fn series_mismatches(s: &VertexSeries, other: &BTreeMap<Vec<i64>, RationalFunction>) -> Vec<Vec<i64>> {
    let mut keys: Vec<&Vec<i64>> = s.coefficients.keys().chain(other.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter(|k| s.get(k) != other.get(*k).cloned().unwrap_or_else(RationalFunction::zero))
        .cloned()
        .collect()
}

pub fn run(a: &VertexArgs) -> Result<Rendered, CliError> {
    let family = family_config(&a.family)?;
    let ins = parse_insertion(&a.tau, a.mass)?;
    let sel = parse_selection(&a.fixed_point)?;
    let n_fps = family.fixed_points().len();
    if let FixedPointSelection::Index(i) = sel {
        if i >= n_fps {
            return Err(usage(format!("--fixed-point {i} out of range ({n_fps} fixed points)")));
        }
    }
    if a.oracle != Oracle::None && !matches!(family, FamilyConfig::Hilb { .. }) {
        return Err(usage("the gamma and mb oracles exist for the Hilbert scheme only"));
    }
    let max_degree = match a.max_degree {
        Some(d) => d,
        None => lowest_degree(&family, &sel)? + 3,
    };
    let s = series(&family, &sel, &ins, max_degree)?;

    let oracle = match a.oracle {
        Oracle::None => None,
        Oracle::Gamma => Some(("gamma", gamma_mismatches(&family, &sel, &ins, max_degree)?)),
        Oracle::Mb => Some(("mb", series_mismatches(&s, &mb_series(&family, &sel, &ins, max_degree)?.coefficients))),
    };

    let mut params = serde_json::to_value(&family)?;
    if let Value::Object(m) = &mut params {
        m.remove("family");
        m.insert("tau".into(), json!(a.tau));
        m.insert("mass".into(), json!(a.mass));
        m.insert("max_degree".into(), json!(max_degree));
    }
    let coefficients: Vec<Value> = s
        .coefficients
        .iter()
        .map(|(k, v)| json!({ "degree": degree_json(k), "value": v.to_string() }))
        .collect();
    let mut payload = json!({
        "family": family.name(),
        "params": params,
        "fixed_point": s.fixed_point.clone().unwrap_or_else(|| "all".into()),
        "min_degree": s.min_degree,
        "coefficients": coefficients,
    });
    let mut failed = None;
    if let Some((name, bad)) = &oracle {
        let bad: Vec<Value> = bad.iter().map(|k| degree_json(k)).collect();
        if !bad.is_empty() {
            failed = Some(format!("{name} oracle disagrees at degrees {}", Value::Array(bad.clone())));
        }
        payload["oracle"] = json!({ "name": name, "passed": bad.is_empty(), "mismatched_degrees": bad });
    }

    let conifold = matches!(family, FamilyConfig::Conifold { .. });
    let mut rows = vec![if conifold { vec!["d0", "d1", "value"] } else { vec!["degree", "value"] }
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>()];
    for (k, v) in &s.coefficients {
        let mut r: Vec<String> = k.iter().map(ToString::to_string).collect();
        r.push(v.to_string());
        rows.push(r);
    }
    Ok(Rendered { payload, csv: Some(rows), text: None, failure: failed.map(CliError::Invariant) })
}
