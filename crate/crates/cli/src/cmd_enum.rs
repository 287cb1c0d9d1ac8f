use qvp_core::combinat::{enum_plane_partitions, enum_pyramid_partitions, enum_spinchain_states, Color};
use serde_json::{json, Value};

use crate::args::EnumCommand;
use crate::cache::cached;
use crate::error::CliError;
use crate::output::Rendered;

fn listing(cmd: &EnumCommand) -> Value {
    match cmd {
        EnumCommand::Pp { n, .. } => {
            let fps: Vec<Value> = enum_plane_partitions(*n)
                .iter()
                .map(|p| json!({ "label": p.to_string(), "boxes": p.boxes() }))
                .collect();
            json!(fps)
        }
        EnumCommand::Pyramid { m, v0, v1, .. } => {
            let fps: Vec<Value> = enum_pyramid_partitions(*m, *v0, *v1)
                .iter()
                .map(|p| {
                    json!({
                        "label": p.to_string(),
                        "white": p.count(Color::White),
                        "black": p.count(Color::Black),
                        "stones": p.stones().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!(fps)
        }
        EnumCommand::Spin { framings, n, k, .. } => {
            let fps: Vec<Value> =
                enum_spinchain_states(*framings, *n, *k).iter().map(|s| json!({ "label": s.to_string(), "k": s.0 })).collect();
            json!(fps)
        }
    }
}

fn request(cmd: &EnumCommand) -> Value {
    match cmd {
        EnumCommand::Pp { n, .. } => json!({ "family": "pp", "n": n }),
        EnumCommand::Pyramid { m, v0, v1, .. } => json!({ "family": "pyramid", "m": m, "v0": v0, "v1": v1 }),
        EnumCommand::Spin { framings, n, k, .. } => json!({ "family": "spin", "N": framings, "n": n, "k": k }),
    }
}

pub fn run(cmd: &EnumCommand) -> Result<Rendered, CliError> {
    let cache = match cmd {
        EnumCommand::Pp { cache, .. } | EnumCommand::Pyramid { cache, .. } | EnumCommand::Spin { cache, .. } => cache,
    };
    let req = request(cmd);
    let (fixed_points, _) = cached(cache.cache_dir.as_deref(), &req, || Ok(listing(cmd)))?;
    let labels: Vec<Vec<String>> = std::iter::once(vec!["index".into(), "label".into()])
        .chain(fixed_points.as_array().into_iter().flatten().enumerate().map(|(i, f)| {
            vec![i.to_string(), f["label"].as_str().unwrap_or_default().to_string()]
        }))
        .collect();
    let count = fixed_points.as_array().map_or(0, Vec::len);
    let mut payload = req;
    payload["count"] = json!(count);
    payload["fixed_points"] = fixed_points;
    let text = format!("{count}\n");
    Ok(Rendered { payload, csv: Some(labels), text: Some(text), failure: None })
}
