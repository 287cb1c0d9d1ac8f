use qvp_core::vertex::FamilyConfig;

use crate::args::{FamilyArgs, FamilyKind};
use crate::error::{usage, CliError};

pub fn parse_list(flag: &str, s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| usage(format!("--{flag}: `{x}` is not an integer"))))
        .collect()
}

pub fn parse_float_list(flag: &str, s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| usage(format!("--{flag}: `{x}` is not a number"))))
        .collect()
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("--{flag} is required for --family {family}")))
}

/// Build and validate the family; constraint violations are usage errors.
pub fn family_config(a: &FamilyArgs) -> Result<FamilyConfig, CliError> {
    let sigma3 = || -> Result<[i64; 3], CliError> {
        match &a.sigma {
            None => Ok([1, 1, 0]),
            Some(s) => {
                let v = parse_list("sigma", s)?;
                v.try_into().map_err(|_| usage("--sigma takes three integers s1,s2,s3"))
            }
        }
    };
    let cfg = match a.family {
        FamilyKind::Hilb => FamilyConfig::Hilb { n: need(a.n, "n", "hilb")? as usize, sigma: sigma3()? },
        FamilyKind::Conifold => FamilyConfig::Conifold {
            m: need(a.m, "m", "conifold")?,
            v0: need(a.v0, "v0", "conifold")?,
            v1: need(a.v1, "v1", "conifold")?,
            sigma: sigma3()?,
        },
        FamilyKind::Spinchain => {
            let framings = need(a.framings, "N", "spinchain")?;
            let (sigma1, sigma2) = match &a.sigma {
                None => (2, 0),
                Some(s) => match parse_list("sigma", s)?[..] {
                    [s1, s2] => (s1, s2),
                    _ => return Err(usage("--sigma takes two integers s1,s2 for the spin chain")),
                },
            };
            let alpha = match &a.alpha {
                None => vec![0; framings],
                Some(s) => parse_list("alpha", s)?,
            };
            FamilyConfig::SpinChain {
                framings,
                n: need(a.n, "n", "spinchain")?,
                k: need(a.k, "k", "spinchain")?,
                sigma1,
                sigma2,
                alpha,
            }
        }
    };
    cfg.validate()?;
    Ok(cfg)
}
