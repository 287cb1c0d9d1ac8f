//! The saddle systems against the LaTeX displays they transcribe.

use super::latex::{instantiate, Bind};
use crate::bethe::SaddleSystem;
use crate::symbolic::Var;

pub const HILB: &str = include_str!("../../golden/hilb.tex");
pub const HILB_MASS: &str = include_str!("../../golden/hilb_mass.tex");
pub const CONIFOLD: &str = include_str!("../../golden/conifold.tex");
pub const SPINCHAIN: &str = include_str!("../../golden/spinchain.tex");

/// Whether every equation `label·lhs = rhs` of `sys` is the display
/// instantiated at its unknown.
pub fn matches_display(sys: &SaddleSystem, display: &str, env: &dyn Fn(Var) -> Vec<(&'static str, Bind)>) -> bool {
    sys.equations.iter().all(|e| {
        let (label, num, den) = instantiate(display, &env(e.unknown));
        label == e.label && &e.rhs * &den == &e.lhs * &num
    })
}

fn index(v: Var) -> i64 {
    match v {
        Var::S(i) | Var::S0(i) | Var::S1(i) => i as i64,
        _ => panic!("{v} is not an unknown"),
    }
}

pub fn hilb_env(n: usize, mass: bool) -> impl Fn(Var) -> Vec<(&'static str, Bind)> {
    move |v| {
        let mut env = vec![("n", Bind::Int(n as i64)), ("i", Bind::Int(index(v)))];
        if mass {
            env.push(("m", Bind::Var(Var::Mass)));
        }
        env
    }
}

pub fn conifold_env(m: u32, v0: usize, v1: usize) -> impl Fn(Var) -> Vec<(&'static str, Bind)> {
    move |v| {
        vec![
            ("m", Bind::Int(m as i64)),
            ("v0", Bind::Int(v0 as i64)),
            ("v1", Bind::Int(v1 as i64)),
            ("j", Bind::Int(index(v))),
        ]
    }
}

pub fn spin_env(big_n: usize, n: usize, k: u32) -> impl Fn(Var) -> Vec<(&'static str, Bind)> {
    move |v| {
        vec![
            ("N", Bind::Int(big_n as i64)),
            ("n", Bind::Int(n as i64)),
            ("k", Bind::Int(k as i64)),
            ("i", Bind::Int(index(v))),
            ("hbar", Bind::Var(Var::H2)),
        ]
    }
}

/// The conifold display holds one line per node.
pub fn conifold_line(v: Var) -> &'static str {
    let mut lines = CONIFOLD.lines();
    match v {
        Var::S0(_) => lines.next().unwrap(),
        _ => lines.nth(1).unwrap(),
    }
}

/// Conifold systems, each equation against the display line of its node.
pub fn conifold_matches(sys: &SaddleSystem, m: u32, v0: usize, v1: usize) -> bool {
    let env = conifold_env(m, v0, v1);
    sys.equations.iter().all(|e| {
        let one = SaddleSystem { name: String::new(), equations: vec![e.clone()] };
        matches_display(&one, conifold_line(e.unknown), &env)
    })
}
