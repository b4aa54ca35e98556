#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use proptest::prelude::*;

use twisted_kgraph::cocycle::CocycleSpec;
use twisted_kgraph::io::{parse_cocycle, parse_graph};
use twisted_kgraph::{Exact, KGraph, Phase};

pub const GRAPHS: &[&str] = &["T2", "B2", "B2xT1", "B2xT3", "DISJOINT2", "C2xT1", "C2"];

/// Every (graph, cocycle) fixture pair.
pub const PAIRS: &[(&str, &str)] = &[
    ("T2", "t2_pullback_theta"),
    ("T2", "t2_pullback_half"),
    ("B2xT1", "b2t1_phi_theta"),
    ("B2xT1", "b2t1_phi_zero"),
    ("B2xT3", "b2t3_example"),
    ("B2xT3", "b2t3_flat_third"),
    ("B2", "k1_zero"),
    ("DISJOINT2", "disjoint2_table"),
    ("C2xT1", "c2t1_phi_cancel"),
    ("C2xT1", "c2t1_phi_twist"),
];

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn graph_text(name: &str) -> String {
    std::fs::read_to_string(fixtures().join("graphs").join(format!("{name}.toml"))).unwrap()
}

pub fn cocycle_text(name: &str) -> String {
    std::fs::read_to_string(fixtures().join("cocycles").join(format!("{name}.toml"))).unwrap()
}

pub fn graph(name: &str) -> KGraph {
    parse_graph(&graph_text(name)).unwrap()
}

pub fn cocycle(name: &str, g: &KGraph) -> CocycleSpec {
    parse_cocycle(&cocycle_text(name), g).unwrap()
}

pub fn big(x: i64) -> Exact {
    BigInt::from(x)
}

pub fn ints(v: &[i64]) -> Vec<Exact> {
    v.iter().map(|&x| big(x)).collect()
}

/// `a/b + t·θ + r·ρ` with small coefficients.
pub fn phase() -> impl Strategy<Value = Phase> {
    (-6i64..=6, 1i64..=6, -3i64..=3, -3i64..=3).prop_map(|(a, b, t, r)| {
        Phase::ratio(a, b)
            + Phase::symbol("theta").scale_int(&big(t))
            + Phase::symbol("rho").scale_int(&big(r))
    })
}

pub fn phase_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Phase>>> {
    prop::collection::vec(prop::collection::vec(phase(), n), n)
}
