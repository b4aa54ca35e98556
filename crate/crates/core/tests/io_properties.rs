mod common;

use twisted_kgraph::builtin;
use twisted_kgraph::cocycle::CocycleSpec;
use twisted_kgraph::io::{parse_cocycle, parse_graph, serialize_cocycle, serialize_graph};
use twisted_kgraph::Exact;

use common::{GRAPHS, PAIRS};

#[test]
fn graph_fixtures_are_canonical() {
    for name in GRAPHS {
        let text = common::graph_text(name);
        let g = parse_graph(&text).unwrap();
        let out = serialize_graph(&g);
        assert_eq!(parse_graph(&out).unwrap(), g, "{name}");
        assert_eq!(out, text, "{name}: fixture is not in canonical form");
    }
}

#[test]
fn cocycle_fixtures_are_canonical() {
    for &(gname, cname) in PAIRS {
        let g = common::graph(gname);
        let text = common::cocycle_text(cname);
        let c: CocycleSpec<Exact> = parse_cocycle(&text, &g).unwrap();
        let out = serialize_cocycle(&c, &g);
        assert_eq!(parse_cocycle::<Exact>(&out, &g).unwrap(), c, "{cname}");
        assert_eq!(out, text, "{cname}: fixture is not in canonical form");
    }
}

#[test]
fn builtins_round_trip_and_match_fixtures() {
    let extra = ["T1", "T3", "B1", "B3xT2", "C3", "C2xT2"];
    for name in GRAPHS.iter().chain(&extra) {
        let g = builtin(name).unwrap();
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g, "{name}");
        if GRAPHS.contains(name) {
            assert_eq!(common::graph(name), g, "{name}: fixture differs from builtin");
        }
    }
    assert!(builtin("X2").is_err() && builtin("T").is_err() && builtin("B2xT").is_err());
}
