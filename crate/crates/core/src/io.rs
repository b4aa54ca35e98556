//! TOML presentations of graphs and cocycles.
//!
//! Parsing reports TOML syntax errors with line and column, and semantic
//! errors with the offending field path. Serialization is canonical:
//! serializing a parsed file and parsing it again gives an equal value,
//! and serializing that gives the same bytes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cocycle::{BicharacterTable, CocycleError, CocycleSpec, CocycleTable, OneCocyclePhi};
use crate::kgraph::{product_base, EdgeSpec, GraphError, KGraph, SquareSpec};
use crate::phase::{symbols_of, PhaseExponent, PhaseVector, Symbol};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("syntax: {0}")]
    Syntax(String),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

fn field(field: impl Into<String>, message: impl ToString) -> IoError {
    IoError::Field { field: field.into(), message: message.to_string() }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    k: usize,
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<EdgeSpec>,
    #[serde(default)]
    squares: Vec<SquareSpec>,
}

pub fn parse_graph(text: &str) -> Result<KGraph, IoError> {
    let f: GraphFile = toml::from_str(text).map_err(|e| IoError::Syntax(e.to_string()))?;
    Ok(KGraph::from_parts(f.k, f.vertices, f.edges, f.squares)?)
}

pub fn serialize_graph(g: &KGraph) -> String {
    let f = GraphFile {
        k: g.k(),
        vertices: g.vertex_names().to_vec(),
        edges: g.edge_specs(),
        squares: g.square_specs(),
    };
    toml::to_string(&f).expect("graph presentation serializes")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Kind {
    Pullback,
    PhiOmega,
    Table,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableEntry {
    mu: String,
    nu: String,
    value: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CocycleFile {
    kind: Kind,
    #[serde(default)]
    symbols: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<TableEntry>>,
}

struct Phases {
    declared: BTreeSet<Symbol>,
}

impl Phases {
    fn parse<I: Scalar>(&self, at: &str, text: &str) -> Result<PhaseExponent<I>, IoError> {
        PhaseExponent::parse_declared(text, &self.declared).map_err(|e| field(at, e))
    }

    fn matrix<I: Scalar>(&self, at: &str, rows: &[Vec<String>], n: usize) -> Result<BicharacterTable<I>, IoError> {
        if rows.len() != n {
            return Err(field(at, format!("expected {n} rows, got {}", rows.len())));
        }
        let mut m = Vec::with_capacity(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(field(format!("{at}[{i}]"), format!("expected {n} entries, got {}", row.len())));
            }
            m.push(
                row.iter()
                    .enumerate()
                    .map(|(j, x)| self.parse(&format!("{at}[{i}][{j}]"), x))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Ok(BicharacterTable::new(m))
    }
}

fn required<T>(v: Option<T>, name: &str, kind: &str) -> Result<T, IoError> {
    v.ok_or_else(|| field(name, format!("required for kind = {kind:?}")))
}

fn forbid<T>(v: &Option<T>, name: &str, kind: &str) -> Result<(), IoError> {
    match v {
        Some(_) => Err(field(name, format!("not allowed for kind = {kind:?}"))),
        None => Ok(()),
    }
}

/// Parses a cocycle for `g`. Every phase literal may only use symbols
/// listed under `symbols`.
pub fn parse_cocycle<I: Scalar>(text: &str, g: &KGraph) -> Result<CocycleSpec<I>, IoError> {
    let f: CocycleFile = toml::from_str(text).map_err(|e| IoError::Syntax(e.to_string()))?;
    let mut declared = BTreeSet::new();
    for (i, s) in f.symbols.iter().enumerate() {
        if !Symbol::is_valid_name(s) {
            return Err(field(format!("symbols[{i}]"), format!("invalid symbol name {s:?}")));
        }
        declared.insert(Symbol::new(s));
    }
    let ph = Phases { declared };
    match f.kind {
        Kind::Pullback => {
            forbid(&f.l, "l", "pullback")?;
            forbid(&f.omega, "omega", "pullback")?;
            forbid(&f.phi, "phi", "pullback")?;
            forbid(&f.entries, "entries", "pullback")?;
            let theta = required(f.theta, "theta", "pullback")?;
            Ok(CocycleSpec::pullback(ph.matrix("theta", &theta, g.k())?))
        }
        Kind::PhiOmega => {
            forbid(&f.theta, "theta", "phi_omega")?;
            forbid(&f.entries, "entries", "phi_omega")?;
            let l = required(f.l, "l", "phi_omega")?;
            let base = product_base(g, l).ok_or_else(|| field("l", format!("graph is not a product with T_{l}")))?;
            let omega = ph.matrix("omega", &required(f.omega, "omega", "phi_omega")?, l)?;
            let phi_map = required(f.phi, "phi", "phi_omega")?;
            if let Some(extra) = phi_map.keys().find(|name| base.edge_id(name).is_err()) {
                return Err(field(format!("phi.{extra}"), "not an edge of the base graph"));
            }
            let mut values = Vec::with_capacity(base.num_edges());
            for (_, e) in base.edges() {
                let at = format!("phi.{}", e.name);
                let v = phi_map.get(&e.name).ok_or_else(|| field(&at, "missing"))?;
                if v.len() != l {
                    return Err(field(&at, format!("expected {l} entries, got {}", v.len())));
                }
                let entries = v
                    .iter()
                    .enumerate()
                    .map(|(j, x)| ph.parse(&format!("{at}[{j}]"), x))
                    .collect::<Result<Vec<_>, _>>()?;
                values.push(PhaseVector(entries));
            }
            Ok(CocycleSpec::phi_omega(g, l, OneCocyclePhi::new(l, values), omega)?)
        }
        Kind::Table => {
            forbid(&f.theta, "theta", "table")?;
            forbid(&f.omega, "omega", "table")?;
            forbid(&f.phi, "phi", "table")?;
            forbid(&f.l, "l", "table")?;
            let mut t = CocycleTable { entries: Default::default() };
            for (i, e) in required(f.entries, "entries", "table")?.iter().enumerate() {
                let at = format!("entries[{i}]");
                let mu = g.path_from_names(&e.mu).map_err(|err| field(format!("{at}.mu"), err))?;
                let nu = g.path_from_names(&e.nu).map_err(|err| field(format!("{at}.nu"), err))?;
                if mu.source() != nu.range() {
                    return Err(field(&at, "s(mu) != r(nu)"));
                }
                let v = ph.parse(&format!("{at}.value"), &e.value)?;
                if t.entries.insert((mu, nu), v).is_some() {
                    return Err(field(&at, "duplicate pair"));
                }
            }
            Ok(CocycleSpec::Table(t))
        }
    }
}

fn matrix_strings<I: Scalar>(m: &BicharacterTable<I>) -> Vec<Vec<String>> {
    m.matrix().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn symbol_names<'a, I: Scalar + 'a>(phases: impl IntoIterator<Item = &'a PhaseExponent<I>>) -> Vec<String> {
    symbols_of(phases).iter().map(|s| s.to_string()).collect()
}

pub fn serialize_cocycle<I: Scalar>(c: &CocycleSpec<I>, g: &KGraph) -> String {
    let f = match c {
        CocycleSpec::Pullback { theta } => CocycleFile {
            kind: Kind::Pullback,
            symbols: symbol_names(theta.matrix().iter().flatten()),
            l: None,
            theta: Some(matrix_strings(theta)),
            omega: None,
            phi: None,
            entries: None,
        },
        CocycleSpec::PhiOmega(po) => {
            let all = po.omega.matrix().iter().flatten().chain(po.phi.values.iter().flat_map(|v| v.entries()));
            CocycleFile {
                kind: Kind::PhiOmega,
                symbols: symbol_names(all),
                l: Some(po.l),
                theta: None,
                omega: Some(matrix_strings(&po.omega)),
                phi: Some(
                    po.base
                        .edges()
                        .map(|(id, e)| {
                            (e.name.clone(), po.phi.values[id].entries().iter().map(|x| x.to_string()).collect())
                        })
                        .collect(),
                ),
                entries: None,
            }
        }
        CocycleSpec::Table(t) => {
            let mut entries: Vec<TableEntry> = t
                .entries
                .iter()
                .map(|((mu, nu), v)| TableEntry {
                    mu: g.show(mu).to_string(),
                    nu: g.show(nu).to_string(),
                    value: v.to_string(),
                })
                .collect();
            entries.sort_by(|a, b| (&a.mu, &a.nu).cmp(&(&b.mu, &b.nu)));
            CocycleFile {
                kind: Kind::Table,
                symbols: symbol_names(t.entries.values()),
                l: None,
                theta: None,
                omega: None,
                phi: None,
                entries: Some(entries),
            }
        }
    };
    toml::to_string(&f).expect("cocycle serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgraph::builtin;
    use crate::scalar::Exact;
    use crate::Phase;

    const T2: &str = r#"
k = 2
vertices = ["v"]

[[edges]]
id = "a"
color = 1
range = "v"
source = "v"

[[edges]]
id = "b"
color = 2
range = "v"
source = "v"

[[squares]]
ij = [1, 2]
from = ["a", "b"]
to = ["b", "a"]
"#;

    #[test]
    fn graph_round_trip() {
        let g = parse_graph(T2).unwrap();
        assert_eq!(g, builtin("T2").unwrap());
        let s = serialize_graph(&g);
        assert_eq!(parse_graph(&s).unwrap(), g);
        assert_eq!(serialize_graph(&parse_graph(&s).unwrap()), s);
        for name in ["B2", "C3", "B2xT3", "DISJOINT2", "T3"] {
            let g = builtin(name).unwrap();
            assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g, "{name}");
        }
    }

    #[test]
    fn graph_errors() {
        let bad = T2.replacen("source = \"v\"", "source = \"w\"", 1);
        let err = parse_graph(&bad).unwrap_err().to_string();
        assert!(err.contains("\"a\"") && err.contains("\"w\""), "{err}");
        let err = parse_graph("k = 2\nvertices = [\"v\"\n").unwrap_err();
        assert!(matches!(err, IoError::Syntax(ref m) if m.contains("line")), "{err}");
    }

    #[test]
    fn cocycle_round_trip_and_errors() {
        let t2 = builtin("T2").unwrap();
        let text = "kind = \"pullback\"\nsymbols = [\"theta\"]\ntheta = [[\"0\", \"0\"], [\"1/3 + 2*theta\", \"0\"]]\n";
        let c: CocycleSpec<Exact> = parse_cocycle(text, &t2).unwrap();
        let CocycleSpec::Pullback { theta } = &c else { panic!() };
        let expect = Phase::ratio(1, 3) + Phase::symbol("theta").scale_int(&crate::scalar::int(2));
        assert_eq!(theta.entry(1, 0), &expect);
        let s = serialize_cocycle(&c, &t2);
        assert_eq!(parse_cocycle::<Exact>(&s, &t2).unwrap(), c);
        assert_eq!(serialize_cocycle(&parse_cocycle::<Exact>(&s, &t2).unwrap(), &t2), s);

        let undeclared = text.replace("symbols = [\"theta\"]\n", "");
        let err = parse_cocycle::<Exact>(&undeclared, &t2).unwrap_err().to_string();
        assert!(err.contains("theta[1][0]") && err.contains("undeclared"), "{err}");

        let g = builtin("B2xT1").unwrap();
        let text = "kind = \"phi_omega\"\nsymbols = [\"theta\"]\nl = 1\nomega = [[\"0\"]]\n[phi]\ne = [\"0\"]\nf = [\"theta\"]\n";
        let c: CocycleSpec<Exact> = parse_cocycle(text, &g).unwrap();
        let s = serialize_cocycle(&c, &g);
        assert_eq!(parse_cocycle::<Exact>(&s, &g).unwrap(), c);
        let err = parse_cocycle::<Exact>(&text.replace("f = ", "x = "), &g).unwrap_err().to_string();
        assert!(err.contains("phi.x"), "{err}");

        let b2 = builtin("B2").unwrap();
        let text = "kind = \"table\"\n[[entries]]\nmu = \"e\"\nnu = \"f\"\nvalue = \"1/2\"\n";
        let c: CocycleSpec<Exact> = parse_cocycle(text, &b2).unwrap();
        assert_eq!(parse_cocycle::<Exact>(&serialize_cocycle(&c, &b2), &b2).unwrap(), c);
    }
}
