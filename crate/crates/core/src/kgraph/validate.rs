use std::collections::HashMap;
use std::fmt;

use super::{EdgeId, KGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `v` receives no edge of `color` (1-based).
    Source { vertex: String, color: usize },
    /// A square whose colors or endpoints do not fit its declared shape.
    SquareShape {
        from: (String, String),
        to: (String, String),
    },
    /// A composable pair with no square, for colors `i < j`.
    SquareMissing { f: String, g: String },
    /// The same pair appears as the left side of two squares.
    SquareDuplicate { f: String, g: String },
    /// Two pairs rewrite to the same pair.
    SquareNotInjective {
        to: (String, String),
        first: (String, String),
        second: (String, String),
    },
    /// The two rewriting routes of a three-color word disagree.
    Associativity { f: String, g: String, h: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Source { vertex, color } => {
                write!(f, "vertex {vertex:?} receives no edge of color {color}")
            }
            Violation::SquareShape { from, to } => {
                write!(
                    f,
                    "square ({},{}) -> ({},{}) has wrong colors or endpoints",
                    from.0, from.1, to.0, to.1
                )
            }
            Violation::SquareMissing { f: a, g } => {
                write!(f, "square missing for composable pair ({a},{g})")
            }
            Violation::SquareDuplicate { f: a, g } => {
                write!(f, "square defined twice for ({a},{g})")
            }
            Violation::SquareNotInjective { to, first, second } => write!(
                f,
                "square not injective: ({},{}) and ({},{}) both map to ({},{})",
                first.0, first.1, second.0, second.1, to.0, to.1
            ),
            Violation::Associativity { f: a, g, h } => {
                write!(f, "associativity violation at ({a},{g},{h})")
            }
        }
    }
}

/// Problems found in a presentation; empty iff it is a valid k-graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks no sources, square totality and bijectivity, and the hexagon
/// condition for every triple of colors.
pub fn validate_kgraph(g: &KGraph) -> ValidationReport {
    let mut out = Vec::new();
    let name = |e: EdgeId| g.edge(e).name.clone();

    for v in 0..g.num_vertices() {
        for c in 0..g.k() {
            if g.edges_into(v, c).is_empty() {
                out.push(Violation::Source {
                    vertex: g.vertex_name(v).to_string(),
                    color: c + 1,
                });
            }
        }
    }

    let mut seen_from: HashMap<(EdgeId, EdgeId), usize> = HashMap::new();
    let mut seen_to: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)> = HashMap::new();
    for (idx, s) in g.squares().iter().enumerate() {
        if !g.square_shape_ok(s) {
            out.push(Violation::SquareShape {
                from: (name(s.from.0), name(s.from.1)),
                to: (name(s.to.0), name(s.to.1)),
            });
            continue;
        }
        if seen_from.insert(s.from, idx).is_some() {
            out.push(Violation::SquareDuplicate {
                f: name(s.from.0),
                g: name(s.from.1),
            });
            continue;
        }
        if let Some(prev) = seen_to.insert(s.to, s.from) {
            out.push(Violation::SquareNotInjective {
                to: (name(s.to.0), name(s.to.1)),
                first: (name(prev.0), name(prev.1)),
                second: (name(s.from.0), name(s.from.1)),
            });
        }
    }

    // Totality on (i,j) pairs, then on (j,i) pairs; with injectivity the
    // table is a bijection.
    for (f, ef) in g.edges() {
        for (gg, eg) in g.edges() {
            if ef.color < eg.color && ef.source == eg.range && g.square_forward(f, gg).is_none() {
                out.push(Violation::SquareMissing {
                    f: name(f),
                    g: name(gg),
                });
            }
        }
    }
    for (gp, egp) in g.edges() {
        for (fp, efp) in g.edges() {
            if egp.color > efp.color
                && egp.source == efp.range
                && g.square_backward(gp, fp).is_none()
            {
                out.push(Violation::SquareMissing {
                    f: name(gp),
                    g: name(fp),
                });
            }
        }
    }

    if out.is_empty() {
        hexagons(g, &mut out);
    }
    ValidationReport { violations: out }
}

fn hexagons(g: &KGraph, out: &mut Vec<Violation>) {
    let sw = |a: EdgeId, b: EdgeId| g.square_forward(a, b).expect("table is total");
    for (f, ef) in g.edges() {
        for gg in g.edges_with_range(ef.source) {
            let eg = g.edge(gg);
            if eg.color <= ef.color {
                continue;
            }
            for h in g.edges_with_range(eg.source) {
                if g.edge(h).color <= eg.color {
                    continue;
                }
                // f g h → g1 f1 h → g1 h1 f2 → h2 g2 f2
                let (g1, f1) = sw(f, gg);
                let (h1, f2) = sw(f1, h);
                let (h2, g2) = sw(g1, h1);
                // f g h → f h3 g3 → h4 f3 g3 → h4 g4 f4
                let (h3, g3) = sw(gg, h);
                let (h4, f3) = sw(f, h3);
                let (g4, f4) = sw(f3, g3);
                if (h2, g2, f2) != (h4, g4, f4) {
                    out.push(Violation::Associativity {
                        f: ef.name.clone(),
                        g: eg.name.clone(),
                        h: g.edge(h).name.clone(),
                    });
                }
            }
        }
    }
}
