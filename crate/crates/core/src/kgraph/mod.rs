//! Finite k-graphs presented by a colored skeleton and commuting squares.
//!
//! Colors are 0-based internally and 1-based in files. A square for colors
//! `i < j` rewrites a composable pair `f g` (f of color i, `s(f) = r(g)`) into
//! `g' f'` with the same range and source. Paths are kept in normal form:
//! edges listed with nondecreasing color, read from range to source.

mod builtin;
mod degree;
mod infinite;
mod path;
mod validate;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

pub use builtin::{builtin, product_base, product_with_tl, BUILTIN_NAMES};
pub use degree::{integer_box, Degree};
pub use infinite::EventuallyPeriodicPath;
pub use path::Path;
pub use validate::{validate_kgraph, ValidationReport, Violation};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("k must be positive")]
    ZeroRank,
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("edge {edge:?}: color {color} outside 1..={k}")]
    BadColor {
        edge: String,
        color: usize,
        k: usize,
    },
    #[error("edge {edge:?}: {field} vertex {vertex:?} is not declared")]
    UnknownVertex {
        edge: String,
        field: &'static str,
        vertex: String,
    },
    #[error("square {index}: unknown edge {edge:?}")]
    UnknownEdge { index: usize, edge: String },
    #[error("square {index}: colors {ij:?} must satisfy 1 <= i < j <= {k}")]
    BadSquareColors {
        index: usize,
        ij: (usize, usize),
        k: usize,
    },
    #[error("unknown vertex {0:?}")]
    NoSuchVertex(String),
    #[error("unknown edge {0:?}")]
    NoSuchEdge(String),
    #[error("source/range mismatch: cannot compose {left} with {right}")]
    NotComposable { left: String, right: String },
    #[error("degree {m} is not below {bound}")]
    DegreeOutOfRange { m: Degree, bound: Degree },
    #[error("segment bounds {m} <= {n} <= {d} violated")]
    SegmentBounds { m: Degree, n: Degree, d: Degree },
    #[error("invalid cycle: {0}")]
    BadCycle(String),
    #[error("an empty edge word does not determine a vertex")]
    EmptyWord,
    #[error("unknown builtin graph {0:?}")]
    UnknownBuiltin(String),
}

/// Edge as written in a presentation: color is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub color: usize,
    pub range: String,
    pub source: String,
}

/// Square as written in a presentation: `from = [f, g]`, `to = [g', f']`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareSpec {
    pub ij: [usize; 2],
    pub from: [String; 2],
    pub to: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub color: usize,
    pub range: VertexId,
    pub source: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Square {
    pub colors: (usize, usize),
    pub from: (EdgeId, EdgeId),
    pub to: (EdgeId, EdgeId),
}

/// A finite k-graph presentation. Immutable once built.
#[derive(Debug, Clone)]
pub struct KGraph {
    k: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    squares: Vec<Square>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    /// `(f, g) ↦ (g', f')`, color(f) < color(g). First definition wins.
    forward: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    /// `(g', f') ↦ (f, g)`. First definition wins.
    backward: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    /// `[vertex][color]` → edges with that range, sorted by id.
    in_edges: Vec<Vec<Vec<EdgeId>>>,
}

impl PartialEq for KGraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.squares == other.squares
    }
}

impl Eq for KGraph {}

impl KGraph {
    /// Builds a presentation, checking names and colors. Semantic validity
    /// (no sources, bijective squares, associativity) is left to
    /// [`validate_kgraph`].
    pub fn from_parts(
        k: usize,
        vertices: Vec<String>,
        edges: Vec<EdgeSpec>,
        squares: Vec<SquareSpec>,
    ) -> Result<KGraph, GraphError> {
        if k == 0 {
            return Err(GraphError::ZeroRank);
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut edge_index = HashMap::new();
        let mut built = Vec::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateEdge(e.id.clone()));
            }
            if e.color == 0 || e.color > k {
                return Err(GraphError::BadColor {
                    edge: e.id.clone(),
                    color: e.color,
                    k,
                });
            }
            let lookup = |field: &'static str, name: &str| {
                vertex_index
                    .get(name)
                    .copied()
                    .ok_or_else(|| GraphError::UnknownVertex {
                        edge: e.id.clone(),
                        field,
                        vertex: name.to_string(),
                    })
            };
            built.push(Edge {
                name: e.id.clone(),
                color: e.color - 1,
                range: lookup("range", &e.range)?,
                source: lookup("source", &e.source)?,
            });
        }
        let mut sq = Vec::with_capacity(squares.len());
        for (index, s) in squares.iter().enumerate() {
            let [i, j] = s.ij;
            if !(1 <= i && i < j && j <= k) {
                return Err(GraphError::BadSquareColors {
                    index,
                    ij: (i, j),
                    k,
                });
            }
            let e = |name: &String| {
                edge_index
                    .get(name)
                    .copied()
                    .ok_or_else(|| GraphError::UnknownEdge {
                        index,
                        edge: name.clone(),
                    })
            };
            sq.push(Square {
                colors: (i - 1, j - 1),
                from: (e(&s.from[0])?, e(&s.from[1])?),
                to: (e(&s.to[0])?, e(&s.to[1])?),
            });
        }
        let mut g = KGraph {
            k,
            vertices,
            edges: built,
            squares: sq,
            vertex_index,
            edge_index,
            forward: HashMap::new(),
            backward: HashMap::new(),
            in_edges: Vec::new(),
        };
        g.index();
        Ok(g)
    }

    fn index(&mut self) {
        let mut in_edges = vec![vec![Vec::new(); self.k]; self.vertices.len()];
        for (id, e) in self.edges.iter().enumerate() {
            in_edges[e.range][e.color].push(id);
        }
        self.in_edges = in_edges;
        for s in &self.squares {
            if !self.square_shape_ok(s) {
                continue;
            }
            self.forward.entry(s.from).or_insert(s.to);
            self.backward.entry(s.to).or_insert(s.from);
        }
    }

    /// Colors match the declared pair, both sides composable, and the outer
    /// range and source agree.
    pub(crate) fn square_shape_ok(&self, s: &Square) -> bool {
        let (i, j) = s.colors;
        let (f, g) = (&self.edges[s.from.0], &self.edges[s.from.1]);
        let (gp, fp) = (&self.edges[s.to.0], &self.edges[s.to.1]);
        f.color == i
            && g.color == j
            && gp.color == j
            && fp.color == i
            && f.source == g.range
            && gp.source == fp.range
            && gp.range == f.range
            && fp.source == g.source
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::NoSuchVertex(name.to_string()))
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn edge_id(&self, name: &str) -> Result<EdgeId, GraphError> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::NoSuchEdge(name.to_string()))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges.iter().enumerate()
    }

    /// Edges of `color` with range `v` (the set `vΛ^{e_color}`).
    pub fn edges_into(&self, v: VertexId, color: usize) -> &[EdgeId] {
        &self.in_edges[v][color]
    }

    /// Edges of every color with range `v`.
    pub fn edges_with_range(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.in_edges[v].iter().flatten().copied()
    }

    /// The presentation in file terms: edges and squares with 1-based colors.
    pub fn edge_specs(&self) -> Vec<EdgeSpec> {
        self.edges
            .iter()
            .map(|e| EdgeSpec {
                id: e.name.clone(),
                color: e.color + 1,
                range: self.vertices[e.range].clone(),
                source: self.vertices[e.source].clone(),
            })
            .collect()
    }

    pub fn square_specs(&self) -> Vec<SquareSpec> {
        let n = |e: EdgeId| self.edges[e].name.clone();
        self.squares
            .iter()
            .map(|s| SquareSpec {
                ij: [s.colors.0 + 1, s.colors.1 + 1],
                from: [n(s.from.0), n(s.from.1)],
                to: [n(s.to.0), n(s.to.1)],
            })
            .collect()
    }

    pub(crate) fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub(crate) fn square_forward(&self, f: EdgeId, g: EdgeId) -> Option<(EdgeId, EdgeId)> {
        self.forward.get(&(f, g)).copied()
    }

    pub(crate) fn square_backward(&self, gp: EdgeId, fp: EdgeId) -> Option<(EdgeId, EdgeId)> {
        self.backward.get(&(gp, fp)).copied()
    }

    /// Largest `|vΛ^{e_i}|` over vertices and colors.
    pub fn max_edge_multiplicity(&self) -> usize {
        self.in_edges
            .iter()
            .flatten()
            .map(|es| es.len())
            .max()
            .unwrap_or(0)
    }

    /// `|vΛ^{e_i}| = 1` for every vertex and color, hence `|vΛ^n| = 1` for all `n`.
    pub fn has_unique_paths(&self) -> bool {
        self.in_edges.iter().flatten().all(|es| es.len() == 1)
    }

    /// Vertices `w` with `vΛw ≠ ∅` (including `v`).
    pub fn reachable_from(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for es in &self.in_edges[u] {
                for &e in es {
                    let s = self.edges[e].source;
                    if seen.insert(s) {
                        stack.push(s);
                    }
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|v| self.reachable_from(v).len() == n)
    }
}
