use std::collections::BTreeSet;

use super::{Degree, GraphError, KGraph, Path, VertexId};

/// `x = prefix · cycle · cycle · …`, a finite stand-in for an infinite path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicPath {
    prefix: Path,
    cycle: Path,
}

impl EventuallyPeriodicPath {
    pub fn new(prefix: Path, cycle: Path) -> Result<Self, GraphError> {
        if cycle.range() != cycle.source() {
            return Err(GraphError::BadCycle("cycle range and source differ".into()));
        }
        if cycle.range() != prefix.source() {
            return Err(GraphError::BadCycle(
                "cycle does not start at the source of the prefix".into(),
            ));
        }
        if !cycle.degree().all_positive() {
            return Err(GraphError::BadCycle(format!(
                "cycle degree {} is not strictly positive",
                cycle.degree()
            )));
        }
        Ok(EventuallyPeriodicPath { prefix, cycle })
    }

    pub fn prefix(&self) -> &Path {
        &self.prefix
    }

    pub fn cycle(&self) -> &Path {
        &self.cycle
    }

    /// `x(0)`.
    pub fn range(&self) -> VertexId {
        self.prefix.range()
    }

    /// `prefix · cycle^t` with `t` minimal such that its degree dominates `n`.
    fn unroll(&self, g: &KGraph, n: &Degree) -> Path {
        let mut p = self.prefix.clone();
        while !n.le(p.degree()) {
            p = g
                .compose(&p, &self.cycle)
                .expect("cycle is composable with itself");
        }
        p
    }

    /// `x(0, n)`.
    pub fn initial(&self, g: &KGraph, n: &Degree) -> Path {
        let p = self.unroll(g, n);
        g.factorize(&p, n).expect("unrolled path dominates n").0
    }

    /// `x(m, n)`.
    pub fn segment(&self, g: &KGraph, m: &Degree, n: &Degree) -> Result<Path, GraphError> {
        if !m.le(n) {
            return Err(GraphError::SegmentBounds {
                m: m.clone(),
                n: n.clone(),
                d: n.clone(),
            });
        }
        let p = self.unroll(g, n);
        g.segment(&p, m, n)
    }

    /// `T^m x`.
    pub fn shift(&self, g: &KGraph, m: &Degree) -> EventuallyPeriodicPath {
        let p = self.unroll(g, m);
        let tail = g.factorize(&p, m).expect("unrolled path dominates m").1;
        EventuallyPeriodicPath {
            prefix: tail,
            cycle: self.cycle.clone(),
        }
    }

    /// `λ x`.
    pub fn prepend(&self, g: &KGraph, lambda: &Path) -> Result<EventuallyPeriodicPath, GraphError> {
        Ok(EventuallyPeriodicPath {
            prefix: g.compose(lambda, &self.prefix)?,
            cycle: self.cycle.clone(),
        })
    }

    /// Equality of the infinite paths.
    ///
    /// Write `x = α·z` and `y = β·w` with `z`, `w` periodic of periods `C`, `C'`,
    /// and let `D = d(α) ∨ d(β)`. Then `T^D x` has period `C` and `T^D y` has
    /// period `C'`, so `x = y` iff `x(0, D+C) = y(0, D+C)` and
    /// `y(D+C, D+C+C') = y(D, D+C')`.
    pub fn same_as(&self, g: &KGraph, other: &EventuallyPeriodicPath) -> bool {
        if self.range() != other.range() {
            return false;
        }
        let d = self.prefix.degree().join(other.prefix.degree());
        let c = self.cycle.degree();
        let c2 = other.cycle.degree();
        let dc = &d + c;
        if self.initial(g, &dc) != other.initial(g, &dc) {
            return false;
        }
        let a = other.segment(g, &dc, &(&dc + c2)).expect("bounds ordered");
        let b = other.segment(g, &d, &(&d + c2)).expect("bounds ordered");
        a == b
    }

    /// Every vertex `x(n)` (finitely many, since `x` is eventually periodic).
    pub fn vertices(&self, g: &KGraph) -> BTreeSet<VertexId> {
        let top = self.prefix.degree() + self.cycle.degree();
        let p = self.unroll(g, &top);
        top.box_below()
            .iter()
            .map(|n| g.vertex_at(&p, n).expect("n below top"))
            .collect()
    }

    /// A canonical eventually periodic path from `v`: repeatedly take the
    /// first path of degree `(1,…,1)` until a vertex repeats.
    pub fn canonical(g: &KGraph, v: VertexId) -> EventuallyPeriodicPath {
        let step = Degree::uniform(g.k(), 1);
        let mut visited = vec![v];
        let mut steps: Vec<Path> = Vec::new();
        let mut at = v;
        loop {
            let p = g
                .paths_from(at, &step)
                .into_iter()
                .next()
                .expect("graph has no sources");
            at = p.source();
            steps.push(p);
            if let Some(i) = visited.iter().position(|&w| w == at) {
                let join = |ps: &[Path], start: VertexId| {
                    ps.iter().fold(g.vertex_path(start), |acc, q| {
                        g.compose(&acc, q).expect("steps chain")
                    })
                };
                let prefix = join(&steps[..i], v);
                let cycle = join(&steps[i..], visited[i]);
                return EventuallyPeriodicPath::new(prefix, cycle)
                    .expect("cycle has positive degree");
            }
            visited.push(at);
        }
    }

    /// Every eventually periodic path from `v` with prefix degree below
    /// `prefix_bound` and cycle degree in `[1, cycle_bound]` coordinatewise.
    pub fn enumerate(
        g: &KGraph,
        v: VertexId,
        prefix_bound: &Degree,
        cycle_bound: &Degree,
    ) -> Vec<EventuallyPeriodicPath> {
        let mut out = Vec::new();
        let cycle_degrees: Vec<Degree> = cycle_bound
            .box_below()
            .into_iter()
            .filter(|d| d.all_positive())
            .collect();
        for prefix in g.paths_from_upto(v, prefix_bound) {
            for cd in &cycle_degrees {
                for cycle in g.paths_from(prefix.source(), cd) {
                    if cycle.source() == prefix.source() {
                        out.push(EventuallyPeriodicPath {
                            prefix: prefix.clone(),
                            cycle,
                        });
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgraph::builtin;

    #[test]
    fn shift_and_equality() {
        let g = builtin("B2").unwrap();
        let e = g.path_from_names("e").unwrap();
        let f = g.path_from_names("f").unwrap();
        let ef = g.path_from_names("e f").unwrap();
        let v = g.vertex_path(0);
        let x = EventuallyPeriodicPath::new(v.clone(), ef.clone()).unwrap();
        let y = EventuallyPeriodicPath::new(e.clone(), g.path_from_names("f e").unwrap()).unwrap();
        assert!(x.same_as(&g, &y));
        let shifted = x.shift(&g, &Degree(vec![2]));
        assert!(shifted.same_as(&g, &x));
        let z = EventuallyPeriodicPath::new(v.clone(), e.clone()).unwrap();
        assert!(!z.same_as(&g, &x));
        let w = EventuallyPeriodicPath::new(f.clone(), e.clone()).unwrap();
        assert!(!w.same_as(&g, &z));
        assert!(w.shift(&g, &Degree(vec![1])).same_as(&g, &z));
        // different cycle lengths, same path
        let ee = EventuallyPeriodicPath::new(v, g.path_from_names("e e").unwrap()).unwrap();
        assert!(ee.same_as(&g, &z));
    }

    #[test]
    fn canonical_tail_is_valid() {
        for name in ["T2", "B2", "C3", "DISJOINT2", "B2xT1"] {
            let g = builtin(name).unwrap();
            for v in 0..g.num_vertices() {
                let x = EventuallyPeriodicPath::canonical(&g, v);
                assert_eq!(x.range(), v);
            }
        }
    }

    #[test]
    fn cycle_vertices() {
        let g = builtin("C3").unwrap();
        let x = EventuallyPeriodicPath::canonical(&g, 0);
        assert_eq!(x.vertices(&g).len(), 3);
    }
}
