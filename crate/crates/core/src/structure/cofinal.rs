use std::collections::BTreeSet;

use super::{StructureCertificate, Verdict};
use crate::kgraph::{Degree, EventuallyPeriodicPath, KGraph, VertexId};

/// Whether the color-1 edges with both endpoints outside `reach` contain a
/// cycle. An infinite path avoiding `reach` walks such a cycle along its
/// first coordinate, so a negative answer rules out every witness.
pub(super) fn color_one_cycle_outside(g: &KGraph, reach: &BTreeSet<VertexId>) -> bool {
    let outside: Vec<VertexId> = (0..g.num_vertices())
        .filter(|v| !reach.contains(v))
        .collect();
    // Kahn-style peeling on the color-1 subgraph restricted to `outside`:
    // a vertex with no outgoing (source-ward) edge left cannot lie on a cycle.
    let inside = |v: VertexId| !reach.contains(&v);
    let mut out_deg: Vec<usize> = vec![0; g.num_vertices()];
    let mut preds: Vec<Vec<VertexId>> = vec![Vec::new(); g.num_vertices()];
    for &v in &outside {
        for &e in g.edges_into(v, 0) {
            let s = g.edge(e).source;
            if inside(s) {
                out_deg[v] += 1;
                preds[s].push(v);
            }
        }
    }
    let mut stack: Vec<VertexId> = outside
        .iter()
        .copied()
        .filter(|&v| out_deg[v] == 0)
        .collect();
    let mut removed = 0;
    while let Some(v) = stack.pop() {
        removed += 1;
        for &u in &preds[v] {
            out_deg[u] -= 1;
            if out_deg[u] == 0 {
                stack.push(u);
            }
        }
    }
    removed < outside.len()
}

/// Searches for an eventually periodic path that stays outside `reach`.
fn trapped_path(
    g: &KGraph,
    reach: &BTreeSet<VertexId>,
    cycle_bound: u32,
) -> Option<EventuallyPeriodicPath> {
    let k = g.k();
    let zero = Degree::zero(k);
    for u in (0..g.num_vertices()).filter(|u| !reach.contains(u)) {
        for b in 1..=cycle_bound {
            for x in EventuallyPeriodicPath::enumerate(g, u, &zero, &Degree::uniform(k, b)) {
                if x.vertices(g).is_disjoint(reach) {
                    return Some(x);
                }
            }
        }
    }
    None
}

/// Cofinality: strongly connected graphs are cofinal; otherwise a graph is
/// cofinal iff no infinite path avoids the vertices reachable from some `v`.
/// The color-1 cycle test settles this exactly for k = 1 and settles the
/// positive case for all k; a trapped path settles the negative case.
pub fn is_cofinal(g: &KGraph) -> Verdict {
    if g.is_strongly_connected() {
        return Verdict::yes(StructureCertificate::StronglyConnected);
    }
    let cycle_bound = (g.num_vertices() as u32).clamp(1, 3);
    let mut undecided = false;
    for v in 0..g.num_vertices() {
        let reach = g.reachable_from(v);
        if !color_one_cycle_outside(g, &reach) {
            continue;
        }
        if let Some(path) = trapped_path(g, &reach, cycle_bound) {
            return Verdict::no(StructureCertificate::TrappedPath { vertex: v, path });
        }
        undecided = true;
    }
    if undecided {
        Verdict::unknown(Some(Degree::uniform(g.k(), cycle_bound)))
    } else {
        Verdict::yes(StructureCertificate::NoTrappedCycle)
    }
}
