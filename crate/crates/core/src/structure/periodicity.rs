use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{is_cofinal, Status, StructureError};
use crate::kgraph::{integer_box, Degree, KGraph, Path, VertexId};
use crate::lattice::LatticeBasis;
use crate::scalar::{int, Exact, Scalar};

/// Decides `T^a x = T^b x` for every `x ∈ Z(v)`.
///
/// States are windows `w ∈ Λ^c` with `c = a ∨ b`, starting from `vΛ^c`. A
/// color-`i` transition appends an edge `f` of color `i` at `s(w)`; it
/// mismatches when `λ = wf` has `λ(a, a+e_i) ≠ λ(b, b+e_i)`, and otherwise
/// leads to `λ(e_i, c+e_i)`. Every position where the two shifts could
/// differ is such a transition, and every reachable transition occurs in
/// some `x` because there are no sources.
pub fn periodic_with_offsets(g: &KGraph, a: &Degree, b: &Degree, v: VertexId) -> bool {
    if a == b {
        return true;
    }
    let k = g.k();
    let c = a.join(b);
    let steps: Vec<Degree> = (0..k).map(|i| Degree::unit(k, i)).collect();
    let mut seen: HashSet<Path> = HashSet::new();
    let mut queue: VecDeque<Path> = VecDeque::new();
    for w in g.paths_from(v, &c) {
        if seen.insert(w.clone()) {
            queue.push_back(w);
        }
    }
    while let Some(w) = queue.pop_front() {
        for (i, step) in steps.iter().enumerate() {
            for &f in g.edges_into(w.source(), i) {
                let lam = g
                    .compose(&w, &g.edge_path(f))
                    .expect("edge starts at the window source");
                let at_a = g
                    .segment(&lam, a, &(a + step))
                    .expect("a + e_i below c + e_i");
                let at_b = g
                    .segment(&lam, b, &(b + step))
                    .expect("b + e_i below c + e_i");
                if at_a != at_b {
                    return false;
                }
                let next = g.segment(&lam, step, &(&c + step)).expect("window fits");
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    true
}

/// `T^{p+} x = T^{p-} x` for every `x ∈ Z(v)`.
pub fn periodic_at(g: &KGraph, p: &[i64], v: VertexId) -> bool {
    assert_eq!(p.len(), g.k(), "period rank mismatch");
    periodic_with_offsets(g, &Degree::pos_part(p), &Degree::neg_part(p), v)
}

/// `|Λ^0| · max_{v,i} |vΛ^{e_i}|` in every coordinate.
pub fn default_bound(g: &KGraph) -> Degree {
    let b = (g.num_vertices() * g.max_edge_multiplicity()).max(1) as u32;
    Degree::uniform(g.k(), b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicityResult<I: Scalar = Exact> {
    /// Lattice generated by every period found in the box.
    pub lattice: LatticeBasis<I>,
    pub exhaustive_up_to: Degree,
    /// Whether every vertex accepted the same periods in the box.
    pub per_vertex_agreement: bool,
    /// Periods in the box accepted at every vertex, sign-normalized.
    pub accepted: Vec<Vec<i64>>,
    /// Nonzero periods accepted at some but not all vertices.
    pub disagreements: Vec<Vec<i64>>,
    /// `rank(lattice) = rank(Per(Λ))` is proved: the lattice has full rank k.
    pub rank_certified: bool,
    /// `lattice = Per(Λ)` is proved: full rank, and every coset
    /// representative in the fundamental parallelepiped lies in the box.
    pub exact: bool,
}

fn first_nonzero_positive(p: &[i64]) -> bool {
    p.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Periods with `‖p‖∞ ≤ bound`, accepted iff periodic at every vertex.
/// Refuses graphs not certified cofinal.
pub fn per_group<I: Scalar>(
    g: &KGraph,
    bound: &Degree,
) -> Result<PeriodicityResult<I>, StructureError> {
    if bound.k() != g.k() {
        return Err(StructureError::BoundRank {
            got: bound.k(),
            k: g.k(),
        });
    }
    let cof = is_cofinal(g);
    if cof.status != Status::YesCertified {
        return Err(StructureError::NotCofinal(cof.status));
    }
    Ok(per_group_unchecked(g, bound))
}

pub(crate) fn per_group_unchecked<I: Scalar>(g: &KGraph, bound: &Degree) -> PeriodicityResult<I> {
    let k = g.k();
    let candidates: Vec<Vec<i64>> = integer_box(bound)
        .into_iter()
        .filter(|p| first_nonzero_positive(p))
        .collect();
    let per_vertex: Vec<BTreeSet<Vec<i64>>> = (0..g.num_vertices())
        .map(|v| {
            candidates
                .iter()
                .filter(|p| periodic_at(g, p, v))
                .cloned()
                .collect()
        })
        .collect();
    let union: BTreeSet<Vec<i64>> = per_vertex.iter().flatten().cloned().collect();
    let accepted: Vec<Vec<i64>> = union
        .iter()
        .filter(|p| per_vertex.iter().all(|s| s.contains(*p)))
        .cloned()
        .collect();
    let disagreements: Vec<Vec<i64>> = union
        .iter()
        .filter(|p| !per_vertex.iter().all(|s| s.contains(*p)))
        .cloned()
        .collect();
    let gens: Vec<Vec<I>> = accepted
        .iter()
        .map(|p| p.iter().map(|&x| int::<I>(x)).collect())
        .collect();
    let lattice = LatticeBasis::from_generators(k, &gens);
    let rank_certified = lattice.rank() == k;
    let exact = rank_certified
        && (0..k).all(|j| {
            let spread = lattice
                .basis()
                .iter()
                .fold(I::zero(), |acc, row| acc + row[j].abs());
            spread <= int::<I>(bound.0[j] as i64)
        });
    PeriodicityResult {
        lattice,
        exhaustive_up_to: bound.clone(),
        per_vertex_agreement: disagreements.is_empty(),
        accepted,
        disagreements,
        rank_certified,
        exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgraph::builtin;
    use crate::Lattice;

    #[test]
    fn automaton_examples() {
        let t2 = builtin("T2").unwrap();
        assert!(periodic_at(&t2, &[1, 0], 0));
        assert!(periodic_at(&t2, &[1, -1], 0));
        let b2 = builtin("B2").unwrap();
        assert!(!periodic_at(&b2, &[1], 0));
        let b2t1 = builtin("B2xT1").unwrap();
        assert!(periodic_at(&b2t1, &[0, 1], 0));
        assert!(!periodic_at(&b2t1, &[1, 0], 0));
        assert!(!periodic_at(&b2t1, &[1, -1], 0));
        let c3 = builtin("C3").unwrap();
        assert!(periodic_at(&c3, &[3], 1));
        assert!(!periodic_at(&c3, &[2], 1));
    }

    #[test]
    fn per_group_examples() {
        let r: PeriodicityResult<Exact> =
            per_group(&builtin("T2").unwrap(), &Degree(vec![2, 2])).unwrap();
        assert_eq!(r.lattice, Lattice::full(2));
        assert!(r.exact && r.per_vertex_agreement);

        let r: PeriodicityResult<Exact> =
            per_group(&builtin("B2").unwrap(), &Degree(vec![3])).unwrap();
        assert!(r.lattice.is_trivial());

        let r: PeriodicityResult<Exact> =
            per_group(&builtin("B2xT3").unwrap(), &Degree::uniform(4, 1)).unwrap();
        let expect = Lattice::from_i64(4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(r.lattice, expect);
        assert!(!r.rank_certified);

        let d = builtin("DISJOINT2").unwrap();
        assert!(matches!(
            per_group::<Exact>(&d, &Degree(vec![2])),
            Err(StructureError::NotCofinal(_))
        ));
    }

    #[test]
    fn cycle_periods_agree_across_vertices() {
        let r: PeriodicityResult<Exact> =
            per_group(&builtin("C3").unwrap(), &Degree(vec![6])).unwrap();
        assert_eq!(r.lattice, Lattice::from_i64(1, &[vec![3]]));
        assert!(r.per_vertex_agreement && r.exact);
    }
}
