use std::collections::VecDeque;

use super::orbit::project;
use crate::cocycle::OneCocyclePhi;
use crate::kgraph::{EdgeId, KGraph};
use crate::lattice::{annihilator_of_columns, LatticeBasis};
use crate::phase::{PhaseExponent, PhaseVector};
use crate::scalar::Scalar;

/// `n ≠ 0` and `ψ` with `n · φ(e)|_{Z_ω} = ψ(r(e)) − ψ(s(e))` mod Z for every
/// edge: along any groupoid element the `n`-th character coordinate of `φ̃`
/// depends only on the end vertices, so no orbit is dense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialCertificate<I: Scalar> {
    pub n: Vec<I>,
    /// Indexed by vertex.
    pub psi: Vec<PhaseExponent<I>>,
}

/// Spanning forest from BFS over edges in both directions. Returns, per
/// vertex, the vector `T(v)` with `T(r(e)) − T(s(e)) = P(e)` on tree edges,
/// and the non-tree edges.
fn tree_potential<I: Scalar>(
    g: &KGraph,
    p: &[PhaseVector<I>],
    d: usize,
) -> (Vec<PhaseVector<I>>, Vec<EdgeId>) {
    let nv = g.num_vertices();
    let mut pot: Vec<Option<PhaseVector<I>>> = vec![None; nv];
    let mut tree = vec![false; g.num_edges()];
    let mut incident: Vec<Vec<EdgeId>> = vec![Vec::new(); nv];
    for (id, e) in g.edges() {
        incident[e.range].push(id);
        if e.source != e.range {
            incident[e.source].push(id);
        }
    }
    for root in 0..nv {
        if pot[root].is_some() {
            continue;
        }
        pot[root] = Some(PhaseVector::zero(d));
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let here = pot[v].clone().expect("visited");
            for &id in &incident[v] {
                let e = g.edge(id);
                let (other, value) = if e.range == v {
                    (e.source, here.clone() - p[id].clone())
                } else {
                    (e.range, here.clone() + p[id].clone())
                };
                if pot[other].is_none() {
                    pot[other] = Some(value);
                    tree[id] = true;
                    queue.push_back(other);
                }
            }
        }
    }
    let pot = pot
        .into_iter()
        .map(|x| x.expect("every vertex visited"))
        .collect();
    let rest = (0..g.num_edges()).filter(|&i| !tree[i]).collect();
    (pot, rest)
}

/// Exact search: on a spanning forest the potential is forced by `n`, and
/// `n` must annihilate the phase of every fundamental cycle, which is a
/// Kronecker annihilator computation.
pub fn potential_certificate<I: Scalar>(
    g: &KGraph,
    phi: &OneCocyclePhi<I>,
    zbasis: &LatticeBasis<I>,
) -> Option<PotentialCertificate<I>> {
    let d = zbasis.rank();
    if d == 0 {
        return None;
    }
    let p: Vec<PhaseVector<I>> = phi.values.iter().map(|v| project(v, zbasis)).collect();
    let (pot, rest) = tree_potential(g, &p, d);
    let cycles: Vec<PhaseVector<I>> = rest
        .iter()
        .map(|&id| {
            let e = g.edge(id);
            p[id].clone() - (pot[e.range].clone() - pot[e.source].clone())
        })
        .collect();
    let ann = annihilator_of_columns(d, &cycles).ok()?.lattice;
    let n = ann.basis().first()?.clone();
    let psi = pot.iter().map(|t| t.pair(&n).reduced()).collect();
    Some(PotentialCertificate { n, psi })
}

/// Rechecks the defining equation on every edge.
pub fn verify_potential<I: Scalar>(
    g: &KGraph,
    phi: &OneCocyclePhi<I>,
    zbasis: &LatticeBasis<I>,
    cert: &PotentialCertificate<I>,
) -> bool {
    cert.n.len() == zbasis.rank()
        && cert.n.iter().any(|x| !x.is_zero())
        && cert.psi.len() == g.num_vertices()
        && g.edges().all(|(id, e)| {
            let lhs = project(&phi.values[id], zbasis).pair(&cert.n);
            lhs.same_phase(&(cert.psi[e.range].clone() - cert.psi[e.source].clone()))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgraph::builtin;
    use crate::scalar::int;
    use crate::Phase;

    fn pv(x: Phase) -> PhaseVector {
        PhaseVector(vec![x])
    }

    #[test]
    fn examples() {
        let b2 = builtin("B2").unwrap();
        let z = LatticeBasis::full(1);
        let zero = OneCocyclePhi::new(1, vec![pv(Phase::zero()), pv(Phase::zero())]);
        let cert = potential_certificate(&b2, &zero, &z).unwrap();
        assert_eq!(cert.n, vec![int(1)]);
        assert!(cert.psi.iter().all(|x| x.is_zero()));
        assert!(verify_potential(&b2, &zero, &z, &cert));

        let theta = Phase::symbol("theta");
        let phi = OneCocyclePhi::new(1, vec![pv(Phase::zero()), pv(theta.clone())]);
        assert!(potential_certificate(&b2, &phi, &z).is_none());

        // C2: c0 from v1 into v0, c1 from v0 into v1
        let c2 = builtin("C2").unwrap();
        let phi = OneCocyclePhi::new(1, vec![pv(-theta.clone()), pv(theta.clone())]);
        let cert = potential_certificate(&c2, &phi, &z).unwrap();
        assert_eq!(cert.n, vec![int(1)]);
        assert!(cert.psi[0].is_zero());
        assert_eq!(cert.psi[1], theta);
        assert!(verify_potential(&c2, &phi, &z, &cert));

        let half = OneCocyclePhi::new(1, vec![pv(Phase::zero()), pv(Phase::ratio(1, 2))]);
        let cert = potential_certificate(&b2, &half, &z).unwrap();
        assert_eq!(cert.n, vec![int(2)]);
    }
}
