use super::{periodic_at, StructureCertificate, Verdict};
use crate::kgraph::{integer_box, Degree, EdgeId, KGraph, Path, VertexId};

/// How to read "no period found in the box" for k ≥ 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AperiodicityPolicy {
    /// Report UNKNOWN: absence of small periods proves nothing.
    #[default]
    Strict,
    /// Treat the box as exhaustive and report YES.
    AcceptBound,
}

/// For k = 1: a cycle all of whose vertices receive exactly one edge. From
/// such a vertex the only infinite path is the cycle repeated. Returns the
/// vertex and the cycle's edges.
pub fn cycle_without_entrance(g: &KGraph) -> Option<(VertexId, Vec<EdgeId>)> {
    let unique_in = |v: VertexId| -> Option<EdgeId> {
        let mut it = g.edges_with_range(v);
        match (it.next(), it.next()) {
            (Some(e), None) => Some(e),
            _ => None,
        }
    };
    for v in 0..g.num_vertices() {
        let mut at = v;
        let mut word = Vec::new();
        while let Some(e) = unique_in(at) {
            word.push(e);
            at = g.edge(e).source;
            if at == v {
                return Some((v, word));
            }
            if word.len() > g.num_vertices() {
                break;
            }
        }
    }
    None
}

/// Aperiodicity. For k = 1 this is exact: aperiodic iff every cycle has an
/// entrance. For k ≥ 2 a local period at some vertex certifies NO;
/// otherwise the verdict depends on `policy`.
pub fn is_aperiodic(g: &KGraph, bound: &Degree, policy: AperiodicityPolicy) -> Verdict {
    if g.k() == 1 {
        return match cycle_without_entrance(g) {
            Some((vertex, word)) => Verdict::no(StructureCertificate::LocalPeriod {
                vertex,
                period: vec![word.len() as i64],
            }),
            None => Verdict::yes(StructureCertificate::EveryCycleHasEntrance),
        };
    }
    let candidates: Vec<Vec<i64>> = integer_box(bound)
        .into_iter()
        .filter(|p| p.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
        .collect();
    for vertex in 0..g.num_vertices() {
        if let Some(p) = candidates.iter().find(|p| periodic_at(g, p, vertex)) {
            return Verdict::no(StructureCertificate::LocalPeriod {
                vertex,
                period: p.clone(),
            })
            .with_bound(bound.clone());
        }
    }
    match policy {
        AperiodicityPolicy::Strict => Verdict::unknown(Some(bound.clone())),
        AperiodicityPolicy::AcceptBound => Verdict::yes(StructureCertificate::NoPeriodUpTo {
            bound: bound.clone(),
        })
        .with_bound(bound.clone()),
    }
}

/// Outcome of the bounded pair test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTestReport {
    pub pairs_checked: usize,
    /// Pairs `(μ, ν)` for which every `τ` up to the extension bound leaves
    /// `μτ` and `ντ` with a common extension.
    pub failures: Vec<(Path, Path)>,
    pub bound: Degree,
    pub extension_bound: Degree,
}

impl PairTestReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether `p` and `q` (same range) have a common extension.
fn have_common_extension(g: &KGraph, p: &Path, q: &Path) -> bool {
    let n = p.degree().join(q.degree());
    let rest = n.checked_sub(p.degree()).expect("join dominates");
    g.paths_from(p.source(), &rest).iter().any(|z| {
        let lam = g.compose(p, z).expect("z starts at s(p)");
        g.factorize(&lam, q.degree())
            .expect("q degree below join")
            .0
            == *q
    })
}

/// Cross-check for aperiodicity: for every pair `μ ≠ ν` with common range
/// and source and `d(μ) ∧ d(ν) = 0` up to `bound`, look for `τ` up to
/// `extension_bound` such that `μτ` and `ντ` have no common extension.
pub fn pair_test(g: &KGraph, bound: &Degree, extension_bound: &Degree) -> PairTestReport {
    let mut pairs_checked = 0;
    let mut failures = Vec::new();
    for v in 0..g.num_vertices() {
        let paths = g.paths_from_upto(v, bound);
        for mu in &paths {
            for nu in &paths {
                if mu >= nu
                    || mu.source() != nu.source()
                    || !mu.degree().meet(nu.degree()).is_zero()
                {
                    continue;
                }
                pairs_checked += 1;
                let separated = g
                    .paths_from_upto(mu.source(), extension_bound)
                    .iter()
                    .any(|tau| {
                        let a = g.compose(mu, tau).expect("tau starts at s(mu)");
                        let b = g.compose(nu, tau).expect("tau starts at s(nu)");
                        !have_common_extension(g, &a, &b)
                    });
                if !separated {
                    failures.push((mu.clone(), nu.clone()));
                }
            }
        }
    }
    PairTestReport {
        pairs_checked,
        failures,
        bound: bound.clone(),
        extension_bound: extension_bound.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgraph::builtin;
    use crate::structure::{verify_aperiodicity, Status};

    #[test]
    fn examples() {
        let b2 = builtin("B2").unwrap();
        let v = is_aperiodic(&b2, &Degree(vec![2]), AperiodicityPolicy::Strict);
        assert_eq!(v.status, Status::YesCertified);
        assert!(verify_aperiodicity(&b2, &v));

        let t1 = builtin("T1").unwrap();
        let v = is_aperiodic(&t1, &Degree(vec![2]), AperiodicityPolicy::Strict);
        assert_eq!(
            v.certificate,
            StructureCertificate::LocalPeriod {
                vertex: 0,
                period: vec![1]
            }
        );
        assert!(verify_aperiodicity(&t1, &v));

        let b2t1 = builtin("B2xT1").unwrap();
        let v = is_aperiodic(&b2t1, &Degree(vec![2, 2]), AperiodicityPolicy::Strict);
        assert_eq!(
            v.certificate,
            StructureCertificate::LocalPeriod {
                vertex: 0,
                period: vec![0, 1]
            }
        );
        assert!(verify_aperiodicity(&b2t1, &v));
    }

    fn b2_times_b2() -> KGraph {
        use crate::kgraph::{EdgeSpec, SquareSpec};
        let e = |id: &str, color| EdgeSpec {
            id: id.into(),
            color,
            range: "v".into(),
            source: "v".into(),
        };
        let mut squares = Vec::new();
        for x in ["e", "f"] {
            for y in ["g", "h"] {
                squares.push(SquareSpec {
                    ij: [1, 2],
                    from: [x.into(), y.into()],
                    to: [y.into(), x.into()],
                });
            }
        }
        KGraph::from_parts(
            2,
            vec!["v".into()],
            vec![e("e", 1), e("f", 1), e("g", 2), e("h", 2)],
            squares,
        )
        .unwrap()
    }

    #[test]
    fn policy_controls_unproved_case() {
        let g = b2_times_b2();
        let bound = Degree(vec![1, 1]);
        let strict = is_aperiodic(&g, &bound, AperiodicityPolicy::Strict);
        assert_eq!(strict.status, Status::Unknown);
        let accepted = is_aperiodic(&g, &bound, AperiodicityPolicy::AcceptBound);
        assert_eq!(accepted.status, Status::YesCertified);
        assert!(verify_aperiodicity(&g, &accepted));
        assert!(pair_test(&g, &bound, &bound).passed());
    }

    #[test]
    fn pair_test_cross_check() {
        let b2 = builtin("B2").unwrap();
        let r = pair_test(&b2, &Degree(vec![2]), &Degree(vec![2]));
        assert!(r.passed() && r.pairs_checked > 0);
        let b2t1 = builtin("B2xT1").unwrap();
        let r = pair_test(&b2t1, &Degree(vec![1, 1]), &Degree(vec![1, 1]));
        assert!(!r.passed());
    }
}
