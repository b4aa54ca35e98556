//! Cofinality, periodicity and aperiodicity of finite k-graphs.
//!
//! Every verdict carries the data needed to recheck it: a trapped
//! eventually periodic path for non-cofinality, a locally periodic vertex for
//! non-aperiodicity, and so on. The `verify_*` functions recheck those
//! payloads without reusing the search that produced them.

mod aperiodic;
mod cofinal;
mod periodicity;

use std::fmt;

use crate::kgraph::{Degree, EventuallyPeriodicPath, VertexId};

pub use aperiodic::{
    cycle_without_entrance, is_aperiodic, pair_test, AperiodicityPolicy, PairTestReport,
};
pub use cofinal::is_cofinal;
pub use periodicity::{
    default_bound, per_group, periodic_at, periodic_with_offsets, PeriodicityResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    YesCertified,
    NoCertified,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::YesCertified => "YES_CERTIFIED",
            Status::NoCertified => "NO_CERTIFIED",
            Status::Unknown => "UNKNOWN",
        })
    }
}

/// Evidence attached to a structural verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureCertificate {
    /// Every vertex reaches every other vertex.
    StronglyConnected,
    /// For every vertex `v`, the color-1 edges among vertices not reachable
    /// from `v` form no cycle, so no infinite path can avoid `vΛ`.
    NoTrappedCycle,
    /// `x` never visits a vertex reachable from `v`.
    TrappedPath {
        vertex: VertexId,
        path: EventuallyPeriodicPath,
    },
    /// `T^{p+} x = T^{p-} x` for every `x ∈ Z(vertex)`.
    LocalPeriod {
        vertex: VertexId,
        period: Vec<i64>,
    },
    /// k = 1 and every cycle has an entrance.
    EveryCycleHasEntrance,
    /// No local period was found in the box; accepted by policy.
    NoPeriodUpTo {
        bound: Degree,
    },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub bound: Option<Degree>,
    pub certificate: StructureCertificate,
}

impl Verdict {
    pub fn yes(certificate: StructureCertificate) -> Self {
        Verdict {
            status: Status::YesCertified,
            bound: None,
            certificate,
        }
    }

    pub fn no(certificate: StructureCertificate) -> Self {
        Verdict {
            status: Status::NoCertified,
            bound: None,
            certificate,
        }
    }

    pub fn unknown(bound: Option<Degree>) -> Self {
        Verdict {
            status: Status::Unknown,
            bound,
            certificate: StructureCertificate::None,
        }
    }

    pub fn with_bound(mut self, bound: Degree) -> Self {
        self.bound = Some(bound);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("periodicity group requested for a graph not certified cofinal ({0})")]
    NotCofinal(Status),
    #[error("bound has rank {got}, graph has k = {k}")]
    BoundRank { got: usize, k: usize },
}

pub use verify::{verify_aperiodicity, verify_cofinality};

mod verify {
    use super::cofinal::color_one_cycle_outside;
    use super::*;
    use crate::kgraph::KGraph;

    /// Rechecks a cofinality verdict's certificate from scratch.
    pub fn verify_cofinality(g: &KGraph, v: &Verdict) -> bool {
        match (&v.status, &v.certificate) {
            (Status::YesCertified, StructureCertificate::StronglyConnected) => {
                g.is_strongly_connected()
            }
            (Status::YesCertified, StructureCertificate::NoTrappedCycle) => (0..g.num_vertices())
                .all(|w| {
                    let reach = g.reachable_from(w);
                    !color_one_cycle_outside(g, &reach)
                }),
            (Status::NoCertified, StructureCertificate::TrappedPath { vertex, path }) => {
                if path.range() >= g.num_vertices() || *vertex >= g.num_vertices() {
                    return false;
                }
                let reach = g.reachable_from(*vertex);
                path.vertices(g).is_disjoint(&reach)
            }
            (Status::Unknown, _) => true,
            _ => false,
        }
    }

    /// Rechecks an aperiodicity verdict's certificate from scratch.
    pub fn verify_aperiodicity(g: &KGraph, v: &Verdict) -> bool {
        match (&v.status, &v.certificate) {
            (Status::NoCertified, StructureCertificate::LocalPeriod { vertex, period }) => {
                period.iter().any(|&x| x != 0)
                    && period.len() == g.k()
                    && *vertex < g.num_vertices()
                    && brute_force_period(g, *vertex, period)
            }
            (Status::YesCertified, StructureCertificate::EveryCycleHasEntrance) => {
                g.k() == 1 && cycle_without_entrance(g).is_none()
            }
            (Status::YesCertified, StructureCertificate::NoPeriodUpTo { bound }) => {
                integer_box_nonzero(bound)
                    .all(|p| (0..g.num_vertices()).all(|w| !periodic_at(g, &p, w)))
            }
            (Status::Unknown, _) => true,
            _ => false,
        }
    }

    fn integer_box_nonzero(bound: &Degree) -> impl Iterator<Item = Vec<i64>> {
        crate::kgraph::integer_box(bound)
            .into_iter()
            .filter(|p| p.iter().any(|&x| x != 0))
    }

    /// Independent check of a local period. The windows `x(n, n+c)` over
    /// `x ∈ Z(vertex)` are exactly the paths of degree `c` whose range is
    /// reachable from `vertex` (prepend any path reaching the range, extend
    /// past the source), so the automaton search reduces to a direct scan.
    fn brute_force_period(g: &KGraph, vertex: VertexId, p: &[i64]) -> bool {
        let (a, b) = (Degree::pos_part(p), Degree::neg_part(p));
        let c = a.join(&b);
        g.reachable_from(vertex).into_iter().all(|u| {
            (0..g.k()).all(|i| {
                let step = Degree::unit(g.k(), i);
                let n = &c + &step;
                g.paths_from(u, &n).iter().all(|lam| {
                    g.segment(lam, &a, &(&a + &step)).ok() == g.segment(lam, &b, &(&b + &step)).ok()
                })
            })
        })
    }
}
