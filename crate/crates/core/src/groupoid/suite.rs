use std::collections::HashMap;

use super::sigma::sigma_c_checked;
use super::{isotropy_restriction, r_sigma, sigma_c, GroupoidElement, OracleError, Partition};
use crate::cocycle::CocycleSpec;
use crate::kgraph::{integer_box, Degree, EventuallyPeriodicPath, KGraph, Path, VertexId};
use crate::phase::PhaseExponent;
use crate::scalar::Scalar;

/// Which finite slice of `G_Λ` the property suites range over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Box depth of the partition.
    pub partition_depth: Degree,
    /// Elements are `(μz, d(μ) − d(ν), νz)` with `d(μ), d(ν)` in this box.
    pub element_bound: Degree,
    /// Tails `z` are eventually periodic with prefix and cycle in these boxes.
    pub tail_prefix: Degree,
    pub tail_cycle: Degree,
    /// Extra resolutions tried by the choice-independence check.
    pub choice_extra: u32,
}

impl SuiteConfig {
    pub fn uniform(k: usize, partition_depth: u32, element_bound: u32) -> Self {
        SuiteConfig {
            partition_depth: Degree::uniform(k, partition_depth),
            element_bound: Degree::uniform(k, element_bound),
            tail_prefix: Degree::uniform(k, 1),
            tail_cycle: Degree::uniform(k, 1),
            choice_extra: 1,
        }
    }

    /// As `uniform`, with the tail cycle box widened to hold the canonical
    /// tail of every vertex, so no vertex is left without tails.
    pub fn covering(g: &KGraph, partition_depth: u32, element_bound: u32) -> Self {
        let mut cfg = Self::uniform(g.k(), partition_depth, element_bound);
        for v in 0..g.num_vertices() {
            let x = EventuallyPeriodicPath::canonical(g, v);
            cfg.tail_cycle = cfg.tail_cycle.join(x.cycle().degree());
        }
        cfg
    }
}

fn dedup_epp(g: &KGraph, xs: Vec<EventuallyPeriodicPath>) -> Vec<EventuallyPeriodicPath> {
    let mut out: Vec<EventuallyPeriodicPath> = Vec::new();
    for x in xs {
        if !out.iter().any(|y| y.same_as(g, &x)) {
            out.push(x);
        }
    }
    out
}

fn dedup_elements(g: &KGraph, xs: Vec<GroupoidElement>) -> Vec<GroupoidElement> {
    let mut out: Vec<GroupoidElement> = Vec::new();
    for x in xs {
        if !out.iter().any(|y| y.same_as(g, &x)) {
            out.push(x);
        }
    }
    out
}

/// Distinct tails at every vertex.
pub(crate) fn tails(g: &KGraph, cfg: &SuiteConfig) -> Vec<EventuallyPeriodicPath> {
    (0..g.num_vertices())
        .flat_map(|v| {
            dedup_epp(
                g,
                EventuallyPeriodicPath::enumerate(g, v, &cfg.tail_prefix, &cfg.tail_cycle),
            )
        })
        .collect()
}

struct Generator<'a> {
    g: &'a KGraph,
    bound: &'a Degree,
    by_source: HashMap<VertexId, Vec<Path>>,
}

impl<'a> Generator<'a> {
    fn new(g: &'a KGraph, bound: &'a Degree) -> Self {
        let mut by_source: HashMap<VertexId, Vec<Path>> = HashMap::new();
        for p in g.all_paths_upto(bound) {
            by_source.entry(p.source()).or_default().push(p);
        }
        Generator {
            g,
            bound,
            by_source,
        }
    }

    /// Distinct elements `(μw, ·, y)` with `ν = y(0, d)`, `w = T^d y`.
    fn with_source(&self, y: &EventuallyPeriodicPath) -> Vec<GroupoidElement> {
        let mut out = Vec::new();
        for d in self.bound.box_below() {
            let nu = y.initial(self.g, &d);
            let w = y.shift(self.g, &d);
            for mu in self.by_source.get(&nu.source()).into_iter().flatten() {
                out.push(
                    GroupoidElement::from_cylinder(self.g, mu, &nu, &w).expect("common source"),
                );
            }
        }
        dedup_elements(self.g, out)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdentitySuite {
    pub triples_checked: usize,
    /// Triples with some product outside the partition's reach.
    pub triples_skipped: usize,
    pub violations: Vec<String>,
    pub choice_checks: usize,
    pub choice_violations: Vec<String>,
}

impl IdentitySuite {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.choice_violations.is_empty()
    }
}

/// `σ(g,h) + σ(gh,k) = σ(h,k) + σ(g,hk)` mod Z on every composable triple
/// of generated elements that the partition resolves; along the way each
/// `σ(h, k)` is recomputed from several resolutions.
pub fn cocycle_identity_suite<I: Scalar>(
    c: &CocycleSpec<I>,
    g: &KGraph,
    part: &Partition,
    cfg: &SuiteConfig,
) -> IdentitySuite {
    let gen = Generator::new(g, &cfg.element_bound);
    let mut out = IdentitySuite::default();
    for z in tails(g, cfg) {
        for ke in gen.with_source(&z) {
            for he in gen.with_source(ke.range()) {
                out.choice_checks += 1;
                match sigma_c_checked(c, g, part, &he, &ke, cfg.choice_extra) {
                    Ok(_) | Err(OracleError::DepthInsufficient { .. }) => {}
                    Err(e) => {
                        out.choice_violations
                            .push(format!("{} {}: {e}", he.show(g), ke.show(g)))
                    }
                }
                for ge in gen.with_source(he.range()) {
                    let sides =
                        (|| -> Result<(PhaseExponent<I>, PhaseExponent<I>), OracleError> {
                            let gh = ge.compose(g, &he)?;
                            let hk = he.compose(g, &ke)?;
                            let lhs =
                                sigma_c(c, g, part, &ge, &he)? + sigma_c(c, g, part, &gh, &ke)?;
                            let rhs =
                                sigma_c(c, g, part, &he, &ke)? + sigma_c(c, g, part, &ge, &hk)?;
                            Ok((lhs, rhs))
                        })();
                    match sides {
                        Ok((lhs, rhs)) => {
                            out.triples_checked += 1;
                            if !lhs.same_phase(&rhs) {
                                out.violations.push(format!(
                                    "g={} h={} k={}: {lhs} vs {rhs}",
                                    ge.show(g),
                                    he.show(g),
                                    ke.show(g)
                                ));
                            }
                        }
                        Err(OracleError::DepthInsufficient { .. }) => out.triples_skipped += 1,
                        Err(e) => out.violations.push(format!(
                            "g={} h={} k={}: {e}",
                            ge.show(g),
                            he.show(g),
                            ke.show(g)
                        )),
                    }
                }
            }
        }
    }
    out
}

fn combine(basis: &[Vec<i64>], coeffs: &[i64], k: usize) -> Vec<i64> {
    (0..k)
        .map(|j| basis.iter().zip(coeffs).map(|(b, c)| b[j] * c).sum())
        .collect()
}

/// `Σ c_i b_i` for every coefficient vector with `‖c‖∞ ≤ radius`.
fn lattice_points(basis: &[Vec<i64>], k: usize, radius: u32) -> Vec<Vec<i64>> {
    integer_box(&Degree::uniform(basis.len(), radius))
        .iter()
        .map(|c| combine(basis, c, k))
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RFormulaSuite {
    pub instances: usize,
    pub skipped: usize,
    pub violations: Vec<String>,
}

impl RFormulaSuite {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `r^σ_α(p+q) = σ_{r(α)}(p,q) − σ_{s(α)}(p,q) + r^σ_α(p) + r^σ_α(q)` mod Z
/// for generated `α` and `p, q ∈ Per(Λ)` with basis coefficients in
/// `[−radius, radius]`.
pub fn r_formula_suite<I: Scalar>(
    c: &CocycleSpec<I>,
    g: &KGraph,
    part: &Partition,
    per_basis: &[Vec<i64>],
    cfg: &SuiteConfig,
    radius: u32,
) -> RFormulaSuite {
    let gen = Generator::new(g, &cfg.element_bound);
    let points = lattice_points(per_basis, g.k(), radius);
    let mut out = RFormulaSuite::default();
    for z in tails(g, cfg) {
        for alpha in gen.with_source(&z) {
            for p in &points {
                for q in &points {
                    let pq: Vec<i64> = p.iter().zip(q).map(|(a, b)| a + b).collect();
                    let sides =
                        (|| -> Result<(PhaseExponent<I>, PhaseExponent<I>), OracleError> {
                            let lhs = r_sigma(c, g, part, &alpha, &pq)?;
                            let rhs = isotropy_restriction(c, g, part, alpha.range(), p, q)?
                                - isotropy_restriction(c, g, part, alpha.source(), p, q)?
                                + r_sigma(c, g, part, &alpha, p)?
                                + r_sigma(c, g, part, &alpha, q)?;
                            Ok((lhs, rhs))
                        })();
                    match sides {
                        Ok((lhs, rhs)) => {
                            out.instances += 1;
                            if !lhs.same_phase(&rhs) {
                                out.violations.push(format!(
                                    "alpha={} p={p:?} q={q:?}: {lhs} vs {rhs}",
                                    alpha.show(g)
                                ));
                            }
                        }
                        Err(OracleError::DepthInsufficient { .. }) => out.skipped += 1,
                        Err(e) => out
                            .violations
                            .push(format!("alpha={} p={p:?} q={q:?}: {e}", alpha.show(g))),
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IsotropySuite {
    pub instances: usize,
    pub skipped: usize,
    pub violations: Vec<String>,
}

impl IsotropySuite {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `r^σ_α(p) ∈ Z` for isotropy `α = (x, m, x)`, `m ∈ Per(Λ)`, and
/// `p ∈ Z_ω` (given in `Z^k` coordinates), over every tail `x` and
/// coefficients in `[−radius, radius]`.
pub fn isotropy_triviality_suite<I: Scalar>(
    c: &CocycleSpec<I>,
    g: &KGraph,
    part: &Partition,
    per_basis: &[Vec<i64>],
    z_basis: &[Vec<i64>],
    cfg: &SuiteConfig,
    radius: u32,
) -> IsotropySuite {
    let ms = lattice_points(per_basis, g.k(), radius);
    let ps = lattice_points(z_basis, g.k(), radius);
    let mut out = IsotropySuite::default();
    for x in tails(g, cfg) {
        for m in &ms {
            let alpha = match GroupoidElement::isotropy(g, &x, m) {
                Ok(a) => a,
                Err(e) => {
                    out.violations.push(format!(
                        "{m:?} at {}: {e}",
                        GroupoidElement::unit(&x).show(g)
                    ));
                    continue;
                }
            };
            for p in &ps {
                match r_sigma(c, g, part, &alpha, p) {
                    Ok(r) => {
                        out.instances += 1;
                        if !r.is_trivial() {
                            out.violations
                                .push(format!("alpha={} p={p:?}: {r}", alpha.show(g)));
                        }
                    }
                    Err(OracleError::DepthInsufficient { .. }) => out.skipped += 1,
                    Err(e) => out
                        .violations
                        .push(format!("alpha={} p={p:?}: {e}", alpha.show(g))),
                }
            }
        }
    }
    out
}
