//! Categorical 2-cocycles on k-graphs, 1-cocycles `φ` into `T^l`, and
//! bicharacters on `Z^l`, all valued in exponent form.

mod bicharacter;
mod phi;

use std::collections::HashMap;
use std::fmt;

use crate::kgraph::{EdgeId, GraphError, KGraph, Path};
use crate::phase::PhaseExponent;
use crate::scalar::{int, Exact, Scalar};

pub use bicharacter::BicharacterTable;
pub use phi::{phi_tilde, validate_phi, OneCocyclePhi};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CocycleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("source/range mismatch: cannot evaluate the cocycle on ({mu}, {nu})")]
    NotComposable { mu: String, nu: String },
    #[error("source mismatch: ({mu}, {nu}) do not share a source")]
    SourceMismatch { mu: String, nu: String },
    #[error("no table entry for ({mu}, {nu})")]
    MissingEntry { mu: String, nu: String },
    #[error("graph is not a product with T_{l}")]
    NotProduct { l: usize },
    #[error("{what}: expected size {expected}, got {got}")]
    Shape {
        what: String,
        expected: usize,
        got: usize,
    },
}

/// The three ways a 2-cocycle can be given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleSpec<I: Scalar = Exact> {
    /// `c(μ, ν) = d(μ)ᵀ Θ d(ν)`.
    Pullback { theta: BicharacterTable<I> },
    /// `c((λ, m), (μ, n)) = m·φ(μ) + ω(m, n)` on `Λ × T_l`.
    PhiOmega(PhiOmega<I>),
    /// Explicit values on composable pairs; pairs involving a vertex are 0.
    Table(CocycleTable<I>),
}

/// Payload of the product-graph variant. `base_edge[e]` is the base edge
/// behind product edge `e`, or `None` for the `T_l` loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiOmega<I: Scalar = Exact> {
    pub l: usize,
    pub base: KGraph,
    pub base_edge: Vec<Option<EdgeId>>,
    pub phi: OneCocyclePhi<I>,
    pub omega: BicharacterTable<I>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CocycleTable<I: Scalar = Exact> {
    pub entries: HashMap<(Path, Path), PhaseExponent<I>>,
}

impl<I: Scalar> CocycleSpec<I> {
    pub fn pullback(theta: BicharacterTable<I>) -> Self {
        CocycleSpec::Pullback { theta }
    }

    /// `c_{φ,ω}` on `g = Λ × T_l`, with `φ` given on the edges of `Λ`.
    pub fn phi_omega(
        g: &KGraph,
        l: usize,
        phi: OneCocyclePhi<I>,
        omega: BicharacterTable<I>,
    ) -> Result<Self, CocycleError> {
        let base = crate::kgraph::product_base(g, l).ok_or(CocycleError::NotProduct { l })?;
        if phi.values.len() != base.num_edges() {
            return Err(CocycleError::Shape {
                what: "phi edge count".into(),
                expected: base.num_edges(),
                got: phi.values.len(),
            });
        }
        if phi.l != l || omega.rank() != l {
            return Err(CocycleError::Shape {
                what: "phi/omega rank".into(),
                expected: l,
                got: phi.l.min(omega.rank()),
            });
        }
        let base_edge = g.edges().map(|(_, e)| base.edge_id(&e.name).ok()).collect();
        Ok(CocycleSpec::PhiOmega(PhiOmega {
            l,
            base,
            base_edge,
            phi,
            omega,
        }))
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            CocycleSpec::Pullback { .. } => "pullback",
            CocycleSpec::PhiOmega(_) => "phi_omega",
            CocycleSpec::Table(_) => "table",
        }
    }
}

impl<I: Scalar> PhiOmega<I> {
    /// `φ` of the base component of a product path.
    pub fn phi_of(&self, path: &Path) -> crate::phase::PhaseVector<I> {
        let mut acc = crate::phase::PhaseVector::zero(self.l);
        for &e in path.edges() {
            if let Some(b) = self.base_edge[e] {
                acc = acc + self.phi.values[b].clone();
            }
        }
        acc
    }

    /// The `T_l` component of a product degree.
    pub fn torus_part(&self, path: &Path) -> Vec<I> {
        let k0 = self.base.k();
        path.degree().0[k0..]
            .iter()
            .map(|&x| int::<I>(x as i64))
            .collect()
    }
}

fn names(g: &KGraph, mu: &Path, nu: &Path) -> (String, String) {
    (g.show(mu).to_string(), g.show(nu).to_string())
}

/// `c(μ, ν)` in exponent form.
pub fn cocycle_value<I: Scalar>(
    c: &CocycleSpec<I>,
    g: &KGraph,
    mu: &Path,
    nu: &Path,
) -> Result<PhaseExponent<I>, CocycleError> {
    if mu.source() != nu.range() {
        let (mu, nu) = names(g, mu, nu);
        return Err(CocycleError::NotComposable { mu, nu });
    }
    if mu.is_vertex() || nu.is_vertex() {
        return Ok(PhaseExponent::zero());
    }
    match c {
        CocycleSpec::Pullback { theta } => {
            let dm: Vec<I> = mu.degree().0.iter().map(|&x| int::<I>(x as i64)).collect();
            let dn: Vec<I> = nu.degree().0.iter().map(|&x| int::<I>(x as i64)).collect();
            Ok(theta.value(&dm, &dn))
        }
        CocycleSpec::PhiOmega(po) => {
            let m = po.torus_part(mu);
            let n = po.torus_part(nu);
            Ok(po.phi_of(nu).pair(&m) + po.omega.value(&m, &n))
        }
        CocycleSpec::Table(t) => t
            .entries
            .get(&(mu.clone(), nu.clone()))
            .cloned()
            .ok_or_else(|| {
                let (mu, nu) = names(g, mu, nu);
                CocycleError::MissingEntry { mu, nu }
            }),
    }
}

/// A failed cocycle check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleViolation {
    /// `c(r(λ), λ)` or `c(λ, s(λ))` is not trivial.
    Normalization { path: String, value: String },
    /// `c(μ,ν) + c(λ,μν) ≠ c(λ,μ) + c(λμ,ν)` mod Z.
    Identity {
        lambda: String,
        mu: String,
        nu: String,
        lhs: String,
        rhs: String,
    },
    /// The cocycle could not be evaluated (e.g. a missing table entry).
    Evaluation(String),
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleViolation::Normalization { path, value } => {
                write!(f, "normalization fails at {path}: {value}")
            }
            CocycleViolation::Identity {
                lambda,
                mu,
                nu,
                lhs,
                rhs,
            } => {
                write!(
                    f,
                    "cocycle identity fails at ({lambda}, {mu}, {nu}): {lhs} vs {rhs}"
                )
            }
            CocycleViolation::Evaluation(e) => write!(f, "evaluation error: {e}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CocycleReport {
    pub violations: Vec<CocycleViolation>,
    pub triples_checked: usize,
}

impl CocycleReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks normalization and the cocycle identity on every composable
/// triple `(λ, μ, ν)` with `|d(λ)| + |d(μ)| + |d(ν)| ≤ depth`.
pub fn validate_cocycle<I: Scalar>(c: &CocycleSpec<I>, g: &KGraph, depth: u32) -> CocycleReport {
    let mut report = CocycleReport::default();
    let eval = |m: &Path, n: &Path| cocycle_value(c, g, m, n);
    for v in 0..g.num_vertices() {
        for lam in g.paths_from_total(v, depth) {
            let checks = [
                eval(&g.vertex_path(lam.range()), &lam),
                eval(&lam, &g.vertex_path(lam.source())),
            ];
            for value in checks {
                match value {
                    Ok(x) if x.is_trivial() => {}
                    Ok(x) => report.violations.push(CocycleViolation::Normalization {
                        path: g.show(&lam).to_string(),
                        value: x.to_string(),
                    }),
                    Err(e) => report
                        .violations
                        .push(CocycleViolation::Evaluation(e.to_string())),
                }
            }
        }
    }
    for v in 0..g.num_vertices() {
        for lam in g.paths_from_total(v, depth) {
            let left = depth - lam.degree().total();
            for mu in g.paths_from_total(lam.source(), left) {
                let left2 = left - mu.degree().total();
                let lam_mu = g.compose(&lam, &mu).expect("composable by construction");
                for nu in g.paths_from_total(mu.source(), left2) {
                    report.triples_checked += 1;
                    let mu_nu = g.compose(&mu, &nu).expect("composable by construction");
                    let sides = (|| -> Result<_, CocycleError> {
                        let lhs = eval(&mu, &nu)? + eval(&lam, &mu_nu)?;
                        let rhs = eval(&lam, &mu)? + eval(&lam_mu, &nu)?;
                        Ok((lhs, rhs))
                    })();
                    match sides {
                        Ok((lhs, rhs)) if lhs.same_phase(&rhs) => {}
                        Ok((lhs, rhs)) => report.violations.push(CocycleViolation::Identity {
                            lambda: g.show(&lam).to_string(),
                            mu: g.show(&mu).to_string(),
                            nu: g.show(&nu).to_string(),
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        }),
                        Err(e) => report
                            .violations
                            .push(CocycleViolation::Evaluation(e.to_string())),
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::kgraph::builtin;
    use crate::phase::PhaseVector;
    use crate::Phase;

    fn theta() -> Phase {
        Phase::symbol("theta")
    }

    pub(crate) fn pullback_t2(entry: Phase) -> CocycleSpec {
        CocycleSpec::pullback(BicharacterTable::new(vec![
            vec![Phase::zero(), Phase::zero()],
            vec![entry, Phase::zero()],
        ]))
    }

    #[test]
    fn pullback_values() {
        let g = builtin("T2").unwrap();
        let c = pullback_t2(theta());
        let a = g.path_from_names("a").unwrap();
        let b = g.path_from_names("b").unwrap();
        assert!(cocycle_value(&c, &g, &a, &b).unwrap().is_zero());
        assert_eq!(cocycle_value(&c, &g, &b, &a).unwrap(), theta());
        assert!(cocycle_value(&c, &g, &a, &g.vertex_path(0))
            .unwrap()
            .is_zero());
        assert!(validate_cocycle(&c, &g, 3).is_valid());
    }

    pub(crate) fn phi_b2t1(fe: Phase, ff: Phase) -> CocycleSpec {
        let g = builtin("B2xT1").unwrap();
        let phi = OneCocyclePhi::new(1, vec![PhaseVector(vec![fe]), PhaseVector(vec![ff])]);
        CocycleSpec::phi_omega(&g, 1, phi, BicharacterTable::zero(1)).unwrap()
    }

    #[test]
    fn phi_omega_values() {
        let g = builtin("B2xT1").unwrap();
        let c = phi_b2t1(Phase::zero(), theta());
        let e = g.path_from_names("e").unwrap();
        let f = g.path_from_names("f").unwrap();
        let t_e = g.path_from_names("e t1").unwrap();
        let t = g.path_from_names("t1").unwrap();
        // ((e,0),(f,1)): m = 0
        let f_t = g.path_from_names("f t1").unwrap();
        assert!(cocycle_value(&c, &g, &e, &f_t).unwrap().is_zero());
        // ((e,1),(f,0)): m = 1, φ(f) = θ
        assert_eq!(cocycle_value(&c, &g, &t_e, &f).unwrap(), theta());
        assert_eq!(cocycle_value(&c, &g, &t, &f).unwrap(), theta());
        let r = validate_cocycle(&c, &g, 3);
        assert!(r.is_valid(), "{:?}", r.violations);
    }

    #[test]
    fn corrupted_table_is_reported() {
        let g = builtin("T2").unwrap();
        let c = pullback_t2(Phase::ratio(1, 3));
        let mut table = CocycleTable::default();
        for v in 0..g.num_vertices() {
            for mu in g.paths_from_total(v, 3) {
                for nu in g.paths_from_total(mu.source(), 3 - mu.degree().total()) {
                    table.entries.insert(
                        (mu.clone(), nu.clone()),
                        cocycle_value(&c, &g, &mu, &nu).unwrap(),
                    );
                }
            }
        }
        let mut t = CocycleSpec::Table(table.clone());
        assert!(validate_cocycle(&t, &g, 3).is_valid());
        let a = g.path_from_names("a").unwrap();
        let b = g.path_from_names("b").unwrap();
        table.entries.insert((b, a), Phase::ratio(1, 2));
        t = CocycleSpec::Table(table);
        let r = validate_cocycle(&t, &g, 3);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, CocycleViolation::Identity { .. })));
    }
}
