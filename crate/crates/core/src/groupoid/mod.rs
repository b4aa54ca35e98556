//! Brute-force model of the path groupoid `G_Λ` restricted to eventually
//! periodic infinite paths: a finite partition of `G_Λ` into cylinders, the
//! groupoid 2-cocycle `σ_c` induced by a categorical cocycle, the
//! conjugation character `r^σ`, and the bicharacter `ω` read off isotropy.

mod omega;
mod partition;
mod sigma;
mod suite;

use std::fmt;

use crate::cocycle::CocycleError;
use crate::kgraph::{Degree, EventuallyPeriodicPath, GraphError, KGraph, Path};

pub use omega::{
    coboundary_bx, compare_omegas, omega_closedform, omega_from_oracle, ClosedForm, Coboundary,
    OmegaComparison, OracleOmega,
};
pub use partition::{build_partition, Partition};
pub use sigma::{isotropy_restriction, r_sigma, sigma_c, sigma_c_checked, Resolution};
pub use suite::{
    cocycle_identity_suite, isotropy_triviality_suite, r_formula_suite, IdentitySuite,
    IsotropySuite, RFormulaSuite, SuiteConfig,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error("pinned pairs {first} and {second} have overlapping cylinders")]
    PinnedOverlap { first: String, second: String },
    #[error("pinned pair {0} does not share a source")]
    PinnedSource(String),
    #[error("no partition member contains {element} at depth {depth}; increase depth")]
    DepthInsufficient { element: String, depth: Degree },
    #[error("elements are not composable: s(g) != r(h)")]
    NotComposable,
    #[error("sigma_c depends on the chosen resolution: {first} vs {second}")]
    ChoiceDependent { first: String, second: String },
    #[error("{0:?} is not a period at the chosen infinite path")]
    NotPeriodic(Vec<i64>),
    #[error("target bicharacter has a different antisymmetrization from the isotropy cocycle")]
    NotCohomologous,
    #[error("depth escalation exhausted at {0}")]
    EscalationExhausted(Degree),
    #[error("{0}")]
    Invalid(String),
}

/// `(x, m, y) ∈ G_Λ` with `x`, `y` eventually periodic and `T^a x = T^b y`
/// for some `a − b = m`.
#[derive(Debug, Clone)]
pub struct GroupoidElement {
    range: EventuallyPeriodicPath,
    lag: Vec<i64>,
    source: EventuallyPeriodicPath,
}

impl GroupoidElement {
    /// `(μz, d(μ) − d(ν), νz)`.
    pub fn from_cylinder(
        g: &KGraph,
        mu: &Path,
        nu: &Path,
        z: &EventuallyPeriodicPath,
    ) -> Result<Self, OracleError> {
        if mu.source() != nu.source() {
            return Err(OracleError::Invalid(format!(
                "({}, {}) do not share a source",
                g.show(mu),
                g.show(nu)
            )));
        }
        Ok(GroupoidElement {
            range: z.prepend(g, mu)?,
            lag: mu.degree().diff(nu.degree()),
            source: z.prepend(g, nu)?,
        })
    }

    /// `(x, p, x)`, provided `T^{p+} x = T^{p−} x`.
    pub fn isotropy(
        g: &KGraph,
        x: &EventuallyPeriodicPath,
        p: &[i64],
    ) -> Result<Self, OracleError> {
        let a = Degree::pos_part(p);
        let b = Degree::neg_part(p);
        if !x.shift(g, &a).same_as(g, &x.shift(g, &b)) {
            return Err(OracleError::NotPeriodic(p.to_vec()));
        }
        Ok(GroupoidElement {
            range: x.clone(),
            lag: p.to_vec(),
            source: x.clone(),
        })
    }

    pub fn unit(x: &EventuallyPeriodicPath) -> Self {
        let k = x.cycle().degree().k();
        GroupoidElement {
            range: x.clone(),
            lag: vec![0; k],
            source: x.clone(),
        }
    }

    pub fn range(&self) -> &EventuallyPeriodicPath {
        &self.range
    }

    pub fn source(&self) -> &EventuallyPeriodicPath {
        &self.source
    }

    pub fn lag(&self) -> &[i64] {
        &self.lag
    }

    pub fn inverse(&self) -> Self {
        GroupoidElement {
            range: self.source.clone(),
            lag: self.lag.iter().map(|x| -x).collect(),
            source: self.range.clone(),
        }
    }

    pub fn composable(&self, g: &KGraph, other: &Self) -> bool {
        self.source.same_as(g, &other.range)
    }

    pub fn compose(&self, g: &KGraph, other: &Self) -> Result<Self, OracleError> {
        if !self.composable(g, other) {
            return Err(OracleError::NotComposable);
        }
        Ok(GroupoidElement {
            range: self.range.clone(),
            lag: self
                .lag
                .iter()
                .zip(&other.lag)
                .map(|(a, b)| a + b)
                .collect(),
            source: other.source.clone(),
        })
    }

    /// Membership in `Z(μ, ν)`.
    pub fn in_cylinder(&self, g: &KGraph, mu: &Path, nu: &Path) -> bool {
        mu.source() == nu.source()
            && self.lag == mu.degree().diff(nu.degree())
            && self.range.initial(g, mu.degree()) == *mu
            && self.source.initial(g, nu.degree()) == *nu
            && self
                .range
                .shift(g, mu.degree())
                .same_as(g, &self.source.shift(g, nu.degree()))
    }

    pub fn same_as(&self, g: &KGraph, other: &Self) -> bool {
        self.lag == other.lag
            && self.range.same_as(g, &other.range)
            && self.source.same_as(g, &other.source)
    }

    pub fn show<'a>(&'a self, g: &'a KGraph) -> ElementDisplay<'a> {
        ElementDisplay { g, e: self }
    }
}

pub struct ElementDisplay<'a> {
    g: &'a KGraph,
    e: &'a GroupoidElement,
}

fn show_epp(g: &KGraph, x: &EventuallyPeriodicPath, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{}({})^inf", g.show(x.prefix()), g.show(x.cycle()))
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        show_epp(self.g, &self.e.range, f)?;
        write!(f, ", {:?}, ", self.e.lag)?;
        show_epp(self.g, &self.e.source, f)?;
        f.write_str(")")
    }
}
