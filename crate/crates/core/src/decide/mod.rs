//! Simplicity verdicts for twisted k-graph algebras.
//!
//! The cascade: a non-cofinal graph is nonsimple; a trivial centre `Z_ω`
//! of the isotropy bicharacter gives simplicity; graphs with a single path
//! of every degree from every vertex have finite orbits, so a nontrivial
//! `Z_ω` gives nonsimplicity; for `c_{φ,ω}` on `Λ × T_l` with `Λ` an
//! aperiodic strongly connected 1-graph, the orbit phases are either
//! pinned by a vertex potential or dense by Kronecker. Anything else is
//! UNKNOWN. Every certified verdict carries a payload for [`verify_report`].

mod orbit;
mod potential;
mod verify;

use std::fmt;

use crate::cocycle::{BicharacterTable, CocycleError, CocycleSpec, PhiOmega};
use crate::groupoid::{omega_from_oracle, OracleError};
use crate::kgraph::{Degree, KGraph};
use crate::lattice::{
    kronecker_dense, DensityProof, KroneckerCertificate, LatticeBasis, LatticeError,
};
use crate::phase::{PhaseExponent, PhaseVector};
use crate::scalar::{Exact, Scalar};
use crate::structure::{
    default_bound, is_aperiodic, is_cofinal, per_group, AperiodicityPolicy, Status, StructureError,
    Verdict,
};

pub use orbit::{
    orbit_phase_generators, phase_group_lattice, project, verify_generators, OrbitGenerators,
};
pub use potential::{potential_certificate, verify_potential, PotentialCertificate};
pub use verify::verify_report;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecideError {
    #[error("orbit reduction needs a strongly connected graph")]
    NotStronglyConnected,
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

/// `Z_ω`, the centre of the antisymmetrization.
pub fn z_omega_of<I: Scalar>(omega: &BicharacterTable<I>) -> Result<LatticeBasis<I>, LatticeError> {
    omega.centre()
}

/// The noncommutative torus of `ω` is simple iff `Z_ω = {0}`.
pub fn nc_torus_simple<I: Scalar>(omega: &BicharacterTable<I>) -> Result<bool, LatticeError> {
    Ok(z_omega_of(omega)?.is_trivial())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimplicityVerdict {
    CertifiedSimple,
    CertifiedNonsimple,
    Unknown,
}

impl SimplicityVerdict {
    pub fn is_certified(self) -> bool {
        self != SimplicityVerdict::Unknown
    }
}

impl fmt::Display for SimplicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SimplicityVerdict::CertifiedSimple => "CERTIFIED_SIMPLE",
            SimplicityVerdict::CertifiedNonsimple => "CERTIFIED_NONSIMPLE",
            SimplicityVerdict::Unknown => "UNKNOWN",
        })
    }
}

/// Why the computed lattice is `Per(Λ)`, or a finite-index sublattice of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PerCertificate {
    /// k = 1 and every cycle has an entrance, so `Per(Λ) = {0}`.
    Aperiodic,
    /// `Λ = Λ_0 × T_l` with `Λ_0` an aperiodic 1-graph, so
    /// `Per(Λ) = {0} × Z^l` with the standard basis.
    ProductWithAperiodicBase { base_k: usize, l: usize },
    /// Box search proved the found lattice is all of `Per(Λ)`.
    Exhaustive { bound: Degree },
    /// The found lattice has full rank, so it has finite index in `Per(Λ)`.
    FullRank { bound: Degree },
    /// Rank not certified; nothing downstream may rely on it.
    Unproved { bound: Degree },
}

impl PerCertificate {
    /// Enough for the trivial-centre test: finite index in `Per(Λ)`.
    pub fn finite_index(&self) -> bool {
        !matches!(self, PerCertificate::Unproved { .. })
    }

    pub fn exact(&self) -> bool {
        matches!(
            self,
            PerCertificate::Aperiodic
                | PerCertificate::ProductWithAperiodicBase { .. }
                | PerCertificate::Exhaustive { .. }
        )
    }
}

impl fmt::Display for PerCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PerCertificate::Aperiodic => f.write_str("APERIODIC"),
            PerCertificate::ProductWithAperiodicBase { .. } => {
                f.write_str("PRODUCT_WITH_APERIODIC_BASE")
            }
            PerCertificate::Exhaustive { .. } => f.write_str("EXHAUSTIVE"),
            PerCertificate::FullRank { .. } => f.write_str("FULL_RANK"),
            PerCertificate::Unproved { .. } => f.write_str("UNPROVED"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionBounds {
    /// Box for the period search; `None` means `default_bound`.
    pub per_bound: Option<Degree>,
    /// Partition depth escalation steps for the oracle.
    pub oracle_extra_depth: u32,
    /// Degree bound `B` for orbit phase generators.
    pub orbit_bound: u32,
}

impl Default for DecisionBounds {
    fn default() -> Self {
        DecisionBounds {
            per_bound: None,
            oracle_extra_depth: 2,
            orbit_bound: 4,
        }
    }
}

impl DecisionBounds {
    /// Every bound at `n`.
    pub fn uniform(k: usize, n: u32) -> Self {
        DecisionBounds {
            per_bound: Some(Degree::uniform(k, n)),
            oracle_extra_depth: 2,
            orbit_bound: n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicityCertificate<I: Scalar = Exact> {
    /// A trapped infinite path.
    NotCofinal(Verdict),
    /// `Z_ω = {0}` for this antisymmetrization on a finite-index sublattice
    /// of `Per(Λ)`.
    ZOmegaTrivial {
        antisymmetrization: Vec<Vec<PhaseExponent<I>>>,
    },
    /// One path of each degree from each vertex, `Per(Λ)` exact and equal
    /// at every vertex, and `Z_ω ≠ {0}`: every orbit is finite and the
    /// conjugation characters on `Z_ω` take finitely many values.
    FiniteOrbit {
        antisymmetrization: Vec<Vec<PhaseExponent<I>>>,
        z_omega: LatticeBasis<I>,
    },
    /// Orbit phase generators together with a density transcript.
    KroneckerDense {
        generators: OrbitGenerators<I>,
        proof: DensityProof<I>,
    },
    /// Vertex potential pinning the `n`-th character coordinate.
    Potential(PotentialCertificate<I>),
    None,
}

impl<I: Scalar> SimplicityCertificate<I> {
    pub fn kind(&self) -> &'static str {
        match self {
            SimplicityCertificate::NotCofinal(_) => "NOT_COFINAL",
            SimplicityCertificate::ZOmegaTrivial { .. } => "Z_OMEGA_TRIVIAL",
            SimplicityCertificate::FiniteOrbit { .. } => "FINITE_ORBIT",
            SimplicityCertificate::KroneckerDense { .. } => "KRONECKER_DENSE",
            SimplicityCertificate::Potential(_) => "ANNIHILATOR_POTENTIAL",
            SimplicityCertificate::None => "NONE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityReport<I: Scalar = Exact> {
    pub verdict: SimplicityVerdict,
    /// Cascade step that produced the verdict, 1 to 5.
    pub step: u8,
    pub cofinality: Verdict,
    /// `Per(Λ)` inside `Z^k`.
    pub per_basis: Option<LatticeBasis<I>>,
    pub per_certificate: Option<PerCertificate>,
    /// Oracle bicharacter in period coordinates.
    pub omega: Option<BicharacterTable<I>>,
    /// `Z_ω` in period coordinates.
    pub z_omega: Option<LatticeBasis<I>>,
    /// `Z_ω` inside `Z^k`.
    pub z_omega_zk: Option<LatticeBasis<I>>,
    pub density_generators: Vec<PhaseVector<I>>,
    /// Nonzero character killing every generator when density fails.
    pub annihilator: Option<Vec<I>>,
    pub stabilized: Option<bool>,
    pub certificate: SimplicityCertificate<I>,
    pub bounds: DecisionBounds,
    pub notes: Vec<String>,
}

impl<I: Scalar> SimplicityReport<I> {
    fn new(cofinality: Verdict, bounds: DecisionBounds) -> Self {
        SimplicityReport {
            verdict: SimplicityVerdict::Unknown,
            step: 5,
            cofinality,
            per_basis: None,
            per_certificate: None,
            omega: None,
            z_omega: None,
            z_omega_zk: None,
            density_generators: Vec::new(),
            annihilator: None,
            stabilized: None,
            certificate: SimplicityCertificate::None,
            bounds,
            notes: Vec::new(),
        }
    }

    fn conclude(
        mut self,
        verdict: SimplicityVerdict,
        step: u8,
        certificate: SimplicityCertificate<I>,
    ) -> Self {
        self.verdict = verdict;
        self.step = step;
        self.certificate = certificate;
        self
    }
}

fn standard_rows<I: Scalar>(k: usize, from: usize) -> LatticeBasis<I> {
    let rows: Vec<Vec<i64>> = (from..k)
        .map(|j| {
            let mut r = vec![0; k];
            r[j] = 1;
            r
        })
        .collect();
    let rows: Vec<Vec<I>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| crate::scalar::int(x)).collect())
        .collect();
    LatticeBasis::from_generators(k, &rows)
}

/// The base of a `c_{φ,ω}` product when it is a 1-graph with every cycle
/// entered.
fn aperiodic_base<I: Scalar>(c: &CocycleSpec<I>) -> Option<&PhiOmega<I>> {
    match c {
        CocycleSpec::PhiOmega(po) if po.base.k() == 1 => {
            let v = is_aperiodic(
                &po.base,
                &default_bound(&po.base),
                AperiodicityPolicy::Strict,
            );
            (v.status == Status::YesCertified).then_some(po)
        }
        _ => None,
    }
}

/// `Per(Λ)` with its justification and, for the box route, whether every
/// vertex accepted the same periods. The cocycle matters only when it
/// exposes a product structure.
pub fn certified_per<I: Scalar>(
    g: &KGraph,
    c: &CocycleSpec<I>,
    bounds: &DecisionBounds,
) -> Result<(LatticeBasis<I>, PerCertificate, bool), DecideError> {
    let k = g.k();
    if let Some(po) = aperiodic_base(c) {
        return Ok((
            standard_rows(k, k - po.l),
            PerCertificate::ProductWithAperiodicBase { base_k: 1, l: po.l },
            true,
        ));
    }
    if k == 1 {
        let v = is_aperiodic(g, &Degree::uniform(1, 1), AperiodicityPolicy::Strict);
        if v.status == Status::YesCertified {
            return Ok((LatticeBasis::zero(1), PerCertificate::Aperiodic, true));
        }
    }
    let bound = bounds.per_bound.clone().unwrap_or_else(|| default_bound(g));
    let r = per_group::<I>(g, &bound)?;
    let cert = if r.exact {
        PerCertificate::Exhaustive { bound }
    } else if r.rank_certified {
        PerCertificate::FullRank { bound }
    } else {
        PerCertificate::Unproved { bound }
    };
    Ok((r.lattice, cert, r.per_vertex_agreement))
}

/// Runs the cascade. Component failures that only mean "not enough depth"
/// become UNKNOWN with a note; malformed inputs are errors.
pub fn decide_simplicity<I: Scalar>(
    g: &KGraph,
    c: &CocycleSpec<I>,
    bounds: &DecisionBounds,
) -> Result<SimplicityReport<I>, DecideError> {
    let cof = is_cofinal(g);
    let mut rep = SimplicityReport::new(cof.clone(), bounds.clone());
    match cof.status {
        Status::NoCertified => {
            return Ok(rep.conclude(
                SimplicityVerdict::CertifiedNonsimple,
                1,
                SimplicityCertificate::NotCofinal(cof),
            ))
        }
        Status::Unknown => {
            rep.notes.push("cofinality undetermined".into());
            return Ok(rep.conclude(SimplicityVerdict::Unknown, 1, SimplicityCertificate::None));
        }
        Status::YesCertified => {}
    }

    let (per, per_cert, agreement) = certified_per(g, c, bounds)?;
    rep.per_basis = Some(per.clone());
    rep.per_certificate = Some(per_cert.clone());
    let Some(per_rows) = per.basis_i64() else {
        rep.notes.push("period basis exceeds i64".into());
        return Ok(rep);
    };
    let omega = if per_rows.is_empty() {
        BicharacterTable::zero(0)
    } else {
        match omega_from_oracle(g, c, &per_rows, None, bounds.oracle_extra_depth) {
            Ok(o) => o.omega,
            Err(OracleError::EscalationExhausted(d)) => {
                rep.notes
                    .push(format!("oracle depth escalation exhausted at {d}"));
                return Ok(rep);
            }
            Err(e) => return Err(e.into()),
        }
    };
    let antisymmetrization = omega.antisymmetrization();
    let z = z_omega_of(&omega)?;
    let z_zk = z.embed(g.k(), |coef| {
        (0..g.k())
            .map(|j| {
                coef.iter()
                    .zip(per.basis())
                    .fold(I::zero(), |acc, (a, row)| acc + a.clone() * row[j].clone())
            })
            .collect()
    });
    rep.omega = Some(omega);
    rep.z_omega = Some(z.clone());
    rep.z_omega_zk = Some(z_zk);

    // step 2
    if z.is_trivial() {
        if per_cert.finite_index() {
            return Ok(rep.conclude(
                SimplicityVerdict::CertifiedSimple,
                2,
                SimplicityCertificate::ZOmegaTrivial { antisymmetrization },
            ));
        }
        rep.notes
            .push("Z_omega trivial on a lattice of uncertified rank".into());
        return Ok(rep);
    }

    // step 3
    if g.has_unique_paths() && per_cert.exact() && agreement {
        return Ok(rep.conclude(
            SimplicityVerdict::CertifiedNonsimple,
            3,
            SimplicityCertificate::FiniteOrbit {
                antisymmetrization,
                z_omega: z,
            },
        ));
    }

    // step 4
    let Some(po) = aperiodic_base(c) else {
        rep.notes.push(
            "no orbit reduction applies: cocycle is not c_{phi,omega} over an aperiodic 1-graph"
                .into(),
        );
        return Ok(rep);
    };
    if !po.base.is_strongly_connected() {
        rep.notes
            .push("orbit reduction needs a strongly connected base".into());
        return Ok(rep);
    }
    rep.step = 4;
    if let Some(cert) = potential_certificate(&po.base, &po.phi, &z) {
        return Ok(rep.conclude(
            SimplicityVerdict::CertifiedNonsimple,
            4,
            SimplicityCertificate::Potential(cert),
        ));
    }
    let og = orbit_phase_generators(&po.base, &po.phi, &z, bounds.orbit_bound)?;
    rep.density_generators = og.gens.clone();
    rep.stabilized = Some(og.stabilized);
    match kronecker_dense(&og.gens, z.rank())? {
        (true, KroneckerCertificate::Dense(proof)) => Ok(rep.conclude(
            SimplicityVerdict::CertifiedSimple,
            4,
            SimplicityCertificate::KroneckerDense {
                generators: og,
                proof,
            },
        )),
        (_, KroneckerCertificate::Annihilator(n)) => {
            rep.notes.push(if og.stabilized {
                "orbit phases not dense at this bound and the generated group stabilized; not promoted".into()
            } else {
                "orbit phases not dense at this bound".into()
            });
            rep.annihilator = Some(n);
            Ok(rep)
        }
        (false, KroneckerCertificate::Dense(_)) => {
            unreachable!("dense transcript with a negative verdict")
        }
    }
}

/// Density of the orbit phases over all of `Per(Λ) = {0} × Z^l` rather than
/// `Z_ω`; only meaningful for `c_{φ,ω}`.
pub fn full_per_density<I: Scalar>(
    po: &PhiOmega<I>,
    bound: u32,
) -> Result<(OrbitGenerators<I>, bool, KroneckerCertificate<I>), DecideError> {
    let full = LatticeBasis::full(po.l);
    let og = orbit_phase_generators(&po.base, &po.phi, &full, bound)?;
    let (dense, cert) = kronecker_dense(&og.gens, po.l)?;
    Ok((og, dense, cert))
}
