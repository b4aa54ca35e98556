//! JSON encoders for library values. Integers that fit in `i64` are
//! numbers; larger ones are decimal strings. Phases are canonical literals.

use serde_json::{json, Map, Value};

use twisted_kgraph::cocycle::BicharacterTable;
use twisted_kgraph::decide::{PerCertificate, SimplicityCertificate, SimplicityReport};
use twisted_kgraph::lattice::LatticeBasis;
use twisted_kgraph::phase::{PhaseExponent, PhaseVector};
use twisted_kgraph::structure::{StructureCertificate, Verdict};
use twisted_kgraph::{Degree, EventuallyPeriodicPath, Exact, KGraph, Path};

pub fn int(x: &Exact) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn ints(v: &[Exact]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn phase(p: &PhaseExponent<Exact>) -> Value {
    json!(p.to_string())
}

pub fn phases(v: &PhaseVector<Exact>) -> Value {
    Value::Array(v.entries().iter().map(phase).collect())
}

pub fn phase_matrix(m: &[Vec<PhaseExponent<Exact>>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(phase).collect())).collect())
}

pub fn bicharacter(b: &BicharacterTable<Exact>) -> Value {
    phase_matrix(b.matrix())
}

pub fn lattice(l: &LatticeBasis<Exact>) -> Value {
    json!({
        "ambient": l.ambient(),
        "rank": l.rank(),
        "basis": l.basis().iter().map(|r| ints(r)).collect::<Vec<_>>(),
    })
}

pub fn degree(d: &Degree) -> Value {
    json!(d.0)
}

pub fn path(g: &KGraph, p: &Path) -> Value {
    if p.is_vertex() {
        json!({ "vertex": g.vertex_name(p.range()) })
    } else {
        json!(g.show(p).to_string())
    }
}

pub fn infinite_path(g: &KGraph, x: &EventuallyPeriodicPath) -> Value {
    json!({ "prefix": path(g, x.prefix()), "cycle": path(g, x.cycle()) })
}

pub fn structure_verdict(g: &KGraph, v: &Verdict) -> Value {
    let cert = match &v.certificate {
        StructureCertificate::StronglyConnected => json!({ "kind": "STRONGLY_CONNECTED" }),
        StructureCertificate::NoTrappedCycle => json!({ "kind": "NO_TRAPPED_CYCLE" }),
        StructureCertificate::TrappedPath { vertex, path } => json!({
            "kind": "TRAPPED_PATH",
            "vertex": g.vertex_name(*vertex),
            "path": infinite_path(g, path),
        }),
        StructureCertificate::LocalPeriod { vertex, period } => json!({
            "kind": "LOCAL_PERIOD",
            "vertex": g.vertex_name(*vertex),
            "period": period,
        }),
        StructureCertificate::EveryCycleHasEntrance => json!({ "kind": "EVERY_CYCLE_HAS_ENTRANCE" }),
        StructureCertificate::NoPeriodUpTo { bound } => json!({ "kind": "NO_PERIOD_UP_TO", "bound": degree(bound) }),
        StructureCertificate::None => Value::Null,
    };
    json!({
        "status": v.status.to_string(),
        "bound": v.bound.as_ref().map(degree),
        "certificate": cert,
    })
}

pub fn per_certificate(p: &PerCertificate) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(p.to_string()));
    match p {
        PerCertificate::ProductWithAperiodicBase { base_k, l } => {
            m.insert("base_k".into(), json!(base_k));
            m.insert("l".into(), json!(l));
        }
        PerCertificate::Exhaustive { bound } | PerCertificate::FullRank { bound } | PerCertificate::Unproved { bound } => {
            m.insert("bound".into(), degree(bound));
        }
        PerCertificate::Aperiodic => {}
    }
    Value::Object(m)
}

fn simplicity_certificate(g: &KGraph, c: &SimplicityCertificate<Exact>, base: Option<&KGraph>) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(c.kind()));
    match c {
        SimplicityCertificate::NotCofinal(v) => {
            m.insert("cofinality".into(), structure_verdict(g, v));
        }
        SimplicityCertificate::ZOmegaTrivial { antisymmetrization } => {
            m.insert("antisymmetrization".into(), phase_matrix(antisymmetrization));
        }
        SimplicityCertificate::FiniteOrbit { antisymmetrization, z_omega } => {
            m.insert("antisymmetrization".into(), phase_matrix(antisymmetrization));
            m.insert("z_omega".into(), lattice(z_omega));
        }
        SimplicityCertificate::KroneckerDense { generators, proof } => {
            let b = base.unwrap_or(g);
            m.insert(
                "witnesses".into(),
                Value::Array(
                    generators
                        .gens
                        .iter()
                        .zip(&generators.witnesses)
                        .map(|(v, (mu, nu))| json!({ "phase": phases(v), "mu": path(b, mu), "nu": path(b, nu) }))
                        .collect(),
                ),
            );
            m.insert("stabilized".into(), json!(generators.stabilized));
            m.insert("bound".into(), json!(generators.bound));
            m.insert("density_proof".into(), serde_json::to_value(proof).expect("proof serializes"));
        }
        SimplicityCertificate::Potential(p) => {
            let b = base.unwrap_or(g);
            m.insert("annihilator".into(), ints(&p.n));
            let psi: Map<String, Value> =
                p.psi.iter().enumerate().map(|(v, x)| (b.vertex_name(v).to_string(), phase(x))).collect();
            m.insert("potential".into(), Value::Object(psi));
        }
        SimplicityCertificate::None => {}
    }
    Value::Object(m)
}

pub fn simplicity_report(g: &KGraph, r: &SimplicityReport<Exact>, base: Option<&KGraph>) -> Value {
    json!({
        "verdict": r.verdict.to_string(),
        "step": r.step,
        "cofinality": structure_verdict(g, &r.cofinality),
        "per_basis": r.per_basis.as_ref().map(lattice),
        "per_certificate": r.per_certificate.as_ref().map(per_certificate),
        "omega": r.omega.as_ref().map(bicharacter),
        "z_omega": r.z_omega.as_ref().map(lattice),
        "z_omega_in_zk": r.z_omega_zk.as_ref().map(lattice),
        "density_generators": r.density_generators.iter().map(phases).collect::<Vec<_>>(),
        "annihilator": r.annihilator.as_deref().map(ints),
        "stabilized": r.stabilized,
        "certificate": simplicity_certificate(g, &r.certificate, base),
        "notes": r.notes,
    })
}
