use serde_json::{json, Value};

use twisted_kgraph::cocycle::{validate_cocycle, validate_phi, CocycleSpec};
use twisted_kgraph::decide::{certified_per, decide_simplicity, verify_report, DecisionBounds};
use twisted_kgraph::groupoid::{
    build_partition, coboundary_bx, cocycle_identity_suite, compare_omegas, isotropy_triviality_suite,
    r_formula_suite, OracleError, SuiteConfig,
};
use twisted_kgraph::structure::{
    default_bound, is_aperiodic, is_cofinal, per_group, verify_aperiodicity, verify_cofinality, AperiodicityPolicy,
    PeriodicityResult, Status,
};
use twisted_kgraph::{validate_kgraph, Degree, Exact, KGraph};

use crate::enc;
use crate::{Inputs, Loaded, Outcome};

const DEFAULT_DEPTH: u32 = 2;
const COCYCLE_CHECK_DEPTH: u32 = 4;

fn need_cocycle(l: &Loaded) -> Result<&CocycleSpec, String> {
    l.cocycle.as_ref().ok_or_else(|| "this subcommand needs --cocycle".to_string())
}

fn per_bound(g: &KGraph, i: &Inputs) -> Degree {
    i.bound.map_or_else(|| default_bound(g), |b| Degree::uniform(g.k(), b))
}

fn decision_bounds(g: &KGraph, i: &Inputs) -> DecisionBounds {
    let mut b = DecisionBounds::default();
    if let Some(n) = i.bound {
        b = DecisionBounds::uniform(g.k(), n);
    }
    if let Some(d) = i.depth {
        b.oracle_extra_depth = d;
    }
    b
}

fn bounds_json(b: &DecisionBounds, g: &KGraph) -> Value {
    json!({
        "per_bound": enc::degree(&b.per_bound.clone().unwrap_or_else(|| default_bound(g))),
        "oracle_extra_depth": b.oracle_extra_depth,
        "orbit_bound": b.orbit_bound,
    })
}

fn per_json(r: &PeriodicityResult<Exact>) -> Value {
    json!({
        "lattice": enc::lattice(&r.lattice),
        "exhaustive_up_to": enc::degree(&r.exhaustive_up_to),
        "exact": r.exact,
        "rank_certified": r.rank_certified,
        "per_vertex_agreement": r.per_vertex_agreement,
        "accepted": r.accepted,
        "disagreements": r.disagreements,
    })
}

pub fn validate(l: &Loaded, i: &Inputs) -> Result<Outcome, String> {
    let g = &l.graph;
    let report = validate_kgraph(g);
    let mut ok = report.is_valid();
    let mut result = json!({
        "graph": {
            "valid": report.is_valid(),
            "violations": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }
    });
    let depth = i.depth.unwrap_or(COCYCLE_CHECK_DEPTH);
    // cocycle checks compose paths, which needs the factorization property
    if let Some(c) = l.cocycle.as_ref().filter(|_| report.is_valid()) {
        let r = validate_cocycle(c, g, depth);
        ok &= r.is_valid();
        let mut cj = json!({
            "kind": c.variant_name(),
            "valid": r.is_valid(),
            "triples_checked": r.triples_checked,
            "violations": r.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        });
        if let CocycleSpec::PhiOmega(po) = c {
            let bad = validate_phi(&po.phi, &po.base);
            ok &= bad.is_empty();
            cj["phi_square_violations"] = json!(bad);
        }
        result["cocycle"] = cj;
    }
    Ok(Outcome { exit: if ok { 0 } else { 1 }, bounds: json!({ "cocycle_depth": depth }), result })
}

pub fn analyze(l: &Loaded, i: &Inputs) -> Result<Outcome, String> {
    let g = &l.graph;
    let bound = per_bound(g, i);
    let cof = is_cofinal(g);
    let ap = is_aperiodic(g, &bound, AperiodicityPolicy::Strict);
    let per = match cof.status {
        Status::YesCertified => per_json(&per_group::<Exact>(g, &bound).map_err(|e| e.to_string())?),
        _ => Value::Null,
    };
    let result = json!({
        "k": g.k(),
        "vertices": g.num_vertices(),
        "edges": g.num_edges(),
        "strongly_connected": g.is_strongly_connected(),
        "unique_paths": g.has_unique_paths(),
        "cofinal": enc::structure_verdict(g, &cof),
        "cofinal_certificate_verified": verify_cofinality(g, &cof),
        "aperiodic": enc::structure_verdict(g, &ap),
        "aperiodic_certificate_verified": verify_aperiodicity(g, &ap),
        "per": per,
    });
    Ok(Outcome { exit: 0, bounds: json!({ "per_bound": enc::degree(&bound) }), result })
}

pub fn per(l: &Loaded, i: &Inputs) -> Result<Outcome, String> {
    let g = &l.graph;
    let bound = per_bound(g, i);
    let r = per_group::<Exact>(g, &bound).map_err(|e| e.to_string())?;
    let exit = if r.exact { 0 } else { 2 };
    Ok(Outcome { exit, bounds: json!({ "per_bound": enc::degree(&bound) }), result: per_json(&r) })
}

pub fn omega(l: &Loaded, i: &Inputs) -> Result<Outcome, String> {
    let g = &l.graph;
    let c = need_cocycle(l)?;
    let b = decision_bounds(g, i);
    let bounds = bounds_json(&b, g);
    let (per, cert, _) = certified_per(g, c, &b).map_err(|e| e.to_string())?;
    let rows = per.basis_i64().ok_or("period basis exceeds i64")?;
    let mut result = json!({
        "per_basis": enc::lattice(&per),
        "per_certificate": enc::per_certificate(&cert),
    });
    if rows.is_empty() {
        result["omega"] = json!([]);
        result["z_omega"] = enc::lattice(&per);
        return Ok(Outcome { exit: 0, bounds, result });
    }
    let cmp = match compare_omegas(g, c, &rows, b.oracle_extra_depth) {
        Ok(x) => x,
        Err(OracleError::EscalationExhausted(d)) => {
            result["notes"] = json!([format!("oracle depth escalation exhausted at {d}")]);
            return Ok(Outcome { exit: 2, bounds, result });
        }
        Err(e) => return Err(e.to_string()),
    };
    let o = &cmp.oracle;
    result["oracle"] = json!({
        "vertex": g.vertex_name(o.vertex),
        "x": enc::infinite_path(g, &o.x),
        "partition_depth": enc::degree(&o.depth),
        "sigma": enc::phase_matrix(&o.sigma),
        "antisymmetrization": enc::phase_matrix(&o.antisymmetrization),
        "omega": enc::bicharacter(&o.omega),
    });
    result["z_omega"] = enc::lattice(&o.centre().map_err(|e| e.to_string())?);
    result["z_omega_in_zk"] = enc::lattice(&o.centre_in_zk().map_err(|e| e.to_string())?);
    result["closed_form"] = json!({
        "lambda": enc::path(g, &cmp.closed.lambda),
        "omega": enc::bicharacter(&cmp.closed.omega),
        "symmetric": cmp.closed_is_symmetric,
        "agrees_with_oracle": cmp.agrees(),
        "same_centre": cmp.same_centre,
        "discrepancies": cmp.discrepancies.iter().map(|(i, j, a, b)| json!({
            "i": i, "j": j, "oracle": enc::phase(a), "closed_form": enc::phase(b),
        })).collect::<Vec<_>>(),
        "pinned_partition_sigma": cmp.pinned_sigma.as_deref().map(enc::phase_matrix),
        "pinned_partition_mismatches": cmp.pinned_mismatches,
    });
    Ok(Outcome { exit: 0, bounds, result })
}

pub fn simplicity(l: &Loaded, i: &Inputs) -> Result<Outcome, String> {
    let g = &l.graph;
    let c = need_cocycle(l)?;
    let b = decision_bounds(g, i);
    let r = decide_simplicity(g, c, &b).map_err(|e| e.to_string())?;
    let verified = verify_report(g, c, &r);
    let base = match c {
        CocycleSpec::PhiOmega(po) => Some(&po.base),
        _ => None,
    };
    let mut result = enc::simplicity_report(g, &r, base);
    result["certificate_verified"] = json!(verified);
    let exit = if !verified {
        1
    } else if r.verdict.is_certified() {
        0
    } else {
        2
    };
    Ok(Outcome { exit, bounds: bounds_json(&b, g), result })
}

/// Suite sizes for `--depth d`: partition box `d + 1`, elements `(μz, ·, νz)`
/// with `d(μ), d(ν) ≤ 1`, tails covering every vertex's canonical cycle,
/// lattice coefficients in `[-1, 1]`, and the
/// coboundary on `‖m‖∞ ≤ bound` (default 2).
pub fn oracle(l: &Loaded, i: &Inputs) -> Result<Outcome, String> {
    let g = &l.graph;
    let c = need_cocycle(l)?;
    let depth = i.depth.unwrap_or(DEFAULT_DEPTH);
    let radius = i.bound.unwrap_or(2);
    let k = g.k();
    let cfg = SuiteConfig::covering(g, depth + 1, 1);
    let part = build_partition(g, &cfg.partition_depth, &[]).map_err(|e| e.to_string())?;
    let b = DecisionBounds::default();
    let (per, _, _) = certified_per(g, c, &b).map_err(|e| e.to_string())?;
    let rows = per.basis_i64().ok_or("period basis exceeds i64")?;

    let ident = cocycle_identity_suite(c, g, &part, &cfg);
    let rf = r_formula_suite(c, g, &part, &rows, &cfg, 1);
    let mut ok = ident.passed() && rf.passed();
    let mut result = json!({
        "cocycle_identity": {
            "passed": ident.passed(),
            "triples_checked": ident.triples_checked,
            "triples_skipped": ident.triples_skipped,
            "choice_checks": ident.choice_checks,
            "violations": ident.violations,
            "choice_violations": ident.choice_violations,
        },
        "r_formula": {
            "passed": rf.passed(),
            "instances": rf.instances,
            "skipped": rf.skipped,
            "violations": rf.violations,
        },
    });
    if !rows.is_empty() {
        let o = twisted_kgraph::groupoid::omega_from_oracle(g, c, &rows, None, 2).map_err(|e| e.to_string())?;
        let z = o.centre_in_zk().map_err(|e| e.to_string())?;
        let zrows = z.basis_i64().ok_or("Z_omega basis exceeds i64")?;
        let iso = isotropy_triviality_suite(c, g, &part, &rows, &zrows, &cfg, 1);
        ok &= iso.passed();
        result["isotropy_triviality"] = json!({
            "passed": iso.passed(),
            "instances": iso.instances,
            "skipped": iso.skipped,
            "violations": iso.violations,
        });
        let cpart = build_partition(g, &Degree::uniform(k, 2 * radius), &[]).map_err(|e| e.to_string())?;
        match coboundary_bx(&o.omega, c, g, &cpart, &o.x, &rows, radius as i64) {
            Ok(cb) => {
                ok &= cb.verified();
                result["coboundary"] = json!({
                    "passed": cb.verified(),
                    "radius": cb.radius,
                    "pairs_checked": cb.pairs_checked,
                    "failures": cb.failures,
                });
            }
            Err(e) => {
                ok = false;
                result["coboundary"] = json!({ "passed": false, "error": e.to_string() });
            }
        }
    }
    result["passed"] = json!(ok);
    let bounds = json!({
        "partition_depth": enc::degree(&cfg.partition_depth),
        "element_bound": enc::degree(&cfg.element_bound),
        "tail_cycle": enc::degree(&cfg.tail_cycle),
        "coboundary_radius": radius,
    });
    Ok(Outcome { exit: if ok { 0 } else { 1 }, bounds, result })
}
