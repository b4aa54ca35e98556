mod common;

use proptest::prelude::*;

use twisted_kgraph::cocycle::{BicharacterTable, CocycleSpec, OneCocyclePhi};
use twisted_kgraph::decide::{
    decide_simplicity, verify_report, z_omega_of, DecisionBounds, SimplicityVerdict,
};
use twisted_kgraph::phase::PhaseVector;
use twisted_kgraph::{Lattice, Phase};

use common::{big, phase, phase_matrix, PAIRS};

fn same_lattice(a: &Lattice, b: &Lattice) -> bool {
    a.is_sublattice_of(b) && b.is_sublattice_of(a)
}

/// A certified verdict survives raising every bound by one.
#[test]
fn certified_verdicts_are_stable_in_the_bound() {
    for &(gname, cname) in PAIRS {
        let g = common::graph(gname);
        let c = common::cocycle(cname, &g);
        let top = if g.k() >= 4 { 2 } else { 3 };
        let mut previous: Option<SimplicityVerdict> = None;
        for b in 1..=top {
            let r = decide_simplicity(&g, &c, &DecisionBounds::uniform(g.k(), b)).unwrap();
            assert!(verify_report(&g, &c, &r), "{gname}/{cname} at bound {b}");
            if let Some(p) = previous.filter(|p| p.is_certified()) {
                assert_eq!(r.verdict, p, "{gname}/{cname} changed at bound {b}");
            }
            previous = Some(r.verdict);
        }
    }
}

#[test]
fn default_bounds_reports_verify() {
    for &(gname, cname) in PAIRS {
        let g = common::graph(gname);
        let c = common::cocycle(cname, &g);
        let r = decide_simplicity(&g, &c, &DecisionBounds::default()).unwrap();
        assert!(verify_report(&g, &c, &r), "{gname}/{cname}");
        assert!(r.verdict.is_certified(), "{gname}/{cname}: {:?}", r.notes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// On `B2 × T1` an irrational difference `φ(f) − φ(e)` makes the
    /// orbit phases dense, so the algebra is simple.
    #[test]
    fn irrational_phi_on_b2xt1_is_simple(
        base in phase(),
        shift in phase(),
        t in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]),
    ) {
        let g = common::graph("B2xT1");
        let fe = base.clone();
        let ff = base + shift + Phase::symbol("theta").scale_int(&big(t));
        prop_assume!(!(ff.clone() - fe.clone()).is_rational());
        let phi = OneCocyclePhi::new(1, vec![PhaseVector(vec![fe]), PhaseVector(vec![ff])]);
        let c = CocycleSpec::phi_omega(&g, 1, phi, BicharacterTable::zero(1)).unwrap();
        let r = decide_simplicity(&g, &c, &DecisionBounds::default()).unwrap();
        prop_assert_eq!(r.verdict, SimplicityVerdict::CertifiedSimple);
        prop_assert!(verify_report(&g, &c, &r));
    }

    /// `Z_ω` depends only on `ω − ωᵀ`.
    #[test]
    fn z_omega_ignores_symmetric_parts(
        (m, s) in (1usize..=3).prop_flat_map(|r| (phase_matrix(r), phase_matrix(r))),
    ) {
        let r = m.len();
        let sym: Vec<Vec<Phase>> = (0..r)
            .map(|i| (0..r).map(|j| s[i][j].clone() + s[j][i].clone()).collect())
            .collect();
        let shifted: Vec<Vec<Phase>> = (0..r)
            .map(|i| (0..r).map(|j| m[i][j].clone() + sym[i][j].clone()).collect())
            .collect();
        let a = z_omega_of(&BicharacterTable::new(m)).unwrap();
        let b = z_omega_of(&BicharacterTable::new(shifted)).unwrap();
        prop_assert!(same_lattice(&a, &b));
    }
}
