mod common;

use std::collections::HashSet;

use twisted_kgraph::structure::{
    default_bound, is_cofinal, per_group, periodic_at, periodic_with_offsets, Status,
};
use twisted_kgraph::{Degree, EventuallyPeriodicPath, Exact, KGraph};

use common::GRAPHS;

fn all_vectors(k: usize, r: i64) -> Vec<Vec<i64>> {
    Degree::uniform(k, (2 * r) as u32)
        .box_below()
        .into_iter()
        .map(|d| d.0.iter().map(|&x| x as i64 - r).collect())
        .collect()
}

/// Brute force: `T^{p+} x = T^{p-} x` for every tail `x` at `v` in the box.
fn brute_periodic(g: &KGraph, p: &[i64], v: usize, tails: &[EventuallyPeriodicPath]) -> bool {
    let (a, b) = (Degree::pos_part(p), Degree::neg_part(p));
    tails
        .iter()
        .filter(|x| x.range() == v)
        .all(|x| x.shift(g, &a).same_as(g, &x.shift(g, &b)))
}

#[test]
fn window_automaton_matches_brute_force() {
    for name in GRAPHS {
        let g = common::graph(name);
        let k = g.k();
        // prefix and cycle degree at most 3, kept to 2 in rank 4
        let side = if k >= 4 { 2 } else { 3 };
        let mut seen = HashSet::new();
        let tails: Vec<EventuallyPeriodicPath> = (0..g.num_vertices())
            .flat_map(|v| {
                EventuallyPeriodicPath::enumerate(
                    &g,
                    v,
                    &Degree::uniform(k, side),
                    &Degree::uniform(k, side),
                )
            })
            // preperiod and period are at most 3, so paths agreeing up to
            // degree 3 + lcm(1, 2, 3) agree everywhere
            .filter(|x| seen.insert(x.initial(&g, &Degree::uniform(k, 12))))
            .collect();
        for p in all_vectors(k, 2) {
            for v in 0..g.num_vertices() {
                assert_eq!(
                    periodic_at(&g, &p, v),
                    brute_periodic(&g, &p, v, &tails),
                    "{name} p={p:?} v={v}"
                );
            }
        }
    }
}

#[test]
fn periodicity_survives_common_shifts() {
    for name in GRAPHS {
        let g = common::graph(name);
        let k = g.k();
        let offsets = Degree::uniform(k, 2).box_below();
        let steps = Degree::uniform(k, 1).box_below();
        for a in &offsets {
            for b in &offsets {
                for v in 0..g.num_vertices() {
                    if !periodic_with_offsets(&g, a, b, v) {
                        continue;
                    }
                    for q in &steps {
                        assert!(
                            periodic_with_offsets(&g, &(a + q), &(b + q), v),
                            "{name} a={a:?} b={b:?} q={q:?} v={v}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn per_group_is_a_lattice_of_periods() {
    for name in GRAPHS {
        let g = common::graph(name);
        // Per(Λ) is only defined for cofinal graphs
        let Ok(r) = per_group::<Exact>(&g, &default_bound(&g)) else {
            assert_eq!(is_cofinal(&g).status, Status::NoCertified, "{name}");
            continue;
        };
        let basis = r.lattice.basis_i64().unwrap();
        let strongly_connected = g.is_strongly_connected();
        let vertices: Vec<usize> = if r.per_vertex_agreement {
            (0..g.num_vertices()).collect()
        } else {
            vec![]
        };
        if strongly_connected {
            assert!(r.per_vertex_agreement, "{name}: period sets differ across vertices");
        }
        for v in vertices {
            assert!(periodic_at(&g, &vec![0; g.k()], v));
            for p in &basis {
                let neg: Vec<i64> = p.iter().map(|x| -x).collect();
                assert!(periodic_at(&g, p, v) && periodic_at(&g, &neg, v), "{name} {p:?}");
                for q in &basis {
                    let s: Vec<i64> = p.iter().zip(q).map(|(x, y)| x + y).collect();
                    assert!(periodic_at(&g, &s, v), "{name} {p:?} + {q:?}");
                }
            }
        }
    }
}
