use std::collections::HashMap;

use super::{GroupoidElement, OracleError};
use crate::kgraph::{Degree, KGraph, Path};

/// Pairwise disjoint cylinders `Z(μ, ν)` with `d(μ), d(ν) ≤ depth`,
/// containing every `(λ, s(λ))` with `d(λ) ≤ depth`.
///
/// A pair `(λ, s(λ))` with `d(λ) ≰ depth` has a lag outside the box and so
/// cannot meet any member; the members therefore extend to a partition of
/// all of `G_Λ`, and `σ_c` computed here agrees with `σ_c` for that
/// partition on every element the members cover.
#[derive(Debug, Clone)]
pub struct Partition {
    depth: Degree,
    members: Vec<(Path, Path)>,
    pinned: usize,
    by_lag: HashMap<Vec<i64>, Vec<usize>>,
}

/// `Z(μ, ν) ∩ Z(μ', ν') ≠ ∅`: with `M = d(μ) ∨ d(μ')`, some `a` of degree
/// `M − d(μ)` has `μa = μ'a'` and `νa = ν'a'`.
pub(crate) fn cylinders_meet(g: &KGraph, p: &(Path, Path), q: &(Path, Path)) -> bool {
    let (mu, nu) = p;
    let (mu2, nu2) = q;
    if mu.range() != mu2.range()
        || nu.range() != nu2.range()
        || mu.degree().diff(nu.degree()) != mu2.degree().diff(nu2.degree())
    {
        return false;
    }
    let m = mu.degree().join(mu2.degree());
    let rest = m.checked_sub(mu.degree()).expect("join dominates");
    g.paths_from(mu.source(), &rest).iter().any(|a| {
        let mu_a = g.compose(mu, a).expect("a starts at s(mu)");
        let (head, a2) = g.factorize(&mu_a, mu2.degree()).expect("d(mu') below M");
        head == *mu2
            && g.compose(nu, a).expect("a starts at s(nu)")
                == g.compose(nu2, &a2).expect("a' starts at s(nu')")
    })
}

fn lag(p: &(Path, Path)) -> Vec<i64> {
    p.0.degree().diff(p.1.degree())
}

/// Greedy partition: pinned pairs, then `(λ, s(λ))` in graded order, then
/// every other pair with a common source in graded-lexicographic order,
/// each added iff its cylinder misses every member so far.
pub fn build_partition(
    g: &KGraph,
    depth: &Degree,
    pinned: &[(Path, Path)],
) -> Result<Partition, OracleError> {
    let mut part = Partition {
        depth: depth.clone(),
        members: Vec::new(),
        pinned: pinned.len(),
        by_lag: HashMap::new(),
    };
    for (i, p) in pinned.iter().enumerate() {
        if p.0.source() != p.1.source() {
            return Err(OracleError::PinnedSource(show_pair(g, p)));
        }
        if let Some(q) = pinned[..i].iter().find(|q| cylinders_meet(g, p, q)) {
            return Err(OracleError::PinnedOverlap {
                first: show_pair(g, q),
                second: show_pair(g, p),
            });
        }
        part.push(p.clone());
    }

    let all = g.all_paths_upto(depth);
    let mut units: Vec<(Path, Path)> = all
        .iter()
        .map(|l| (l.clone(), g.vertex_path(l.source())))
        .collect();
    units.sort_by(|a, b| (a.0.degree().total(), &a.0).cmp(&(b.0.degree().total(), &b.0)));
    for p in units {
        if pinned.contains(&p) {
            continue;
        }
        if let Some(q) = part.overlapping(g, &p) {
            return Err(OracleError::PinnedOverlap {
                first: show_pair(g, &part.members[q]),
                second: show_pair(g, &p),
            });
        }
        part.push(p);
    }

    let mut by_source: HashMap<usize, Vec<&Path>> = HashMap::new();
    for p in &all {
        by_source.entry(p.source()).or_default().push(p);
    }
    let mut rest: Vec<(Path, Path)> = Vec::new();
    for paths in by_source.values() {
        for mu in paths {
            for nu in paths {
                if !nu.is_vertex() {
                    rest.push(((*mu).clone(), (*nu).clone()));
                }
            }
        }
    }
    rest.sort_by(|a, b| {
        let ka = (a.0.degree().total() + a.1.degree().total(), &a.0, &a.1);
        let kb = (b.0.degree().total() + b.1.degree().total(), &b.0, &b.1);
        ka.cmp(&kb)
    });
    for p in rest {
        if part.overlapping(g, &p).is_none() {
            part.push(p);
        }
    }
    Ok(part)
}

fn show_pair(g: &KGraph, p: &(Path, Path)) -> String {
    format!("({}, {})", g.show(&p.0), g.show(&p.1))
}

impl Partition {
    fn push(&mut self, p: (Path, Path)) {
        self.by_lag
            .entry(lag(&p))
            .or_default()
            .push(self.members.len());
        self.members.push(p);
    }

    fn overlapping(&self, g: &KGraph, p: &(Path, Path)) -> Option<usize> {
        self.by_lag
            .get(&lag(p))?
            .iter()
            .copied()
            .find(|&i| cylinders_meet(g, &self.members[i], p))
    }

    pub fn depth(&self) -> &Degree {
        &self.depth
    }

    pub fn members(&self) -> &[(Path, Path)] {
        &self.members
    }

    pub fn pinned(&self) -> &[(Path, Path)] {
        &self.members[..self.pinned]
    }

    pub fn contains(&self, p: &(Path, Path)) -> bool {
        self.by_lag
            .get(&lag(p))
            .is_some_and(|ix| ix.iter().any(|&i| self.members[i] == *p))
    }

    /// The unique member whose cylinder contains `e`.
    pub fn member_of(&self, g: &KGraph, e: &GroupoidElement) -> Result<&(Path, Path), OracleError> {
        self.by_lag
            .get(e.lag())
            .and_then(|ix| {
                ix.iter()
                    .map(|&i| &self.members[i])
                    .find(|(mu, nu)| e.in_cylinder(g, mu, nu))
            })
            .ok_or_else(|| OracleError::DepthInsufficient {
                element: e.show(g).to_string(),
                depth: self.depth.clone(),
            })
    }

    /// Every pair of members has disjoint cylinders.
    pub fn is_disjoint(&self, g: &KGraph) -> bool {
        self.by_lag.values().all(|ix| {
            ix.iter().enumerate().all(|(a, &i)| {
                ix[a + 1..]
                    .iter()
                    .all(|&j| !cylinders_meet(g, &self.members[i], &self.members[j]))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgraph::{builtin, EventuallyPeriodicPath};

    #[test]
    fn t2_members() {
        let t2 = builtin("T2").unwrap();
        let part = build_partition(&t2, &Degree(vec![2, 2]), &[]).unwrap();
        let p = |s: &str| t2.path_from_names(s).unwrap();
        let v = t2.vertex_path(0);
        assert!(part.contains(&(p("a"), v.clone())));
        assert!(part.contains(&(p("b"), v.clone())));
        assert!(part.contains(&(p("a b"), v.clone())));
        assert!(part.contains(&(v.clone(), p("a"))));
        assert!(part.is_disjoint(&t2));
        // unique paths: one member per lag in [-2, 2]^2
        assert_eq!(part.members().len(), 25);
    }

    #[test]
    fn b2_members_and_pins() {
        let b2 = builtin("B2").unwrap();
        let p = |s: &str| b2.path_from_names(s).unwrap();
        let v = b2.vertex_path(0);
        let part = build_partition(&b2, &Degree(vec![2]), &[]).unwrap();
        for pair in [
            (p("e"), v.clone()),
            (p("f"), v.clone()),
            (v.clone(), p("e")),
            (v.clone(), p("f")),
            (p("e"), p("f")),
            (p("f"), p("e")),
        ] {
            assert!(part.contains(&pair), "{}", show_pair(&b2, &pair));
        }
        assert!(part.is_disjoint(&b2));

        let pinned = build_partition(&b2, &Degree(vec![2]), &[(p("e"), p("f"))]).unwrap();
        assert_eq!(pinned.pinned(), &[(p("e"), p("f"))]);
        assert!(pinned.is_disjoint(&b2));

        let clash = build_partition(
            &b2,
            &Degree(vec![2]),
            &[(p("e"), p("f")), (p("e e"), p("f e"))],
        );
        assert!(matches!(clash, Err(OracleError::PinnedOverlap { .. })));
    }

    #[test]
    fn lookup_and_depth_error() {
        let b2 = builtin("B2").unwrap();
        let p = |s: &str| b2.path_from_names(s).unwrap();
        let part = build_partition(&b2, &Degree(vec![1]), &[]).unwrap();
        let z = EventuallyPeriodicPath::canonical(&b2, 0);
        let el = GroupoidElement::from_cylinder(&b2, &p("e"), &p("f"), &z).unwrap();
        assert_eq!(part.member_of(&b2, &el).unwrap(), &(p("e"), p("f")));
        let far = GroupoidElement::from_cylinder(&b2, &p("e e e"), &b2.vertex_path(0), &z).unwrap();
        assert!(matches!(
            part.member_of(&b2, &far),
            Err(OracleError::DepthInsufficient { .. })
        ));
    }
}
