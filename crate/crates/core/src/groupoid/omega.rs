use std::collections::HashMap;

use super::{build_partition, isotropy_restriction, OracleError, Partition};
use crate::cocycle::{cocycle_value, BicharacterTable, CocycleSpec};
use crate::kgraph::{Degree, EventuallyPeriodicPath, KGraph, Path, VertexId};
use crate::lattice::LatticeBasis;
use crate::phase::PhaseExponent;
use crate::scalar::{int, Scalar};
use crate::structure::periodic_at;

fn combine(basis: &[Vec<i64>], coeffs: &[i64]) -> Vec<i64> {
    let k = basis.first().map_or(0, Vec::len);
    (0..k)
        .map(|j| basis.iter().zip(coeffs).map(|(b, c)| b[j] * c).sum())
        .collect()
}

fn join_all<'a>(k: usize, it: impl IntoIterator<Item = &'a Degree>) -> Degree {
    it.into_iter().fold(Degree::zero(k), |acc, d| acc.join(d))
}

/// The degrees `p^±` for `p = g_i` and `p = g_i + g_j`.
fn needed_degrees(k: usize, basis: &[Vec<i64>]) -> Vec<Degree> {
    let mut out = Vec::new();
    for (i, gi) in basis.iter().enumerate() {
        out.push(Degree::pos_part(gi));
        out.push(Degree::neg_part(gi));
        for gj in &basis[i..] {
            let s: Vec<i64> = gi.iter().zip(gj).map(|(a, b)| a + b).collect();
            out.push(Degree::pos_part(&s));
            out.push(Degree::neg_part(&s));
        }
    }
    if out.is_empty() {
        out.push(Degree::zero(k));
    }
    out
}

/// First vertex at which every `g_i` is a local period.
pub fn periodic_vertex(g: &KGraph, basis: &[Vec<i64>]) -> Option<VertexId> {
    (0..g.num_vertices()).find(|&v| basis.iter().all(|p| periodic_at(g, p, v)))
}

/// The bicharacter read off the isotropy cocycle at one infinite path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOmega<I: Scalar> {
    pub per_basis: Vec<Vec<i64>>,
    pub vertex: VertexId,
    pub x: EventuallyPeriodicPath,
    /// Partition depth that resolved every element.
    pub depth: Degree,
    /// `σ^x_c(g_i, g_j)`.
    pub sigma: Vec<Vec<PhaseExponent<I>>>,
    /// `A(i, j) = σ^x_c(g_i, g_j) − σ^x_c(g_j, g_i)`.
    pub antisymmetrization: Vec<Vec<PhaseExponent<I>>>,
    /// Strictly lower triangular bicharacter with antisymmetrization `A`.
    pub omega: BicharacterTable<I>,
}

impl<I: Scalar> OracleOmega<I> {
    /// `Z_ω` in coordinates of the period basis.
    pub fn centre(&self) -> Result<LatticeBasis<I>, crate::lattice::LatticeError> {
        self.omega.centre()
    }

    /// `Z_ω` inside `Z^k`.
    pub fn centre_in_zk(&self) -> Result<LatticeBasis<I>, crate::lattice::LatticeError> {
        let k = self.x.cycle().degree().k();
        let basis: Vec<Vec<I>> = self
            .per_basis
            .iter()
            .map(|r| r.iter().map(|&x| int::<I>(x)).collect())
            .collect();
        Ok(self.centre()?.embed(k, |c| {
            (0..k)
                .map(|j| {
                    c.iter()
                        .zip(&basis)
                        .fold(I::zero(), |acc, (ci, b)| acc + ci.clone() * b[j].clone())
                })
                .collect()
        }))
    }
}

/// `ω` for `c` from `σ^x_c` at `x = canonical(v)`, escalating the
/// partition depth from the smallest box holding every `g_i^±` and
/// `(g_i + g_j)^±` up to `extra_depth` further steps.
pub fn omega_from_oracle<I: Scalar>(
    g: &KGraph,
    c: &CocycleSpec<I>,
    per_basis: &[Vec<i64>],
    v: Option<VertexId>,
    extra_depth: u32,
) -> Result<OracleOmega<I>, OracleError> {
    let k = g.k();
    let l = per_basis.len();
    let vertex = match v {
        Some(v) => v,
        None => periodic_vertex(g, per_basis).ok_or_else(|| {
            OracleError::Invalid("no vertex at which every generator is a local period".into())
        })?,
    };
    let x = EventuallyPeriodicPath::canonical(g, vertex);
    let base = join_all(k, &needed_degrees(k, per_basis));
    let mut last = base.clone();
    for step in 0..=extra_depth {
        let depth = &base + &Degree::uniform(k, step);
        last = depth.clone();
        let part = build_partition(g, &depth, &[])?;
        let mut sigma = vec![vec![PhaseExponent::zero(); l]; l];
        let mut failed = false;
        'outer: for i in 0..l {
            for j in 0..l {
                if i == j {
                    continue;
                }
                match isotropy_restriction(c, g, &part, &x, &per_basis[i], &per_basis[j]) {
                    Ok(s) => sigma[i][j] = s,
                    Err(OracleError::DepthInsufficient { .. }) => {
                        failed = true;
                        break 'outer;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        if failed {
            continue;
        }
        let antisymmetrization: Vec<Vec<PhaseExponent<I>>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| (sigma[i][j].clone() - sigma[j][i].clone()).reduced())
                    .collect()
            })
            .collect();
        let omega = BicharacterTable::lower_triangular_from(&antisymmetrization);
        return Ok(OracleOmega {
            per_basis: per_basis.to_vec(),
            vertex,
            x,
            depth,
            sigma,
            antisymmetrization,
            omega,
        });
    }
    Err(OracleError::EscalationExhausted(last))
}

/// The factorisation data and bicharacter of the closed-form recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm<I: Scalar> {
    pub vertex: VertexId,
    pub lambda: Path,
    /// `(μ_i, ν_i)` then `(μ_ij, ν_ij)` for `i ≤ j`.
    pub pinned: Vec<(Path, Path)>,
    pub omega: BicharacterTable<I>,
}

/// The closed form: fix `λ ∈ vΛ^N`, factor `λ = μ_i τ_i = ν_i ρ_i` with
/// `d(μ_i) = g_i^+`, `d(ν_i) = g_i^−`, similarly `μ_ij`, `ν_ij` for
/// `g_i + g_j`, and set
/// `ω(g_i, g_j) = c(μ_i,τ_i) − c(ν_i,ρ_i) + c(μ_j,τ_j) − c(ν_j,ρ_j) − c(μ_ij,τ_ij) + c(ν_ij,ρ_ij)`.
///
/// `N` is `Σ g_i^+ + g_i^−` joined with every `(g_i + g_j)^±`, the smallest
/// enlargement for which every factorisation exists when `i = j`.
pub fn omega_closedform<I: Scalar>(
    g: &KGraph,
    c: &CocycleSpec<I>,
    per_basis: &[Vec<i64>],
    v: Option<VertexId>,
) -> Result<ClosedForm<I>, OracleError> {
    let k = g.k();
    let l = per_basis.len();
    let vertex = match v {
        Some(v) => v,
        None => periodic_vertex(g, per_basis).ok_or_else(|| {
            OracleError::Invalid("no vertex at which every generator is a local period".into())
        })?,
    };
    let sum = per_basis.iter().fold(Degree::zero(k), |acc, gi| {
        &(&acc + &Degree::pos_part(gi)) + &Degree::neg_part(gi)
    });
    let n = sum.join(&join_all(k, &needed_degrees(k, per_basis)));
    let lambda = g
        .paths_from(vertex, &n)
        .into_iter()
        .next()
        .expect("graph has no sources");
    let split = |p: &[i64]| -> Result<(Path, Path, Path, Path), OracleError> {
        let (mu, tau) = g.factorize(&lambda, &Degree::pos_part(p))?;
        let (nu, rho) = g.factorize(&lambda, &Degree::neg_part(p))?;
        Ok((mu, tau, nu, rho))
    };
    let term = |p: &[i64]| -> Result<PhaseExponent<I>, OracleError> {
        let (mu, tau, nu, rho) = split(p)?;
        Ok(cocycle_value(c, g, &mu, &tau)? - cocycle_value(c, g, &nu, &rho)?)
    };
    let mut pinned = Vec::new();
    for gi in per_basis {
        let (mu, _, nu, _) = split(gi)?;
        if !pinned.contains(&(mu.clone(), nu.clone())) {
            pinned.push((mu, nu));
        }
    }
    let mut m = vec![vec![PhaseExponent::zero(); l]; l];
    for i in 0..l {
        for j in 0..l {
            let s: Vec<i64> = per_basis[i]
                .iter()
                .zip(&per_basis[j])
                .map(|(a, b)| a + b)
                .collect();
            m[i][j] = (term(&per_basis[i])? + term(&per_basis[j])? - term(&s)?).reduced();
            if i <= j {
                let (mu, _, nu, _) = split(&s)?;
                if !pinned.contains(&(mu.clone(), nu.clone())) {
                    pinned.push((mu, nu));
                }
            }
        }
    }
    Ok(ClosedForm {
        vertex,
        lambda,
        pinned,
        omega: BicharacterTable::new(m),
    })
}

/// Closed form against oracle on one graph and cocycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaComparison<I: Scalar> {
    pub oracle: OracleOmega<I>,
    pub closed: ClosedForm<I>,
    pub closed_is_symmetric: bool,
    /// Entries `(i, j, oracle A(i,j), closed-form A(i,j))` that differ mod Z.
    pub discrepancies: Vec<(usize, usize, PhaseExponent<I>, PhaseExponent<I>)>,
    /// `σ^x_c(g_i, g_j)` under a partition pinned at the closed form's
    /// pairs, for `x = λ·canonical(s(λ))`; `None` if the pins overlap.
    pub pinned_sigma: Option<Vec<Vec<PhaseExponent<I>>>>,
    /// Entries where `pinned_sigma` differs from the closed-form `ω`.
    pub pinned_mismatches: Vec<(usize, usize)>,
    /// `Z_ω` agrees between the two.
    pub same_centre: bool,
}

impl<I: Scalar> OmegaComparison<I> {
    pub fn agrees(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

pub fn compare_omegas<I: Scalar>(
    g: &KGraph,
    c: &CocycleSpec<I>,
    per_basis: &[Vec<i64>],
    extra_depth: u32,
) -> Result<OmegaComparison<I>, OracleError> {
    let oracle = omega_from_oracle(g, c, per_basis, None, extra_depth)?;
    let closed = omega_closedform(g, c, per_basis, Some(oracle.vertex))?;
    let l = per_basis.len();
    let closed_a = closed.omega.antisymmetrization();
    let closed_is_symmetric = closed_a.iter().flatten().all(|x| x.is_trivial());
    let mut discrepancies = Vec::new();
    for i in 0..l {
        for j in 0..l {
            if !oracle.antisymmetrization[i][j].same_phase(&closed_a[i][j]) {
                discrepancies.push((
                    i,
                    j,
                    oracle.antisymmetrization[i][j].clone(),
                    closed_a[i][j].reduced(),
                ));
            }
        }
    }

    let mut pinned_sigma = None;
    let mut pinned_mismatches = Vec::new();
    let depth = closed.lambda.degree().join(&oracle.depth);
    if let Ok(part) = build_partition(g, &depth, &closed.pinned) {
        let x = EventuallyPeriodicPath::canonical(g, closed.lambda.source())
            .prepend(g, &closed.lambda)?;
        let mut table = vec![vec![PhaseExponent::zero(); l]; l];
        for i in 0..l {
            for j in 0..l {
                table[i][j] = isotropy_restriction(c, g, &part, &x, &per_basis[i], &per_basis[j])?;
                if !table[i][j].same_phase(closed.omega.entry(i, j)) {
                    pinned_mismatches.push((i, j));
                }
            }
        }
        pinned_sigma = Some(table);
    }
    let same_centre = match (oracle.centre(), closed.omega.centre()) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    Ok(OmegaComparison {
        oracle,
        closed,
        closed_is_symmetric,
        discrepancies,
        pinned_sigma,
        pinned_mismatches,
        same_centre,
    })
}

/// `b_x` on `Per(Λ)` with `b(m) − b(m + g_i) = c̃_x(g_i, m)`, where
/// `c̃_x = σ^x_c − ω_target` in period coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coboundary<I: Scalar> {
    /// `b_x(m)` for every `m` (period coordinates) that was needed.
    pub values: HashMap<Vec<i64>, PhaseExponent<I>>,
    pub pairs_checked: usize,
    /// Pairs `(p, q)` with `b(p) + b(q) − b(p+q) ≠ c̃_x(p, q)`.
    pub failures: Vec<(Vec<i64>, Vec<i64>)>,
    pub radius: i64,
}

impl<I: Scalar> Coboundary<I> {
    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds `b_x` along the generator filtration `Zg_1 ⊆ Zg_1 + Zg_2 ⊆ …`
/// and checks `δ¹b_x = c̃_x` on every pair with `‖p‖∞, ‖q‖∞ ≤ radius`.
#[allow(clippy::too_many_arguments)]
pub fn coboundary_bx<I: Scalar>(
    omega_target: &BicharacterTable<I>,
    c: &CocycleSpec<I>,
    g: &KGraph,
    part: &Partition,
    x: &EventuallyPeriodicPath,
    per_basis: &[Vec<i64>],
    radius: i64,
) -> Result<Coboundary<I>, OracleError> {
    let l = per_basis.len();
    if omega_target.rank() != l {
        return Err(OracleError::Invalid(format!(
            "target has rank {}, Per has rank {l}",
            omega_target.rank()
        )));
    }
    let mut sigma_memo: HashMap<(Vec<i64>, Vec<i64>), PhaseExponent<I>> = HashMap::new();
    let mut ctilde = |p: &[i64], q: &[i64]| -> Result<PhaseExponent<I>, OracleError> {
        let key = (p.to_vec(), q.to_vec());
        if let Some(v) = sigma_memo.get(&key) {
            return Ok(v.clone());
        }
        let s = isotropy_restriction(
            c,
            g,
            part,
            x,
            &combine(per_basis, p),
            &combine(per_basis, q),
        )?;
        let v = s - omega_target.value_i64(p, q);
        sigma_memo.insert(key, v.clone());
        Ok(v)
    };
    for i in 0..l {
        for j in (i + 1)..l {
            let (ei, ej) = (unit(l, i), unit(l, j));
            let a = ctilde(&ei, &ej)? - ctilde(&ej, &ei)?;
            if !a.is_trivial() {
                return Err(OracleError::NotCohomologous);
            }
        }
    }

    let mut values: HashMap<Vec<i64>, PhaseExponent<I>> = HashMap::new();
    values.insert(vec![0; l], PhaseExponent::zero());
    let mut b_of =
        |m: &[i64], ct: &mut dyn FnMut(&[i64], &[i64]) -> Result<PhaseExponent<I>, OracleError>| {
            // walk 0 → m along g_1, then g_2, …
            let mut at = vec![0i64; l];
            let mut val = PhaseExponent::<I>::zero();
            for i in 0..l {
                let step = m[i].signum();
                while at[i] != m[i] {
                    let mut next = at.clone();
                    next[i] += step;
                    if let Some(v) = values.get(&next) {
                        val = v.clone();
                    } else {
                        val = if step > 0 {
                            val - ct(&unit(l, i), &at)?
                        } else {
                            val + ct(&unit(l, i), &next)?
                        };
                        values.insert(next.clone(), val.clone());
                    }
                    at = next;
                }
            }
            Ok::<_, OracleError>(val)
        };

    let coords: Vec<Vec<i64>> = crate::kgraph::integer_box(&Degree::uniform(l, radius as u32));
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    for p in &coords {
        for q in &coords {
            let pq: Vec<i64> = p.iter().zip(q).map(|(a, b)| a + b).collect();
            let lhs = b_of(p, &mut ctilde)? + b_of(q, &mut ctilde)? - b_of(&pq, &mut ctilde)?;
            let rhs = ctilde(p, q)?;
            pairs_checked += 1;
            if !lhs.same_phase(&rhs) {
                failures.push((p.clone(), q.clone()));
            }
        }
    }
    let values = values.into_iter().map(|(k, v)| (k, v.reduced())).collect();
    Ok(Coboundary {
        values,
        pairs_checked,
        failures,
        radius,
    })
}

fn unit(l: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; l];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::tests::{phi_b2t1, pullback_t2};
    use crate::kgraph::builtin;
    use crate::{Lattice, Phase};

    fn theta() -> Phase {
        Phase::symbol("theta")
    }

    #[test]
    fn t2_oracle_and_closed_form() {
        let t2 = builtin("T2").unwrap();
        let c = pullback_t2(theta());
        let basis = vec![vec![1, 0], vec![0, 1]];
        let o = omega_from_oracle(&t2, &c, &basis, None, 2).unwrap();
        assert!(o.antisymmetrization[0][1].same_phase(&-theta()));
        assert!(o.centre().unwrap().is_trivial());

        let cmp = compare_omegas(&t2, &c, &basis, 2).unwrap();
        assert!(cmp.closed_is_symmetric);
        assert!(!cmp.agrees());
        assert!(!cmp.same_centre);
    }

    #[test]
    fn rational_theta_centre() {
        let t2 = builtin("T2").unwrap();
        let c = pullback_t2(Phase::ratio(1, 2));
        let o = omega_from_oracle(&t2, &c, &[vec![1, 0], vec![0, 1]], None, 2).unwrap();
        assert_eq!(
            o.centre_in_zk().unwrap(),
            Lattice::from_i64(2, &[vec![2, 0], vec![0, 2]])
        );
    }

    #[test]
    fn b2t1_is_degenerate() {
        let g = builtin("B2xT1").unwrap();
        let c = phi_b2t1(Phase::zero(), theta());
        let o = omega_from_oracle(&g, &c, &[vec![0, 1]], None, 2).unwrap();
        assert_eq!(o.centre().unwrap(), Lattice::full(1));
    }

    #[test]
    fn coboundary_examples() {
        let t2 = builtin("T2").unwrap();
        let c = pullback_t2(theta());
        let basis = vec![vec![1, 0], vec![0, 1]];
        let o = omega_from_oracle(&t2, &c, &basis, None, 2).unwrap();
        let part = build_partition(&t2, &Degree(vec![4, 4]), &[]).unwrap();
        let b = coboundary_bx(&o.omega, &c, &t2, &part, &o.x, &basis, 2).unwrap();
        assert!(b.verified() && b.pairs_checked == 625);

        // σ^x_c already equal to the target: b ≡ 0
        let zero = pullback_t2(Phase::zero());
        let b = coboundary_bx(
            &BicharacterTable::zero(2),
            &zero,
            &t2,
            &part,
            &o.x,
            &basis,
            1,
        )
        .unwrap();
        assert!(b.verified() && b.values.values().all(|v| v.is_trivial()));

        let wrong = BicharacterTable::zero(2);
        assert!(matches!(
            coboundary_bx(&wrong, &c, &t2, &part, &o.x, &basis, 1),
            Err(OracleError::NotCohomologous)
        ));
    }
}
