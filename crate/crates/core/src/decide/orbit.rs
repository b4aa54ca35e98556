use super::DecideError;
use crate::cocycle::OneCocyclePhi;
use crate::kgraph::{Degree, KGraph, Path};
use crate::lattice::LatticeBasis;
use crate::phase::{symbols_of, PhaseVector, Symbol};
use crate::scalar::{common_denominator, Rational, Scalar};

/// `φ` projected to `Z_ω`: coordinate `i` is `z_i · φ` for the `i`-th
/// basis vector `z_i` of `Z_ω ⊆ Z^l`.
pub fn project<I: Scalar>(v: &PhaseVector<I>, zbasis: &LatticeBasis<I>) -> PhaseVector<I> {
    PhaseVector(zbasis.basis().iter().map(|z| v.pair(z)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitGenerators<I: Scalar> {
    /// Distinct projected values `φ(μ) − φ(ν)`.
    pub gens: Vec<PhaseVector<I>>,
    /// A pair `(μ, ν)` realising each generator.
    pub witnesses: Vec<(Path, Path)>,
    /// The generated subgroup was the same at `bound − 1`.
    pub stabilized: bool,
    pub bound: u32,
}

fn generators_at<I: Scalar>(
    g: &KGraph,
    phi: &OneCocyclePhi<I>,
    zbasis: &LatticeBasis<I>,
    bound: u32,
) -> (Vec<PhaseVector<I>>, Vec<(Path, Path)>) {
    let paths = g.all_paths_upto(&Degree::uniform(g.k(), bound));
    let mut gens: Vec<PhaseVector<I>> = Vec::new();
    let mut witnesses = Vec::new();
    for mu in &paths {
        for nu in &paths {
            if mu == nu || mu.range() != nu.range() || mu.source() != nu.source() {
                continue;
            }
            let v = project(&(phi.eval(mu) - phi.eval(nu)), zbasis).reduced();
            if !gens.contains(&v) {
                gens.push(v);
                witnesses.push((mu.clone(), nu.clone()));
            }
        }
    }
    let d = zbasis.rank();
    let nonzero: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_trivial()).collect();
    if nonzero.is_empty() {
        let w = witnesses.into_iter().next();
        return (vec![PhaseVector::zero(d)], w.into_iter().collect());
    }
    let gens2 = nonzero.iter().map(|&i| gens[i].clone()).collect();
    let wit2 = nonzero.iter().map(|&i| witnesses[i].clone()).collect();
    (gens2, wit2)
}

/// The subgroup of `T^d` generated by `gens`, as a lattice of scaled
/// exponent vectors with `Z^d` adjoined. Equal lattices mean equal subgroups.
pub fn phase_group_lattice<I: Scalar>(
    gens: &[PhaseVector<I>],
    d: usize,
    symbols: &[Symbol],
    den: &I,
) -> LatticeBasis<I> {
    let width = 1 + symbols.len();
    let den_q = Rational::from_integer(den.clone());
    let flatten = |v: &PhaseVector<I>| -> Vec<I> {
        let mut out = Vec::with_capacity(d * width);
        for e in v.entries() {
            out.push((e.rational_part() * &den_q).to_integer());
            for s in symbols {
                out.push((e.coefficient(s) * &den_q).to_integer());
            }
        }
        out
    };
    let mut rows: Vec<Vec<I>> = gens.iter().map(flatten).collect();
    for i in 0..d {
        let mut r = vec![I::zero(); d * width];
        r[i * width] = den.clone();
        rows.push(r);
    }
    LatticeBasis::from_generators(d * width, &rows)
}

fn all_coefficients<I: Scalar>(gens: &[PhaseVector<I>]) -> Vec<Rational<I>> {
    let mut out = Vec::new();
    for v in gens {
        for e in v.entries() {
            out.push(e.rational_part().clone());
            out.extend(e.terms().map(|(_, c)| c.clone()));
        }
    }
    out
}

/// Phases `φ(μ) − φ(ν)` over pairs with common range and source and
/// `d(μ), d(ν) ≤ bound`, projected to `Z_ω`. Refuses graphs that are not
/// strongly connected.
pub fn orbit_phase_generators<I: Scalar>(
    g: &KGraph,
    phi: &OneCocyclePhi<I>,
    zbasis: &LatticeBasis<I>,
    bound: u32,
) -> Result<OrbitGenerators<I>, DecideError> {
    if !g.is_strongly_connected() {
        return Err(DecideError::NotStronglyConnected);
    }
    if zbasis.ambient() != phi.l {
        return Err(DecideError::Shape(format!(
            "Z_omega lives in Z^{}, phi in T^{}",
            zbasis.ambient(),
            phi.l
        )));
    }
    let (gens, witnesses) = generators_at(g, phi, zbasis, bound);
    let stabilized = bound > 0 && {
        let (prev, _) = generators_at(g, phi, zbasis, bound - 1);
        let both: Vec<PhaseVector<I>> = gens.iter().chain(&prev).cloned().collect();
        let symbols = symbols_of(both.iter().flat_map(|v| v.entries()));
        let den = common_denominator(&all_coefficients(&both));
        let d = zbasis.rank();
        phase_group_lattice(&gens, d, &symbols, &den)
            == phase_group_lattice(&prev, d, &symbols, &den)
    };
    Ok(OrbitGenerators {
        gens,
        witnesses,
        stabilized,
        bound,
    })
}

fn is_path(g: &KGraph, p: &Path) -> bool {
    if p.is_vertex() {
        p.range() < g.num_vertices()
    } else {
        g.path_from_word(p.edges()).is_ok_and(|q| &q == p)
    }
}

/// Recomputes each generator from its witness pair.
pub fn verify_generators<I: Scalar>(
    g: &KGraph,
    phi: &OneCocyclePhi<I>,
    zbasis: &LatticeBasis<I>,
    og: &OrbitGenerators<I>,
) -> bool {
    og.gens.len() == og.witnesses.len()
        && og.gens.iter().zip(&og.witnesses).all(|(v, (mu, nu))| {
            is_path(g, mu)
                && is_path(g, nu)
                && mu.range() == nu.range()
                && mu.source() == nu.source()
                && project(&(phi.eval(mu) - phi.eval(nu)), zbasis).same_point(v)
        })
}
