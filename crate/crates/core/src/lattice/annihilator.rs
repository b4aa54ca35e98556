//! Integer characters that kill a family of torus points.
//!
//! For points `v_1..v_g ∈ T^d` given by exponents, the annihilator is
//! `{n ∈ Z^d : n·v_j ∈ Z for all j}`. Symbols are Q-independent of 1, so the
//! irrational coordinates of `n·v_j` must vanish exactly (a kernel over Z)
//! and the rational coordinates must be integral (a congruence).

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::intmat::{self, congruence_solutions, hnf_with_transform, IntMatrix};
use super::{LatticeBasis, LatticeError};
use crate::phase::{symbols_of, PhaseExponent, PhaseVector, Symbol};
use crate::scalar::{common_denominator, Exact, Rational, Scalar};

/// Full record of an annihilator computation.
#[derive(Debug, Clone)]
pub struct AnnihilatorComputation<I: Scalar = Exact> {
    pub symbols: Vec<Symbol>,
    /// `d × (g·s)` integer matrix of cleared irrational coefficients.
    pub irrational_matrix: IntMatrix<I>,
    /// Unimodular `U` with `U · irrational_matrix = echelon`.
    pub transform: IntMatrix<I>,
    pub echelon: IntMatrix<I>,
    pub rank: usize,
    pub lattice: LatticeBasis<I>,
}

/// Integer matrix whose columns are the irrational coefficients of the
/// generators, one column per (generator, symbol), each scaled to clear its
/// denominators. Scaling a column does not change the integer kernel.
fn irrational_matrix<I: Scalar>(
    d: usize,
    columns: &[PhaseVector<I>],
    symbols: &[Symbol],
) -> IntMatrix<I> {
    let mut m: IntMatrix<I> = vec![Vec::new(); d];
    for col in columns {
        for s in symbols {
            let coeffs: Vec<Rational<I>> = col.entries().iter().map(|p| p.coefficient(s)).collect();
            if coeffs.iter().all(|c| c.is_zero()) {
                continue;
            }
            let den = common_denominator(&coeffs);
            for (i, c) in coeffs.iter().enumerate() {
                m[i].push((c * Rational::from_integer(den.clone())).to_integer());
            }
        }
    }
    m
}

/// Annihilator of the torus points `columns` (each of length `d`).
pub fn annihilator_of_columns<I: Scalar>(
    d: usize,
    columns: &[PhaseVector<I>],
) -> Result<AnnihilatorComputation<I>, LatticeError> {
    if let Some(bad) = columns.iter().find(|c| c.len() != d) {
        return Err(LatticeError::DimensionMismatch {
            expected: d,
            found: bad.len(),
        });
    }
    let symbols = symbols_of(columns.iter().flat_map(|c| c.entries()));
    let n = irrational_matrix(d, columns, &symbols);
    let ncols = n.first().map_or(0, |r| r.len());
    let (echelon, transform, rank) = hnf_with_transform(&n, ncols);
    let kernel: IntMatrix<I> = transform[rank..].to_vec();

    let lattice = if kernel.is_empty() {
        LatticeBasis::zero(d)
    } else {
        // rational parts restricted to the kernel: t ↦ Σ_t t_i K_i · R
        let g = columns.len();
        let c: Vec<Vec<Rational<I>>> = kernel
            .iter()
            .map(|k| {
                (0..g)
                    .map(|j| {
                        k.iter()
                            .zip(columns[j].entries())
                            .fold(Rational::zero(), |acc, (ki, p)| {
                                acc + p.rational_part() * Rational::from_integer(ki.clone())
                            })
                    })
                    .collect()
            })
            .collect();
        let den = common_denominator(c.iter().flatten());
        let scaled: IntMatrix<I> = c
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
                    .collect()
            })
            .collect();
        let t_basis = if den.is_one() {
            intmat::identity(kernel.len())
        } else {
            congruence_solutions(&scaled, g, &den)
        };
        let gens: IntMatrix<I> = t_basis
            .iter()
            .map(|t| intmat::vec_mat(t, &kernel, d))
            .collect();
        LatticeBasis::from_generators(d, &gens)
    };

    Ok(AnnihilatorComputation {
        symbols,
        irrational_matrix: n,
        transform,
        echelon,
        rank,
        lattice,
    })
}

/// `{p ∈ Z^r : p·A·q ∈ Z for all q ∈ Z^r}` for an exponent matrix `A`
/// that is antisymmetric up to integers.
pub fn annihilator_lattice<I: Scalar>(
    a: &[Vec<PhaseExponent<I>>],
    r: usize,
) -> Result<LatticeBasis<I>, LatticeError> {
    if a.len() != r {
        return Err(LatticeError::DimensionMismatch {
            expected: r,
            found: a.len(),
        });
    }
    if let Some(row) = a.iter().find(|row| row.len() != r) {
        return Err(LatticeError::DimensionMismatch {
            expected: r,
            found: row.len(),
        });
    }
    for i in 0..r {
        for j in i..r {
            if !(a[i][j].clone() + &a[j][i]).is_trivial() {
                return Err(LatticeError::NotAntisymmetric { i, j });
            }
        }
    }
    let columns: Vec<PhaseVector<I>> = (0..r)
        .map(|j| PhaseVector((0..r).map(|i| a[i][j].clone()).collect()))
        .collect();
    Ok(annihilator_of_columns(r, &columns)?.lattice)
}

/// Proof that the only annihilating character is zero: the irrational
/// coefficient matrix has full row rank, witnessed by a unimodular reduction
/// to echelon form with no zero row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct DensityProof<I: Scalar = Exact> {
    pub symbols: Vec<String>,
    #[serde(with = "super::int_rows")]
    pub irrational_matrix: IntMatrix<I>,
    #[serde(with = "super::int_rows")]
    pub transform: IntMatrix<I>,
    #[serde(with = "super::int_rows")]
    pub echelon: IntMatrix<I>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub enum KroneckerCertificate<I: Scalar = Exact> {
    Dense(DensityProof<I>),
    Annihilator(#[serde(with = "int_vec")] Vec<I>),
}

mod int_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::scalar::Scalar;

    pub fn serialize<I: Scalar, S: Serializer>(v: &[I], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, I: Scalar, D: Deserializer<'de>>(d: D) -> Result<Vec<I>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|x| {
                x.parse::<I>()
                    .map_err(|_| serde::de::Error::custom(format!("bad integer {x:?}")))
            })
            .collect()
    }
}

/// Kronecker's criterion: the subgroup of `T^d` generated by `gens` is dense
/// iff no nonzero `n ∈ Z^d` has `n·v ∈ Z` for every generator.
pub fn kronecker_dense<I: Scalar>(
    gens: &[PhaseVector<I>],
    d: usize,
) -> Result<(bool, KroneckerCertificate<I>), LatticeError> {
    let comp = annihilator_of_columns(d, gens)?;
    match comp.lattice.basis().first() {
        Some(n) => Ok((false, KroneckerCertificate::Annihilator(n.clone()))),
        None => Ok((
            true,
            KroneckerCertificate::Dense(DensityProof {
                symbols: comp.symbols.iter().map(|s| s.to_string()).collect(),
                irrational_matrix: comp.irrational_matrix,
                transform: comp.transform,
                echelon: comp.echelon,
            }),
        )),
    }
}

/// Independent recheck of an annihilating character.
pub fn verify_annihilator<I: Scalar>(gens: &[PhaseVector<I>], n: &[I]) -> bool {
    n.iter().any(|x| !x.is_zero())
        && gens
            .iter()
            .all(|v| v.len() == n.len() && v.pair(n).is_trivial())
}

/// Independent recheck of a density proof against the generators.
///
/// Rebuilds the coefficient matrix from `gens`, then checks that the
/// transcript's transform is unimodular, maps that matrix onto the echelon
/// form, and that the echelon form has `d` nonzero rows with increasing pivots.
pub fn verify_density_proof<I: Scalar>(
    gens: &[PhaseVector<I>],
    d: usize,
    proof: &DensityProof<I>,
) -> bool {
    if gens.iter().any(|g| g.len() != d) {
        return false;
    }
    let symbols: Vec<Symbol> = proof.symbols.iter().map(|s| Symbol::new(s)).collect();
    if symbols != symbols_of(gens.iter().flat_map(|g| g.entries())) {
        return false;
    }
    let n = irrational_matrix(d, gens, &symbols);
    if n != proof.irrational_matrix {
        return false;
    }
    let cols = n.first().map_or(0, |r| r.len());
    if proof.transform.len() != d || !intmat::is_unimodular(&proof.transform) {
        return false;
    }
    if intmat::mat_mul(&proof.transform, &n, cols) != proof.echelon {
        return false;
    }
    let mut last_pivot: Option<usize> = None;
    for row in &proof.echelon {
        match row.iter().position(|x| !x.is_zero()) {
            Some(p) if last_pivot.map_or(true, |lp| p > lp) => last_pivot = Some(p),
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = PhaseExponent<i64>;

    fn pv(items: &[&str]) -> PhaseVector<i64> {
        PhaseVector(items.iter().map(|s| s.parse::<P>().unwrap()).collect())
    }

    fn ph(s: &str) -> P {
        s.parse().unwrap()
    }

    #[test]
    fn annihilator_irrational_rotation() {
        let a = vec![vec![ph("0"), ph("-theta")], vec![ph("theta"), ph("0")]];
        assert!(annihilator_lattice(&a, 2).unwrap().is_trivial());
    }

    #[test]
    fn annihilator_half() {
        let a = vec![vec![ph("0"), ph("-1/2")], vec![ph("1/2"), ph("0")]];
        let l = annihilator_lattice(&a, 2).unwrap();
        assert_eq!(l, LatticeBasis::from_i64(2, &[vec![2, 0], vec![0, 2]]));
    }

    #[test]
    fn annihilator_zero_matrix() {
        let a = vec![vec![P::zero(); 3]; 3];
        assert_eq!(annihilator_lattice(&a, 3).unwrap(), LatticeBasis::full(3));
    }

    #[test]
    fn rejects_symmetric() {
        let a = vec![vec![ph("0"), ph("theta")], vec![ph("theta"), ph("0")]];
        assert_eq!(
            annihilator_lattice(&a, 2),
            Err(LatticeError::NotAntisymmetric { i: 0, j: 1 })
        );
        let diag = vec![vec![ph("1/3")]];
        assert!(annihilator_lattice(&diag, 1).is_err());
    }

    #[test]
    fn kronecker_examples() {
        let (dense, cert) = kronecker_dense(&[pv(&["theta"])], 1).unwrap();
        assert!(dense);
        match cert {
            KroneckerCertificate::Dense(p) => {
                assert!(verify_density_proof(&[pv(&["theta"])], 1, &p))
            }
            _ => panic!("expected density proof"),
        }
        let (dense, cert) = kronecker_dense(&[pv(&["1/2"])], 1).unwrap();
        assert!(!dense);
        assert_eq!(cert, KroneckerCertificate::Annihilator(vec![2]));
        let gens = [pv(&["theta", "2*theta"])];
        let (dense, cert) = kronecker_dense(&gens, 2).unwrap();
        assert!(!dense);
        assert_eq!(cert, KroneckerCertificate::Annihilator(vec![2, -1]));
        assert!(verify_annihilator(&gens, &[2, -1]));
    }

    #[test]
    fn mixed_rational_and_irrational() {
        // (theta + 1/3, theta): kernel direction (1,-1) picks up 1/3, so 3·(1,-1)
        let gens = [pv(&["1/3 + theta", "theta"])];
        let comp = annihilator_of_columns(2, &gens).unwrap();
        assert_eq!(comp.lattice, LatticeBasis::from_i64(2, &[vec![3, -3]]));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(kronecker_dense(&[pv(&["theta"])], 2).is_err());
    }

    #[test]
    fn tampered_proof_rejected() {
        let gens = [pv(&["theta", "rho"]), pv(&["rho", "0"])];
        let (dense, cert) = kronecker_dense(&gens, 2).unwrap();
        assert!(dense);
        let KroneckerCertificate::Dense(mut p) = cert else {
            panic!()
        };
        assert!(verify_density_proof(&gens, 2, &p));
        p.echelon[0][0] += 1;
        assert!(!verify_density_proof(&gens, 2, &p));
    }
}
