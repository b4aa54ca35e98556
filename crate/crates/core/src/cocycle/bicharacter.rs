use std::fmt;

use crate::lattice::{annihilator_lattice, LatticeBasis, LatticeError};
use crate::phase::PhaseExponent;
use crate::scalar::{int, Exact, Scalar};

/// A bicharacter on `Z^l`: `ω(p, q) = pᵀ M q` in exponent form.
#[derive(Clone, PartialEq, Eq)]
pub struct BicharacterTable<I: Scalar = Exact> {
    matrix: Vec<Vec<PhaseExponent<I>>>,
}

impl<I: Scalar> BicharacterTable<I> {
    /// Panics unless `matrix` is square.
    pub fn new(matrix: Vec<Vec<PhaseExponent<I>>>) -> Self {
        let l = matrix.len();
        assert!(
            matrix.iter().all(|r| r.len() == l),
            "bicharacter matrix must be square"
        );
        BicharacterTable { matrix }
    }

    pub fn zero(l: usize) -> Self {
        BicharacterTable {
            matrix: vec![vec![PhaseExponent::zero(); l]; l],
        }
    }

    /// The bicharacter with `M_ij = a_ij` for `i > j` and zero elsewhere;
    /// its antisymmetrization is `a` whenever `a` is antisymmetric.
    pub fn lower_triangular_from(a: &[Vec<PhaseExponent<I>>]) -> Self {
        let l = a.len();
        let matrix = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        if i > j {
                            a[i][j].clone()
                        } else {
                            PhaseExponent::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        BicharacterTable { matrix }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<PhaseExponent<I>>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &PhaseExponent<I> {
        &self.matrix[i][j]
    }

    /// `ω(p, q) = Σ p_i M_ij q_j`.
    pub fn value(&self, p: &[I], q: &[I]) -> PhaseExponent<I> {
        assert_eq!(p.len(), self.rank(), "bicharacter rank mismatch");
        assert_eq!(q.len(), self.rank(), "bicharacter rank mismatch");
        let mut acc = PhaseExponent::zero();
        for (i, pi) in p.iter().enumerate() {
            if pi.is_zero() {
                continue;
            }
            for (j, qj) in q.iter().enumerate() {
                if qj.is_zero() {
                    continue;
                }
                acc += self.matrix[i][j].scale_int(&(pi.clone() * qj.clone()));
            }
        }
        acc
    }

    pub fn value_i64(&self, p: &[i64], q: &[i64]) -> PhaseExponent<I> {
        let p: Vec<I> = p.iter().map(|&x| int(x)).collect();
        let q: Vec<I> = q.iter().map(|&x| int(x)).collect();
        self.value(&p, &q)
    }

    /// `A = M − Mᵀ`, the exponent matrix of `ωω*`.
    pub fn antisymmetrization(&self) -> Vec<Vec<PhaseExponent<I>>> {
        let l = self.rank();
        (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| self.matrix[i][j].clone() - self.matrix[j][i].clone())
                    .collect()
            })
            .collect()
    }

    /// Same antisymmetrization mod Z entrywise.
    pub fn same_antisymmetrization(&self, other: &Self) -> bool {
        self.rank() == other.rank()
            && self
                .antisymmetrization()
                .iter()
                .flatten()
                .zip(other.antisymmetrization().iter().flatten())
                .all(|(a, b)| a.same_phase(b))
    }

    /// `Z_ω = {p : (ωω*)(p, q) = 1 for all q}`.
    pub fn centre(&self) -> Result<LatticeBasis<I>, LatticeError> {
        annihilator_lattice(&self.antisymmetrization(), self.rank())
    }
}

impl<I: Scalar> fmt::Display for BicharacterTable<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.matrix.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        f.write_str("]")
    }
}

impl<I: Scalar> fmt::Debug for BicharacterTable<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
