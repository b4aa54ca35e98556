//! Integer lattices and the annihilator/density computations built on them.

pub mod annihilator;
pub mod intmat;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::{Exact, Scalar};
use intmat::{hnf_rows, left_kernel, transpose, IntMatrix};

pub use annihilator::{
    annihilator_lattice, annihilator_of_columns, kronecker_dense, verify_annihilator,
    verify_density_proof, AnnihilatorComputation, DensityProof, KroneckerCertificate,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("ambient rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not antisymmetric up to integers at ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },
}

/// A sublattice of `Z^r`, stored by its Hermite normal form basis.
///
/// The HNF is canonical, so structural equality is lattice equality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct LatticeBasis<I: Scalar = Exact> {
    ambient: usize,
    #[serde(with = "int_rows")]
    rows: IntMatrix<I>,
}

impl<I: Scalar> LatticeBasis<I> {
    pub fn from_generators(ambient: usize, gens: &[Vec<I>]) -> Self {
        for g in gens {
            assert_eq!(
                g.len(),
                ambient,
                "generator length differs from ambient rank"
            );
        }
        LatticeBasis {
            ambient,
            rows: hnf_rows(gens, ambient),
        }
    }

    pub fn from_i64(ambient: usize, gens: &[Vec<i64>]) -> Self {
        let gens: Vec<Vec<I>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| crate::scalar::int(x)).collect())
            .collect();
        Self::from_generators(ambient, &gens)
    }

    pub fn zero(ambient: usize) -> Self {
        LatticeBasis {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        LatticeBasis {
            ambient,
            rows: intmat::identity(ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<I>] {
        &self.rows
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    /// The basis as machine integers, if every entry fits.
    pub fn basis_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn contains(&self, v: &[I]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut v = v.to_vec();
        for row in &self.rows {
            let p = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("HNF rows are nonzero");
            if v[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, r) = v[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x = x.clone() - q.clone() * y.clone();
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    fn check(&self, other: &Self) -> Result<(), LatticeError> {
        if self.ambient != other.ambient {
            return Err(LatticeError::RankMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LatticeError> {
        self.check(other)?;
        let gens: IntMatrix<I> = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(Self::from_generators(self.ambient, &gens))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, LatticeError> {
        self.check(other)?;
        let stacked: IntMatrix<I> = self.rows.iter().chain(&other.rows).cloned().collect();
        let kernel = left_kernel(&stacked, self.ambient);
        let r = self.rows.len();
        let gens: IntMatrix<I> = kernel
            .iter()
            .map(|k| intmat::vec_mat(&k[..r], &self.rows, self.ambient))
            .collect();
        Ok(Self::from_generators(self.ambient, &gens))
    }

    /// `(L ⊗ Q) ∩ Z^r`.
    pub fn saturation(&self) -> Self {
        let bt = transpose(&self.rows, self.ambient);
        let orth = left_kernel(&bt, self.rows.len());
        let orth_t = transpose(&orth, self.ambient);
        LatticeBasis {
            ambient: self.ambient,
            rows: left_kernel(&orth_t, orth.len()),
        }
    }

    /// Maps each basis vector through `f` (e.g. into a larger ambient lattice).
    pub fn embed(&self, ambient: usize, f: impl Fn(&[I]) -> Vec<I>) -> Self {
        let gens: Vec<Vec<I>> = self.rows.iter().map(|r| f(r)).collect();
        Self::from_generators(ambient, &gens)
    }
}

impl<I: Scalar> fmt::Display for LatticeBasis<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "{{0}} ⊂ Z^{}", self.ambient);
        }
        f.write_str("span{")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("(")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x)?;
            }
            f.write_str(")")?;
        }
        write!(f, "}} ⊂ Z^{}", self.ambient)
    }
}

impl<I: Scalar> fmt::Debug for LatticeBasis<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeBasis({})", self)
    }
}

/// Integer matrices serialize as nested lists of decimal strings so that any
/// scalar width round-trips exactly.
pub(crate) mod int_rows {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::scalar::Scalar;

    pub fn serialize<I: Scalar, S: Serializer>(rows: &[Vec<I>], s: S) -> Result<S::Ok, S::Error> {
        let text: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        text.serialize(s)
    }

    pub fn deserialize<'de, I: Scalar, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<Vec<I>>, D::Error> {
        let text: Vec<Vec<String>> = Vec::deserialize(d)?;
        text.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| {
                        x.parse::<I>()
                            .map_err(|_| serde::de::Error::custom(format!("bad integer {x:?}")))
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type L = LatticeBasis<i64>;

    #[test]
    fn sum_and_intersection() {
        let two = L::from_i64(1, &[vec![2]]);
        let three = L::from_i64(1, &[vec![3]]);
        assert_eq!(two.sum(&three).unwrap(), L::full(1));
        let a = L::from_i64(2, &[vec![2, 0], vec![0, 1]]);
        let b = L::from_i64(2, &[vec![1, 0], vec![0, 2]]);
        assert_eq!(
            a.intersection(&b).unwrap(),
            L::from_i64(2, &[vec![2, 0], vec![0, 2]])
        );
        assert_eq!(
            two.intersection(&three).unwrap(),
            L::from_i64(1, &[vec![6]])
        );
    }

    #[test]
    fn membership() {
        let l = L::from_i64(2, &[vec![2, 0], vec![0, 2]]);
        assert!(l.contains(&[2, 2]));
        assert!(!l.contains(&[1, 2]));
        assert!(l.contains(&[0, 0]));
        let skew = L::from_i64(2, &[vec![1, 1], vec![0, 2]]);
        assert!(skew.contains(&[3, 1]));
        assert!(!skew.contains(&[1, 0]));
    }

    #[test]
    fn saturation() {
        let l = L::from_i64(3, &[vec![2, 4, 0]]);
        assert_eq!(l.saturation(), L::from_i64(3, &[vec![1, 2, 0]]));
        assert_eq!(L::zero(2).saturation(), L::zero(2));
        assert_eq!(
            L::from_i64(2, &[vec![2, 0], vec![0, 3]]).saturation(),
            L::full(2)
        );
    }

    #[test]
    fn rank_mismatch() {
        assert!(L::zero(2).sum(&L::zero(3)).is_err());
    }
}
