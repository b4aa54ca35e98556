use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// A degree in `N^k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Degree(pub Vec<u32>);

impl Degree {
    pub fn zero(k: usize) -> Self {
        Degree(vec![0; k])
    }

    pub fn unit(k: usize, i: usize) -> Self {
        let mut d = Self::zero(k);
        d.0[i] = 1;
        d
    }

    pub fn uniform(k: usize, n: u32) -> Self {
        Degree(vec![n; k])
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }

    /// Componentwise `≤`.
    pub fn le(&self, other: &Degree) -> bool {
        self.k() == other.k() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        if !other.le(self) {
            return None;
        }
        Some(Degree(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Componentwise maximum `∨`.
    pub fn join(&self, other: &Degree) -> Degree {
        Degree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Componentwise minimum `∧`.
    pub fn meet(&self, other: &Degree) -> Degree {
        Degree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn scale(&self, t: u32) -> Degree {
        Degree(self.0.iter().map(|a| a * t).collect())
    }

    pub fn as_ints(&self) -> Vec<i64> {
        self.0.iter().map(|&a| a as i64).collect()
    }

    /// `m^+ = m ∨ 0`.
    pub fn pos_part(m: &[i64]) -> Degree {
        Degree(m.iter().map(|&a| a.max(0) as u32).collect())
    }

    /// `m^- = (−m) ∨ 0`.
    pub fn neg_part(m: &[i64]) -> Degree {
        Degree(m.iter().map(|&a| (-a).max(0) as u32).collect())
    }

    /// `self − other` as an integer vector.
    pub fn diff(&self, other: &Degree) -> Vec<i64> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }

    /// Every degree `d` with `0 ≤ d ≤ self`, in lexicographic order.
    pub fn box_below(&self) -> Vec<Degree> {
        let mut out = vec![Degree(Vec::with_capacity(self.k()))];
        for &b in &self.0 {
            out = out
                .into_iter()
                .flat_map(|d| {
                    (0..=b).map(move |x| {
                        let mut e = d.clone();
                        e.0.push(x);
                        e
                    })
                })
                .collect();
        }
        out
    }
}

impl Add for &Degree {
    type Output = Degree;
    fn add(self, rhs: &Degree) -> Degree {
        assert_eq!(self.k(), rhs.k(), "degree rank mismatch");
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        &self + &rhs
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x)?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Every integer vector with `|p_i| ≤ bound_i`, lexicographic.
pub fn integer_box(bound: &Degree) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &b in &bound.0 {
        let b = b as i64;
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parts() {
        let m = [3, -2, 0];
        let (p, n) = (Degree::pos_part(&m), Degree::neg_part(&m));
        assert_eq!(p, Degree(vec![3, 0, 0]));
        assert_eq!(n, Degree(vec![0, 2, 0]));
        assert!(p.meet(&n).is_zero());
        assert_eq!(p.diff(&n), m.to_vec());
    }

    #[test]
    fn boxes() {
        assert_eq!(Degree(vec![1, 2]).box_below().len(), 6);
        assert_eq!(integer_box(&Degree(vec![1, 2])).len(), 15);
    }
}
