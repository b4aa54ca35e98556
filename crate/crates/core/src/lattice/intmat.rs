//! Dense integer matrix algorithms: Hermite and Smith normal forms, kernels,
//! determinants. Matrices are row-major `Vec<Vec<I>>`; every routine takes the
//! column count explicitly so that zero-row and zero-column shapes work.

use crate::scalar::Scalar;

pub type IntMatrix<I> = Vec<Vec<I>>;

pub fn identity<I: Scalar>(n: usize) -> IntMatrix<I> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { I::one() } else { I::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose<I: Scalar>(m: &[Vec<I>], cols: usize) -> IntMatrix<I> {
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul<I: Scalar>(a: &[Vec<I>], b: &[Vec<I>], b_cols: usize) -> IntMatrix<I> {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| {
                    row.iter().zip(b).fold(I::zero(), |acc, (x, brow)| {
                        acc + x.clone() * brow[j].clone()
                    })
                })
                .collect()
        })
        .collect()
}

pub fn vec_mat<I: Scalar>(v: &[I], m: &[Vec<I>], cols: usize) -> Vec<I> {
    mat_mul(&[v.to_vec()], m, cols).pop().unwrap()
}

/// `(g, s, t)` with `g = gcd(a, b) >= 0` and `s·a + t·b = g`.
pub fn xgcd<I: Scalar>(a: &I, b: &I) -> (I, I, I) {
    // Prefer the trivial combination when `a | b`, so eliminations never
    // swap an already dividing pivot away.
    if !a.is_zero() && b.is_multiple_of(a) {
        let sign = if a.is_negative() { -I::one() } else { I::one() };
        return (a.abs(), sign, I::zero());
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (I::one(), I::zero());
    let (mut t0, mut t1) = (I::zero(), I::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = r0 - q.clone() * r1.clone();
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = s0 - q.clone() * s1.clone();
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = t0 - q * t1.clone();
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

fn row_combine<I: Scalar>(m: &mut [Vec<I>], i: usize, j: usize, a: &I, b: &I, c: &I, d: &I) {
    // (row_i, row_j) <- (a·row_i + b·row_j, c·row_i + d·row_j)
    let n = m[i].len();
    for col in 0..n {
        let x = m[i][col].clone();
        let y = m[j][col].clone();
        m[i][col] = a.clone() * x.clone() + b.clone() * y.clone();
        m[j][col] = c.clone() * x + d.clone() * y;
    }
}

fn row_axpy<I: Scalar>(m: &mut [Vec<I>], target: usize, source: usize, factor: &I) {
    if factor.is_zero() {
        return;
    }
    let n = m[target].len();
    for col in 0..n {
        let delta = factor.clone() * m[source][col].clone();
        m[target][col] = m[target][col].clone() - delta;
    }
}

fn row_negate<I: Scalar>(m: &mut [Vec<I>], i: usize) {
    for x in m[i].iter_mut() {
        *x = -x.clone();
    }
}

/// Row Hermite normal form with transform: returns `(H, U, rank)` where
/// `U·M = H`, `U` is unimodular, the first `rank` rows of `H` are nonzero
/// with strictly increasing pivot columns, positive pivots, and entries above
/// each pivot reduced into `[0, pivot)`. Remaining rows of `H` are zero.
pub fn hnf_with_transform<I: Scalar>(
    m: &[Vec<I>],
    cols: usize,
) -> (IntMatrix<I>, IntMatrix<I>, usize) {
    let rows = m.len();
    let mut h: IntMatrix<I> = m.to_vec();
    let mut u = identity::<I>(rows);
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        for i in (r + 1)..rows {
            if h[i][col].is_zero() {
                continue;
            }
            let a = h[r][col].clone();
            let b = h[i][col].clone();
            let (g, s, t) = xgcd(&a, &b);
            let (ag, bg) = (a / g.clone(), b / g);
            row_combine(&mut h, r, i, &s, &t, &(-bg.clone()), &ag);
            row_combine(&mut u, r, i, &s, &t, &(-bg), &ag);
        }
        if h[r][col].is_zero() {
            continue;
        }
        if h[r][col].is_negative() {
            row_negate(&mut h, r);
            row_negate(&mut u, r);
        }
        let pivot = h[r][col].clone();
        for i in 0..r {
            let q = h[i][col].div_floor(&pivot);
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        r += 1;
    }
    (h, u, r)
}

/// Nonzero rows of the Hermite normal form: the canonical basis of the row lattice.
pub fn hnf_rows<I: Scalar>(m: &[Vec<I>], cols: usize) -> IntMatrix<I> {
    let (mut h, _, rank) = hnf_with_transform(m, cols);
    h.truncate(rank);
    h
}

/// Basis of `{x ∈ Z^rows : x·M = 0}`, in Hermite normal form.
pub fn left_kernel<I: Scalar>(m: &[Vec<I>], cols: usize) -> IntMatrix<I> {
    let (_, u, rank) = hnf_with_transform(m, cols);
    let kernel: IntMatrix<I> = u.into_iter().skip(rank).collect();
    hnf_rows(&kernel, m.len())
}

/// Smith normal form: returns `(U, D, V)` with `U·M·V = D` diagonal,
/// `U`, `V` unimodular, diagonal entries nonnegative and each dividing the next.
pub fn smith<I: Scalar>(m: &[Vec<I>], cols: usize) -> (IntMatrix<I>, IntMatrix<I>, IntMatrix<I>) {
    let rows = m.len();
    let mut d: IntMatrix<I> = m.to_vec();
    let mut u = identity::<I>(rows);
    // V is kept transposed so column operations become row operations.
    let mut vt = identity::<I>(cols);

    let col_combine = |d: &mut IntMatrix<I>,
                       vt: &mut IntMatrix<I>,
                       i: usize,
                       j: usize,
                       a: &I,
                       b: &I,
                       c: &I,
                       e: &I| {
        for row in d.iter_mut() {
            let x = row[i].clone();
            let y = row[j].clone();
            row[i] = a.clone() * x.clone() + b.clone() * y.clone();
            row[j] = c.clone() * x + e.clone() * y;
        }
        row_combine(vt, i, j, a, b, c, e);
    };

    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        if pj != t {
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            vt.swap(t, pj);
        }
        loop {
            for i in (t + 1)..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let a = d[t][t].clone();
                let b = d[i][t].clone();
                let (g, s, tt) = xgcd(&a, &b);
                let (ag, bg) = (a / g.clone(), b / g);
                row_combine(&mut d, t, i, &s, &tt, &(-bg.clone()), &ag);
                row_combine(&mut u, t, i, &s, &tt, &(-bg), &ag);
            }
            let mut dirty = false;
            for j in (t + 1)..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let a = d[t][t].clone();
                let b = d[t][j].clone();
                let (g, s, tt) = xgcd(&a, &b);
                let (ag, bg) = (a / g.clone(), b / g);
                col_combine(&mut d, &mut vt, t, j, &s, &tt, &(-bg), &ag);
                dirty = true;
            }
            if dirty && ((t + 1)..rows).any(|i| !d[i][t].is_zero()) {
                continue;
            }
            // divisibility: fold any offending row into the pivot row and redo
            let pivot = d[t][t].clone();
            let offending =
                ((t + 1)..rows).find(|&i| ((t + 1)..cols).any(|j| !d[i][j].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = I::one();
                    row_axpy(&mut d, t, i, &(-one.clone()));
                    row_axpy(&mut u, t, i, &(-one));
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            row_negate(&mut d, t);
            row_negate(&mut u, t);
        }
    }
    let v = transpose(&vt, cols);
    (u, d, v)
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant<I: Scalar>(m: &[Vec<I>]) -> I {
    let n = m.len();
    if n == 0 {
        return I::one();
    }
    let mut a: IntMatrix<I> = m.to_vec();
    let mut sign = I::one();
    let mut prev = I::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match ((k + 1)..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return I::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Basis of `{p ∈ Z^rows : p·N ≡ 0 (mod modulus)}`, solved by Smith
/// diagonalization. `modulus` must be positive.
pub fn congruence_solutions<I: Scalar>(n: &[Vec<I>], cols: usize, modulus: &I) -> IntMatrix<I> {
    assert!(modulus.is_positive(), "congruence modulus must be positive");
    let rows = n.len();
    let (u, d, _) = smith(n, cols);
    // p = q·U, condition q_i·D_ii ≡ 0 (mod modulus)
    let gens: IntMatrix<I> = (0..rows)
        .map(|i| {
            let f = if i < cols && !d[i][i].is_zero() {
                modulus.clone() / modulus.gcd(&d[i][i])
            } else {
                I::one()
            };
            u[i].iter().map(|x| x.clone() * f.clone()).collect()
        })
        .collect();
    hnf_rows(&gens, rows)
}

/// Rank over Q, by fraction-free elimination.
pub fn rank<I: Scalar>(m: &[Vec<I>], cols: usize) -> usize {
    hnf_with_transform(m, cols).2
}

pub fn is_unimodular<I: Scalar>(m: &[Vec<I>]) -> bool {
    m.iter().all(|r| r.len() == m.len()) && determinant(m).abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix<i64> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn hnf_basic() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let (h, u, r) = hnf_with_transform(&a, 3);
        assert_eq!(r, 3);
        assert_eq!(mat_mul(&u, &a, 3), h);
        assert!(is_unimodular(&u));
        for i in 0..r {
            let p = (0..3).find(|&j| h[i][j] != 0).unwrap();
            assert!(h[i][p] > 0);
            for k in 0..i {
                assert!(h[k][p] >= 0 && h[k][p] < h[i][p]);
            }
        }
    }

    #[test]
    fn kernel_of_dependent_rows() {
        let a = m(&[&[1, 2], &[2, 4], &[0, 1]]);
        let k = left_kernel(&a, 2);
        assert_eq!(k, vec![vec![2, -1, 0]]);
    }

    #[test]
    fn smith_basic() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let (u, d, v) = smith(&a, 3);
        assert_eq!(mat_mul(&mat_mul(&u, &a, 3), &v, 3), d);
        assert!(is_unimodular(&u) && is_unimodular(&v));
        let diag: Vec<i64> = (0..3).map(|i| d[i][i]).collect();
        assert_eq!(diag, vec![2, 2, 156]);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(d[i][j], 0);
                }
            }
        }
    }

    #[test]
    fn smith_rectangular() {
        let a = m(&[&[6, 4], &[4, 6], &[2, 2]]);
        let (u, d, v) = smith(&a, 2);
        assert_eq!(mat_mul(&mat_mul(&u, &a, 2), &v, 2), d);
        assert_eq!((d[0][0], d[1][1]), (2, 2));
    }

    #[test]
    fn determinant_values() {
        assert_eq!(determinant(&m(&[&[2, 1], &[1, 1]])), 1);
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), -1);
        assert_eq!(determinant(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), -3);
    }

    #[test]
    fn congruence_half() {
        // p·[[1],[1]] ≡ 0 mod 2  →  p1 + p2 even
        let sols = congruence_solutions(&m(&[&[1], &[1]]), 1, &2);
        assert_eq!(sols, vec![vec![1, 1], vec![0, 2]]);
    }
}
