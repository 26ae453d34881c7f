//! Smith normal form over ℤ with arbitrary-precision entries.
//!
//! Pivots are chosen as the smallest nonzero absolute value in the active
//! submatrix, scanning row-major, so the transforms are reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::ring::{Integers, Ring, RingSpec};

/// `left · M · right = diag(diagonal)` with unimodular `left` and `right`.
#[derive(Clone, Debug, PartialEq)]
pub struct SnfResult {
    /// Nonnegative invariant factors, each dividing the next; length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub left: ExactMatrix<Integers>,
    pub right: ExactMatrix<Integers>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form with transforms. Errors unless `m` is over the integers.
pub fn smith_normal_form<R: Ring>(m: &ExactMatrix<R>) -> Result<SnfResult> {
    if m.ring().spec() != RingSpec::Integers {
        return Err(Error::NotInteger);
    }
    let z = m.to_integer_matrix().ok_or(Error::NotInteger)?;
    let mut work = Work::new(&z, true);
    work.reduce();
    let (rows, cols) = (z.rows(), z.cols());
    let left = ExactMatrix::new(Integers, rows, rows, work.left.into_iter().flatten().collect())?;
    let right = ExactMatrix::new(Integers, cols, cols, work.right.into_iter().flatten().collect())?;
    Ok(SnfResult {
        diagonal: work.diagonal,
        left,
        right,
    })
}

/// Invariant factors only; skips transform bookkeeping.
pub fn smith_diagonal(m: &ExactMatrix<Integers>) -> Vec<BigInt> {
    let mut work = Work::new(m, false);
    work.reduce();
    work.diagonal
}

struct Work {
    a: Vec<Vec<BigInt>>,
    left: Vec<Vec<BigInt>>,
    right: Vec<Vec<BigInt>>,
    track: bool,
    rows: usize,
    cols: usize,
    diagonal: Vec<BigInt>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect()
}

impl Work {
    fn new(m: &ExactMatrix<Integers>, track: bool) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        let a = (0..rows).map(|i| m.row(i).to_vec()).collect();
        let (left, right) = if track {
            (identity(rows), identity(cols))
        } else {
            (vec![], vec![])
        };
        Work {
            a,
            left,
            right,
            track,
            rows,
            cols,
            diagonal: Vec::new(),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if self.track {
                self.left.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if self.track {
                for row in &mut self.right {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt, from_col: usize) {
        for j in from_col..self.cols {
            if !self.a[src][j].is_zero() {
                let v = &self.a[src][j] * f;
                self.a[dst][j] += v;
            }
        }
        if self.track {
            for j in 0..self.rows {
                if !self.left[src][j].is_zero() {
                    let v = &self.left[src][j] * f;
                    self.left[dst][j] += v;
                }
            }
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt, from_row: usize) {
        for i in from_row..self.rows {
            if !self.a[i][src].is_zero() {
                let v = &self.a[i][src] * f;
                self.a[i][dst] += v;
            }
        }
        if self.track {
            for i in 0..self.cols {
                if !self.right[i][src].is_zero() {
                    let v = &self.right[i][src] * f;
                    self.right[i][dst] += v;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.a[i] {
            *v = -&*v;
        }
        if self.track {
            for v in &mut self.left[i] {
                *v = -&*v;
            }
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = &self.a[i][j];
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn reduce(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.add_row(i, t, &-q, t);
                    dirty |= !self.a[i][t].is_zero();
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.add_col(j, t, &-q, t);
                    dirty |= !self.a[t][j].is_zero();
                }
                if dirty {
                    self.promote_smallest_in_cross(t);
                    continue;
                }
                let bad = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !(&self.a[i][j] % &self.a[t][t]).is_zero()));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::from(1), t),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
        self.diagonal = (0..n).map(|t| self.a[t][t].clone()).collect();
    }

    /// Moves the smallest nonzero entry of row `t` / column `t` to `(t, t)`.
    fn promote_smallest_in_cross(&mut self, t: usize) {
        let mut best = (t, t);
        let mut best_abs = self.a[t][t].abs();
        for i in t + 1..self.rows {
            let v = self.a[i][t].abs();
            if !v.is_zero() && v < best_abs {
                best = (i, t);
                best_abs = v;
            }
        }
        for j in t + 1..self.cols {
            let v = self.a[t][j].abs();
            if !v.is_zero() && v < best_abs {
                best = (t, j);
                best_abs = v;
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn z(rows: &[Vec<i64>]) -> ExactMatrix<Integers> {
        ExactMatrix::from_i64_rows(Integers, rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn diag_matrix(rows: usize, cols: usize, d: &[BigInt]) -> ExactMatrix<Integers> {
        let mut m = ExactMatrix::zeros(Integers, rows, cols);
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// Determinant by cofactor expansion; test oracle for small matrices.
    fn det(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = combinations(n - 1, k);
        for mut c in combinations(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }

    /// gcd of all k×k minors, by enumeration.
    fn minor_gcd(m: &ExactMatrix<Integers>, k: usize) -> BigInt {
        let mut g = BigInt::zero();
        for rs in combinations(m.rows(), k) {
            for cs in combinations(m.cols(), k) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect())
                    .collect();
                g = g.gcd(&det(&sub));
            }
        }
        g
    }

    fn check_invariants(m: &ExactMatrix<Integers>) -> SnfResult {
        let snf = smith_normal_form(m).unwrap();
        let recon = snf.left.mul(m).unwrap().mul(&snf.right).unwrap();
        assert_eq!(recon, diag_matrix(m.rows(), m.cols(), &snf.diagonal));
        for w in snf.diagonal.windows(2) {
            assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "{:?}", snf.diagonal);
            } else {
                assert!(w[1].is_zero());
            }
        }
        let rows =
            |x: &ExactMatrix<Integers>| -> Vec<Vec<BigInt>> { (0..x.rows()).map(|i| x.row(i).to_vec()).collect() };
        assert_eq!(det(&rows(&snf.left)).abs(), BigInt::one());
        assert_eq!(det(&rows(&snf.right)).abs(), BigInt::one());
        assert_eq!(smith_diagonal(m), snf.diagonal);
        snf
    }

    #[test]
    fn identity_is_its_own_form() {
        let snf = check_invariants(&ExactMatrix::identity(Integers, 2));
        assert_eq!(snf.diagonal, ints(&[1, 1]));
        assert_eq!(snf.left, ExactMatrix::identity(Integers, 2));
        assert_eq!(snf.right, ExactMatrix::identity(Integers, 2));
    }

    #[test]
    fn coprime_diagonal_collapses() {
        let snf = check_invariants(&z(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(snf.diagonal, ints(&[1, 6]));
    }

    #[test]
    fn zero_matrix() {
        let snf = check_invariants(&ExactMatrix::zeros(Integers, 2, 3));
        assert_eq!(snf.diagonal, ints(&[0, 0]));
    }

    #[test]
    fn empty_shapes() {
        assert!(smith_diagonal(&ExactMatrix::zeros(Integers, 0, 3)).is_empty());
        let snf = check_invariants(&ExactMatrix::zeros(Integers, 3, 0));
        assert!(snf.diagonal.is_empty());
    }

    #[test]
    fn rejects_non_integer_ring() {
        let q = ExactMatrix::identity(crate::ring::Rationals, 2);
        assert!(matches!(smith_normal_form(&q), Err(Error::NotInteger)));
    }

    #[test]
    fn known_forms() {
        let snf = check_invariants(&z(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(snf.diagonal, ints(&[2, 6, 12]));
        let snf = check_invariants(&z(&[vec![2, 2], vec![0, 2]]));
        assert_eq!(snf.diagonal, ints(&[2, 2]));
    }

    proptest! {
        #[test]
        fn invariants_and_minor_gcds(
            rows in 1usize..5,
            cols in 1usize..5,
            entries in prop::collection::vec(-9i64..10, 16),
        ) {
            let m = ExactMatrix::new(
                Integers, rows, cols,
                entries.iter().take(rows * cols).map(|&v| BigInt::from(v)).collect(),
            ).unwrap();
            let snf = check_invariants(&m);
            let r = snf.rank();
            // product of the first k invariant factors = gcd of k×k minors
            let mut prod = BigInt::one();
            for k in 1..=r {
                prod *= &snf.diagonal[k - 1];
                prop_assert_eq!(&prod, &minor_gcd(&m, k));
            }
            if r < rows.min(cols) {
                prop_assert!(minor_gcd(&m, r + 1).is_zero());
            }
        }
    }
}
