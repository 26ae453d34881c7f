//! Dense exact matrices over a [`Ring`], with rank, linear solving and
//! homology of a pair of composable maps.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::ring::{Integers, Ring};
use crate::snf::{smith_diagonal, smith_normal_form};

#[derive(Clone, PartialEq)]
pub struct ExactMatrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    entries: Vec<R::Elem>,
}

impl<R: Ring> fmt::Debug for ExactMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {}", self.rows, self.cols, self.ring.spec())?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| self.ring.format(e)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<R: Ring> ExactMatrix<R> {
    pub fn new(ring: R, rows: usize, cols: usize, entries: Vec<R::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(ring: R, rows: usize, cols: usize) -> Self {
        let entries = vec![ring.zero(); rows * cols];
        ExactMatrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = m.ring.one();
        }
        m
    }

    /// Builds a matrix from small integer rows; all rows must have equal length.
    pub fn from_i64_rows(ring: R, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let entries = rows.iter().flatten().map(|&v| ring.from_i64(v)).collect();
        Self::new(ring, rows.len(), cols, entries)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[R::Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let entries = self.entries.iter().map(|e| self.ring.mul(e, c)).collect();
        ExactMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = &self.ring;
        let mut out = Self::zeros(ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !ring.is_zero(b) {
                        let idx = i * other.cols + j;
                        out.entries[idx] = ring.add(&out.entries[idx], &ring.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| self.ring.dot(self.row(i), v)).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("cannot add matrices of different shapes".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(ExactMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Adds `block` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = block.get(i, j);
                if !self.ring.is_zero(b) {
                    let idx = (r0 + i) * self.cols + c0 + j;
                    self.entries[idx] = self.ring.add(&self.entries[idx], b);
                }
            }
        }
    }

    /// The submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            ring: self.ring.clone(),
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    pub fn map_ring<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> ExactMatrix<S> {
        let entries = self.entries.iter().map(f).collect();
        ExactMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// The same matrix over ℤ, when the ring is the integers.
    pub fn to_integer_matrix(&self) -> Option<ExactMatrix<Integers>> {
        let entries = self
            .entries
            .iter()
            .map(|e| self.ring.to_integer(e))
            .collect::<Option<Vec<_>>>()?;
        Some(ExactMatrix {
            ring: Integers,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Rank over the fraction field of the ring.
    pub fn rank(&self) -> usize {
        if self.ring.is_field() {
            self.row_echelon().rank
        } else {
            let z = self.to_integer_matrix().expect("non-field rings are the integers");
            smith_diagonal(&z)
                .iter()
                .filter(|d| !num_traits::Zero::is_zero(*d))
                .count()
        }
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Gauss-Jordan elimination; only valid over a field.
    fn row_echelon(&self) -> Echelon<R> {
        debug_assert!(self.ring.is_field());
        let ring = &self.ring;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !ring.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = ring.inv(m.get(r, c)).expect("nonzero field element is invertible");
            for j in c..m.cols {
                let v = ring.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || ring.is_zero(m.get(i, c)) {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = ring.sub(m.get(i, j), &ring.mul(&f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            reduced: m,
            rank: r,
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

struct Echelon<R: Ring> {
    reduced: ExactMatrix<R>,
    rank: usize,
    pivots: Vec<usize>,
}

/// Rank over the fraction field (ℚ for integer matrices).
pub fn rank<R: Ring>(m: &ExactMatrix<R>) -> usize {
    m.rank()
}

/// One solution of `m · x = b` in the ring itself, or `None` when there is
/// none. Over ℤ an integer solution is required.
pub fn solve_linear<R: Ring>(m: &ExactMatrix<R>, b: &[R::Elem]) -> Result<Option<Vec<R::Elem>>> {
    if b.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows()
        )));
    }
    let ring = m.ring();
    if ring.is_field() {
        let mut aug = ExactMatrix::zeros(ring.clone(), m.rows(), m.cols() + 1);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                aug.set(i, j, m.get(i, j).clone());
            }
            aug.set(i, m.cols(), b[i].clone());
        }
        let ech = aug.row_echelon();
        if ech.pivots.last() == Some(&m.cols()) {
            return Ok(None);
        }
        let mut x = vec![ring.zero(); m.cols()];
        for (r, &c) in ech.pivots.iter().enumerate() {
            x[c] = ech.reduced.get(r, m.cols()).clone();
        }
        return Ok(Some(x));
    }

    let z = m.to_integer_matrix().expect("non-field rings are the integers");
    let zb: Vec<BigInt> = b.iter().map(|e| ring.to_integer(e).unwrap()).collect();
    let snf = smith_normal_form(&z)?;
    let lb = snf.left.apply(&zb)?;
    let mut y = vec![BigInt::from(0); m.cols()];
    for (i, v) in lb.iter().enumerate() {
        let d = snf.diagonal.get(i).cloned().unwrap_or_default();
        if num_traits::Zero::is_zero(&d) {
            if !num_traits::Zero::is_zero(v) {
                return Ok(None);
            }
        } else {
            if !num_traits::Zero::is_zero(&(v % &d)) {
                return Ok(None);
            }
            y[i] = v / &d;
        }
    }
    let x = snf.right.apply(&y)?;
    Ok(Some(x.iter().map(|v| ring.from_bigint(v)).collect()))
}

/// Free rank and torsion coefficients of `ker(d_out) / im(d_in)`.
///
/// `d_in` maps into the middle module and `d_out` maps out of it. Over a
/// field the torsion list is always empty.
pub fn homology_summands<R: Ring>(d_in: &ExactMatrix<R>, d_out: &ExactMatrix<R>) -> Result<(usize, Vec<BigInt>)> {
    if d_in.ring() != d_out.ring() {
        return Err(Error::RingMismatch("differentials over different rings".into()));
    }
    if d_in.rows() != d_out.cols() {
        return Err(Error::Dimension(format!(
            "incoming map has {} rows but outgoing map has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NotAComplex);
    }
    let middle = d_in.rows();
    let kernel = middle - d_out.rank();
    if d_in.ring().is_field() {
        return Ok((kernel - d_in.rank(), Vec::new()));
    }
    let z = d_in.to_integer_matrix().expect("non-field rings are the integers");
    let diag = smith_diagonal(&z);
    let image = diag.iter().filter(|d| !num_traits::Zero::is_zero(*d)).count();
    let torsion = diag.into_iter().filter(|d| d.abs() > BigInt::one()).collect();
    Ok((kernel - image, torsion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn z(rows: &[Vec<i64>]) -> ExactMatrix<Integers> {
        ExactMatrix::from_i64_rows(Integers, rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        let q = ExactMatrix::from_i64_rows(Rationals, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(rank(&q), 1);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(rank(&ExactMatrix::identity(f2, 3)), 3);
        assert_eq!(rank(&z(&[vec![2, 4], vec![6, 8]])), 2);
        // proportional mod 2 but not over ℚ
        let m = ExactMatrix::from_i64_rows(f2, &[vec![1, 1], vec![1, 3]]).unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn solve_examples() {
        let id = ExactMatrix::identity(Integers, 2);
        let b = vec![BigInt::from(3), BigInt::from(-7)];
        assert_eq!(solve_linear(&id, &b).unwrap(), Some(b.clone()));

        assert_eq!(solve_linear(&z(&[vec![2]]), &[BigInt::from(1)]).unwrap(), None);

        let q = ExactMatrix::from_i64_rows(Rationals, &[vec![2]]).unwrap();
        let x = solve_linear(&q, &[Rationals.from_i64(1)]).unwrap().unwrap();
        assert_eq!(Rationals.format(&x[0]), "1/2");

        assert!(solve_linear(&id, &[BigInt::from(1)]).is_err());
    }

    #[test]
    fn solve_inconsistent_over_field() {
        let q = ExactMatrix::from_i64_rows(Rationals, &[vec![1, 1], vec![2, 2]]).unwrap();
        let b = [Rationals.from_i64(1), Rationals.from_i64(3)];
        assert_eq!(solve_linear(&q, &b).unwrap(), None);
    }

    #[test]
    fn solve_integer_needs_gcd() {
        // 4x + 6y = 2 has integer solutions; 4x + 6y = 3 does not
        let m = z(&[vec![4, 6]]);
        let x = solve_linear(&m, &[BigInt::from(2)]).unwrap().unwrap();
        assert_eq!(m.apply(&x).unwrap(), vec![BigInt::from(2)]);
        assert_eq!(solve_linear(&m, &[BigInt::from(3)]).unwrap(), None);
    }

    #[test]
    fn homology_examples() {
        let d_in = ExactMatrix::zeros(Integers, 2, 0);
        let d_out = ExactMatrix::zeros(Integers, 0, 2);
        assert_eq!(homology_summands(&d_in, &d_out).unwrap(), (2, vec![]));

        let d_in = z(&[vec![2], vec![0]]);
        let d_out = ExactMatrix::zeros(Integers, 0, 2);
        assert_eq!(homology_summands(&d_in, &d_out).unwrap(), (1, vec![BigInt::from(2)]));

        let d_in = ExactMatrix::zeros(Integers, 2, 0);
        let d_out = ExactMatrix::identity(Integers, 2);
        assert_eq!(homology_summands(&d_in, &d_out).unwrap(), (0, vec![]));
    }

    #[test]
    fn homology_rejects_non_complex() {
        let d_in = z(&[vec![1], vec![0]]);
        let d_out = z(&[vec![1, 0]]);
        assert!(matches!(homology_summands(&d_in, &d_out), Err(Error::NotAComplex)));
    }

    #[test]
    fn homology_over_field_ignores_torsion() {
        let q = Rationals;
        let d_in = ExactMatrix::from_i64_rows(q, &[vec![2], vec![0]]).unwrap();
        let d_out = ExactMatrix::zeros(q, 0, 2);
        assert_eq!(homology_summands(&d_in, &d_out).unwrap(), (1, vec![]));
    }

    proptest! {
        #[test]
        fn rank_nullity_over_prime_fields(
            p in prop::sample::select(vec![2u64, 3, 5, 7]),
            rows in 1usize..6,
            cols in 1usize..6,
            seed in prop::collection::vec(0u64..1000, 36),
        ) {
            let f = PrimeField::new(p).unwrap();
            let entries = seed.iter().take(rows * cols).map(|v| v % p).collect();
            let m = ExactMatrix::new(f, rows, cols, entries).unwrap();
            prop_assert_eq!(m.rank() + m.nullity(), cols);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn non_complex_pairs_always_error(
            a in prop::collection::vec(-3i64..4, 4),
            b in prop::collection::vec(-3i64..4, 4),
        ) {
            let d_in = z(&[vec![a[0], a[1]], vec![a[2], a[3]]]);
            let d_out = z(&[vec![b[0], b[1]], vec![b[2], b[3]]]);
            let composite = d_out.mul(&d_in).unwrap();
            let result = homology_summands(&d_in, &d_out);
            if composite.is_zero() {
                prop_assert!(result.is_ok());
            } else {
                prop_assert!(matches!(result, Err(Error::NotAComplex)));
            }
        }

        #[test]
        fn field_solutions_satisfy_system(
            entries in prop::collection::vec(-4i64..5, 6),
            rhs in prop::collection::vec(-4i64..5, 2),
        ) {
            let m = ExactMatrix::from_i64_rows(
                Rationals,
                &[entries[..3].to_vec(), entries[3..].to_vec()],
            ).unwrap();
            let b: Vec<_> = rhs.iter().map(|&v| Rationals.from_i64(v)).collect();
            if let Some(x) = solve_linear(&m, &b).unwrap() {
                prop_assert_eq!(m.apply(&x).unwrap(), b);
            } else {
                prop_assert!(m.rank() < 2);
            }
        }
    }
}
