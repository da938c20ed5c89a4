//! Dense matrices over the rationals with exact elimination.
//!
//! Rank and determinant run fraction-free (Bareiss) elimination on an
//! integer matrix obtained by clearing the denominators of each row.
//! Kernel and linear solve go through reduced row echelon form over Q.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{denominator_lcm, render_rational, Arithmetic, PrimeField, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.entries[idx] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn add(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: rhs.rows * rhs.cols,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Integer matrix with the same row space: each row multiplied by the lcm
    /// of its denominators. Returns the rows and the multipliers.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = denominator_lcm(row);
                let ints = row.iter().map(|q| q.numer() * (&l / q.denom())).collect();
                (ints, l)
            })
            .unzip()
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        let (mut a, _) = self.integer_rows();
        bareiss(&mut a).rank
    }

    /// Rank over Z/pZ of the denominator-cleared matrix. Never exceeds
    /// [`QMatrix::rank`].
    pub fn rank_mod(&self, field: &PrimeField) -> usize {
        let (a, _) = self.integer_rows();
        let mut a: Vec<Vec<u64>> = a
            .iter()
            .map(|r| r.iter().map(|v| field.reduce(v)).collect())
            .collect();
        modular_rank(&mut a, field)
    }

    pub fn rank_with(&self, arithmetic: Arithmetic) -> usize {
        match arithmetic {
            Arithmetic::Exact => self.rank(),
            Arithmetic::Modular(field) => self.rank_mod(&field),
        }
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let (mut a, scales) = self.integer_rows();
        let elim = bareiss(&mut a);
        if elim.rank < n {
            return Ok(Rational::zero());
        }
        let mut det = a[n - 1][n - 1].clone();
        if elim.odd_swaps {
            det = -det;
        }
        let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        Ok(Rational::new(det, denom))
    }

    /// Reduced row echelon form over Q, with the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the right null space. Each vector is scaled to a primitive
    /// integer vector whose last nonzero entry is positive.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(k, f).clone();
                }
                primitive(v)
            })
            .collect()
    }

    /// One exact solution of `self * x = b`, or `None` when `b` lies outside
    /// the column space.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut aug = Vec::with_capacity(self.rows * (self.cols + 1));
        for (i, bi) in b.iter().enumerate() {
            aug.extend_from_slice(self.row(i));
            aug.push(bi.clone());
        }
        let aug = QMatrix {
            rows: self.rows,
            cols: self.cols + 1,
            entries: aug,
        };
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r.get(k, self.cols).clone();
        }
        Ok(Some(x))
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(render_rational).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Clears denominators and divides by the content of `v`.
fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let l = denominator_lcm(&v);
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    let sign = match ints.iter().rev().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g * &sign))
        .collect()
}

struct Elimination {
    rank: usize,
    odd_swaps: bool,
}

/// In-place fraction-free row echelon form. Every division is exact.
fn bareiss(a: &mut [Vec<BigInt>]) -> Elimination {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut odd_swaps = false;
    for c in 0..n {
        if r == m {
            break;
        }
        // first nonzero entry in column order
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            odd_swaps = !odd_swaps;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..n {
                let mut v = pivot * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    Elimination { rank: r, odd_swaps }
}

fn modular_rank(a: &mut [Vec<u64>], field: &PrimeField) -> usize {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(p, r);
        let inv = field.inv(a[r][c]);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = field.mul(row[c], inv);
            for j in c..n {
                row[j] = field.sub(row[j], field.mul(f, pivot_row[j]));
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn m(rows: &[Vec<i64>]) -> QMatrix {
        QMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn identity_rank_and_det() {
        let id = QMatrix::identity(3);
        assert_eq!(id.rank(), 3);
        assert!(id.kernel().is_empty());
        for n in 0..6 {
            assert_eq!(QMatrix::identity(n).det().unwrap(), int(1));
        }
    }

    #[test]
    fn outer_product_has_rank_one() {
        let a = [2i64, -3, 5];
        let b = [7i64, 1, 4, -2];
        let rows: Vec<Vec<i64>> = a
            .iter()
            .map(|x| b.iter().map(|y| x * y).collect())
            .collect();
        let p = m(&rows);
        assert_eq!(p.rank(), 1);
        let sq: Vec<Vec<i64>> = a
            .iter()
            .map(|x| a.iter().map(|y| x * y).collect())
            .collect();
        assert_eq!(m(&sq).det().unwrap(), int(0));
    }

    #[test]
    fn generic_two_by_two_determinant() {
        // z0 z3 - z1 z2 at (1, 2, 3, 4)
        assert_eq!(m(&[vec![1, 2], vec![3, 4]]).det().unwrap(), int(-2));
    }

    #[test]
    fn det_rejects_non_square() {
        assert_eq!(
            QMatrix::zeros(2, 3).det(),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn det_with_fractions_and_swaps() {
        let q = QMatrix::from_rows(vec![
            vec![int(0), frac(1, 2), int(1)],
            vec![frac(2, 3), int(0), int(3)],
            vec![int(1), int(1), frac(-1, 4)],
        ])
        .unwrap();
        // cofactor expansion along the first row
        let expected = -frac(1, 2) * (frac(2, 3) * frac(-1, 4) - int(3)) + (frac(2, 3) - int(0));
        assert_eq!(q.det().unwrap(), expected);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let k = QMatrix::zeros(2, 3).kernel();
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, -1, 2]]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_cases() {
        let b = vec![int(3), frac(-1, 2), int(0)];
        assert_eq!(QMatrix::identity(3).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(QMatrix::zeros(3, 3).solve(&b).unwrap(), None);
        assert!(QMatrix::identity(2).solve(&b).is_err());
        let a = m(&[vec![1, 1], vec![2, 2]]);
        assert_eq!(a.solve(&[int(1), int(3)]).unwrap(), None);
        let x = a.solve(&[int(1), int(2)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![int(1), int(2)]);
    }

    #[test]
    fn modular_rank_can_drop() {
        let f = PrimeField::new(5).unwrap();
        let a = m(&[vec![1, 2], vec![3, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.rank_mod(&f), 1);
        assert_eq!(a.rank_mod(&PrimeField::default()), 2);
    }

    #[test]
    fn rank_with_column_skips() {
        let a = m(&[
            vec![0, 0, 1, 2],
            vec![0, 0, 2, 4],
            vec![0, 3, 0, 1],
            vec![0, 6, 1, 5],
        ]);
        assert_eq!(a.rank(), 3);
        assert_eq!(a.transpose().rank(), 3);
    }
}
