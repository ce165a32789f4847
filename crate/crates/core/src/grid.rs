//! Integer grids, real matrices and the margin form of the objective.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::{self, ExactInt};

/// An `n×n` integer matrix stored row-major.
///
/// A grid holding exactly `1..=n²` is a *permutation grid*; see
/// [`validate_grid`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid {
    n: usize,
    entries: Vec<i64>,
}

impl Grid {
    pub fn new(n: usize, entries: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGrid);
        }
        let expected = n.checked_mul(n).ok_or(Error::Overflow)?;
        if entries.len() != expected {
            return Err(Error::WrongLength { expected, found: entries.len() });
        }
        Ok(Grid { n, entries })
    }

    /// Builds a grid from nested rows; every row must have `rows.len()` entries.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::WrongLength { expected: n, found: row.len() });
            }
            entries.extend_from_slice(row);
        }
        Grid::new(n, entries)
    }

    /// A new permutation grid; fails unless the entries are exactly `1..=n²`.
    pub fn permutation(n: usize, entries: Vec<i64>) -> Result<Self> {
        let g = Grid::new(n, entries)?;
        validate_grid(&g)?;
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.entries[row * self.n + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks(self.n)
    }

    /// Swaps the values in two cells given as row-major indices.
    pub fn swap_cells(&mut self, a: usize, b: usize) -> Result<()> {
        let size = self.entries.len();
        for index in [a, b] {
            if index >= size {
                return Err(Error::IndexOutOfRange { index, size });
            }
        }
        self.entries.swap(a, b);
        Ok(())
    }

    pub fn transpose(&self) -> Grid {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        Grid { n, entries }
    }

    pub fn entry_sum(&self) -> Result<ExactInt> {
        self.entries.iter().try_fold(0, |acc, &v| exact::add(acc, v.into()))
    }

    pub fn square_entry_sum(&self) -> Result<ExactInt> {
        self.entries.iter().try_fold(0, |acc, &v| {
            let v = ExactInt::from(v);
            exact::add(acc, exact::mul(v, v)?)
        })
    }

    pub fn to_real(&self) -> RealMatrix {
        RealMatrix { n: self.n, entries: self.entries.iter().map(|&v| v as f64).collect() }
    }
}

/// Checks that `g` holds each of `1..=n²` exactly once.
///
/// Entries are scanned in row-major order and the first offending value is
/// reported.
pub fn validate_grid(g: &Grid) -> Result<()> {
    let size = g.entries.len();
    let mut seen = vec![false; size];
    for &v in &g.entries {
        if v < 1 || v as u64 > size as u64 {
            return Err(Error::OutOfRange(v));
        }
        let slot = &mut seen[(v - 1) as usize];
        if *slot {
            return Err(Error::DuplicateEntry(v));
        }
        *slot = true;
    }
    Ok(())
}

pub fn is_permutation_grid(g: &Grid) -> bool {
    validate_grid(g).is_ok()
}

/// Row sums `R_k` and column sums `C_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Margins {
    pub rows: Vec<ExactInt>,
    pub cols: Vec<ExactInt>,
}

impl Margins {
    pub fn of(g: &Grid) -> Result<Self> {
        let n = g.n;
        let mut rows = vec![0; n];
        let mut cols = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                let v = ExactInt::from(g.get(i, j));
                rows[i] = exact::add(rows[i], v)?;
                cols[j] = exact::add(cols[j], v)?;
            }
        }
        Ok(Margins { rows, cols })
    }

    /// `Σₖ R_k·C_k`, which equals the entry sum of the squared matrix.
    pub fn objective(&self) -> Result<ExactInt> {
        self.rows
            .iter()
            .zip(&self.cols)
            .try_fold(0, |acc, (&r, &c)| exact::add(acc, exact::mul(r, c)?))
    }

    pub fn total(&self) -> Result<(ExactInt, ExactInt)> {
        let sum = |v: &[ExactInt]| v.iter().try_fold(0, |acc, &x| exact::add(acc, x));
        Ok((sum(&self.rows)?, sum(&self.cols)?))
    }
}

pub fn margins(g: &Grid) -> Result<Margins> {
    Margins::of(g)
}

/// Entry sum of `g²`, computed from the margins.
pub fn objective(g: &Grid) -> Result<ExactInt> {
    Margins::of(g)?.objective()
}

/// `g·g` with exact entries, row-major.
pub fn matrix_square(g: &Grid) -> Result<Vec<ExactInt>> {
    let n = g.n;
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc: ExactInt = 0;
            for k in 0..n {
                let term = exact::mul(g.get(i, k).into(), g.get(k, j).into())?;
                acc = exact::add(acc, term)?;
            }
            out[i * n + j] = acc;
        }
    }
    Ok(out)
}

/// An `n×n` matrix of `f64`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl RealMatrix {
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGrid);
        }
        let expected = n.checked_mul(n).ok_or(Error::Overflow)?;
        if entries.len() != expected {
            return Err(Error::WrongLength { expected, found: entries.len() });
        }
        Ok(RealMatrix { n, entries })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::WrongLength { expected: n, found: row.len() });
            }
            entries.extend_from_slice(row);
        }
        RealMatrix::new(n, entries)
    }

    pub fn filled(n: usize, value: f64) -> Result<Self> {
        RealMatrix::new(n, vec![value; n.checked_mul(n).ok_or(Error::Overflow)?])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = RealMatrix::filled(n, 0.0)?;
        for i in 0..n {
            m.entries[i * n + i] = 1.0;
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.n + col]
    }

    pub fn transpose(&self) -> RealMatrix {
        let n = self.n;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        RealMatrix { n, entries }
    }

    pub fn matmul(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let n = self.n;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                for j in 0..n {
                    entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        RealMatrix { n, entries }
    }

    pub fn hadamard(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).collect();
        RealMatrix { n: self.n, entries }
    }

    /// `self + factor·other`
    pub fn add_scaled(&self, other: &RealMatrix, factor: f64) -> RealMatrix {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a + factor * b).collect();
        RealMatrix { n: self.n, entries }
    }

    pub fn entry_sum(&self) -> f64 {
        self.entries.iter().sum()
    }

    pub fn square_entry_sum(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.square_entry_sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rows: &[&[i64]]) -> Grid {
        Grid::from_rows(rows).unwrap()
    }

    fn reference_n4() -> Grid {
        g(&[&[1, 2, 7, 6], &[3, 4, 12, 9], &[8, 11, 16, 15], &[5, 10, 14, 13]])
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate_grid(&g(&[&[4, 3], &[2, 1]])), Ok(()));
        assert_eq!(validate_grid(&g(&[&[1, 2], &[2, 3]])), Err(Error::DuplicateEntry(2)));
        assert_eq!(validate_grid(&g(&[&[1, 2], &[3, 5]])), Err(Error::OutOfRange(5)));
        assert_eq!(validate_grid(&g(&[&[0, 2], &[3, 4]])), Err(Error::OutOfRange(0)));
        assert_eq!(validate_grid(&reference_n4()), Ok(()));
    }

    #[test]
    fn wrong_length_and_empty() {
        assert_eq!(
            Grid::new(2, alloc::vec![1, 2, 3]),
            Err(Error::WrongLength { expected: 4, found: 3 })
        );
        assert_eq!(Grid::new(0, Vec::new()), Err(Error::EmptyGrid));
        let ragged: [&[i64]; 2] = [&[1, 2], &[3]];
        assert!(matches!(Grid::from_rows(&ragged), Err(Error::WrongLength { .. })));
    }

    #[test]
    fn sums() {
        let a = g(&[&[4, 3], &[2, 1]]);
        assert_eq!(a.entry_sum(), Ok(10));
        assert_eq!(a.square_entry_sum(), Ok(30));
        assert_eq!(g(&[&[1]]).square_entry_sum(), Ok(1));
        let x = RealMatrix::from_rows(&[[1.5, -2.0], [0.0, 3.0]]).unwrap();
        assert!((x.entry_sum() - 2.5).abs() < 1e-12);
    }

    #[test]
    fn margins_examples() {
        let m = margins(&g(&[&[4, 3], &[2, 1]])).unwrap();
        assert_eq!(m.rows, [7, 3]);
        assert_eq!(m.cols, [6, 4]);
        let m = margins(&g(&[&[9, 8, 5], &[7, 4, 3], &[6, 2, 1]])).unwrap();
        assert_eq!(m.rows, [22, 14, 9]);
        assert_eq!(m.cols, [22, 14, 9]);
        let m = margins(&g(&[&[1]])).unwrap();
        assert_eq!((m.rows.as_slice(), m.cols.as_slice()), (&[1][..], &[1][..]));
    }

    #[test]
    fn objective_examples() {
        assert_eq!(objective(&g(&[&[4, 3], &[2, 1]])), Ok(54));
        assert_eq!(objective(&reference_n4()), Ok(5284));
        assert_eq!(objective(&g(&[&[1, 4], &[2, 3]])), Ok(50));
    }

    #[test]
    fn square_examples() {
        assert_eq!(matrix_square(&g(&[&[4, 3], &[2, 1]])).unwrap(), [22, 15, 10, 7]);
        assert_eq!(matrix_square(&g(&[&[1]])).unwrap(), [1]);
        let n5 = g(&[
            &[25, 23, 17, 13, 21],
            &[24, 22, 11, 10, 18],
            &[16, 12, 4, 2, 8],
            &[14, 9, 3, 1, 5],
            &[20, 19, 7, 6, 15],
        ]);
        assert_eq!(matrix_square(&n5).unwrap().iter().sum::<i128>(), 24303);
    }

    #[test]
    fn overflowing_entries_error() {
        let big = Grid::new(2, alloc::vec![i64::MIN; 4]).unwrap();
        // 2·(2⁶³)² = 2¹²⁷ exceeds i128
        assert_eq!(matrix_square(&big), Err(Error::Overflow));
    }

    #[test]
    fn swap_cells_bounds() {
        let mut a = g(&[&[4, 3], &[2, 1]]);
        a.swap_cells(0, 3).unwrap();
        assert_eq!(a.entries(), [1, 3, 2, 4]);
        assert_eq!(a.swap_cells(0, 4), Err(Error::IndexOutOfRange { index: 4, size: 4 }));
    }
}
