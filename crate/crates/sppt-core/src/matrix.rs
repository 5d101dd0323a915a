//! Dense complex matrices in row-major order: the carrier type for every
//! state, factor, and block in the crate.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Complex scalar with `f64` components.
pub type C64 = num_complex::Complex<f64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense complex matrix, row-major. All entries are required to be finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    /// Build from row-major entries. Panics on a length mismatch or a
    /// non-finite entry; constructors are used with statically known shapes.
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count {} does not match {}x{}",
            entries.len(),
            rows,
            cols
        );
        assert!(
            entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            "matrix entries must be finite"
        );
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    /// Square matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, reals: &[f64]) -> Self {
        Self::new(
            rows,
            cols,
            reals.iter().map(|&r| C64::new(r, 0.0)).collect(),
        )
    }

    pub fn diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        debug_assert!(row < self.rows && col < self.cols);
        self.entries[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        debug_assert!(row < self.rows && col < self.cols);
        self.entries[row * self.cols + col] = value;
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "inner dimensions {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a_ik = self.get(i, k);
                if a_ik == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a_ik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Kronecker product: block (i, j) of the result is `self[i][j] * other`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a_ij = self.get(i, j);
                if a_ij == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a_ij * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry magnitude (the max norm used by every residual bound).
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Max deviation from Hermiticity, `max |A[i][j] - conj(A[j][i])|`.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..=i {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, eq_tol: f64) -> bool {
        self.is_square() && self.hermitian_deviation() <= eq_tol
    }

    /// Require Hermiticity within `eq_tol`, reporting the deviation otherwise.
    pub fn require_hermitian(&self, eq_tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::dims(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let dev = self.hermitian_deviation();
        if dev > eq_tol {
            return Err(Error::NotHermitian {
                max_deviation: dev,
            });
        }
        Ok(())
    }

    /// The `block_size x block_size` submatrix at block position (i, j),
    /// zero-indexed over a square block grid.
    pub fn block(&self, i: usize, j: usize, block_size: usize) -> Self {
        let mut out = Self::zeros(block_size, block_size);
        for r in 0..block_size {
            for c in 0..block_size {
                out.set(r, c, self.get(i * block_size + r, j * block_size + c));
            }
        }
        out
    }

    pub fn set_block(&mut self, i: usize, j: usize, block: &Self) {
        let n = block.rows;
        assert_eq!(n, block.cols);
        for r in 0..n {
            for c in 0..n {
                self.set(i * n + r, j * n + c, block.get(r, c));
            }
        }
    }

    /// `(A + A^dagger) / 2`; used to scrub tolerance-level asymmetry before
    /// feeding a matrix to the Hermitian kernels.
    pub fn hermitian_part(&self) -> Self {
        self.add(&self.dagger()).scale_re(0.5)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::add(self, rhs)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::sub(self, rhs)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:>11.4e}{:+.4e}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
