//! Matrices whose entries are Clifford numbers.

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::multivector::{mul_acc, Multivector};
use crate::signature::{AlgebraSignature, BladeIndex};
use crate::Complex;

/// Which side a Clifford scalar multiplies from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Row-major matrix of [`Multivector`]s sharing one signature. Products keep
/// entry order: `(AB)_ij = sum_k A_ik B_kj` with `A_ik` on the left.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordMatrix {
    sig: AlgebraSignature,
    rows: usize,
    cols: usize,
    entries: Vec<Multivector>,
}

impl CliffordMatrix {
    pub fn zeros(sig: &AlgebraSignature, rows: usize, cols: usize) -> Self {
        CliffordMatrix {
            sig: sig.clone(),
            rows,
            cols,
            entries: vec![Multivector::zero(sig); rows * cols],
        }
    }

    pub fn identity(sig: &AlgebraSignature, n: usize) -> Self {
        Self::scalar_diag(sig, n, &Multivector::one(sig))
    }

    /// `a * I_n`.
    pub fn scalar_diag(sig: &AlgebraSignature, n: usize, a: &Multivector) -> Self {
        let mut m = Self::zeros(sig, n, n);
        for i in 0..n {
            m.entries[i * n + i] = a.clone();
        }
        m
    }

    pub fn from_entries(sig: &AlgebraSignature, rows: usize, cols: usize, entries: Vec<Multivector>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.signature() != sig) {
            return Err(Error::SignatureMismatch(format!(
                "entry over {:?} in a matrix over {sig:?}",
                e.signature()
            )));
        }
        Ok(CliffordMatrix {
            sig: sig.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(sig: &AlgebraSignature, rows: Vec<Vec<Multivector>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_entries(sig, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(
        sig: &AlgebraSignature,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Multivector,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.signature(), sig, "entry signature mismatch");
                entries.push(e);
            }
        }
        CliffordMatrix {
            sig: sig.clone(),
            rows,
            cols,
            entries,
        }
    }

    /// Complex matrix viewed as a matrix of scalar Clifford numbers.
    pub fn from_complex(sig: &AlgebraSignature, m: &ComplexMatrix) -> Self {
        Self::from_fn(sig, m.rows(), m.cols(), |i, j| Multivector::scalar(sig, m.get(i, j)))
    }

    /// `sum_B A_B e_B` from one complex coefficient matrix per blade.
    pub fn from_coefficient_matrices(sig: &AlgebraSignature, parts: &[ComplexMatrix]) -> Result<Self> {
        if parts.len() != sig.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficient matrices for dimension {}",
                parts.len(),
                sig.dim()
            )));
        }
        let (rows, cols) = (parts[0].rows(), parts[0].cols());
        if parts.iter().any(|p| p.rows() != rows || p.cols() != cols) {
            return Err(Error::DimensionMismatch("coefficient matrices differ in shape".into()));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let coeffs = parts.iter().map(|p| p.get(i, j)).collect();
                entries.push(Multivector::from_coeffs(sig, coeffs)?);
            }
        }
        Ok(CliffordMatrix {
            sig: sig.clone(),
            rows,
            cols,
            entries,
        })
    }

    /// The complex matrix `A_B` of coefficients of blade `B`.
    pub fn coefficient_matrix(&self, blade: BladeIndex) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).coeff(blade))
    }

    pub fn coefficient_matrices(&self) -> Vec<ComplexMatrix> {
        (0..self.sig.dim() as u32)
            .map(|b| self.coefficient_matrix(BladeIndex(b)))
            .collect()
    }

    pub fn signature(&self) -> &AlgebraSignature {
        &self.sig
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

    pub fn get(&self, i: usize, j: usize) -> &Multivector {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Multivector] {
        &self.entries
    }

    pub fn map(&self, f: impl Fn(&Multivector) -> Multivector) -> Self {
        CliffordMatrix {
            sig: self.sig.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn check_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch(format!("{:?} vs {:?}", self.sig, other.sig)));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let dim = self.sig.dim();
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        let mut buf = vec![Complex::new(0.0, 0.0); dim];
        for i in 0..self.rows {
            for j in 0..other.cols {
                buf.iter_mut().for_each(|c| *c = Complex::new(0.0, 0.0));
                for k in 0..self.cols {
                    mul_acc(&self.sig, &mut buf, self.get(i, k).coeffs(), other.get(k, j).coeffs());
                }
                entries.push(Multivector::from_coeffs(&self.sig, buf.clone())?);
            }
        }
        Ok(CliffordMatrix {
            sig: self.sig.clone(),
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Multivector, &Multivector) -> Multivector) -> Result<Self> {
        self.check_sig(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(CliffordMatrix {
            sig: self.sig.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, lambda: Complex) -> Self {
        self.map(|e| e.scale(lambda))
    }

    /// Multiply every entry by a Clifford number from the given side.
    pub fn scale_by(&self, a: &Multivector, side: Side) -> Result<Self> {
        if a.signature() != &self.sig {
            return Err(Error::SignatureMismatch(format!(
                "{:?} vs {:?}",
                a.signature(),
                self.sig
            )));
        }
        Ok(match side {
            Side::Left => self.map(|e| a * e),
            Side::Right => self.map(|e| e * a),
        })
    }

    /// `diag(a, b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Result<Self> {
        a.check_sig(b)?;
        let mut m = Self::zeros(&a.sig, a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.entries[i * m.cols + j] = a.get(i, j).clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.entries[(a.rows + i) * m.cols + a.cols + j] = b.get(i, j).clone();
            }
        }
        Ok(m)
    }

    /// Assemble from a grid of equally shaped blocks.
    pub fn from_blocks(blocks: &[Vec<&CliffordMatrix>]) -> Result<Self> {
        let first = blocks
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::DimensionMismatch("empty block grid".into()))?;
        let (h, w) = (first.rows, first.cols);
        let bc = blocks[0].len();
        for row in blocks {
            if row.len() != bc || row.iter().any(|b| b.rows != h || b.cols != w || b.sig != first.sig) {
                return Err(Error::DimensionMismatch(
                    "blocks must share one shape and signature".into(),
                ));
            }
        }
        Ok(Self::from_fn(&first.sig, blocks.len() * h, bc * w, |i, j| {
            blocks[i / h][j / w].get(i % h, j % w).clone()
        }))
    }

    /// Every entry `x` replaced by the block `x * I_m`.
    pub fn kron_identity(&self, m: usize) -> Self {
        let zero = Multivector::zero(&self.sig);
        Self::from_fn(&self.sig, self.rows * m, self.cols * m, |i, j| {
            if i % m == j % m {
                self.get(i / m, j / m).clone()
            } else {
                zero.clone()
            }
        })
    }

    /// Largest coefficient distance over all entries and blades.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "extent mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.max_abs()).fold(0.0, f64::max)
    }
}

/// Entrywise `A + B`.
pub fn cmat_add(a: &CliffordMatrix, b: &CliffordMatrix) -> Result<CliffordMatrix> {
    a.try_add(b)
}

pub fn cmat_mul(a: &CliffordMatrix, b: &CliffordMatrix) -> Result<CliffordMatrix> {
    a.try_mul(b)
}

pub fn cmat_scale(lambda: &Multivector, side: Side, a: &CliffordMatrix) -> Result<CliffordMatrix> {
    a.scale_by(lambda, side)
}
