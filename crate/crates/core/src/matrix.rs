//! Dense complex matrices: products, LU factorization, determinants,
//! characteristic polynomials and the matrix exponential.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::Complex;

/// Relative pivot threshold below which a matrix is treated as singular.
pub const SINGULAR_RTOL: f64 = 1e-12;

fn czero() -> Complex {
    Complex::new(0.0, 0.0)
}

fn cone() -> Complex {
    Complex::new(1.0, 0.0)
}

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![czero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, cone())
    }

    /// `value * I_n`.
    pub fn scalar(n: usize, value: Complex) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = value;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite("matrix entry".into()));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.concat())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn diag(values: &[Complex]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i] } else { czero() })
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

    pub fn data(&self) -> &[Complex] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex) {
        self.data[i * self.cols + j] = value;
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex>> {
        self.data
            .chunks(self.cols.max(1))
            .map(|r| r.to_vec())
            .take(self.rows)
            .collect()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == czero() {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex, Complex) -> Complex) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect();
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, lambda: Complex) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| c * lambda).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conjugate_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise distance; extents must agree.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "extent mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Copy of the `rows x cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    /// Assemble a matrix from a grid of equally shaped blocks.
    pub fn from_blocks(blocks: &[Vec<&ComplexMatrix>]) -> Result<Self> {
        let br = blocks.len();
        let bc = blocks.first().map_or(0, |r| r.len());
        if br == 0 || bc == 0 {
            return Err(Error::DimensionMismatch("empty block grid".into()));
        }
        let (h, w) = (blocks[0][0].rows, blocks[0][0].cols);
        for row in blocks {
            if row.len() != bc || row.iter().any(|b| b.rows != h || b.cols != w) {
                return Err(Error::DimensionMismatch("blocks must share one shape".into()));
            }
        }
        Ok(Self::from_fn(br * h, bc * w, |i, j| {
            blocks[i / h][j / w].get(i % h, j % w)
        }))
    }

    /// Block-diagonal `diag(a, b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j));
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(a.rows + i, a.cols + j, b.get(i, j));
            }
        }
        m
    }

    /// Partial-pivoted LU factorization.
    pub fn lu(&self) -> Result<Lu> {
        Lu::new(self)
    }

    pub fn det(&self) -> Result<Complex> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        Ok(match Lu::new(self) {
            Ok(lu) => lu.det(),
            Err(Error::Singular) => Lu::factor_unchecked(self).det(),
            Err(e) => return Err(e),
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        self.lu()?.solve(&Self::identity(self.rows))
    }

    /// Solve `self * X = rhs`.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        self.lu()?.solve(rhs)
    }

    /// Numerical rank by column-wise Gaussian elimination with partial
    /// pivoting; entries below `rtol * max|entry|` count as zero. Zero entries
    /// are skipped, so sparse inputs stay cheap.
    pub fn rank(&self, rtol: f64) -> usize {
        let mut a = self.clone();
        let thresh = rtol * a.max_abs().max(f64::MIN_POSITIVE);
        let (m, n) = (a.rows, a.cols);
        let mut rank = 0;
        for col in 0..n {
            if rank == m {
                break;
            }
            let (pi, pv) = (rank..m)
                .map(|i| (i, a.get(i, col).norm()))
                .fold((rank, -1.0), |best, x| if x.1 > best.1 { x } else { best });
            if pv <= thresh {
                continue;
            }
            a.swap_rows(rank, pi);
            let piv = a.get(rank, col);
            let support: Vec<(usize, Complex)> = (col..n)
                .map(|j| (j, a.get(rank, j)))
                .filter(|(_, v)| *v != czero())
                .collect();
            for i in rank + 1..m {
                let f = a.get(i, col) / piv;
                if f == czero() {
                    continue;
                }
                for &(j, v) in &support {
                    a.data[i * n + j] -= f * v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Orthonormal-free basis of the right nullspace, from reduced row echelon
    /// form with partial pivoting. Entries below `rtol * max|entry|` count as zero.
    pub fn nullspace(&self, rtol: f64) -> Vec<Vec<Complex>> {
        let mut a = self.clone();
        let (m, n) = (a.rows, a.cols);
        let thresh = rtol * a.max_abs().max(f64::MIN_POSITIVE);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == m {
                break;
            }
            let (pi, pv) = (row..m)
                .map(|i| (i, a.get(i, col).norm()))
                .fold((row, -1.0), |best, x| if x.1 > best.1 { x } else { best });
            if pv <= thresh {
                for i in row..m {
                    a.set(i, col, czero());
                }
                continue;
            }
            a.swap_rows(row, pi);
            let piv = a.get(row, col);
            for j in col..n {
                let v = a.get(row, j) / piv;
                a.set(row, j, v);
            }
            for i in 0..m {
                if i == row {
                    continue;
                }
                let f = a.get(i, col);
                if f == czero() {
                    continue;
                }
                for j in col..n {
                    let v = a.get(row, j);
                    a.data[i * n + j] -= f * v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![czero(); n];
                v[fc] = cone();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a.get(r, fc);
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Characteristic polynomial `det(xI - A)` by the Faddeev–LeVerrier
    /// recurrence: `M_k = A M_{k-1} + c_{s-k+1} I`, `c_{s-k} = -tr(A M_k) / k`.
    pub fn charpoly(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "characteristic polynomial of a non-square matrix".into(),
            ));
        }
        let s = self.rows;
        let mut coeffs = vec![czero(); s + 1];
        coeffs[s] = cone();
        let mut m = Self::zeros(s, s);
        for k in 1..=s {
            let mut next = self.try_mul(&m)?;
            for i in 0..s {
                next.data[i * s + i] += coeffs[s - k + 1];
            }
            let am = self.try_mul(&next)?;
            coeffs[s - k] = -am.trace() / k as f64;
            m = next;
        }
        Ok(Polynomial::new(coeffs))
    }

    /// Matrix exponential by scaling and squaring: halve until the 1-norm is at
    /// most 1/2, sum 18 Taylor terms, then square back.
    pub fn exp(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("exponential of a non-square matrix".into()));
        }
        let norm = self.norm_one();
        let mut squarings = 0u32;
        if norm > 0.5 {
            squarings = (norm / 0.5).log2().ceil() as u32;
        }
        let scaled = self.scale(Complex::new(0.5f64.powi(squarings as i32), 0.0));
        let n = self.rows;
        let mut term = Self::identity(n);
        let mut sum = Self::identity(n);
        for k in 1..=18 {
            term = term.try_mul(&scaled)?.scale(Complex::new(1.0 / k as f64, 0.0));
            sum = sum.try_add(&term)?;
        }
        for _ in 0..squarings {
            sum = sum.try_mul(&sum)?;
        }
        Ok(sum)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(|c| format!("{c}")).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.try_mul(rhs).expect("extent mismatch in matrix product")
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("extent mismatch in matrix sum")
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("extent mismatch in matrix difference")
    }
}

/// `P A = L U` with unit-diagonal `L` stored below the diagonal of `lu`.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    /// Factor `a`, failing with [`Error::Singular`] when a pivot falls below
    /// [`SINGULAR_RTOL`] times the largest magnitude of its original column.
    pub fn new(a: &ComplexMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch("LU of a non-square matrix".into()));
        }
        let n = a.rows;
        let col_scale: Vec<f64> = (0..n)
            .map(|j| (0..n).map(|i| a.get(i, j).norm()).fold(0.0, f64::max))
            .collect();
        let lu = Self::factor_unchecked(a);
        for k in 0..n {
            let piv = lu.lu.get(k, k).norm();
            if col_scale[k] == 0.0 || piv < SINGULAR_RTOL * col_scale[k] {
                return Err(Error::Singular);
            }
        }
        Ok(lu)
    }

    fn factor_unchecked(a: &ComplexMatrix) -> Self {
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let (p, pv) = (k..n)
                .map(|i| (i, lu.get(i, k).norm()))
                .fold((k, -1.0), |best, x| if x.1 > best.1 { x } else { best });
            if p != k {
                lu.swap_rows(k, p);
                perm.swap(k, p);
                swaps += 1;
            }
            if pv == 0.0 {
                continue;
            }
            let piv = lu.get(k, k);
            for i in k + 1..n {
                let f = lu.get(i, k) / piv;
                lu.set(i, k, f);
                if f == czero() {
                    continue;
                }
                for j in k + 1..n {
                    let v = lu.get(k, j);
                    lu.data[i * n + j] -= f * v;
                }
            }
        }
        Lu { lu, perm, swaps }
    }

    pub fn det(&self) -> Complex {
        let n = self.lu.rows;
        let prod: Complex = (0..n).map(|i| self.lu.get(i, i)).product();
        if self.swaps % 2 == 1 {
            -prod
        } else {
            prod
        }
    }

    pub fn solve(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.lu.rows;
        if rhs.rows != n {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} rows, expected {n}",
                rhs.rows
            )));
        }
        let m = rhs.cols;
        let mut x = ComplexMatrix::from_fn(n, m, |i, j| rhs.get(self.perm[i], j));
        for j in 0..m {
            for i in 0..n {
                let mut s = x.get(i, j);
                for k in 0..i {
                    s -= self.lu.get(i, k) * x.get(k, j);
                }
                x.set(i, j, s);
            }
            for i in (0..n).rev() {
                let mut s = x.get(i, j);
                for k in i + 1..n {
                    s -= self.lu.get(i, k) * x.get(k, j);
                }
                x.set(i, j, s / self.lu.get(i, i));
            }
        }
        Ok(x)
    }
}

/// Polynomial with complex coefficients in ascending degree order.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex>) -> Self {
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Polynomial {
            coeffs: coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != czero()).unwrap_or(0)
    }

    pub fn eval(&self, x: Complex) -> Complex {
        self.coeffs.iter().rev().fold(czero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial { coeffs: Vec::new() };
        }
        let mut out = vec![czero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial { coeffs: out }
    }

    /// Coefficientwise distance relative to the larger coefficient magnitude.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Self, i: usize| p.coeffs.get(i).copied().unwrap_or_else(czero);
        let mut diff: f64 = 0.0;
        let mut scale: f64 = 1.0;
        for i in 0..len {
            let (a, b) = (get(self, i), get(other, i));
            diff = diff.max((a - b).norm());
            scale = scale.max(a.norm()).max(b.norm());
        }
        diff / scale
    }

    /// Horner evaluation with a square matrix argument.
    pub fn eval_matrix(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch("polynomial of a non-square matrix".into()));
        }
        let n = a.rows;
        let mut acc = ComplexMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = a.try_mul(&acc)?;
            for i in 0..n {
                acc.data[i * n + i] += c;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn rot() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(-1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap()
    }

    #[test]
    fn conjugate_transpose_basics() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.0, 1.0)]]).unwrap();
        assert_eq!(m.conjugate_transpose().get(0, 0), c(0.0, -1.0));
        let r = rot().scale(c(0.5, 2.0));
        assert_eq!(r.conjugate_transpose().conjugate_transpose(), r);
        assert_eq!(&ComplexMatrix::identity(2) * &r, r);
    }

    #[test]
    fn determinant_and_inverse() {
        let d = ComplexMatrix::diag(&[c(0.0, 1.0), c(0.0, -1.0)]);
        assert_eq!(d.det().unwrap(), c(1.0, 0.0));
        assert_eq!(
            ComplexMatrix::identity(3).inverse().unwrap(),
            ComplexMatrix::identity(3)
        );
        let singular = ComplexMatrix::diag(&[c(0.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(singular.inverse().unwrap_err(), Error::Singular);
        assert_eq!(singular.det().unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn permuted_determinant_sign() {
        let swap = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert_eq!(swap.det().unwrap(), c(-1.0, 0.0));
    }

    #[test]
    fn charpoly_small_cases() {
        assert_eq!(rot().charpoly().unwrap(), Polynomial::from_real(&[1.0, 0.0, 1.0]));
        assert_eq!(
            ComplexMatrix::identity(2).charpoly().unwrap(),
            Polynomial::from_real(&[1.0, -2.0, 1.0])
        );
        let d = ComplexMatrix::diag(&[c(0.0, 1.0), c(0.0, -1.0)]);
        assert!(
            d.charpoly()
                .unwrap()
                .relative_distance(&Polynomial::from_real(&[1.0, 0.0, 1.0]))
                < 1e-15
        );
    }

    #[test]
    fn exp_closed_forms() {
        assert_eq!(ComplexMatrix::zeros(3, 3).exp().unwrap(), ComplexMatrix::identity(3));
        let d = ComplexMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]).exp().unwrap();
        let e = std::f64::consts::E;
        assert!(d.distance(&ComplexMatrix::diag(&[c(e, 0.0), c(1.0 / e, 0.0)])) < 1e-14);
        let theta = 0.7;
        let r = rot().scale(c(theta, 0.0)).exp().unwrap();
        let (s, co) = theta.sin_cos();
        let expected = ComplexMatrix::from_rows(&[vec![c(co, 0.0), c(-s, 0.0)], vec![c(s, 0.0), c(co, 0.0)]]).unwrap();
        assert!(r.distance(&expected) < 1e-14);
    }

    #[test]
    fn polyval_cases() {
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
        assert!(p.eval_matrix(&rot()).unwrap().max_abs() == 0.0);
        assert_eq!(
            Polynomial::from_real(&[1.0]).eval_matrix(&rot()).unwrap(),
            ComplexMatrix::identity(2)
        );
        assert_eq!(Polynomial::from_real(&[0.0, 1.0]).eval_matrix(&rot()).unwrap(), rot());
    }

    #[test]
    fn rank_and_nullspace() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0), c(6.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(m.rank(1e-12), 1);
        let ns = m.nullspace(1e-12);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let col = ComplexMatrix::from_vec(3, 1, v).unwrap();
            assert!((&m * &col).max_abs() < 1e-14);
        }
    }

    #[test]
    fn non_square_errors() {
        let m = ComplexMatrix::zeros(2, 3);
        assert!(m.det().is_err());
        assert!(m.charpoly().is_err());
        assert!(m.exp().is_err());
        assert!(m.try_mul(&m).is_err());
    }
}
