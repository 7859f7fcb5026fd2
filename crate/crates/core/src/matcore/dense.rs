//! Row-major dense matrices over any [`Scalar`].

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};

use super::dd::Dd;
use super::scalar::{Cdd, Real, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Working-precision complex matrix.
pub type CMatrix = Mat<Complex64>;
/// Working-precision real matrix.
pub type RMatrix = Mat<f64>;
/// Extended-precision real matrix.
pub type DdMatrix = Mat<Dd>;
/// Extended-precision complex matrix.
pub type CddMatrix = Mat<Cdd>;

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Takes ownership of row-major entries.
    ///
    /// # Panics
    /// If `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.iter().flatten().copied().collect() }
    }

    pub fn from_diag(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[T]) {
        assert_eq!(v.len(), self.rows);
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    pub fn diag(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|x| x * s)
    }

    pub fn matmul(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let orow = i * rhs.cols;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == T::zero() {
                    continue;
                }
                let rrow = k * rhs.cols;
                for j in 0..rhs.cols {
                    out.data[orow + j] += a * rhs.data[rrow + j];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, &b) in self.row(i).iter().zip(x) {
                    acc += *a * b;
                }
                acc
            })
            .collect()
    }

    /// Copy of the `r x c` block starting at `(i0, j0)`.
    pub fn block(&self, i0: usize, j0: usize, r: usize, c: usize) -> Self {
        assert!(i0 + r <= self.rows && j0 + c <= self.cols, "block out of range");
        Mat::from_fn(r, c, |i, j| self[(i0 + i, j0 + j)])
    }

    pub fn set_block(&mut self, i0: usize, j0: usize, b: &Mat<T>) {
        assert!(i0 + b.rows <= self.rows && j0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(i0 + i, j0 + j)] = b[(i, j)];
            }
        }
    }

    pub fn hstack(&self, rhs: &Mat<T>) -> Self {
        assert_eq!(self.rows, rhs.rows);
        let mut m = Mat::zeros(self.rows, self.cols + rhs.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, rhs);
        m
    }

    pub fn vstack(&self, rhs: &Mat<T>) -> Self {
        assert_eq!(self.cols, rhs.cols);
        let mut m = Mat::zeros(self.rows + rhs.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, rhs);
        m
    }

    /// Block-diagonal concatenation.
    pub fn block_diag(blocks: &[&Mat<T>]) -> Self {
        let r = blocks.iter().map(|b| b.rows).sum();
        let c = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(r, c);
        let (mut i0, mut j0) = (0, 0);
        for b in blocks {
            m.set_block(i0, j0, b);
            i0 += b.rows;
            j0 += b.cols;
        }
        m
    }

    /// Selects rows and columns by index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    pub fn norm_fro(&self) -> T::Real {
        let mut scale = <T::Real as Real>::zero();
        for &x in &self.data {
            scale = scale.max(x.abs1());
        }
        if scale == <T::Real as Real>::zero() {
            return scale;
        }
        let mut acc = <T::Real as Real>::zero();
        for &x in &self.data {
            acc += x.scale(<T::Real as Real>::one() / scale).abs_sqr();
        }
        scale * acc.sqrt()
    }

    /// Largest entry magnitude.
    pub fn norm_max(&self) -> T::Real {
        self.data
            .iter()
            .fold(<T::Real as Real>::zero(), |m, &x| m.max(x.abs()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let scale = self.norm_max().to_f64().max(f64::MIN_POSITIVE);
        for i in 0..self.rows {
            for j in i..self.cols {
                if (self[(i, j)] - self[(j, i)].conj()).abs().to_f64() > tol * scale {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_c64(&self) -> CMatrix {
        self.map(|x| x.to_c64())
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Add for &Mat<T> {
    type Output = Mat<T>;
    fn add(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.shape(), rhs.shape());
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Mat<T> {
    type Output = Mat<T>;
    fn sub(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.shape(), rhs.shape());
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Scalar> Mul for &Mat<T> {
    type Output = Mat<T>;
    fn mul(self, rhs: &Mat<T>) -> Mat<T> {
        self.matmul(rhs)
    }
}

impl<T: Scalar> Neg for &Mat<T> {
    type Output = Mat<T>;
    fn neg(self) -> Mat<T> {
        self.map(|x| -x)
    }
}

impl RMatrix {
    /// Exact promotion to double-double.
    pub fn to_dd(&self) -> DdMatrix {
        self.map(Dd::from_f64)
    }

    pub fn to_complex(&self) -> CMatrix {
        self.map(|x| Complex64::new(x, 0.0))
    }
}

impl DdMatrix {
    /// Rounds every entry to the nearest binary64.
    pub fn round(&self) -> RMatrix {
        self.map(|x| x.to_f64())
    }

    pub fn to_cdd(&self) -> CddMatrix {
        self.map(|x| Complex::new(x, Dd::ZERO))
    }
}

impl CMatrix {
    /// Exact promotion to complex double-double.
    pub fn to_cdd(&self) -> CddMatrix {
        self.map(|x| Complex::new(Dd::from_f64(x.re), Dd::from_f64(x.im)))
    }

    /// Real part if every imaginary part is exactly zero.
    pub fn to_real(&self) -> Option<RMatrix> {
        if self.data.iter().all(|z| z.im == 0.0) {
            Some(self.map(|z| z.re))
        } else {
            None
        }
    }
}

impl CddMatrix {
    pub fn round(&self) -> CMatrix {
        self.map(|z| z.to_c64())
    }
}
