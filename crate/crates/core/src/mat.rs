//! Small dense matrices, generic over the scalar ring.
//!
//! The crate mixes four scalar kinds — exact rationals for Lie-algebra
//! membership, Gaussian integers for Clifford generators, Gaussian rationals
//! for spin bivectors, and floats/complex floats for exponentials — so one
//! row-major container with ring-generic operations serves them all.

use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar.
pub type Rat = num_rational::BigRational;
/// Gaussian rational (exact complex).
pub type Gauss = Complex<Rat>;
/// Gaussian integer with machine-sized parts. Clifford generators and their
/// products are signed complex permutation matrices, so entries never leave
/// {0, ±1, ±i} and small sums thereof.
pub type CInt = Complex<i64>;
/// Complex float.
pub type C64 = Complex<f64>;

pub type QMat = Mat<Rat>;
pub type GMat = Mat<Gauss>;
pub type IMat = Mat<CInt>;
pub type RMat = Mat<f64>;
pub type CMat = Mat<C64>;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Mat<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Mat { rows, cols, data }
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

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Mat<T> {
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Mat<T> {
        assert!(r0 + h <= self.rows && c0 + w <= self.cols, "block out of range");
        Mat::from_fn(h, w, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat<T>) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
}

impl<T: Clone + Zero> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<T: Clone + Zero + One> Mat<T> {
    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Kronecker product, left factor varying slowest.
    pub fn kron(&self, other: &Mat<T>) -> Mat<T>
    where
        T: Mul<Output = T>,
    {
        Mat::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let (bi, bj) = (i / other.rows, j / other.cols);
            let (si, sj) = (i % other.rows, j % other.cols);
            self.get(bi, bj).clone() * other.get(si, sj).clone()
        })
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + Add<Output = T>,
{
    pub fn add(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j).clone() + other.get(i, j).clone())
    }
}

impl<T> Mat<T>
where
    T: Clone + Sub<Output = T>,
{
    pub fn sub(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j).clone() - other.get(i, j).clone())
    }
}

impl<T> Mat<T>
where
    T: Clone + Neg<Output = T>,
{
    pub fn neg(&self) -> Mat<T> {
        self.map(|x| -x.clone())
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    pub fn mul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
            }
            acc
        })
    }

    pub fn scale(&self, s: &T) -> Mat<T> {
        self.map(|x| x.clone() * s.clone())
    }
}

/// max |entry| over an exact rational matrix.
pub fn linf_rat(m: &QMat) -> Rat {
    let mut best = Rat::zero();
    for x in m.iter() {
        let a = x.abs();
        if a > best {
            best = a;
        }
    }
    best
}

/// max (|re| + |im|) over a Gaussian-rational matrix; zero iff the matrix is.
pub fn linf_gauss(m: &GMat) -> Rat {
    let mut best = Rat::zero();
    for x in m.iter() {
        let a = x.re.abs() + x.im.abs();
        if a > best {
            best = a;
        }
    }
    best
}

/// max (|re| + |im|) over a Gaussian-integer matrix.
pub fn linf_int(m: &IMat) -> i64 {
    m.iter().map(|x| x.re.abs() + x.im.abs()).max().unwrap_or(0)
}

/// max |entry| over a float matrix.
pub fn linf_f64(m: &RMat) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// max modulus over a complex float matrix.
pub fn linf_c64(m: &CMat) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.norm()))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    // Parameter entries are small fractions; direct conversion is exact
    // enough, with a string fallback for extreme numerators.
    r.to_f64().unwrap_or_else(|| {
        let s = format!("{}", r);
        let mut parts = s.splitn(2, '/');
        let n: f64 = parts.next().unwrap().parse().unwrap();
        let d: f64 = parts.next().map(|x| x.parse().unwrap()).unwrap_or(1.0);
        n / d
    })
}

pub fn qmat_to_rmat(m: &QMat) -> RMat {
    m.map(rat_to_f64)
}

pub fn qmat_to_gmat(m: &QMat) -> GMat {
    m.map(|x| Gauss::new(x.clone(), Rat::zero()))
}

pub fn imat_to_gmat(m: &IMat) -> GMat {
    m.map(|x| Gauss::new(rat_int(x.re), rat_int(x.im)))
}

pub fn imat_to_cmat(m: &IMat) -> CMat {
    m.map(|x| C64::new(x.re as f64, x.im as f64))
}

pub fn gmat_to_cmat(m: &GMat) -> CMat {
    m.map(|x| C64::new(rat_to_f64(&x.re), rat_to_f64(&x.im)))
}

pub fn rmat_to_cmat(m: &RMat) -> CMat {
    m.map(|x| C64::new(*x, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_product_is_exact() {
        let a = QMat::from_fn(2, 2, |i, j| rat((i + 2 * j) as i64, 3));
        let b = a.mul(&QMat::identity(2));
        assert_eq!(a, b);
    }

    #[test]
    fn kron_matches_hand_expansion() {
        let a = IMat::from_vec(2, 2, vec![
            CInt::new(0, 0), CInt::new(1, 0),
            CInt::new(1, 0), CInt::new(0, 0),
        ]);
        let id = IMat::identity(2);
        let k = a.kron(&id);
        assert_eq!(*k.get(0, 2), CInt::new(1, 0));
        assert_eq!(*k.get(1, 3), CInt::new(1, 0));
        assert_eq!(*k.get(0, 1), CInt::new(0, 0));
        assert_eq!(k.rows(), 4);
    }

    #[test]
    fn block_roundtrip() {
        let mut m = QMat::zeros(4, 4);
        let b = QMat::from_fn(2, 2, |i, j| rat_int((i * 2 + j) as i64));
        m.set_block(1, 2, &b);
        assert_eq!(m.block(1, 2, 2, 2), b);
    }
}
