//! Matrix exponential by scaling-and-squaring with a Padé core, after
//! Higham (2005), "The Scaling and Squaring Method for the Matrix
//! Exponential Revisited". Target accuracy ~1e-12 relative for the matrix
//! sizes used here (≤ 64×64).
//!
//! Everything is computed in `Complex<f64>`; real inputs stay exactly real
//! because complex arithmetic on (x, 0) values never rounds into the
//! imaginary part.

use num_traits::Zero;
use thiserror::Error;

use crate::mat::{rmat_to_cmat, C64, CMat, RMat};

#[derive(Debug, Error)]
pub enum ExpmError {
    /// Signals a numeric kernel failure (non-finite input or a singular
    /// Padé denominator); never expected for finite inputs.
    #[error("matrix exponential kernel failed: {0}")]
    ExpDivergence(&'static str),
}

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539_398_330_063_23e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] = [
    17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0, 2162160.0, 110880.0,
    3960.0, 90.0, 1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0, 10559470521600.0, 670442572800.0, 33522128640.0, 1323241920.0,
    40840800.0, 960960.0, 16380.0, 182.0, 1.0,
];

fn one_norm(a: &CMat) -> f64 {
    let mut best = 0.0f64;
    for j in 0..a.cols() {
        let mut s = 0.0;
        for i in 0..a.rows() {
            s += a.get(i, j).norm();
        }
        best = best.max(s);
    }
    best
}

/// LU decomposition with partial pivoting; returns (lu, perm, sign).
fn lu_decompose(a: &CMat) -> Result<(CMat, Vec<usize>, f64), ExpmError> {
    let n = a.rows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    for k in 0..n {
        let mut pivot = k;
        let mut best = lu.get(k, k).norm();
        for i in k + 1..n {
            let v = lu.get(i, k).norm();
            if v > best {
                best = v;
                pivot = i;
            }
        }
        if best == 0.0 {
            return Err(ExpmError::ExpDivergence("singular matrix in LU solve"));
        }
        if pivot != k {
            for j in 0..n {
                let tmp = *lu.get(k, j);
                lu.set(k, j, *lu.get(pivot, j));
                lu.set(pivot, j, tmp);
            }
            perm.swap(k, pivot);
            sign = -sign;
        }
        let diag = *lu.get(k, k);
        for i in k + 1..n {
            let f = lu.get(i, k) / diag;
            lu.set(i, k, f);
            for j in k + 1..n {
                let v = lu.get(i, j) - f * lu.get(k, j);
                lu.set(i, j, v);
            }
        }
    }
    Ok((lu, perm, sign))
}

/// Solve A X = B for X.
fn lu_solve(a: &CMat, b: &CMat) -> Result<CMat, ExpmError> {
    let n = a.rows();
    let (lu, perm, _) = lu_decompose(a)?;
    let mut x = CMat::zeros(n, b.cols());
    for col in 0..b.cols() {
        // forward substitution on the permuted rhs
        let mut y = vec![C64::zero(); n];
        for i in 0..n {
            let mut acc = *b.get(perm[i], col);
            for j in 0..i {
                acc -= lu.get(i, j) * y[j];
            }
            y[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = y[i];
            for j in i + 1..n {
                acc -= lu.get(i, j) * x.get(j, col);
            }
            x.set(i, col, acc / lu.get(i, i));
        }
    }
    Ok(x)
}

/// Determinant via LU.
pub fn det(a: &CMat) -> C64 {
    match lu_decompose(a) {
        Err(_) => C64::zero(),
        Ok((lu, _, sign)) => {
            let mut d = C64::new(sign, 0.0);
            for i in 0..a.rows() {
                d *= lu.get(i, i);
            }
            d
        }
    }
}

pub fn det_real(a: &RMat) -> f64 {
    det(&rmat_to_cmat(a)).re
}

/// Matrix inverse; used for S⁻¹ cross-checks.
pub fn inverse(a: &CMat) -> Result<CMat, ExpmError> {
    lu_solve(a, &CMat::identity(a.rows()))
}

fn pade(a: &CMat, coeffs: &[f64]) -> Result<CMat, ExpmError> {
    let n = a.rows();
    let a2 = a.mul(a);
    // even powers a^0, a^2, a^4, ...
    let mut powers = vec![CMat::identity(n)];
    let half = coeffs.len() / 2;
    for _ in 1..half {
        powers.push(powers.last().unwrap().mul(&a2));
    }
    let mut u_inner = CMat::zeros(n, n);
    let mut v = CMat::zeros(n, n);
    for (k, p) in powers.iter().enumerate() {
        u_inner = u_inner.add(&p.scale(&C64::new(coeffs[2 * k + 1], 0.0)));
        v = v.add(&p.scale(&C64::new(coeffs[2 * k], 0.0)));
    }
    let u = a.mul(&u_inner);
    lu_solve(&v.sub(&u), &v.add(&u))
}

fn pade13(a: &CMat) -> Result<CMat, ExpmError> {
    let n = a.rows();
    let b = &B13;
    let a2 = a.mul(a);
    let a4 = a2.mul(&a2);
    let a6 = a4.mul(&a2);
    let c = |v: f64| C64::new(v, 0.0);
    let u_hi = a6
        .scale(&c(b[13]))
        .add(&a4.scale(&c(b[11])))
        .add(&a2.scale(&c(b[9])));
    let u_lo = a6
        .scale(&c(b[7]))
        .add(&a4.scale(&c(b[5])))
        .add(&a2.scale(&c(b[3])))
        .add(&CMat::identity(n).scale(&c(b[1])));
    let u = a.mul(&a6.mul(&u_hi).add(&u_lo));
    let v_hi = a6
        .scale(&c(b[12]))
        .add(&a4.scale(&c(b[10])))
        .add(&a2.scale(&c(b[8])));
    let v = a6
        .mul(&v_hi)
        .add(&a6.scale(&c(b[6])))
        .add(&a4.scale(&c(b[4])))
        .add(&a2.scale(&c(b[2])))
        .add(&CMat::identity(n).scale(&c(b[0])));
    lu_solve(&v.sub(&u), &v.add(&u))
}

/// exp(A) for a complex matrix.
pub fn expm(a: &CMat) -> Result<CMat, ExpmError> {
    assert_eq!(a.rows(), a.cols(), "expm requires a square matrix");
    if a.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return Err(ExpmError::ExpDivergence("non-finite entry"));
    }
    let norm = one_norm(a);
    if norm <= THETA_3 {
        return pade(a, &B3);
    }
    if norm <= THETA_5 {
        return pade(a, &B5);
    }
    if norm <= THETA_7 {
        return pade(a, &B7);
    }
    if norm <= THETA_9 {
        return pade(a, &B9);
    }
    let s = if norm <= THETA_13 {
        0
    } else {
        (norm / THETA_13).log2().ceil() as u32
    };
    let scaled = a.scale(&C64::new((0.5f64).powi(s as i32), 0.0));
    let mut f = pade13(&scaled)?;
    for _ in 0..s {
        f = f.mul(&f);
    }
    Ok(f)
}

/// exp(A) for a real matrix; the result of exponentiating a real matrix is
/// real, and the complex route preserves that exactly.
pub fn expm_real(a: &RMat) -> Result<RMat, ExpmError> {
    let e = expm(&rmat_to_cmat(a))?;
    Ok(e.map(|x| x.re))
}
