//! Metric signatures (N₊, N₋) and the bilinear forms derived from them.

use serde::{Deserialize, Serialize};

use crate::mat::{IMat, QMat, Rat};

/// Signature of the pseudo-euclidean metric η = diag(+1 × n_plus, −1 × n_minus).
///
/// η is its own inverse, so covariant and contravariant components coincide
/// entrywise and we never track index placement on η.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub n_plus: usize,
    pub n_minus: usize,
}

impl Signature {
    pub fn new(n_plus: usize, n_minus: usize) -> Self {
        assert!(n_plus + n_minus >= 1, "signature must have N >= 1");
        Signature { n_plus, n_minus }
    }

    pub fn euclidean(n: usize) -> Self {
        Signature::new(n, 0)
    }

    /// Total dimension N = N₊ + N₋.
    pub fn n(&self) -> usize {
        self.n_plus + self.n_minus
    }

    /// Diagonal metric entry η_μμ as a signed integer (+1 or −1).
    pub fn eta_entry(&self, mu: usize) -> i64 {
        assert!(mu < self.n(), "metric index out of range");
        if mu < self.n_plus {
            1
        } else {
            -1
        }
    }

    /// η as an exact rational matrix.
    pub fn eta(&self) -> QMat {
        let n = self.n();
        QMat::from_fn(n, n, |i, j| {
            if i == j {
                Rat::from_integer(self.eta_entry(i).into())
            } else {
                Rat::from_integer(0.into())
            }
        })
    }

    /// η as a Gaussian-integer matrix (used on the Clifford side).
    pub fn eta_int(&self) -> IMat {
        let n = self.n();
        IMat::from_fn(n, n, |i, j| {
            if i == j {
                num_complex::Complex::new(self.eta_entry(i), 0)
            } else {
                num_complex::Complex::new(0, 0)
            }
        })
    }

    /// The antisymmetric form K = [[0, η], [−η, 0]] preserved by the LCT
    /// group acting on row vectors (p x): the commutators [v_a, v_b] = i·K_ab
    /// collect [p_μ, x_ν] = i·η_μν into one 2N×2N matrix, and v' = v·g keeps
    /// them fixed iff gᵀ K g = K.
    pub fn symplectic_form(&self) -> QMat {
        let n = self.n();
        let eta = self.eta();
        let mut k = QMat::zeros(2 * n, 2 * n);
        k.set_block(0, n, &eta);
        k.set_block(n, 0, &eta.neg());
        k
    }

    /// The symmetric form G = diag(η, η, −η, −η) on the 4N-dimensional
    /// reduced-operator space ordered (p⁺, x⁻, x⁺, p⁻). It has 2N entries +1
    /// and 2N entries −1 for every signature split, which is why the
    /// generator X always lands in so(2N, 2N).
    pub fn ortho_form(&self) -> QMat {
        let n = self.n();
        let eta = self.eta();
        let mut g = QMat::zeros(4 * n, 4 * n);
        g.set_block(0, 0, &eta);
        g.set_block(n, n, &eta);
        g.set_block(2 * n, 2 * n, &eta.neg());
        g.set_block(3 * n, 3 * n, &eta.neg());
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn eta_is_its_own_inverse() {
        for sig in [Signature::new(1, 0), Signature::new(2, 1), Signature::new(1, 3)] {
            let eta = sig.eta();
            let prod = eta.mul(&eta);
            assert_eq!(prod, QMat::identity(sig.n()));
        }
    }

    #[test]
    fn ortho_form_has_balanced_signature() {
        for sig in [Signature::new(1, 0), Signature::new(2, 0), Signature::new(1, 1)] {
            let g = sig.ortho_form();
            let n = sig.n();
            let mut plus = 0;
            let mut minus = 0;
            for i in 0..4 * n {
                let e = g.get(i, i);
                if *e > Rat::zero() {
                    plus += 1;
                } else {
                    minus += 1;
                }
            }
            assert_eq!(plus, 2 * n);
            assert_eq!(minus, 2 * n);
        }
    }

    #[test]
    fn symplectic_form_is_antisymmetric() {
        let k = Signature::new(1, 1).symplectic_form();
        assert_eq!(k.transpose(), k.neg());
    }
}
