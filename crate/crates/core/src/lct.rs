//! LCT parameterization, the symplectic group element and the
//! pseudo-orthogonal generator.
//!
//! A linear canonical transformation acts on the row vector (p x) as
//! v' = v·g with g = exp(A), A = [[λ+μ, φ−θ], [φ+θ, λ−μ]] in N×N blocks.
//! Preserving [p_μ, x_ν] = i·η_μν forces gᵀ K g = K with
//! K = [[0, η], [−η, 0]] (see [`Signature::symplectic_form`]), which at the
//! algebra level reads Aᵀ K + K A = 0 and is equivalent to the parameter
//! constraints
//!
//! ```text
//! θᵀ = ηθη,  φᵀ = ηφη,  μᵀ = ημη,  λᵀ = −ηλη,  tr(λ) = 0.
//! ```
//!
//! The same parameters feed the 4N×4N generator X of the induced
//! pseudo-orthogonal action on the reduced-operator basis (p⁺, x⁻, x⁺, p⁻),
//! which satisfies X·G + G·Xᵀ = 0 exactly with G = diag(η, η, −η, −η).
//!
//! Row-vector convention throughout: vectors transform as v' = v·M, so
//! membership conditions take the `Mᵀ·form·M` shape.

use num_traits::{Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::expm::{self, ExpmError};
use crate::mat::{linf_f64, linf_rat, qmat_to_rmat, rat_int, Rat, QMat, RMat};
use crate::signature::Signature;

#[derive(Debug, Error)]
pub enum ParamError {
    #[error("constraint violated: {name} (max-entry witness {witness})")]
    ConstraintViolation { name: &'static str, witness: Rat },
    #[error("dimension mismatch: expected {expected}x{expected} matrices, got {got}x{got2}")]
    DimensionMismatch { expected: usize, got: usize, got2: usize },
}

/// Checked LCT parameters: four N×N exact rational matrices satisfying the
/// symmetry constraints for the given signature.
#[derive(Debug, Clone, PartialEq)]
pub struct LctParams {
    theta: QMat,
    phi: QMat,
    mu: QMat,
    lambda: QMat,
    sig: Signature,
}

/// 2N×2N floating symplectic group element g = exp(A) with addressable
/// blocks g = [[Π, Ξ], [Θ, Λ]].
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub mat: RMat,
    pub sig: Signature,
}

/// 4N×4N exact pseudo-orthogonal generator in the block layout
/// [[λ, −θ, φ, μ], [θ, λ, −μ, φ], [φ, −μ, λ, θ], [μ, φ, −θ, λ]].
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoGenerator {
    pub mat: QMat,
    pub sig: Signature,
}

fn check_symmetry(
    m: &QMat,
    eta: &QMat,
    negate: bool,
    name: &'static str,
) -> Result<(), ParamError> {
    let conj = eta.mul(m).mul(eta);
    let expect = if negate { conj.neg() } else { conj };
    let diff = m.transpose().sub(&expect);
    let witness = linf_rat(&diff);
    if !witness.is_zero() {
        return Err(ParamError::ConstraintViolation { name, witness });
    }
    Ok(())
}

/// Validate the Eq-style parameter constraints exactly and return a checked
/// parameter set.
pub fn validate_params(
    theta: QMat,
    phi: QMat,
    mu: QMat,
    lambda: QMat,
    sig: Signature,
) -> Result<LctParams, ParamError> {
    let n = sig.n();
    for m in [&theta, &phi, &mu, &lambda] {
        if m.rows() != n || m.cols() != n {
            return Err(ParamError::DimensionMismatch { expected: n, got: m.rows(), got2: m.cols() });
        }
    }
    let eta = sig.eta();
    let mut trace = Rat::from_integer(0.into());
    for i in 0..n {
        trace += lambda.get(i, i).clone();
    }
    if !trace.is_zero() {
        return Err(ParamError::ConstraintViolation {
            name: "trace(lambda) != 0",
            witness: trace.abs(),
        });
    }
    check_symmetry(&theta, &eta, false, "theta^T != eta*theta*eta")?;
    check_symmetry(&phi, &eta, false, "phi^T != eta*phi*eta")?;
    check_symmetry(&mu, &eta, false, "mu^T != eta*mu*eta")?;
    check_symmetry(&lambda, &eta, true, "lambda^T != -eta*lambda*eta")?;
    Ok(LctParams { theta, phi, mu, lambda, sig })
}

impl LctParams {
    /// All-zero parameters (the identity LCT).
    pub fn zero(sig: Signature) -> Self {
        let n = sig.n();
        let z = QMat::zeros(n, n);
        LctParams { theta: z.clone(), phi: z.clone(), mu: z.clone(), lambda: z, sig }
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn theta(&self) -> &QMat {
        &self.theta
    }

    pub fn phi(&self) -> &QMat {
        &self.phi
    }

    pub fn mu(&self) -> &QMat {
        &self.mu
    }

    pub fn lambda(&self) -> &QMat {
        &self.lambda
    }

    /// Rescale every parameter matrix by an exact rational factor.
    pub fn scaled(&self, s: &Rat) -> LctParams {
        LctParams {
            theta: self.theta.scale(s),
            phi: self.phi.scale(s),
            mu: self.mu.scale(s),
            lambda: self.lambda.scale(s),
            sig: self.sig,
        }
    }

    pub fn negated(&self) -> LctParams {
        self.scaled(&rat_int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.theta.is_zero() && self.phi.is_zero() && self.mu.is_zero() && self.lambda.is_zero()
    }
}

/// The sl-block generator A = [[λ+μ, φ−θ], [φ+θ, λ−μ]].
pub fn sl_generator(params: &LctParams) -> QMat {
    let n = params.sig.n();
    let mut a = QMat::zeros(2 * n, 2 * n);
    a.set_block(0, 0, &params.lambda.add(&params.mu));
    a.set_block(0, n, &params.phi.sub(&params.theta));
    a.set_block(n, 0, &params.phi.add(&params.theta));
    a.set_block(n, n, &params.lambda.sub(&params.mu));
    a
}

/// g = exp(A), the symplectic group element.
pub fn group_element(params: &LctParams) -> Result<GroupElement, ExpmError> {
    let a = qmat_to_rmat(&sl_generator(params));
    let mat = expm::expm_real(&a)?;
    Ok(GroupElement { mat, sig: params.sig })
}

impl GroupElement {
    /// Blocks (Π, Ξ, Θ, Λ) of g = [[Π, Ξ], [Θ, Λ]].
    pub fn blocks(&self) -> (RMat, RMat, RMat, RMat) {
        let n = self.sig.n();
        (
            self.mat.block(0, 0, n, n),
            self.mat.block(0, n, n, n),
            self.mat.block(n, 0, n, n),
            self.mat.block(n, n, n, n),
        )
    }
}

/// Max-abs entry of gᵀ K g − K; zero for exact group members.
pub fn symplectic_defect(g: &RMat, sig: Signature) -> f64 {
    let k = qmat_to_rmat(&sig.symplectic_form());
    let gkg = g.transpose().mul(&k).mul(g);
    linf_f64(&gkg.sub(&k))
}

/// Exact algebra membership defect of the sl-block generator:
/// max-abs entry of Aᵀ K + K A.
pub fn sl_membership_defect(a: &QMat, sig: Signature) -> Rat {
    let k = sig.symplectic_form();
    let d = a.transpose().mul(&k).add(&k.mul(a));
    linf_rat(&d)
}

/// The 4N×4N pseudo-orthogonal generator X.
pub fn ortho_generator(params: &LctParams) -> OrthoGenerator {
    let n = params.sig.n();
    let (th, ph, mu, la) = (&params.theta, &params.phi, &params.mu, &params.lambda);
    let mut x = QMat::zeros(4 * n, 4 * n);
    let neg_th = th.neg();
    let neg_mu = mu.neg();
    let rows: [[&QMat; 4]; 4] = [
        [la, &neg_th, ph, mu],
        [th, la, &neg_mu, ph],
        [ph, &neg_mu, la, th],
        [mu, ph, &neg_th, la],
    ];
    for (bi, row) in rows.iter().enumerate() {
        for (bj, blk) in row.iter().enumerate() {
            x.set_block(bi * n, bj * n, blk);
        }
    }
    OrthoGenerator { mat: x, sig: params.sig }
}

/// Exact membership defect: max-abs entry of X·G + G·Xᵀ.
pub fn ortho_defect(x: &OrthoGenerator) -> Rat {
    let g = x.sig.ortho_form();
    let d = x.mat.mul(&g).add(&g.mul(&x.mat.transpose()));
    linf_rat(&d)
}

/// O = exp(X) ∈ SO(2N, 2N), floating point.
pub fn special_orthogonal_element(x: &OrthoGenerator) -> Result<RMat, ExpmError> {
    expm::expm_real(&qmat_to_rmat(&x.mat))
}

/// Residual of the finite orthogonality condition Oᵀ G O − G.
pub fn ortho_element_defect(o: &RMat, sig: Signature) -> f64 {
    let g = qmat_to_rmat(&sig.ortho_form());
    linf_f64(&o.transpose().mul(&g).mul(o).sub(&g))
}

/// Draw random constrained parameters with entries in [−bound, bound].
///
/// Free entries are sampled as fractions num/den with small denominators and
/// the dependent entries filled from the symmetry constraints, so the result
/// validates exactly.
pub fn random_params(rng: &mut impl Rng, sig: Signature, bound: &Rat) -> LctParams {
    let n = sig.n();
    let draw = |rng: &mut dyn rand::RngCore| -> Rat {
        let den = rng.random_range(1..=6i64);
        let num = rng.random_range(-den..=den);
        Rat::new(num.into(), den.into()) * bound.clone()
    };
    let eta_sign = |i: usize, j: usize| rat_int(sig.eta_entry(i) * sig.eta_entry(j));
    // θᵀ = ηθη: diagonal free, upper triangle free, lower = η_i η_j · upper
    let sym_constrained = |rng: &mut dyn rand::RngCore| -> QMat {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, draw(rng));
            for j in i + 1..n {
                let v = draw(rng);
                m.set(j, i, v.clone() * eta_sign(i, j));
                m.set(i, j, v);
            }
        }
        m
    };
    let theta = sym_constrained(rng);
    let phi = sym_constrained(rng);
    let mu = sym_constrained(rng);
    // λᵀ = −ηλη: zero diagonal, lower = −η_i η_j · upper; trace vanishes
    let mut lambda = QMat::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = draw(rng);
            lambda.set(j, i, -(v.clone() * eta_sign(i, j)));
            lambda.set(i, j, v);
        }
    }
    validate_params(theta, phi, mu, lambda, sig).expect("constrained draw must validate")
}

/// Deterministic generic parameters with every free entry nonzero and
/// distinct; used by the convention probes, which need all coefficient
/// channels populated without threading an RNG.
pub fn generic_params(sig: Signature) -> LctParams {
    let n = sig.n();
    let mut counter = 0i64;
    let mut next = || {
        counter += 1;
        Rat::new(1.into(), (counter + 2).into())
    };
    let eta_sign = |i: usize, j: usize| rat_int(sig.eta_entry(i) * sig.eta_entry(j));
    let sym_constrained = |next: &mut dyn FnMut() -> Rat| -> QMat {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, next());
            for j in i + 1..n {
                let v = next();
                m.set(j, i, v.clone() * eta_sign(i, j));
                m.set(i, j, v);
            }
        }
        m
    };
    let theta = sym_constrained(&mut next);
    let phi = sym_constrained(&mut next);
    let mu = sym_constrained(&mut next);
    let mut lambda = QMat::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = next();
            lambda.set(j, i, -(v.clone() * eta_sign(i, j)));
            lambda.set(i, j, v);
        }
    }
    validate_params(theta, phi, mu, lambda, sig).expect("generic params must validate")
}

/// Single-direction parameter sets for probes and invariant checks.
pub fn direction_params(sig: Signature, which: Direction, value: Rat) -> LctParams {
    let n = sig.n();
    let mut m = QMat::zeros(n, n);
    for i in 0..n {
        m.set(i, i, value.clone());
    }
    let z = QMat::zeros(n, n);
    let (theta, phi, mu) = match which {
        Direction::Theta => (m, z.clone(), z.clone()),
        Direction::Phi => (z.clone(), m, z.clone()),
        Direction::Mu => (z.clone(), z.clone(), m),
    };
    validate_params(theta, phi, mu, QMat::zeros(n, n), sig).expect("diagonal direction validates")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Theta,
    Phi,
    Mu,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sig1() -> Signature {
        Signature::new(1, 0)
    }

    #[test]
    fn zero_params_are_valid_and_give_identities() {
        let p = LctParams::zero(sig1());
        assert_eq!(sl_generator(&p), QMat::zeros(2, 2));
        let g = group_element(&p).unwrap();
        assert!(linf_f64(&g.mat.sub(&RMat::identity(2))) < 1e-15);
        let x = ortho_generator(&p);
        assert!(x.mat.is_zero());
        assert!(ortho_defect(&x).is_zero());
    }

    #[test]
    fn one_dim_lambda_must_vanish() {
        let five = QMat::from_vec(1, 1, vec![rat_int(5)]);
        let z = QMat::zeros(1, 1);
        let err = validate_params(z.clone(), z.clone(), z, five, sig1()).unwrap_err();
        match err {
            ParamError::ConstraintViolation { name, .. } => {
                assert!(name.contains("lambda"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn theta_offdiagonal_constraint_at_indefinite_signature() {
        // brute-force oracle: expand (ηθη)ᵀ entrywise for η = diag(1, −1);
        // θ = [[0, 1], [a, 0]] satisfies θᵀ = ηθη iff a = −1
        let sig = Signature::new(1, 1);
        let z = QMat::zeros(2, 2);
        for a in [-1i64, 0, 1, 2] {
            let theta = QMat::from_vec(2, 2, vec![rat_int(0), rat_int(1), rat_int(a), rat_int(0)]);
            let res = validate_params(theta, z.clone(), z.clone(), z.clone(), sig);
            if a == -1 {
                assert!(res.is_ok(), "a = -1 must validate");
            } else {
                assert!(res.is_err(), "a = {a} must be rejected");
            }
        }
    }

    #[test]
    fn sl_generator_matches_one_dim_parameterization() {
        // θ-only: [[0, −t], [t, 0]]
        let t = rat(1, 3);
        let p = direction_params(sig1(), Direction::Theta, t.clone());
        let a = sl_generator(&p);
        assert_eq!(*a.get(0, 1), -t.clone());
        assert_eq!(*a.get(1, 0), t);
        // μ-only: diag(m, −m)
        let m = rat(2, 5);
        let p = direction_params(sig1(), Direction::Mu, m.clone());
        let a = sl_generator(&p);
        assert_eq!(*a.get(0, 0), m.clone());
        assert_eq!(*a.get(1, 1), -m);
    }

    #[test]
    fn group_element_closed_forms() {
        // derived by summing the exponential series of the 2×2 generators
        let t = 0.25f64;
        let p = direction_params(sig1(), Direction::Theta, rat(1, 4));
        let g = group_element(&p).unwrap();
        assert!((g.mat.get(0, 0) - t.cos()).abs() < 1e-13);
        assert!((g.mat.get(0, 1) + t.sin()).abs() < 1e-13);
        assert!((g.mat.get(1, 0) - t.sin()).abs() < 1e-13);

        let p = direction_params(sig1(), Direction::Mu, rat(1, 2));
        let g = group_element(&p).unwrap();
        assert!((g.mat.get(0, 0) - 0.5f64.exp()).abs() < 1e-13);
        assert!((g.mat.get(1, 1) - (-0.5f64).exp()).abs() < 1e-13);
        assert!(g.mat.get(0, 1).abs() < 1e-15);
    }

    #[test]
    fn symplectic_defect_of_scaling_matrix() {
        // gᵀKg = 4K for g = 2I, so the defect is the max entry of 3K
        let g = RMat::from_vec(2, 2, vec![2.0, 0.0, 0.0, 2.0]);
        assert!((symplectic_defect(&g, sig1()) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn ortho_generator_matches_four_dim_layout() {
        let p = direction_params(sig1(), Direction::Theta, rat_int(1));
        let x = ortho_generator(&p);
        let expect = QMat::from_vec(4, 4, vec![
            rat_int(0), rat_int(-1), rat_int(0), rat_int(0),
            rat_int(1), rat_int(0), rat_int(0), rat_int(0),
            rat_int(0), rat_int(0), rat_int(0), rat_int(1),
            rat_int(0), rat_int(0), rat_int(-1), rat_int(0),
        ]);
        assert_eq!(x.mat, expect);

        let p = direction_params(sig1(), Direction::Mu, rat_int(1));
        let x = ortho_generator(&p);
        assert_eq!(*x.mat.get(0, 3), rat_int(1));
        assert_eq!(*x.mat.get(3, 0), rat_int(1));
        assert_eq!(*x.mat.get(1, 2), rat_int(-1));
        assert_eq!(*x.mat.get(2, 1), rat_int(-1));
        assert!(ortho_defect(&x).is_zero());
    }

    #[test]
    fn ortho_defect_of_identity_is_two() {
        let x = OrthoGenerator { mat: QMat::identity(4), sig: sig1() };
        assert_eq!(ortho_defect(&x), rat_int(2));
    }

    #[test]
    fn random_params_have_exact_memberships() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for sig in [Signature::new(1, 0), Signature::new(2, 0), Signature::new(1, 1)] {
            for _ in 0..20 {
                let p = random_params(&mut rng, sig, &rat_int(1));
                let a = sl_generator(&p);
                assert!(sl_membership_defect(&a, sig).is_zero());
                assert!(ortho_defect(&ortho_generator(&p)).is_zero());
            }
        }
    }

    #[test]
    fn group_element_inverse_and_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_params(&mut rng, sig1(), &rat(1, 2));
        let g = group_element(&p).unwrap();
        let ginv = group_element(&p.negated()).unwrap();
        assert!(linf_f64(&g.mat.mul(&ginv.mat).sub(&RMat::identity(2))) < 1e-9);

        // θ-direction composes additively
        let g1 = group_element(&direction_params(sig1(), Direction::Theta, rat(1, 5))).unwrap();
        let g2 = group_element(&direction_params(sig1(), Direction::Theta, rat(2, 5))).unwrap();
        let g12 = group_element(&direction_params(sig1(), Direction::Theta, rat(3, 5))).unwrap();
        assert!(linf_f64(&g1.mat.mul(&g2.mat).sub(&g12.mat)) < 1e-10);
    }

    #[test]
    fn special_orthogonal_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for sig in [Signature::new(1, 0), Signature::new(1, 1)] {
            let p = random_params(&mut rng, sig, &rat(1, 2));
            let x = ortho_generator(&p);
            let o = special_orthogonal_element(&x).unwrap();
            assert!(ortho_element_defect(&o, sig) < 1e-10);
            assert!((expm::det_real(&o) - 1.0).abs() < 1e-8);
        }
    }
}
