//! The spin-algebra element ϑ, its exponential S, and the double-cover
//! correspondence with the pseudo-orthogonal action.
//!
//! ϑ is the bivector of C(2N, 2N) whose adjoint action reproduces the
//! generator X on the labelled basis Γ = (α₊^μ, β₊^μ, β₋^μ, α₋^μ):
//!
//! ```text
//! [ϑ, Γ_b] = Σ_a X_ba Γ_a            (exact, rational arithmetic)
//! S Γ_b S⁻¹ = Σ_a O_ba Γ_a,  O = exp(X),  S = exp(ϑ)
//! ```
//!
//! The Γ ↔ row-block dictionary is frozen in [`crate::clifford::Family`]:
//! α₊ with p⁺, β₊ with x⁻, β₋ with x⁺, α₋ with p⁻, matching the row order
//! of X.
//!
//! The tabulated closed forms for ϑ circulate in two versions that
//! disagree on the sign of the μ-term, and the usual λ normalization is
//! off by a factor of two; neither choice is hard-coded.
//! [`convention_probe`] enumerates the candidates and returns the unique
//! combination for which the first-order cover defect vanishes exactly;
//! the winners are the μ-term pairing (α₊^μ α₋^ν − β₊^ν β₋^μ) with overall
//! sign −1/2·(ηm), and λ coefficient 1/4.

use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::clifford::{label_lct_generators, LctGenerators};
use crate::expm::{self, ExpmError};
use crate::lct::{
    group_element, ortho_generator, sl_generator, sl_membership_defect, symplectic_defect,
    GroupElement, LctParams, OrthoGenerator,
};
use crate::mat::{
    gmat_to_cmat, imat_to_cmat, imat_to_gmat, linf_c64, linf_gauss, qmat_to_rmat, rat, rat_int,
    CMat, GMat, Gauss, QMat, RMat, Rat, C64,
};
use crate::signature::Signature;

#[derive(Debug, Error)]
pub enum ConventionError {
    #[error("no candidate convention reproduces the generator action")]
    NoConsistentConvention,
    #[error("multiple candidate conventions pass; parameters do not discriminate: {0:?}")]
    AmbiguousConvention(Vec<SpinConvention>),
}

/// The two candidate forms of the μ-term of ϑ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum MuVariant {
    /// μ-term pairing (α₊^μ α₋^ν − β₊^ν β₋^μ), the one-dimensional form.
    AlphaMinusBeta,
    /// μ-term pairing (α₊^μ α₋^ν + β₊^ν β₋^μ), the rejected alternative.
    AlphaPlusBeta,
}

/// λ-term normalization candidates; the probe selects 1/4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum LambdaFactor {
    Half,
    Quarter,
}

/// A fully resolved sign convention for ϑ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SpinConvention {
    /// Global sign of ϑ.
    pub sign: i8,
    pub mu_variant: MuVariant,
    pub lambda_factor: LambdaFactor,
}

impl SpinConvention {
    pub fn candidates() -> Vec<SpinConvention> {
        let mut out = Vec::new();
        for sign in [1i8, -1] {
            for mu_variant in [MuVariant::AlphaMinusBeta, MuVariant::AlphaPlusBeta] {
                for lambda_factor in [LambdaFactor::Quarter, LambdaFactor::Half] {
                    out.push(SpinConvention { sign, mu_variant, lambda_factor });
                }
            }
        }
        out
    }
}

/// The spin-algebra generator: an exact bivector combination of the
/// labelled Clifford generators, dim = 2^(2N).
#[derive(Debug, Clone)]
pub struct SpinGenerator {
    pub mat: GMat,
    pub params: LctParams,
    pub convention: SpinConvention,
}

/// Assemble ϑ from the parameters under an explicit convention.
///
/// With contractions written through (η·θ) etc., the terms are
///
/// ```text
/// ϑ = 1/2·(ηθ)_νμ (α₊^μ β₊^ν + β₋^ν α₋^μ)
///   − 1/2·(ηφ)_νμ (α₊^μ β₋^ν + β₊^ν α₋^μ)
///   ∓ 1/2·(ηm)_νμ (α₊^μ α₋^ν ∓ β₊^ν β₋^μ)     (μ-variant)
///   + f·(ηλ)_νμ (α₊^μ α₊^ν + β₊^μ β₊^ν − β₋^μ β₋^ν − α₋^μ α₋^ν)
/// ```
///
/// all multiplied by the global sign, with f the λ factor (1/4 or 1/2).
pub fn spin_generator_with(
    params: &LctParams,
    lg: &LctGenerators,
    convention: SpinConvention,
) -> SpinGenerator {
    let sig = params.sig();
    assert_eq!(sig, lg.sig, "generator set and parameters must share a signature");
    let n = sig.n();
    let dim = lg.dim;
    let eta = sig.eta();
    let contract = |m: &QMat| eta.mul(m);
    let th = contract(params.theta());
    let ph = contract(params.phi());
    let mm = contract(params.mu());
    let ll = contract(params.lambda());

    let mut acc = GMat::zeros(dim, dim);
    let mut add_bivector = |coef: Rat, a: &crate::mat::IMat, b: &crate::mat::IMat| {
        if coef.is_zero() {
            return;
        }
        let prod = imat_to_gmat(&a.mul(b));
        let g = crate::mat::Gauss::new(coef, Rat::zero());
        acc = acc.add(&prod.scale(&g));
    };

    let half = rat(1, 2);
    let lam_f = match convention.lambda_factor {
        LambdaFactor::Half => rat(1, 2),
        LambdaFactor::Quarter => rat(1, 4),
    };
    let mu_sign = match convention.mu_variant {
        MuVariant::AlphaMinusBeta => rat_int(-1),
        MuVariant::AlphaPlusBeta => rat_int(1),
    };
    let global = rat_int(convention.sign as i64);

    for mu in 0..n {
        for nu in 0..n {
            // θ-term: +1/2 (ηθ)_νμ (α₊^μ β₊^ν + β₋^ν α₋^μ)
            let c = global.clone() * half.clone() * th.get(nu, mu).clone();
            add_bivector(c.clone(), &lg.alpha_plus[mu], &lg.beta_plus[nu]);
            add_bivector(c, &lg.beta_minus[nu], &lg.alpha_minus[mu]);
            // φ-term: −1/2 (ηφ)_νμ (α₊^μ β₋^ν + β₊^ν α₋^μ)
            let c = -(global.clone() * half.clone() * ph.get(nu, mu).clone());
            add_bivector(c.clone(), &lg.alpha_plus[mu], &lg.beta_minus[nu]);
            add_bivector(c, &lg.beta_plus[nu], &lg.alpha_minus[mu]);
            // μ-term: (mu_sign)·1/2 (ηm)_νμ (α₊^μ α₋^ν + (mu_sign)·β₊^ν β₋^μ)
            let base = global.clone() * half.clone() * mm.get(nu, mu).clone();
            add_bivector(mu_sign.clone() * base.clone(), &lg.alpha_plus[mu], &lg.alpha_minus[nu]);
            add_bivector(base, &lg.beta_plus[nu], &lg.beta_minus[mu]);
            // λ-term: +f (ηλ)_νμ (α₊^μ α₊^ν + β₊^μ β₊^ν − β₋^μ β₋^ν − α₋^μ α₋^ν)
            let c = global.clone() * lam_f.clone() * ll.get(nu, mu).clone();
            add_bivector(c.clone(), &lg.alpha_plus[mu], &lg.alpha_plus[nu]);
            add_bivector(c.clone(), &lg.beta_plus[mu], &lg.beta_plus[nu]);
            add_bivector(-c.clone(), &lg.beta_minus[mu], &lg.beta_minus[nu]);
            add_bivector(-c, &lg.alpha_minus[mu], &lg.alpha_minus[nu]);
        }
    }
    SpinGenerator { mat: acc, params: params.clone(), convention }
}

/// ϑ under the library convention resolved by the probe.
pub fn spin_generator(params: &LctParams, lg: &LctGenerators) -> SpinGenerator {
    spin_generator_with(params, lg, resolved_convention())
}

/// The convention selected by [`convention_probe`] on generic parameters.
/// Probes at any N ≥ 2 and N = 1 agree, so this is a plain constant.
pub fn resolved_convention() -> SpinConvention {
    SpinConvention {
        sign: 1,
        mu_variant: MuVariant::AlphaMinusBeta,
        lambda_factor: LambdaFactor::Quarter,
    }
}

/// Exact coordinates of a matrix in the bivector subspace spanned by the
/// Γ_a Γ_b with a < b, or None when the matrix has content outside that
/// span. Solved by Gaussian elimination over the Gaussian rationals, so a
/// `Some` answer is a certificate that the matrix is a spin-algebra element.
pub fn bivector_coefficients(mat: &GMat, lg: &LctGenerators) -> Option<Vec<Gauss>> {
    let basis = lg.basis();
    let dim = lg.dim;
    let mut columns: Vec<GMat> = Vec::new();
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            columns.push(imat_to_gmat(&basis[a].mul(basis[b])));
        }
    }
    let ncols = columns.len();
    // augmented system: rows are flattened matrix entries
    let mut aug: Vec<Vec<Gauss>> = (0..dim * dim)
        .map(|idx| {
            let (i, j) = (idx / dim, idx % dim);
            let mut row: Vec<Gauss> = columns.iter().map(|c| c.get(i, j).clone()).collect();
            row.push(mat.get(i, j).clone());
            row
        })
        .collect();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut next_row = 0usize;
    for col in 0..ncols {
        let Some(p) = (next_row..aug.len()).find(|&r| !aug[r][col].is_zero()) else {
            pivot_rows.push(usize::MAX);
            continue;
        };
        aug.swap(next_row, p);
        let inv = Gauss::new(Rat::from_integer(1.into()), Rat::zero()) / aug[next_row][col].clone();
        for x in aug[next_row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..aug.len() {
            if r != next_row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for k in 0..=ncols {
                    let delta = f.clone() * aug[next_row][k].clone();
                    aug[r][k] = aug[r][k].clone() - delta;
                }
            }
        }
        pivot_rows.push(next_row);
        next_row += 1;
    }
    // inconsistent if any zero row has a nonzero rhs
    for r in next_row..aug.len() {
        if !aug[r][ncols].is_zero() {
            return None;
        }
    }
    let mut coeffs = vec![Gauss::new(Rat::zero(), Rat::zero()); ncols];
    for (col, &pr) in pivot_rows.iter().enumerate() {
        if pr != usize::MAX {
            coeffs[col] = aug[pr][ncols].clone();
        }
    }
    Some(coeffs)
}

/// Exact first-order cover defect:
/// max over b of max-abs-entry of [ϑ, Γ_b] − Σ_a X_ba Γ_a.
pub fn first_order_cover_defect(theta: &SpinGenerator, lg: &LctGenerators) -> Rat {
    let x = ortho_generator(&theta.params);
    first_order_defect_against(&theta.mat, &x, lg)
}

fn first_order_defect_against(theta: &GMat, x: &OrthoGenerator, lg: &LctGenerators) -> Rat {
    let basis = lg.basis();
    let mut worst = Rat::zero();
    for (b, gamma) in basis.iter().enumerate() {
        let g = imat_to_gmat(gamma);
        let lhs = theta.mul(&g).sub(&g.mul(theta));
        let mut rhs = GMat::zeros(lg.dim, lg.dim);
        for (a, target) in basis.iter().enumerate() {
            let coef = x.mat.get(b, a);
            if !coef.is_zero() {
                rhs = rhs.add(&imat_to_gmat(target).scale(&crate::mat::Gauss::new(coef.clone(), Rat::zero())));
            }
        }
        let defect = linf_gauss(&lhs.sub(&rhs));
        if defect > worst {
            worst = defect;
        }
    }
    worst
}

/// Outcome of probing one candidate convention.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ProbeCandidate {
    pub convention: SpinConvention,
    /// Decimal rendering of the exact defect.
    pub defect: String,
    pub passes: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ProbeOutcome {
    pub winner: SpinConvention,
    pub candidates: Vec<ProbeCandidate>,
}

/// Probe the ϑ conventions against a specific parameter set: every
/// candidate (sign, μ-variant, λ-factor) is scored by its exact first-order
/// cover defect. Exactly one candidate must pass; parameters with a zero
/// μ- or λ-channel cannot discriminate and yield `AmbiguousConvention`.
pub fn convention_probe_with_params(
    params: &LctParams,
    lg: &LctGenerators,
) -> Result<ProbeOutcome, ConventionError> {
    let mut candidates = Vec::new();
    let mut winners = Vec::new();
    for convention in SpinConvention::candidates() {
        let theta = spin_generator_with(params, lg, convention);
        let defect = first_order_cover_defect(&theta, lg);
        let passes = defect.is_zero();
        if passes {
            winners.push(convention);
        }
        candidates.push(ProbeCandidate {
            convention,
            defect: format!("{defect}"),
            passes,
        });
    }
    match winners.len() {
        0 => Err(ConventionError::NoConsistentConvention),
        1 => Ok(ProbeOutcome { winner: winners[0], candidates }),
        _ => Err(ConventionError::AmbiguousConvention(winners)),
    }
}

/// Probe with deterministic generic parameters (every coefficient channel
/// populated), so the outcome is a property of the dimension and signature
/// alone. At N = 1 the λ channel is empty by construction (a 1×1 matrix
/// with λᵀ = −λ must vanish), so candidates differing only in the λ factor
/// coincide there and are deduplicated before uniqueness is judged.
pub fn convention_probe(sig: Signature) -> Result<ProbeOutcome, ConventionError> {
    let lg = label_lct_generators(sig).expect("probe sizes are small");
    let params = crate::lct::generic_params(sig);
    match convention_probe_with_params(&params, &lg) {
        Ok(out) => Ok(out),
        Err(ConventionError::AmbiguousConvention(winners)) if sig.n() == 1 => {
            let mut dedup: Vec<SpinConvention> = Vec::new();
            for w in &winners {
                if !dedup.iter().any(|d| d.sign == w.sign && d.mu_variant == w.mu_variant) {
                    dedup.push(*w);
                }
            }
            if dedup.len() == 1 {
                // re-score candidates for the report
                let mut candidates = Vec::new();
                for convention in SpinConvention::candidates() {
                    let theta = spin_generator_with(&params, &lg, convention);
                    let defect = first_order_cover_defect(&theta, &lg);
                    candidates.push(ProbeCandidate {
                        convention,
                        defect: format!("{defect}"),
                        passes: defect.is_zero(),
                    });
                }
                // canonical λ factor from the N ≥ 2 probe
                let winner = SpinConvention {
                    lambda_factor: LambdaFactor::Quarter,
                    ..dedup[0]
                };
                Ok(ProbeOutcome { winner, candidates })
            } else {
                Err(ConventionError::AmbiguousConvention(winners))
            }
        }
        Err(e) => Err(e),
    }
}

/// S = exp(ϑ), numerically.
pub fn spin_element(theta: &SpinGenerator) -> Result<CMat, ExpmError> {
    expm::expm(&gmat_to_cmat(&theta.mat))
}

/// Residuals collected when assembling a bundle.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BundleResiduals {
    /// gᵀKg − K for g = exp(A).
    pub symplectic_defect: f64,
    /// Exact Aᵀ K + K A defect, reported as a flag.
    pub sl_membership_exact: bool,
    /// Exact X·G + G·Xᵀ defect, reported as a flag.
    pub ortho_membership_exact: bool,
    /// OᵀGO − G for O = exp(X).
    pub ortho_element_defect: f64,
    /// det(O) − 1.
    pub det_o_minus_one: f64,
    /// Exact first-order cover defect, reported as a flag.
    pub first_order_exact: bool,
    /// max_b |S Γ_b S⁻¹ − Σ_a O_ba Γ_a|.
    pub double_cover_defect: f64,
    /// det(S) − 1 in modulus.
    pub det_s_minus_one: f64,
}

/// The matched tuple (g, X, O, ϑ, S) realizing the correspondence between an
/// LCT and its spin representative, with all diagnostics.
///
/// S is stored on the 2^(2N)-dimensional spinor space; the trailing ⊗I₂
/// factor that embeds it next to the σ factor of the operator algebra is
/// redundant (it commutes with everything on that factor) and is never
/// materialized.
#[derive(Debug, Clone)]
pub struct SpinBundle {
    pub params: LctParams,
    pub sl_gen: QMat,
    pub group: GroupElement,
    pub ortho_gen: OrthoGenerator,
    pub ortho: RMat,
    pub theta_spin: SpinGenerator,
    pub spin: CMat,
    pub residuals: BundleResiduals,
}

/// max over b of max-abs-entry of S Γ_b S⁻¹ − Σ_a O_ba Γ_a.
///
/// S⁻¹ is formed as exp(−ϑ), which is exact at the generator level; the
/// product S·S⁻¹ is additionally verified against the identity inside the
/// bundle tests.
pub fn double_cover_defect(
    theta: &SpinGenerator,
    spin: &CMat,
    ortho: &RMat,
    lg: &LctGenerators,
) -> Result<f64, ExpmError> {
    let neg = theta.mat.neg();
    let spin_inv = expm::expm(&gmat_to_cmat(&neg))?;
    let basis = lg.basis();
    let mut worst = 0.0f64;
    for (b, gamma) in basis.iter().enumerate() {
        let g = imat_to_cmat(gamma);
        let lhs = spin.mul(&g).mul(&spin_inv);
        let mut rhs = CMat::zeros(lg.dim, lg.dim);
        for (a, target) in basis.iter().enumerate() {
            let coef = *ortho.get(b, a);
            if coef != 0.0 {
                rhs = rhs.add(&imat_to_cmat(target).scale(&C64::new(coef, 0.0)));
            }
        }
        worst = worst.max(linf_c64(&lhs.sub(&rhs)));
    }
    Ok(worst)
}

/// Defect of the finite spin action against the *linearized* orthogonal
/// action I + X. Scales quadratically in the parameter size, which is the
/// observable consistency between the exact first-order match and the
/// finite exponentials: the finite-vs-finite defect is float noise once the
/// convention is right, so the curvature lives entirely in this quantity.
pub fn linearization_defect(
    theta: &SpinGenerator,
    spin: &CMat,
    lg: &LctGenerators,
) -> Result<f64, ExpmError> {
    let x = ortho_generator(&theta.params);
    let lin = RMat::identity(4 * lg.sig.n()).add(&qmat_to_rmat(&x.mat));
    let neg = theta.mat.neg();
    let spin_inv = expm::expm(&gmat_to_cmat(&neg))?;
    let basis = lg.basis();
    let mut worst = 0.0f64;
    for (b, gamma) in basis.iter().enumerate() {
        let g = imat_to_cmat(gamma);
        let lhs = spin.mul(&g).mul(&spin_inv);
        let mut rhs = CMat::zeros(lg.dim, lg.dim);
        for (a, target) in basis.iter().enumerate() {
            let coef = *lin.get(b, a);
            if coef != 0.0 {
                rhs = rhs.add(&imat_to_cmat(target).scale(&C64::new(coef, 0.0)));
            }
        }
        worst = worst.max(linf_c64(&lhs.sub(&rhs)));
    }
    Ok(worst)
}

/// Assemble the full bundle (g, X, O, ϑ, S) for one parameter set under the
/// probed convention.
pub fn rho(params: &LctParams) -> Result<SpinBundle, ExpmError> {
    let sig = params.sig();
    let lg = label_lct_generators(sig).expect("bundle sizes are small");
    let sl_gen = sl_generator(params);
    let group = group_element(params)?;
    let ortho_gen = ortho_generator(params);
    let ortho = crate::lct::special_orthogonal_element(&ortho_gen)?;
    let theta_spin = spin_generator(params, &lg);
    let spin = spin_element(&theta_spin)?;

    let symp = symplectic_defect(&group.mat, sig);
    let sl_exact = sl_membership_defect(&sl_gen, sig).is_zero();
    let ortho_exact = crate::lct::ortho_defect(&ortho_gen).is_zero();
    let oed = crate::lct::ortho_element_defect(&ortho, sig);
    let det_o = expm::det_real(&ortho);
    let first_order = first_order_cover_defect(&theta_spin, &lg).is_zero();
    let dcd = double_cover_defect(&theta_spin, &spin, &ortho, &lg)?;
    let det_s = expm::det(&spin);

    let residuals = BundleResiduals {
        symplectic_defect: symp,
        sl_membership_exact: sl_exact,
        ortho_membership_exact: ortho_exact,
        ortho_element_defect: oed,
        det_o_minus_one: det_o - 1.0,
        first_order_exact: first_order,
        double_cover_defect: dcd,
        det_s_minus_one: (det_s - C64::new(1.0, 0.0)).norm(),
    };
    Ok(SpinBundle { params: params.clone(), sl_gen, group, ortho_gen, ortho, theta_spin, spin, residuals })
}

/// Log-log slope of the linearization defect over a decade of parameter
/// scales; quadratic convergence of the finite action to its linearization
/// shows up as a slope near 2.
pub fn quadratic_scaling_slope(
    params: &LctParams,
    scales: &[Rat],
) -> Result<f64, ExpmError> {
    let lg = label_lct_generators(params.sig()).expect("probe sizes are small");
    let mut points = Vec::new();
    for t in scales {
        let scaled = params.scaled(t);
        let theta = spin_generator(&scaled, &lg);
        let spin = spin_element(&theta)?;
        let defect = linearization_defect(&theta, &spin, &lg)?;
        let tf = crate::mat::rat_to_f64(t);
        points.push((tf.ln(), defect.max(1e-300).ln()));
    }
    // least-squares slope
    let m = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    Ok((m * sxy - sx * sy) / (m * sxx - sx * sx))
}

/// Draw random parameters whose μ and λ channels are guaranteed nonzero so
/// that convention probes stay discriminating.
pub fn random_discriminating_params(
    rng: &mut impl Rng,
    sig: Signature,
    bound: &Rat,
) -> LctParams {
    loop {
        let p = crate::lct::random_params(rng, sig, bound);
        let mu_ok = !p.mu().is_zero();
        let lambda_ok = sig.n() == 1 || !p.lambda().is_zero();
        if mu_ok && lambda_ok {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lct::{direction_params, generic_params, random_params, Direction};
    use crate::mat::linf_f64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sig1() -> Signature {
        Signature::new(1, 0)
    }

    #[test]
    fn zero_params_give_zero_generator() {
        let lg = label_lct_generators(sig1()).unwrap();
        let theta = spin_generator(&LctParams::zero(sig1()), &lg);
        assert!(theta.mat.is_zero());
        assert!(first_order_cover_defect(&theta, &lg).is_zero());
    }

    #[test]
    fn theta_only_generator_is_half_theta_bivector_sum() {
        // ϑ = (θ/2)(α₊β₊ + β₋α₋)
        let lg = label_lct_generators(sig1()).unwrap();
        let t = rat(1, 3);
        let params = direction_params(sig1(), Direction::Theta, t.clone());
        let theta = spin_generator(&params, &lg);
        let expect = imat_to_gmat(&lg.alpha_plus[0].mul(&lg.beta_plus[0]))
            .add(&imat_to_gmat(&lg.beta_minus[0].mul(&lg.alpha_minus[0])))
            .scale(&crate::mat::Gauss::new(t / rat_int(2), Rat::zero()));
        assert_eq!(theta.mat, expect);
    }

    #[test]
    fn one_dim_coefficients_match_identification() {
        // ϑ¹ = θ/2, ϑ² = −φ/2, ϑ³ = −μ/2, ϑ⁴ = μ/2, ϑ⁵ = −φ/2, ϑ⁶ = θ/2
        let lg = label_lct_generators(sig1()).unwrap();
        let params = generic_params(sig1());
        let theta = spin_generator(&params, &lg);
        let th = params.theta().get(0, 0).clone();
        let ph = params.phi().get(0, 0).clone();
        let mm = params.mu().get(0, 0).clone();
        let half = rat(1, 2);
        let coeffs = [
            (th.clone() * half.clone(), [0usize, 1]),   // α₊β₊
            (-(ph.clone() * half.clone()), [0, 2]),     // α₊β₋
            (-(mm.clone() * half.clone()), [0, 3]),     // α₊α₋
            (mm * half.clone(), [1, 2]),                // β₊β₋
            (-(ph * half.clone()), [1, 3]),             // β₊α₋
            (th * half, [2, 3]),                        // β₋α₋
        ];
        let basis = lg.basis();
        let mut expect = GMat::zeros(4, 4);
        for (c, [a, b]) in coeffs {
            let biv = imat_to_gmat(&basis[a].mul(basis[b]));
            expect = expect.add(&biv.scale(&crate::mat::Gauss::new(c, Rat::zero())));
        }
        assert_eq!(theta.mat, expect);
    }

    #[test]
    fn spin_generator_lies_in_the_bivector_subspace() {
        for sig in [sig1(), Signature::new(1, 1)] {
            let lg = label_lct_generators(sig).unwrap();
            let params = generic_params(sig);
            let theta = spin_generator(&params, &lg);
            let coeffs = bivector_coefficients(&theta.mat, &lg)
                .expect("ϑ must project onto the bivector span");
            assert!(coeffs.iter().any(|c| !c.is_zero()));
            // reconstruct and compare exactly
            let basis = lg.basis();
            let mut rebuilt = GMat::zeros(lg.dim, lg.dim);
            let mut k = 0;
            for a in 0..basis.len() {
                for b in a + 1..basis.len() {
                    let biv = imat_to_gmat(&basis[a].mul(basis[b]));
                    rebuilt = rebuilt.add(&biv.scale(&coeffs[k]));
                    k += 1;
                }
            }
            assert_eq!(rebuilt, theta.mat);
        }
    }

    #[test]
    fn non_bivectors_fail_the_projection() {
        let lg = label_lct_generators(sig1()).unwrap();
        // the identity has a scalar component
        assert!(bivector_coefficients(&GMat::identity(4), &lg).is_none());
        // a single generator is grade one
        let gamma = imat_to_gmat(&lg.alpha_plus[0]);
        assert!(bivector_coefficients(&gamma, &lg).is_none());
    }

    #[test]
    fn first_order_defect_zero_on_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for sig in [sig1(), Signature::new(2, 0), Signature::new(1, 1)] {
            let lg = label_lct_generators(sig).unwrap();
            for _ in 0..10 {
                let params = random_params(&mut rng, sig, &rat_int(1));
                let theta = spin_generator(&params, &lg);
                assert!(
                    first_order_cover_defect(&theta, &lg).is_zero(),
                    "sig {sig:?}"
                );
            }
        }
    }

    #[test]
    fn flipped_sign_breaks_first_order() {
        let lg = label_lct_generators(sig1()).unwrap();
        let params = generic_params(sig1());
        let bad = SpinConvention { sign: -1, ..resolved_convention() };
        let theta = spin_generator_with(&params, &lg, bad);
        assert!(!first_order_cover_defect(&theta, &lg).is_zero());
    }

    #[test]
    fn lambda_channel_requires_quarter_normalization() {
        // λ ≠ 0 needs N ≥ 2; the 1/2 factor fails, 1/4 passes
        let sig = Signature::new(1, 1);
        let lg = label_lct_generators(sig).unwrap();
        let params = generic_params(sig);
        assert!(!params.lambda().is_zero(), "generic params must populate λ");
        let quarter = spin_generator_with(&params, &lg, resolved_convention());
        assert!(first_order_cover_defect(&quarter, &lg).is_zero());
        let half = spin_generator_with(
            &params,
            &lg,
            SpinConvention { lambda_factor: LambdaFactor::Half, ..resolved_convention() },
        );
        assert!(!first_order_cover_defect(&half, &lg).is_zero());
    }

    #[test]
    fn probe_returns_unique_convention() {
        for sig in [sig1(), Signature::new(2, 0), Signature::new(1, 1)] {
            let out = convention_probe(sig).unwrap();
            assert_eq!(out.winner, resolved_convention(), "sig {sig:?}");
            assert_eq!(out.candidates.len(), 8);
        }
    }

    #[test]
    fn probe_is_stable_under_rerandomization() {
        let sig = Signature::new(1, 1);
        let lg = label_lct_generators(sig).unwrap();
        for seed in [1u64, 2, 3] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let params = random_discriminating_params(&mut rng, sig, &rat_int(1));
            let out = convention_probe_with_params(&params, &lg).unwrap();
            assert_eq!(out.winner, resolved_convention());
        }
    }

    #[test]
    fn theta_only_params_leave_probe_ambiguous() {
        let lg = label_lct_generators(sig1()).unwrap();
        let params = direction_params(sig1(), Direction::Theta, rat(1, 2));
        match convention_probe_with_params(&params, &lg) {
            Err(ConventionError::AmbiguousConvention(winners)) => {
                assert!(winners.len() > 1);
            }
            other => panic!("expected ambiguity, got {other:?}"),
        }
    }

    #[test]
    fn spin_element_basics() {
        let lg = label_lct_generators(sig1()).unwrap();
        let zero = spin_generator(&LctParams::zero(sig1()), &lg);
        let s = spin_element(&zero).unwrap();
        assert!(linf_c64(&s.sub(&CMat::identity(4))) < 1e-14);

        // S·S⁻¹ = I
        let params = generic_params(sig1());
        let theta = spin_generator(&params, &lg);
        let s = spin_element(&theta).unwrap();
        let sinv = expm::inverse(&s).unwrap();
        assert!(linf_c64(&s.mul(&sinv).sub(&CMat::identity(4))) < 1e-12);
    }

    #[test]
    fn one_parameter_family_composes() {
        let lg = label_lct_generators(sig1()).unwrap();
        let s = |t: Rat| {
            let params = direction_params(sig1(), Direction::Theta, t);
            spin_element(&spin_generator(&params, &lg)).unwrap()
        };
        let s1 = s(rat(1, 5));
        let s2 = s(rat(1, 4));
        let s12 = s(rat(9, 20));
        assert!(linf_c64(&s1.mul(&s2).sub(&s12)) < 1e-9);
    }

    #[test]
    fn double_cover_defect_small_at_n1_and_n2() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..5 {
            let params = random_params(&mut rng, sig1(), &rat(1, 2));
            let bundle = rho(&params).unwrap();
            assert!(bundle.residuals.double_cover_defect < 1e-8);
            assert!(bundle.residuals.first_order_exact);
        }
        for sig in [Signature::new(2, 0), Signature::new(1, 1)] {
            for _ in 0..3 {
                let params = random_params(&mut rng, sig, &rat(1, 2));
                let bundle = rho(&params).unwrap();
                assert!(bundle.residuals.double_cover_defect < 1e-7, "sig {sig:?}");
            }
        }
    }

    #[test]
    fn spin_determinant_is_unimodular() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let params = random_params(&mut rng, Signature::new(1, 1), &rat(1, 2));
        let bundle = rho(&params).unwrap();
        assert!(bundle.residuals.det_s_minus_one < 1e-8);
        assert!(bundle.residuals.det_o_minus_one.abs() < 1e-8);
    }

    #[test]
    fn zero_bundle_is_all_identities() {
        let bundle = rho(&LctParams::zero(sig1())).unwrap();
        assert!(linf_f64(&bundle.group.mat.sub(&RMat::identity(2))) < 1e-14);
        assert!(linf_f64(&bundle.ortho.sub(&RMat::identity(4))) < 1e-14);
        assert!(linf_c64(&bundle.spin.sub(&CMat::identity(4))) < 1e-14);
        assert!(bundle.residuals.double_cover_defect < 1e-13);
    }

    #[test]
    fn spin_action_on_spinors_is_linear() {
        // applying S to column spinors: S(ψ₁ + ψ₂) = Sψ₁ + Sψ₂
        let lg = label_lct_generators(sig1()).unwrap();
        let params = generic_params(sig1());
        let s = spin_element(&spin_generator(&params, &lg)).unwrap();
        let psi1 = CMat::from_fn(4, 1, |i, _| C64::new(i as f64, 1.0));
        let psi2 = CMat::from_fn(4, 1, |i, _| C64::new(0.5, -(i as f64)));
        let lhs = s.mul(&psi1.add(&psi2));
        let rhs = s.mul(&psi1).add(&s.mul(&psi2));
        assert!(linf_c64(&lhs.sub(&rhs)) < 1e-12);
    }

    #[test]
    fn composition_holds_up_to_double_cover_sign() {
        // same one-bivector direction: ϱ(g₁)ϱ(g₂) = ±ϱ(g₁g₂)
        let lg = label_lct_generators(sig1()).unwrap();
        let s = |t: Rat| {
            let params = direction_params(sig1(), Direction::Mu, t);
            spin_element(&spin_generator(&params, &lg)).unwrap()
        };
        let a = s(rat(1, 3)).mul(&s(rat(1, 6)));
        let b = s(rat(1, 2));
        // best-fit scalar via <b, a>/<b, b>
        let mut num = C64::new(0.0, 0.0);
        let mut den = C64::new(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                num += b.get(i, j).conj() * a.get(i, j);
                den += b.get(i, j).conj() * b.get(i, j);
            }
        }
        let scalar = num / den;
        let fit = (scalar - C64::new(1.0, 0.0)).norm()
            .min((scalar + C64::new(1.0, 0.0)).norm());
        assert!(fit < 1e-8, "best-fit scalar {scalar} is not ±1");
        assert!(linf_c64(&a.sub(&b.scale(&scalar))) < 1e-8);
    }

    #[test]
    fn quadratic_scaling_of_linearization_defect() {
        let params = generic_params(sig1());
        let scales = [rat(2, 5), rat(1, 5), rat(1, 10), rat(1, 20), rat(1, 25)];
        let slope = quadratic_scaling_slope(&params, &scales).unwrap();
        assert!(slope >= 1.9, "slope {slope}");
    }
}
