//! Reduced operators, dispersion operators, and the operator product tables.
//!
//! The reduced quadruple
//!
//! ```text
//! p⁺_μ = (σ¹⊗p_μ + σ²⊗x_μ)/√2        x⁻_μ = (σ¹⊗x_μ − σ²⊗p_μ)/√2
//! x⁺_μ = (σ¹⊗x_μ + σ²⊗p_μ)/√2        p⁻_μ = (σ¹⊗p_μ − σ²⊗x_μ)/√2
//! ```
//!
//! spans the 4N-dimensional space on which LCTs act pseudo-orthogonally.
//! Their pairwise products close on the dispersion operators z⁺, z⁻, z^×
//! with inhomogeneous terms proportional to the commutation constant c; the
//! product tables here verify those identities exactly, and
//! [`product_table_1d`] doubles as the oracle that decides the sign of c.
//!
//! [`infinitesimal_consistency`] checks the central representation claim at
//! first order: transforming the symbols by g ≈ I + A and rebuilding the
//! quadruple agrees exactly with the row action (quadruple)·(I + X).

use num_traits::Zero;

use crate::clifford::pauli;
use crate::exact::ExactScalar;
use crate::lct::{ortho_generator, sl_generator, LctParams};
use crate::report::VerificationReport;
use crate::signature::Signature;
use crate::weyl::{ConvKind, Convention, OperatorPoly, WeylPoly};

/// The four reduced-operator families, each a 2×2 σ-coefficient operator
/// polynomial per index μ.
#[derive(Debug, Clone)]
pub struct ReducedQuadruple {
    pub conv: Convention,
    pub pplus: Vec<OperatorPoly>,
    pub xminus: Vec<OperatorPoly>,
    pub xplus: Vec<OperatorPoly>,
    pub pminus: Vec<OperatorPoly>,
}

impl ReducedQuadruple {
    /// Flattened basis in the order (p⁺ block, x⁻ block, x⁺ block, p⁻ block)
    /// matching the rows and columns of the pseudo-orthogonal generator X.
    pub fn basis(&self) -> Vec<&OperatorPoly> {
        self.pplus
            .iter()
            .chain(self.xminus.iter())
            .chain(self.xplus.iter())
            .chain(self.pminus.iter())
            .collect()
    }

    pub fn basis_label(&self, idx: usize) -> String {
        let n = self.conv.n();
        let (block, mu) = (idx / n, idx % n);
        let name = ["p+", "x-", "x+", "p-"][block];
        format!("{name}_{mu}")
    }
}

fn sigma_times(sig_mat: &crate::mat::IMat, f: &WeylPoly) -> OperatorPoly {
    OperatorPoly::from_imat(sig_mat, f.convention()).scale_poly(f)
}

/// Build the quadruple from arbitrary symbol polynomials (p_μ, x_μ). Used
/// both for the canonical symbols and for first-order-transformed ones.
pub fn quadruple_from_symbols(
    conv: Convention,
    p: &[WeylPoly],
    x: &[WeylPoly],
) -> ReducedQuadruple {
    let n = conv.n();
    assert_eq!(p.len(), n);
    assert_eq!(x.len(), n);
    let (s1, s2, _) = pauli();
    let r = ExactScalar::inv_sqrt2();
    let mut quad = ReducedQuadruple {
        conv,
        pplus: Vec::with_capacity(n),
        xminus: Vec::with_capacity(n),
        xplus: Vec::with_capacity(n),
        pminus: Vec::with_capacity(n),
    };
    for mu in 0..n {
        let s1p = sigma_times(&s1, &p[mu]);
        let s1x = sigma_times(&s1, &x[mu]);
        let s2p = sigma_times(&s2, &p[mu]);
        let s2x = sigma_times(&s2, &x[mu]);
        quad.pplus.push(s1p.add(&s2x).scale(&r));
        quad.xminus.push(s1x.sub(&s2p).scale(&r));
        quad.xplus.push(s1x.add(&s2p).scale(&r));
        quad.pminus.push(s1p.sub(&s2x).scale(&r));
    }
    quad
}

/// The reduced quadruple over the canonical symbols.
pub fn build_reduced(conv: Convention) -> ReducedQuadruple {
    let n = conv.n();
    let p: Vec<WeylPoly> = (0..n).map(|mu| WeylPoly::p(conv, mu)).collect();
    let x: Vec<WeylPoly> = (0..n).map(|mu| WeylPoly::x(conv, mu)).collect();
    quadruple_from_symbols(conv, &p, &x)
}

/// Dispersion operators, stored as scalar polynomials indexed by (μ, ν).
///
/// `zcross` is the raw pairing (p_μ x_ν + x_ν p_μ)/4; its symmetric and
/// antisymmetric parts are stored separately because the product tables use
/// all three and the operator square uses both parts with different
/// bivector coefficients.
#[derive(Debug, Clone)]
pub struct DispersionOps {
    pub conv: Convention,
    pub zplus: Vec<Vec<WeylPoly>>,
    pub zminus: Vec<Vec<WeylPoly>>,
    pub zcross: Vec<Vec<WeylPoly>>,
    pub zcross_sym: Vec<Vec<WeylPoly>>,
    pub zcross_anti: Vec<Vec<WeylPoly>>,
}

pub fn build_dispersion(conv: Convention) -> DispersionOps {
    let n = conv.n();
    let quarter = ExactScalar::ratio(1, 4);
    let half = ExactScalar::ratio(1, 2);
    let p: Vec<WeylPoly> = (0..n).map(|mu| WeylPoly::p(conv, mu)).collect();
    let x: Vec<WeylPoly> = (0..n).map(|mu| WeylPoly::x(conv, mu)).collect();
    let mut zplus = Vec::new();
    let mut zminus = Vec::new();
    let mut zcross = Vec::new();
    for mu in 0..n {
        let mut rp = Vec::new();
        let mut rm = Vec::new();
        let mut rc = Vec::new();
        for nu in 0..n {
            let pp = p[mu].mul(&p[nu]);
            let xx = x[mu].mul(&x[nu]);
            rp.push(pp.add(&xx).scale(&quarter));
            rm.push(pp.sub(&xx).scale(&quarter));
            rc.push(p[mu].mul(&x[nu]).add(&x[nu].mul(&p[mu])).scale(&quarter));
        }
        zplus.push(rp);
        zminus.push(rm);
        zcross.push(rc);
    }
    let mut zcross_sym = Vec::new();
    let mut zcross_anti = Vec::new();
    for mu in 0..n {
        let mut rs = Vec::new();
        let mut ra = Vec::new();
        for nu in 0..n {
            rs.push(zcross[mu][nu].add(&zcross[nu][mu]).scale(&half));
            ra.push(zcross[mu][nu].sub(&zcross[nu][mu]).scale(&half));
        }
        zcross_sym.push(rs);
        zcross_anti.push(ra);
    }
    DispersionOps { conv, zplus, zminus, zcross, zcross_sym, zcross_anti }
}

fn four_i() -> ExactScalar {
    ExactScalar::i() * ExactScalar::from_int(4)
}

fn check_op(report: &mut VerificationReport, id: String, diff: OperatorPoly) {
    match diff.first_nonzero() {
        None => report.pass(id),
        Some(w) => report.fail(id, w),
    }
}

/// The seven-line one-dimensional product table, checked with its concrete
/// inhomogeneous constants. Exactly one choice of the commutation
/// constant makes all lines pass; this is the convention oracle.
///
/// All commutators are taken in the standard order [A, B] = AB − BA
/// (tabulations of the last line sometimes spell the operand order
/// backwards; the standard order is what holds).
pub fn product_table_1d(kind: ConvKind) -> VerificationReport {
    let conv = Convention::new(kind, Signature::new(1, 0));
    let mut report = VerificationReport::new(format!("product-1d({})", kind.label()));
    let quad = build_reduced(conv);
    let disp = build_dispersion(conv);
    let (_, _, s3) = pauli();
    let sigma3 = OperatorPoly::from_imat(&s3, conv);
    let id2 = OperatorPoly::identity(2, conv);
    let (pp, xm, xp, pm) = (&quad.pplus[0], &quad.xminus[0], &quad.xplus[0], &quad.pminus[0]);
    let (zp, zm, zc) = (&disp.zplus[0][0], &disp.zminus[0][0], &disp.zcross[0][0]);
    let i = ExactScalar::i();

    // (p⁺)² + (x⁻)² − (x⁺)² − (p⁻)² = 2σ³
    let lhs = pp
        .mat_mul(pp)
        .add(&xm.mat_mul(xm))
        .sub(&xp.mat_mul(xp))
        .sub(&pm.mat_mul(pm));
    check_op(&mut report, "(p+)^2 + (x-)^2 - (x+)^2 - (p-)^2 = 2*s3".into(),
        lhs.sub(&sigma3.scale(&ExactScalar::from_int(2))));

    // [p⁺, x⁻] = −4i·z⁺·σ³ − i
    let rhs = sigma3.scale_poly(zp).scale(&-four_i()).add(&id2.scale(&-i.clone()));
    check_op(&mut report, "[p+, x-] = -4i*z+*s3 - i".into(), pp.commutator(xm).sub(&rhs));

    // [p⁺, x⁺] = 4i·z⁻·σ³
    let rhs = sigma3.scale_poly(zm).scale(&four_i());
    check_op(&mut report, "[p+, x+] = 4i*z-*s3".into(), pp.commutator(xp).sub(&rhs));

    // [p⁺, p⁻] = −4i·z^×·σ³
    let rhs = sigma3.scale_poly(zc).scale(&-four_i());
    check_op(&mut report, "[p+, p-] = -4i*zx*s3".into(), pp.commutator(pm).sub(&rhs));

    // [x⁻, x⁺] = 4i·z^×·σ³
    let rhs = sigma3.scale_poly(zc).scale(&four_i());
    check_op(&mut report, "[x-, x+] = 4i*zx*s3".into(), xm.commutator(xp).sub(&rhs));

    // [x⁻, p⁻] = 4i·z⁻·σ³
    let rhs = sigma3.scale_poly(zm).scale(&four_i());
    check_op(&mut report, "[x-, p-] = 4i*z-*s3".into(), xm.commutator(pm).sub(&rhs));

    // [x⁺, p⁻] = −4i·z⁺·σ³ + i
    let rhs = sigma3.scale_poly(zp).scale(&-four_i()).add(&id2.scale(&i));
    check_op(&mut report, "[x+, p-] = -4i*z+*s3 + i".into(), xp.commutator(pm).sub(&rhs));

    report
}

/// The multidimensional product table over all index pairs.
///
/// The inhomogeneous terms are written through the convention constant
/// c_μν itself, so the table is exact under either sign choice: at
/// c = +i·η the inhomogeneous constants read +i·η_μν, and at the library
/// default c = −i·η its N = 1 specialization coincides line for line with
/// [`product_table_1d`]. The [x⁻_ν, p⁻_μ] line is sometimes quoted with a
/// negative coefficient; it comes out +4iσ³z⁻, as the N = 1 table
/// independently confirms.
pub fn product_table_nd(kind: ConvKind, sig: Signature) -> VerificationReport {
    let conv = Convention::new(kind, sig);
    let n = sig.n();
    let mut report =
        VerificationReport::new(format!("product-nd(n={n},{})", kind.label()));
    if n > 3 {
        report.fail("size-limit", format!("n = {n} exceeds the n <= 3 table guard"));
        return report;
    }
    let quad = build_reduced(conv);
    let disp = build_dispersion(conv);
    let (_, _, s3) = pauli();
    let sigma3 = OperatorPoly::from_imat(&s3, conv);
    let id2 = OperatorPoly::identity(2, conv);

    let two_i = ExactScalar::i() * ExactScalar::from_int(2);
    let half_i = ExactScalar::i() * ExactScalar::ratio(1, 2);

    for mu in 0..n {
        for nu in 0..n {
            let c = conv.c(mu, nu);
            let zp = &disp.zplus[mu][nu];
            let zm = &disp.zminus[mu][nu];
            let zs = &disp.zcross_sym[mu][nu];
            let za = &disp.zcross_anti[mu][nu];

            // diagonal-family products: F_μ F_ν = 2z⁺ ± [2i·σ³·z^×_anti + (i/2)σ³c]
            let sym_part = id2.scale_poly(zp).scale(&ExactScalar::from_int(2));
            let skew_part = sigma3
                .scale_poly(za)
                .scale(&two_i)
                .add(&sigma3.scale(&(half_i.clone() * c.clone())));
            let plus_rhs = sym_part.add(&skew_part);
            let minus_rhs = sym_part.sub(&skew_part);

            check_op(&mut report, format!("p+_{mu} p+_{nu}"),
                quad.pplus[mu].mat_mul(&quad.pplus[nu]).sub(&plus_rhs));
            check_op(&mut report, format!("x-_{mu} x-_{nu}"),
                quad.xminus[mu].mat_mul(&quad.xminus[nu]).sub(&plus_rhs));
            check_op(&mut report, format!("x+_{mu} x+_{nu}"),
                quad.xplus[mu].mat_mul(&quad.xplus[nu]).sub(&minus_rhs));
            check_op(&mut report, format!("p-_{mu} p-_{nu}"),
                quad.pminus[mu].mat_mul(&quad.pminus[nu]).sub(&minus_rhs));

            // [p⁺_μ, x⁻_ν] = −4i·σ³·z⁺ + c
            let rhs = sigma3.scale_poly(zp).scale(&-four_i()).add(&id2.scale(&c));
            check_op(&mut report, format!("[p+_{mu}, x-_{nu}]"),
                quad.pplus[mu].commutator(&quad.xminus[nu]).sub(&rhs));

            // [p⁺_μ, x⁺_ν] = 4i·σ³·z⁻
            let rhs = sigma3.scale_poly(zm).scale(&four_i());
            check_op(&mut report, format!("[p+_{mu}, x+_{nu}]"),
                quad.pplus[mu].commutator(&quad.xplus[nu]).sub(&rhs));

            // [p⁺_μ, p⁻_ν] = −4i·σ³·z^×_sym
            let rhs = sigma3.scale_poly(zs).scale(&-four_i());
            check_op(&mut report, format!("[p+_{mu}, p-_{nu}]"),
                quad.pplus[mu].commutator(&quad.pminus[nu]).sub(&rhs));

            // [x⁻_ν, x⁺_μ] = 4i·σ³·z^×_sym
            let rhs = sigma3.scale_poly(zs).scale(&four_i());
            check_op(&mut report, format!("[x-_{nu}, x+_{mu}]"),
                quad.xminus[nu].commutator(&quad.xplus[mu]).sub(&rhs));

            // [x⁻_ν, p⁻_μ] = 4i·σ³·z⁻ (sign fixed by the N = 1 table)
            let rhs = sigma3.scale_poly(zm).scale(&four_i());
            check_op(&mut report, format!("[x-_{nu}, p-_{mu}]"),
                quad.xminus[nu].commutator(&quad.pminus[mu]).sub(&rhs));

            // [x⁺_ν, p⁻_μ] = −4i·σ³·z⁺ − c
            let rhs = sigma3.scale_poly(zp).scale(&-four_i()).sub(&id2.scale(&c));
            check_op(&mut report, format!("[x+_{nu}, p-_{mu}]"),
                quad.xplus[nu].commutator(&quad.pminus[mu]).sub(&rhs));

        }
    }
    report
}

/// First-order representation consistency.
///
/// Transform the symbols by the row action v' = v·(I + A) with
/// A = sl_generator(params), rebuild the reduced quadruple from the
/// transformed symbols, and compare exactly with the row action
/// (quadruple)·(I + X) of the pseudo-orthogonal generator. Parameters enter
/// linearly as exact rationals on both sides, so no second-order bookkeeping
/// arises and the comparison is exact polynomial equality.
pub fn infinitesimal_consistency(params: &LctParams, kind: ConvKind) -> VerificationReport {
    let sig = params.sig();
    let n = sig.n();
    let conv = Convention::new(kind, sig);
    let mut report = VerificationReport::new(format!("infinitesimal(n={n})"));

    let p: Vec<WeylPoly> = (0..n).map(|mu| WeylPoly::p(conv, mu)).collect();
    let x: Vec<WeylPoly> = (0..n).map(|mu| WeylPoly::x(conv, mu)).collect();
    let symbols: Vec<&WeylPoly> = p.iter().chain(x.iter()).collect();

    let a = sl_generator(params);
    // v'_b = v_b + Σ_a v_a A_ab
    let transformed: Vec<WeylPoly> = (0..2 * n)
        .map(|b| {
            let mut acc = symbols[b].clone();
            for (idx, sym) in symbols.iter().enumerate() {
                let coef = a.get(idx, b);
                if !coef.is_zero() {
                    acc = acc.add(&sym.scale(&ExactScalar::from_rat(coef.clone())));
                }
            }
            acc
        })
        .collect();
    let (pt, xt) = transformed.split_at(n);
    let lhs = quadruple_from_symbols(conv, pt, xt);

    let quad = build_reduced(conv);
    let w = quad.basis();
    let xgen = ortho_generator(params);
    for b in 0..4 * n {
        // rhs_b = w_b + Σ_a w_a X_ab
        let mut rhs = w[b].clone();
        for (idx, op) in w.iter().enumerate() {
            let coef = xgen.mat.get(idx, b);
            if !coef.is_zero() {
                rhs = rhs.add(&op.scale(&ExactScalar::from_rat(coef.clone())));
            }
        }
        let id = format!("{}' transforms per X", quad.basis_label(b));
        check_op(&mut report, id, lhs.basis()[b].sub(&rhs));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lct::{direction_params, random_params, Direction};
    use crate::mat::{rat, rat_int};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn conv1(kind: ConvKind) -> Convention {
        Convention::new(kind, Signature::new(1, 0))
    }

    #[test]
    fn quadruple_recombines_to_sigma_tensors() {
        for kind in [ConvKind::NegIEta, ConvKind::PosIEta] {
            let conv = conv1(kind);
            let quad = build_reduced(conv);
            let (s1, _, _) = pauli();
            // p⁺ + p⁻ = √2·(σ¹⊗p), x⁺ + x⁻ = √2·(σ¹⊗x)
            let s1p = sigma_times(&s1, &WeylPoly::p(conv, 0)).scale(&ExactScalar::sqrt2());
            assert!(quad.pplus[0].add(&quad.pminus[0]).sub(&s1p).is_zero());
            let s1x = sigma_times(&s1, &WeylPoly::x(conv, 0)).scale(&ExactScalar::sqrt2());
            assert!(quad.xplus[0].add(&quad.xminus[0]).sub(&s1x).is_zero());
        }
    }

    #[test]
    fn quadruple_entries_are_symbol_linear() {
        let conv = Convention::new(ConvKind::NegIEta, Signature::new(1, 1));
        let quad = build_reduced(conv);
        for op in quad.basis() {
            assert_eq!(op.max_degree(), Some(1));
        }
    }

    #[test]
    fn dispersion_shapes() {
        let conv = conv1(ConvKind::NegIEta);
        let disp = build_dispersion(conv);
        // z⁺ = (p² + x²)/4
        let p = WeylPoly::p(conv, 0);
        let x = WeylPoly::x(conv, 0);
        let expect = p.mul(&p).add(&x.mul(&x)).scale(&ExactScalar::ratio(1, 4));
        assert_eq!(disp.zplus[0][0], expect);
        // z^× = (px + xp)/4
        let expect = p.mul(&x).add(&x.mul(&p)).scale(&ExactScalar::ratio(1, 4));
        assert_eq!(disp.zcross[0][0], expect);
        // antisymmetric part vanishes on the diagonal
        assert!(disp.zcross_anti[0][0].is_zero());
    }

    #[test]
    fn zcross_decomposition_is_exact() {
        let conv = Convention::new(ConvKind::NegIEta, Signature::new(1, 1));
        let disp = build_dispersion(conv);
        for mu in 0..2 {
            for nu in 0..2 {
                let recomposed = disp.zcross_sym[mu][nu].add(&disp.zcross_anti[mu][nu]);
                assert_eq!(disp.zcross[mu][nu], recomposed);
            }
        }
    }

    #[test]
    fn zplus_is_exactly_symmetric() {
        // regression snapshot: the μν − νμ difference is identically zero
        // because p's commute with p's and x's with x's
        for kind in [ConvKind::NegIEta, ConvKind::PosIEta] {
            let conv = Convention::new(kind, Signature::new(1, 1));
            let disp = build_dispersion(conv);
            for mu in 0..2 {
                for nu in 0..2 {
                    assert!(disp.zplus[mu][nu].sub(&disp.zplus[nu][mu]).is_zero());
                }
            }
        }
    }

    #[test]
    fn exactly_one_convention_passes_the_1d_table() {
        let neg = product_table_1d(ConvKind::NegIEta);
        let pos = product_table_1d(ConvKind::PosIEta);
        assert_eq!(neg.lines.len(), 7);
        assert!(neg.all_pass(), "{:?}", neg.failed_lines().collect::<Vec<_>>());
        assert!(!pos.all_pass(), "the opposite convention must fail");
        // the failing lines are the ones with inhomogeneous terms
        let failed: Vec<_> = pos.failed_lines().map(|l| l.id.clone()).collect();
        assert!(failed.iter().any(|id| id.contains("[p+, x-]")));
    }

    #[test]
    fn nd_table_passes_for_small_dimensions() {
        for sig in [Signature::new(1, 0), Signature::new(2, 0), Signature::new(1, 1)] {
            let report = product_table_nd(ConvKind::NegIEta, sig);
            assert!(report.all_pass(), "sig {sig:?}: {:?}",
                report.failed_lines().collect::<Vec<_>>());
        }
        // the covariant table also holds under the opposite convention,
        // where its inhomogeneous terms read +i·η_μν
        let report = product_table_nd(ConvKind::PosIEta, Signature::new(1, 1));
        assert!(report.all_pass());
    }

    #[test]
    fn nd_table_specializes_to_the_1d_inhomogeneous_terms() {
        // under c = −i the (1-D) [p⁺, x⁻] line must carry the constant −i
        let conv = conv1(ConvKind::NegIEta);
        let quad = build_reduced(conv);
        let disp = build_dispersion(conv);
        let (_, _, s3) = pauli();
        let sigma3 = OperatorPoly::from_imat(&s3, conv);
        let comm = quad.pplus[0].commutator(&quad.xminus[0]);
        let quad_part = sigma3.scale_poly(&disp.zplus[0][0]).scale(&-four_i());
        let residual = comm.sub(&quad_part);
        // residual should be −i·I exactly
        let neg_i = OperatorPoly::identity(2, conv).scale(&-ExactScalar::i());
        assert!(residual.sub(&neg_i).is_zero());
    }

    #[test]
    fn infinitesimal_zero_params() {
        let params = LctParams::zero(Signature::new(1, 0));
        let report = infinitesimal_consistency(&params, ConvKind::NegIEta);
        assert!(report.all_pass());
    }

    #[test]
    fn infinitesimal_theta_only_mixes_pplus_with_xminus() {
        // p'⁺ = p⁺ + θ·x⁻ for a θ-only transformation
        let t = rat(1, 3);
        let params = direction_params(Signature::new(1, 0), Direction::Theta, t.clone());
        let conv = conv1(ConvKind::NegIEta);
        let quad = build_reduced(conv);

        let a = sl_generator(&params);
        let p = [WeylPoly::p(conv, 0)];
        let x = [WeylPoly::x(conv, 0)];
        let pt = [p[0].clone().add(&x[0].scale(&ExactScalar::from_rat(a.get(1, 0).clone())))];
        let xt = [x[0].clone().add(&p[0].scale(&ExactScalar::from_rat(a.get(0, 1).clone())))];
        let lhs = quadruple_from_symbols(conv, &pt, &xt);

        let expect = quad.pplus[0]
            .add(&quad.xminus[0].scale(&ExactScalar::from_rat(t)));
        assert!(lhs.pplus[0].sub(&expect).is_zero());
    }

    #[test]
    fn infinitesimal_consistency_on_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for sig in [Signature::new(1, 0), Signature::new(2, 0), Signature::new(1, 1)] {
            for _ in 0..5 {
                let params = random_params(&mut rng, sig, &rat_int(1));
                for kind in [ConvKind::NegIEta, ConvKind::PosIEta] {
                    let report = infinitesimal_consistency(&params, kind);
                    assert!(report.all_pass(), "sig {sig:?} kind {kind:?}: {:?}",
                        report.failed_lines().collect::<Vec<_>>());
                }
            }
        }
    }
}
