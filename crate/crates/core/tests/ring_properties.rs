//! Property tests for the exact symbolic kernel: ring axioms, normal-order
//! confluence, degree bookkeeping, and the σ-matrix operator layer.

use num_traits::Zero;
use proptest::prelude::*;

use spinlct::exact::ExactScalar;
use spinlct::mat::{Gauss, Rat};
use spinlct::signature::Signature;
use spinlct::weyl::{ConvKind, Convention, OperatorPoly, WeylPoly};

fn conv() -> Convention {
    Convention::new(ConvKind::NegIEta, Signature::new(1, 1))
}

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn scalar_strategy() -> impl Strategy<Value = ExactScalar> {
    (rat_strategy(), rat_strategy(), rat_strategy(), rat_strategy()).prop_map(|(a, b, c, d)| {
        ExactScalar::new(Gauss::new(a, b), Gauss::new(c, d))
    })
}

/// Up to three terms, exponents at most two, over two indices.
fn poly_strategy() -> impl Strategy<Value = WeylPoly> {
    let term = (
        prop::collection::vec(0u8..=2, 2),
        prop::collection::vec(0u8..=2, 2),
        scalar_strategy(),
    );
    prop::collection::vec(term, 0..=3).prop_map(|terms| {
        let c = conv();
        let mut poly = WeylPoly::zero(c);
        for (xexp, pexp, coeff) in terms {
            let mut mono = WeylPoly::constant(c, coeff);
            for (mu, &e) in xexp.iter().enumerate() {
                for _ in 0..e {
                    mono = mono.mul(&WeylPoly::x(c, mu));
                }
            }
            for (mu, &e) in pexp.iter().enumerate() {
                for _ in 0..e {
                    mono = mono.mul(&WeylPoly::p(c, mu));
                }
            }
            poly = poly.add(&mono);
        }
        poly
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_is_associative(f in poly_strategy(), g in poly_strategy(), h in poly_strategy()) {
        let left = f.mul(&g).mul(&h);
        let right = f.mul(&g.mul(&h));
        prop_assert!(left.sub(&right).is_zero());
    }

    #[test]
    fn mul_distributes_over_add(f in poly_strategy(), g in poly_strategy(), h in poly_strategy()) {
        let left = f.mul(&g.add(&h));
        let right = f.mul(&g).add(&f.mul(&h));
        prop_assert!(left.sub(&right).is_zero());
    }

    #[test]
    fn commutator_is_antisymmetric(f in poly_strategy(), g in poly_strategy()) {
        let fg = f.commutator(&g);
        let gf = g.commutator(&f);
        prop_assert!(fg.add(&gf).is_zero());
    }

    #[test]
    fn degree_is_additive(f in poly_strategy(), g in poly_strategy()) {
        // the associated graded algebra is a commutative polynomial ring
        // over a field, so leading terms never cancel
        if let (Some(df), Some(dg)) = (f.degree(), g.degree()) {
            prop_assert_eq!(f.mul(&g).degree(), Some(df + dg));
        }
    }

    #[test]
    fn scalar_conjugate_norm(a in rat_strategy(), b in rat_strategy()) {
        // (a + b√2)(a − b√2) = a² − 2b²
        let x = ExactScalar::new(Gauss::new(a.clone(), Rat::new(0.into(), 1.into())),
                                 Gauss::new(b.clone(), Rat::new(0.into(), 1.into())));
        let y = ExactScalar::new(x.a.clone(), -x.b.clone());
        let prod = x * y;
        prop_assert!(prod.b.is_zero());
        let expect = a.clone() * a - Rat::new(2.into(), 1.into()) * b.clone() * b;
        prop_assert_eq!(prod.a.re, expect);
    }

    #[test]
    fn operator_mat_mul_is_associative(
        f in poly_strategy(), g in poly_strategy(), h in poly_strategy(),
        f2 in poly_strategy(), g2 in poly_strategy(), h2 in poly_strategy(),
    ) {
        let c = conv();
        let build = |a: &WeylPoly, b: &WeylPoly| {
            let mut m = OperatorPoly::zeros(2, c);
            m.set(0, 0, a.clone());
            m.set(0, 1, b.clone());
            m.set(1, 0, b.clone());
            m.set(1, 1, a.clone());
            m
        };
        let a = build(&f, &f2);
        let b = build(&g, &g2);
        let d = build(&h, &h2);
        let left = a.mat_mul(&b).mat_mul(&d);
        let right = a.mat_mul(&b.mat_mul(&d));
        prop_assert!(left.sub(&right).is_zero());
    }
}
