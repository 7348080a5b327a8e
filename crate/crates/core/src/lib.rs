//! Exact-arithmetic toolkit for the spinorial representation of linear
//! canonical transformations (LCTs).
//!
//! An LCT mixes momentum and coordinate operators, `(p' x') = (p x)·g`, while
//! preserving the canonical commutation relations. This crate builds the full
//! chain of algebraic objects attached to such a transformation and
//! machine-verifies every identity linking them:
//!
//! * [`lct`] — the parameter matrices (θ, φ, μ, λ), the symplectic group
//!   element `g = exp(A)` and the pseudo-orthogonal generator `X` acting on
//!   the reduced-operator space, with exact membership checks.
//! * [`clifford`] — explicit matrix generators of the Clifford algebras
//!   C(p,q), their labelling into the four families α₊, β₊, β₋, α₋, and the
//!   bivector commutator tables.
//! * [`weyl`] — an exact noncommutative kernel: normal-ordered polynomials in
//!   the symbols p_μ, x_μ over ℚ(i)[√2], with a configurable commutation
//!   constant, and matrices over that ring.
//! * [`phase_ops`] — the reduced operators p±, x± and dispersion operators
//!   z⁺, z⁻, z^×, with the operator product tables and the first-order
//!   consistency between the LCT action and the pseudo-orthogonal action.
//! * [`spin`] — the spin-algebra bivector ϑ, its exponential S, and the
//!   double-cover identity S Γ_b S⁻¹ = Σ_a O_{ba} Γ_a with O = exp(X).
//! * [`invariant`] — the operator P in the Clifford ⊗ σ ⊗ Weyl algebra, the
//!   exact decomposition of P², the U-operator algebra, and the 4th-degree
//!   invariant P⁴ + 4(𝕀⊗σ³)P².
//!
//! Everything at the Lie-algebra level is checked in exact arithmetic
//! (rationals, Gaussian rationals, ℚ(i)[√2]); only exponentials are floating
//! point. Where the underlying conventions are ambiguous (the sign of
//! [p, x], the μ-term of ϑ, the λ normalization, the direction of the adjoint
//! action), brute-force probes decide them and the resolved conventions are
//! reported with the evidence; see [`spin::convention_probe`] and
//! [`suites::conventions_ledger`].

pub mod clifford;
pub mod exact;
pub mod expm;
pub mod invariant;
pub mod io;
pub mod lct;
pub mod mat;
pub mod phase_ops;
pub mod report;
pub mod signature;
pub mod spin;
pub mod suites;
pub mod weyl;

pub use signature::Signature;
