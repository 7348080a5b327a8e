//! Exact noncommutative kernel: normal-ordered polynomials in the symbols
//! p_μ, x_μ and square matrices over that ring.
//!
//! Normal order is fixed as all x symbols before all p symbols, indices
//! ascending within each block; a monomial is its own canonical form. The
//! canonical commutation constant is a module parameter: the two usable
//! conventions are [p_μ, x_ν] = −i·η_μν and [p_μ, x_ν] = +i·η_μν, and which
//! one the operator identity tables assume is decided by the oracle in
//! [`crate::phase_ops::product_table_1d`], never hard-coded.
//!
//! Polynomials are sparse maps from monomials to [`ExactScalar`]
//! coefficients with zero coefficients pruned eagerly; the quartic operator
//! pipeline multiplies 32×32 matrices of these, and sparsity is what keeps
//! that cheap.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::ExactScalar;
use crate::mat::{GMat, Gauss, IMat, Rat};
use crate::signature::Signature;

/// Sign choice for the canonical commutation constant c_μν = ±i·η_μν.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConvKind {
    /// [p_μ, x_ν] = −i·η_μν (equivalently [x, p] = +i at η = 1).
    NegIEta,
    /// [p_μ, x_ν] = +i·η_μν.
    PosIEta,
}

impl ConvKind {
    pub fn label(&self) -> &'static str {
        match self {
            ConvKind::NegIEta => "[p,x] = -i*eta",
            ConvKind::PosIEta => "[p,x] = +i*eta",
        }
    }

    pub fn other(&self) -> ConvKind {
        match self {
            ConvKind::NegIEta => ConvKind::PosIEta,
            ConvKind::PosIEta => ConvKind::NegIEta,
        }
    }
}

/// The commutation convention: sign choice plus the metric it contracts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Convention {
    pub kind: ConvKind,
    pub sig: Signature,
}

impl Convention {
    pub fn new(kind: ConvKind, sig: Signature) -> Self {
        Convention { kind, sig }
    }

    pub fn n(&self) -> usize {
        self.sig.n()
    }

    /// The exact constant c_μν with [p_μ, x_ν] = c_μν.
    pub fn c(&self, mu: usize, nu: usize) -> ExactScalar {
        if mu != nu {
            return ExactScalar::zero();
        }
        let sign = match self.kind {
            ConvKind::NegIEta => -1,
            ConvKind::PosIEta => 1,
        };
        let val = sign * self.sig.eta_entry(mu);
        ExactScalar::from_gauss(Gauss::new(Rat::zero(), Rat::from_integer(val.into())))
    }
}

/// A normal-ordered monomial x^xexp · p^pexp.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeylMonomial {
    pub xexp: Vec<u8>,
    pub pexp: Vec<u8>,
}

impl WeylMonomial {
    pub fn unit(n: usize) -> Self {
        WeylMonomial { xexp: vec![0; n], pexp: vec![0; n] }
    }

    pub fn x(n: usize, mu: usize) -> Self {
        let mut m = Self::unit(n);
        m.xexp[mu] = 1;
        m
    }

    pub fn p(n: usize, mu: usize) -> Self {
        let mut m = Self::unit(n);
        m.pexp[mu] = 1;
        m
    }

    pub fn degree(&self) -> usize {
        self.xexp.iter().chain(self.pexp.iter()).map(|&e| e as usize).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.degree() == 0
    }
}

impl fmt::Display for WeylMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (mu, &e) in self.xexp.iter().enumerate() {
            if e == 1 {
                parts.push(format!("x{mu}"));
            } else if e > 1 {
                parts.push(format!("x{mu}^{e}"));
            }
        }
        for (mu, &e) in self.pexp.iter().enumerate() {
            if e == 1 {
                parts.push(format!("p{mu}"));
            } else if e > 1 {
                parts.push(format!("p{mu}^{e}"));
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Sparse normal-ordered polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylPoly {
    conv: Convention,
    terms: BTreeMap<WeylMonomial, ExactScalar>,
}

impl WeylPoly {
    pub fn zero(conv: Convention) -> Self {
        WeylPoly { conv, terms: BTreeMap::new() }
    }

    pub fn constant(conv: Convention, c: ExactScalar) -> Self {
        let mut p = Self::zero(conv);
        p.add_term(WeylMonomial::unit(conv.n()), c);
        p
    }

    pub fn one(conv: Convention) -> Self {
        Self::constant(conv, ExactScalar::one())
    }

    pub fn x(conv: Convention, mu: usize) -> Self {
        let mut p = Self::zero(conv);
        p.add_term(WeylMonomial::x(conv.n(), mu), ExactScalar::one());
        p
    }

    pub fn p(conv: Convention, mu: usize) -> Self {
        let mut p = Self::zero(conv);
        p.add_term(WeylMonomial::p(conv.n(), mu), ExactScalar::one());
        p
    }

    pub fn convention(&self) -> Convention {
        self.conv
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    fn add_term(&mut self, m: WeylMonomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &WeylPoly) -> WeylPoly {
        assert_eq!(self.conv, other.conv, "convention mismatch in add");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> WeylPoly {
        WeylPoly {
            conv: self.conv,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &WeylPoly) -> WeylPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &ExactScalar) -> WeylPoly {
        if s.is_zero() {
            return WeylPoly::zero(self.conv);
        }
        WeylPoly {
            conv: self.conv,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * s.clone())).collect(),
        }
    }

    /// Normal-ordered product.
    ///
    /// Monomials are concatenated and each p symbol of the left factor is
    /// moved past the x block of the right factor with the rewrite
    /// p_μ x^a = x^a p_μ + Σ_ν a_ν c_μν x^(a − e_ν), applied recursively.
    pub fn mul(&self, other: &WeylPoly) -> WeylPoly {
        assert_eq!(self.conv, other.conv, "convention mismatch in mul");
        let mut out = WeylPoly::zero(self.conv);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let coeff = c1.clone() * c2.clone();
                for (m, c) in mono_product(self.conv, m1, m2) {
                    out.add_term(m, c * coeff.clone());
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &WeylPoly) -> WeylPoly {
        self.mul(other).sub(&other.mul(self))
    }

    /// The sub-polynomial of exact total degree k.
    pub fn degree_part(&self, k: usize) -> WeylPoly {
        WeylPoly {
            conv: self.conv,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of the unit monomial.
    pub fn constant_part(&self) -> ExactScalar {
        self.terms
            .get(&WeylMonomial::unit(self.conv.n()))
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }
}

/// Expand p^pexp · x^xexp into normal order, returning (monomial, coeff)
/// pairs. The x and p blocks of the result may then be merged independently
/// with outer factors because x's commute with x's and p's with p's.
fn reorder(conv: Convention, pexp: &[u8], xexp: &[u8]) -> Vec<(Vec<u8>, Vec<u8>, ExactScalar)> {
    // find a p symbol to move; base case: nothing to move
    let Some(mu) = pexp.iter().rposition(|&e| e > 0) else {
        return vec![(xexp.to_vec(), vec![0; pexp.len()], ExactScalar::one())];
    };
    let mut rest = pexp.to_vec();
    rest[mu] -= 1;
    // p^rest · (p_mu x^a) = p^rest x^a p_mu + Σ_ν a_ν c_μν · p^rest x^(a−e_ν)
    let mut out = Vec::new();
    for (x, p, c) in reorder(conv, &rest, xexp) {
        let mut p2 = p;
        p2[mu] += 1;
        out.push((x, p2, c));
    }
    for (nu, &a) in xexp.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let c = conv.c(mu, nu);
        if c.is_zero() {
            continue;
        }
        let mut xr = xexp.to_vec();
        xr[nu] -= 1;
        let factor = c * ExactScalar::from_int(a as i64);
        for (x, p, c2) in reorder(conv, &rest, &xr) {
            out.push((x, p, c2 * factor.clone()));
        }
    }
    out
}

fn mono_product(
    conv: Convention,
    m1: &WeylMonomial,
    m2: &WeylMonomial,
) -> Vec<(WeylMonomial, ExactScalar)> {
    reorder(conv, &m1.pexp, &m2.xexp)
        .into_iter()
        .map(|(x, p, c)| {
            let xexp = m1.xexp.iter().zip(&x).map(|(a, b)| a + b).collect();
            let pexp = p.iter().zip(&m2.pexp).map(|(a, b)| a + b).collect();
            (WeylMonomial { xexp, pexp }, c)
        })
        .collect()
}

/// Stable debug rendering used in failure witnesses: terms in canonical
/// monomial order as `(coeff)·x0^2 p1`, joined by ` + `, with the
/// coefficient printed as in [`ExactScalar`], e.g. `(3/2 + 1/2√2 i)·x0^2 p1`.
impl fmt::Display for WeylPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_unit() {
                    format!("({c})")
                } else {
                    format!("({c})·{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Square matrix over the Weyl polynomial ring. Houses σ-tensored reduced
/// operators (m = 2) as well as the full Clifford ⊗ σ operators
/// (m = 2^(2N)·2).
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPoly {
    dim: usize,
    conv: Convention,
    entries: Vec<WeylPoly>,
}

impl OperatorPoly {
    pub fn zeros(dim: usize, conv: Convention) -> Self {
        OperatorPoly { dim, conv, entries: vec![WeylPoly::zero(conv); dim * dim] }
    }

    pub fn identity(dim: usize, conv: Convention) -> Self {
        let mut m = Self::zeros(dim, conv);
        for i in 0..dim {
            m.set(i, i, WeylPoly::one(conv));
        }
        m
    }

    /// Constant operator from a Gaussian-rational matrix.
    pub fn from_gmat(m: &GMat, conv: Convention) -> Self {
        let dim = m.rows();
        assert_eq!(dim, m.cols(), "operator matrices are square");
        let mut out = Self::zeros(dim, conv);
        for i in 0..dim {
            for j in 0..dim {
                out.set(i, j, WeylPoly::constant(conv, ExactScalar::from_gauss(m.get(i, j).clone())));
            }
        }
        out
    }

    pub fn from_imat(m: &IMat, conv: Convention) -> Self {
        Self::from_gmat(&crate::mat::imat_to_gmat(m), conv)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn convention(&self) -> Convention {
        self.conv
    }

    pub fn get(&self, i: usize, j: usize) -> &WeylPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: WeylPoly) {
        assert_eq!(p.convention(), self.conv, "convention mismatch in set");
        self.entries[i * self.dim + j] = p;
    }

    pub fn add(&self, other: &OperatorPoly) -> OperatorPoly {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &OperatorPoly) -> OperatorPoly {
        self.zip(other, |a, b| a.sub(b))
    }

    fn zip(&self, other: &OperatorPoly, f: impl Fn(&WeylPoly, &WeylPoly) -> WeylPoly) -> OperatorPoly {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        assert_eq!(self.conv, other.conv, "convention mismatch");
        OperatorPoly {
            dim: self.dim,
            conv: self.conv,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> OperatorPoly {
        OperatorPoly {
            dim: self.dim,
            conv: self.conv,
            entries: self.entries.iter().map(|p| p.neg()).collect(),
        }
    }

    pub fn scale(&self, s: &ExactScalar) -> OperatorPoly {
        OperatorPoly {
            dim: self.dim,
            conv: self.conv,
            entries: self.entries.iter().map(|p| p.scale(s)).collect(),
        }
    }

    /// Multiply every entry by a scalar polynomial (an operator of the form
    /// matrix ⊗ poly).
    pub fn scale_poly(&self, f: &WeylPoly) -> OperatorPoly {
        OperatorPoly {
            dim: self.dim,
            conv: self.conv,
            entries: self.entries.iter().map(|p| p.mul(f)).collect(),
        }
    }

    /// Matrix product over the polynomial ring. Zero entries are skipped and
    /// large products are parallelized across output entries.
    pub fn mat_mul(&self, other: &OperatorPoly) -> OperatorPoly {
        assert_eq!(self.dim, other.dim, "dimension mismatch in mat_mul");
        assert_eq!(self.conv, other.conv, "convention mismatch in mat_mul");
        let dim = self.dim;
        let conv = self.conv;
        let dot = |idx: usize| -> WeylPoly {
            let (i, j) = (idx / dim, idx % dim);
            let mut acc = WeylPoly::zero(conv);
            for k in 0..dim {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(k, j);
                if b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            acc
        };
        let entries: Vec<WeylPoly> = if dim >= 16 {
            (0..dim * dim).into_par_iter().map(dot).collect()
        } else {
            (0..dim * dim).map(dot).collect()
        };
        OperatorPoly { dim, conv, entries }
    }

    pub fn commutator(&self, other: &OperatorPoly) -> OperatorPoly {
        self.mat_mul(other).sub(&other.mat_mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Entrywise restriction to Weyl degree k.
    pub fn degree_part(&self, k: usize) -> OperatorPoly {
        OperatorPoly {
            dim: self.dim,
            conv: self.conv,
            entries: self.entries.iter().map(|p| p.degree_part(k)).collect(),
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(|p| p.degree()).max()
    }

    /// Kronecker product of a constant Gaussian-rational matrix with an
    /// operator matrix: entry (i·d + k, j·d + l) = M_ij · B_kl.
    pub fn kron_gmat(m: &GMat, b: &OperatorPoly) -> OperatorPoly {
        let d = b.dim;
        let dim = m.rows() * d;
        assert_eq!(m.rows(), m.cols(), "kron factor must be square");
        let mut out = OperatorPoly::zeros(dim, b.conv);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let g = m.get(i, j);
                if g.is_zero() {
                    continue;
                }
                let s = ExactScalar::from_gauss(g.clone());
                for k in 0..d {
                    for l in 0..d {
                        let p = b.get(k, l);
                        if p.is_zero() {
                            continue;
                        }
                        out.set(i * d + k, j * d + l, p.scale(&s));
                    }
                }
            }
        }
        out
    }

    pub fn kron_imat(m: &IMat, b: &OperatorPoly) -> OperatorPoly {
        Self::kron_gmat(&crate::mat::imat_to_gmat(m), b)
    }

    /// A short human-readable witness: the first nonzero entry with its
    /// position, in the debug polynomial format.
    pub fn first_nonzero(&self) -> Option<String> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = self.get(i, j);
                if !p.is_zero() {
                    return Some(format!("entry ({i},{j}): {p}"));
                }
            }
        }
        None
    }
}
