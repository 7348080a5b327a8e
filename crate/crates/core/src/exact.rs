//! The coefficient ring ℚ(i)[√2].
//!
//! Reduced operators carry 1/√2 factors; adjoining √2 to the Gaussian
//! rationals keeps every identity in the operator suites exactly decidable
//! instead of floating. An element is a + b·√2 with a, b Gaussian rational,
//! and (√2)² reduces to 2.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::mat::{Gauss, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactScalar {
    /// Rational (Gaussian) part.
    pub a: Gauss,
    /// Coefficient of √2.
    pub b: Gauss,
}

impl ExactScalar {
    pub fn new(a: Gauss, b: Gauss) -> Self {
        ExactScalar { a, b }
    }

    pub fn from_rat(r: Rat) -> Self {
        ExactScalar { a: Gauss::new(r, Rat::zero()), b: Gauss::zero() }
    }

    pub fn from_gauss(g: Gauss) -> Self {
        ExactScalar { a: g, b: Gauss::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rat(Rat::from_integer(v.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rat(Rat::new(num.into(), den.into()))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ExactScalar { a: Gauss::new(Rat::zero(), Rat::one()), b: Gauss::zero() }
    }

    /// √2 itself.
    pub fn sqrt2() -> Self {
        ExactScalar { a: Gauss::zero(), b: Gauss::one() }
    }

    /// 1/√2 = √2/2.
    pub fn inv_sqrt2() -> Self {
        ExactScalar { a: Gauss::zero(), b: Gauss::new(Rat::new(1.into(), 2.into()), Rat::zero()) }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactScalar { a: self.a.conj(), b: self.b.conj() }
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar { a: Gauss::zero(), b: Gauss::zero() }
    }

    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar::from_int(1)
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        ExactScalar { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        ExactScalar { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { a: -self.a, b: -self.b }
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        // (a1 + b1√2)(a2 + b2√2) = a1a2 + 2b1b2 + (a1b2 + b1a2)√2
        let two = Gauss::new(Rat::from_integer(2.into()), Rat::zero());
        ExactScalar {
            a: self.a.clone() * rhs.a.clone() + two * self.b.clone() * rhs.b.clone(),
            b: self.a * rhs.b + self.b * rhs.a,
        }
    }
}

fn fmt_rat(r: &Rat) -> String {
    format!("{}", r)
}

/// Append the pieces of one Gaussian coefficient with an optional √2 marker.
fn push_parts(parts: &mut Vec<String>, g: &Gauss, marker: &str) {
    if !g.re.is_zero() {
        let sign = if g.re.is_negative() { "-" } else { "+" };
        parts.push(format!("{sign} {}{marker}", fmt_rat(&g.re.abs())));
    }
    if !g.im.is_zero() {
        let sign = if g.im.is_negative() { "-" } else { "+" };
        parts.push(format!("{sign} {}{marker} i", fmt_rat(&g.im.abs())));
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        push_parts(&mut parts, &self.a, "");
        push_parts(&mut parts, &self.b, "√2");
        let mut out = String::new();
        for (k, p) in parts.iter().enumerate() {
            if k == 0 {
                if let Some(rest) = p.strip_prefix("+ ") {
                    out.push_str(rest);
                } else if let Some(rest) = p.strip_prefix("- ") {
                    out.push('-');
                    out.push_str(rest);
                }
            } else {
                out.push(' ');
                out.push_str(p);
            }
        }
        write!(f, "{}", out)
    }
}
