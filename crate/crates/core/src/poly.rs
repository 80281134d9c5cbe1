use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// An integer quadratic `a·n² + b·n + c` with `a ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticPoly {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl QuadraticPoly {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(QuadraticPoly { a, b, c })
    }

    /// Convenience constructor for small coefficients.
    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn coefficients(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    pub fn eval(&self, n: &BigInt) -> BigInt {
        (&self.a * n + &self.b) * n + &self.c
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, coeff: &BigInt, var: &str, first: bool) -> fmt::Result {
    if coeff.is_zero() {
        return Ok(());
    }
    let neg = coeff.is_negative();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let mag = coeff.abs();
    if var.is_empty() || mag != BigInt::from(1) {
        write!(f, "{mag}")?;
    }
    f.write_str(var)
}

/// Renders as `5n^2 + 106n + 1125`.
impl fmt::Display for QuadraticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, &self.a, "n^2", true)?;
        write_term(f, &self.b, "n", false)?;
        write_term(f, &self.c, "", false)
    }
}
