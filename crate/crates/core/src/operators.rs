//! Translation, dilation and S-operators on quadratics, and the reduction of
//! a bounded quadratic to the canonical form `n² + 2n + c`.
//!
//! For case 3(c) with `b = 2k`, let `s = 1 − k` and
//! `g(n) = n² + 2n − s² + 2s + ac`. Then `S^a(τ^s(g)) = f`, the tree of `g`
//! has type (ℓ,1), and each terminating class `r` of `g` at level `i` moves to
//! `a⁻¹(r + s) mod 2^i` in the tree of `f`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{inverse_mod_pow2, mod_pow2, nu2, pow2};
use crate::classifier::{classify, Case};
use crate::closed_form::ClosedForm;
use crate::error::{Error, Result};
use crate::poly::QuadraticPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `(1, b, a·c) → (a, b, c)`.
    Forward,
    /// `(a, b, c) → (1, b, a·c)`.
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorDescriptor {
    Translate(BigInt),
    Dilate(BigInt),
    SForward(BigInt),
    SBackward(BigInt),
}

impl OperatorDescriptor {
    pub fn apply(&self, f: &QuadraticPoly) -> Result<QuadraticPoly> {
        match self {
            OperatorDescriptor::Translate(s) => Ok(translate(f, s)),
            OperatorDescriptor::Dilate(s) => dilate(f, s),
            OperatorDescriptor::SForward(a) => s_operator(f, a, Direction::Forward),
            OperatorDescriptor::SBackward(a) => s_operator(f, a, Direction::Backward),
        }
    }
}

impl fmt::Display for OperatorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorDescriptor::Translate(s) => write!(f, "TRANSLATE({s})"),
            OperatorDescriptor::Dilate(s) => write!(f, "DILATE({s})"),
            OperatorDescriptor::SForward(a) => write!(f, "S_FORWARD({a})"),
            OperatorDescriptor::SBackward(a) => write!(f, "S_BACKWARD({a})"),
        }
    }
}

/// Applies `ops` left to right.
pub fn compose(f: &QuadraticPoly, ops: &[OperatorDescriptor]) -> Result<QuadraticPoly> {
    ops.iter().try_fold(f.clone(), |acc, op| op.apply(&acc))
}

/// `τ^s(f)(n) = f(n − s)`.
pub fn translate(f: &QuadraticPoly, s: &BigInt) -> QuadraticPoly {
    let (a, b, c) = f.coefficients();
    let two = BigInt::from(2);
    QuadraticPoly::new(a.clone(), b - &two * a * s, c + a * s * s - b * s)
        .expect("leading coefficient unchanged")
}

/// `δ^s(f)(n) = f(s·n)`.
pub fn dilate(f: &QuadraticPoly, s: &BigInt) -> Result<QuadraticPoly> {
    if s.is_zero() {
        return Err(Error::ZeroDilation);
    }
    let (a, b, c) = f.coefficients();
    QuadraticPoly::new(a * s * s, b * s, c.clone())
}

/// `S^a` and its inverse. `a` must be odd; the forward direction needs a
/// monic input whose constant term is divisible by `a`, the backward
/// direction an input with leading coefficient `a`.
pub fn s_operator(f: &QuadraticPoly, a: &BigInt, direction: Direction) -> Result<QuadraticPoly> {
    if a.is_even() {
        return Err(Error::SOperatorDomain(format!("{a} is not odd")));
    }
    let (fa, fb, fc) = f.coefficients();
    match direction {
        Direction::Forward => {
            if !fa.is_one() {
                return Err(Error::SOperatorDomain(format!("{f} is not monic")));
            }
            let (c, rem) = fc.div_rem(a);
            if !rem.is_zero() {
                return Err(Error::SOperatorDomain(format!(
                    "{a} does not divide the constant term {fc}"
                )));
            }
            QuadraticPoly::new(a.clone(), fb.clone(), c)
        }
        Direction::Backward => {
            if fa != a {
                return Err(Error::SOperatorDomain(format!(
                    "leading coefficient of {f} is not {a}"
                )));
            }
            QuadraticPoly::new(BigInt::one(), fb.clone(), a * fc)
        }
    }
}

fn bounded_closed_form(f: &QuadraticPoly) -> Result<ClosedForm> {
    ClosedForm::new(f)
}

/// Checks `table(τ^s f)[(r + s) mod 2^ℓ] = table(f)[r]` for every residue.
pub fn table_translate_law(f: &QuadraticPoly, s: &BigInt) -> Result<bool> {
    let before = bounded_closed_form(f)?.period_table()?;
    let after = bounded_closed_form(&translate(f, s))?.period_table()?;
    if before.ell != after.ell {
        return Ok(false);
    }
    let ell = before.ell;
    Ok((0..before.period()).all(|r| {
        let moved = mod_pow2(&(BigInt::from(r) + s), ell);
        let moved = usize::try_from(&moved).expect("below the period");
        after.entries[moved] == before.entries[r]
    }))
}

/// For monic bounded `f`: checks `ν₂(S^a f(n)) = ν₂(f(a·n))` on
/// `[0, 2^{ℓ+2})` and `table(S^a f)[a⁻¹·r mod 2^ℓ] = table(f)[r]`.
pub fn table_s_law(f: &QuadraticPoly, a: &BigInt) -> Result<bool> {
    let image = s_operator(f, a, Direction::Forward)?;
    let before = bounded_closed_form(f)?;
    let ell = before.ell();
    let dilated = dilate(f, a)?;
    let horizon = 1u64 << (ell + 2).min(20);
    let pointwise = (0..horizon).all(|n| {
        let n = BigInt::from(n);
        nu2(&image.eval(&n)) == nu2(&dilated.eval(&n))
    });
    let before = before.period_table()?;
    let after = bounded_closed_form(&image)?.period_table()?;
    let a_inv = BigInt::from(inverse_mod_pow2(a, ell)?);
    let permuted = (0..before.period()).all(|r| {
        let moved = mod_pow2(&(&a_inv * BigInt::from(r)), ell);
        let moved = usize::try_from(&moved).expect("below the period");
        after.entries[moved] == before.entries[r]
    });
    Ok(pointwise && permuted)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    /// The type-(ℓ,1) quadratic `n² + 2n + c′`.
    pub g: QuadraticPoly,
    /// `[TRANSLATE(1 − b/2), S_FORWARD(a)]`; composing them on `g` gives `f`.
    pub ops: Vec<OperatorDescriptor>,
    pub ell: u32,
    /// `1 − b/2`.
    pub shift: BigInt,
    /// `a⁻¹ mod 2^ℓ`.
    pub a_inv: BigUint,
}

impl Canonical {
    /// Where the class `r mod 2^level` of `g` lands in the tree of `f`.
    pub fn map_residue(&self, level: u32, r: &BigUint) -> BigUint {
        let a_inv = BigInt::from(self.a_inv.clone());
        mod_pow2(&(a_inv * (BigInt::from(r.clone()) + &self.shift)), level)
    }
}

pub fn canonicalize_to_type_ell_1(f: &QuadraticPoly) -> Result<Canonical> {
    let cls = classify(f);
    if cls.case != Case::ThreeC {
        return Err(Error::CanonicalDomain(format!(
            "{f} is not bounded (case {})",
            cls.case.label()
        )));
    }
    if cls.even_offset > 0 {
        return Err(Error::CanonicalDomain(format!(
            "coefficients of {f} are all even"
        )));
    }
    let ell = cls.ell().expect("case 3(c) has ℓ");
    if ell < 2 {
        return Err(Error::CanonicalDomain(format!("{f} has ℓ = 1")));
    }
    let (a, b, c) = f.coefficients();
    let shift = BigInt::one() - (b >> 1usize);
    let two = BigInt::from(2);
    let constant = -(&shift * &shift) + &two * &shift + a * c;
    let g = QuadraticPoly::new(BigInt::one(), two, constant).expect("monic");
    Ok(Canonical {
        g,
        ops: vec![
            OperatorDescriptor::Translate(shift.clone()),
            OperatorDescriptor::SForward(a.clone()),
        ],
        ell,
        a_inv: inverse_mod_pow2(a, ell)?,
        shift,
    })
}

/// `2^i − 1`, the open residue of a type-(ℓ,1) tree at level `i`.
pub fn type_ell_1_open_residue(level: u32) -> BigUint {
    pow2(level) - 1u32
}
