//! Brute-force ground truth.
//!
//! Evaluates `f(n)` directly and counts factors of two by repeated halving.
//! Nothing here consults the classifier, the closed form, or the tree, so test
//! suites can treat any disagreement as a defect on the other side.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::Valuation;
use crate::poly::QuadraticPoly;

/// ν₂ by repeated halving.
fn halving_valuation(x: &BigInt) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let two = BigInt::from(2);
    let mut x = x.clone();
    let mut k = 0;
    while x.is_even() {
        x /= &two;
        k += 1;
    }
    Valuation::Finite(k)
}

pub fn eval(f: &QuadraticPoly, n: &BigInt) -> BigInt {
    let (a, b, c) = f.coefficients();
    a * n * n + b * n + c
}

pub fn valuation_at(f: &QuadraticPoly, n: &BigInt) -> Valuation {
    halving_valuation(&eval(f, n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationSequence {
    pub poly: QuadraticPoly,
    pub start: u64,
    pub values: Vec<Valuation>,
}

impl ValuationSequence {
    pub fn get(&self, n: u64) -> Option<Valuation> {
        let idx = n.checked_sub(self.start)?;
        self.values.get(usize::try_from(idx).ok()?).copied()
    }
}

pub fn valuation_sequence(f: &QuadraticPoly, start: u64, count: usize) -> ValuationSequence {
    let values = (0..count as u64)
        .map(|k| valuation_at(f, &BigInt::from(start + k)))
        .collect();
    ValuationSequence {
        poly: f.clone(),
        start,
        values,
    }
}

/// Smallest power of two `P ≤ values.len()/2` with `values[n] == values[n+P]`
/// for every `n < len − P`.
pub fn period_of(values: &[Valuation]) -> Option<u64> {
    let len = values.len();
    let mut p = 1usize;
    while p <= len / 2 {
        if (0..len - p).all(|n| values[n] == values[n + p]) {
            return Some(p as u64);
        }
        p *= 2;
    }
    None
}

/// Empirical power-of-two period over `n ∈ [0, horizon)`.
pub fn empirical_period(f: &QuadraticPoly, horizon: usize) -> Option<u64> {
    period_of(&valuation_sequence(f, 0, horizon).values)
}

/// Some `n < p` with `ν₂(f(n)) ≠ ν₂(f(n + p))`, if one exists.
pub fn period_witness(f: &QuadraticPoly, p: u64) -> Option<u64> {
    (0..p).find(|&n| valuation_at(f, &BigInt::from(n)) != valuation_at(f, &BigInt::from(n + p)))
}
