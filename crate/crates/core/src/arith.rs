//! Arbitrary-precision 2-adic primitives.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A p-adic valuation: a non-negative integer, or `Infinite` for zero.
///
/// `Finite(_) < Infinite`, so `min`/`max` behave as expected when a zero
/// coefficient shows up in a reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }
}

impl Add<u64> for Valuation {
    type Output = Valuation;

    fn add(self, rhs: u64) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v + rhs),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl From<u64> for Valuation {
    fn from(v: u64) -> Self {
        Valuation::Finite(v)
    }
}

/// Renders `inf` for the valuation of zero.
impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseValuationError(String);

impl fmt::Display for ParseValuationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid valuation {:?}", self.0)
    }
}

impl std::error::Error for ParseValuationError {}

impl FromStr for Valuation {
    type Err = ParseValuationError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(Valuation::Infinite);
        }
        s.parse::<u64>()
            .map(Valuation::Finite)
            .map_err(|_| ParseValuationError(s.to_string()))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// ν₂(n); the sign of `n` is ignored.
pub fn nu2(n: &BigInt) -> Valuation {
    match n.trailing_zeros() {
        Some(k) => Valuation::Finite(k),
        None => Valuation::Infinite,
    }
}

/// ν_p(n) for a prime `p`.
pub fn nu(p: u64, n: &BigInt) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(nu2(n));
    }
    if n.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let p = BigInt::from(p);
    let mut rest = n.abs();
    let mut k = 0u64;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Ok(Valuation::Finite(k));
        }
        rest = q;
        k += 1;
    }
}

fn nu2_rational(x: &BigRational) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroRational);
    }
    let num = nu2(x.numer()).finite().expect("nonzero numerator");
    let den = nu2(x.denom()).finite().expect("nonzero denominator");
    Ok(num as i64 - den as i64)
}

/// Checks ν₂(xy) = ν₂(x) + ν₂(y) for nonzero rationals.
pub fn nu_product_check(x: &BigRational, y: &BigRational) -> Result<bool> {
    let vx = nu2_rational(x)?;
    let vy = nu2_rational(y)?;
    let vxy = nu2_rational(&(x * y))?;
    Ok(vxy == vx + vy)
}

/// `b² − 4ac` written as `4^ell · delta` with `ell` maximal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiscFactorization {
    Zero,
    NonZero {
        ell: u32,
        delta: BigInt,
        /// `delta mod 8`, never 0 or 4.
        m: u8,
    },
}

impl DiscFactorization {
    pub fn ell(&self) -> Option<u32> {
        match self {
            DiscFactorization::Zero => None,
            DiscFactorization::NonZero { ell, .. } => Some(*ell),
        }
    }

    pub fn m(&self) -> Option<u8> {
        match self {
            DiscFactorization::Zero => None,
            DiscFactorization::NonZero { m, .. } => Some(*m),
        }
    }

    pub fn delta(&self) -> Option<&BigInt> {
        match self {
            DiscFactorization::Zero => None,
            DiscFactorization::NonZero { delta, .. } => Some(delta),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, DiscFactorization::Zero)
    }

    /// Rebuilds `4^ell · delta`.
    pub fn value(&self) -> BigInt {
        match self {
            DiscFactorization::Zero => BigInt::zero(),
            DiscFactorization::NonZero { ell, delta, .. } => delta << (2 * *ell as usize),
        }
    }
}

/// Canonical residue of `x` modulo 8.
fn mod8(x: &BigInt) -> u8 {
    x.mod_floor(&BigInt::from(8))
        .to_u8()
        .expect("residue below 8")
}

pub fn factor_discriminant(d: &BigInt) -> DiscFactorization {
    let Some(tz) = d.trailing_zeros() else {
        return DiscFactorization::Zero;
    };
    let ell = u32::try_from(tz / 2).expect("discriminant too large");
    let delta = d >> (2 * ell as usize);
    let m = mod8(&delta);
    DiscFactorization::NonZero { ell, delta, m }
}

/// Whether the odd integer `a` is a square in ℤ₂, i.e. `a ≡ 1 (mod 8)`.
pub fn is_square_in_z2(a: &BigInt) -> Result<bool> {
    if a.is_even() {
        return Err(Error::EvenArgument(a.clone()));
    }
    Ok(mod8(a) == 1)
}

pub fn pow2(i: u32) -> BigUint {
    BigUint::one() << i as usize
}

/// Canonical residue of `x` in `[0, 2^i)`.
pub fn mod_pow2(x: &BigInt, i: u32) -> BigUint {
    let r = x.mod_floor(&BigInt::from(pow2(i)));
    r.to_biguint()
        .expect("mod_floor by a positive modulus is non-negative")
}

/// The unique `x` in `[0, 2^i)` with `a·x ≡ 1 (mod 2^i)`, for odd `a`.
///
/// Newton iteration `x ← x(2 − a·x)`, starting from `x = a` which is already
/// an inverse modulo 8.
pub fn inverse_mod_pow2(a: &BigInt, i: u32) -> Result<BigUint> {
    if a.is_even() {
        return Err(Error::EvenArgument(a.clone()));
    }
    if i == 0 {
        return Ok(BigUint::zero());
    }
    let a = BigInt::from_biguint(Sign::Plus, mod_pow2(a, i));
    let two = BigInt::from(2);
    let mut x = a.clone();
    let mut bits = 3u32;
    while bits < i {
        x = &x * (&two - &a * &x);
        x = BigInt::from_biguint(Sign::Plus, mod_pow2(&x, i));
        bits *= 2;
    }
    Ok(mod_pow2(&x, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu(2, &big(416)).unwrap(), Valuation::Finite(5));
        assert_eq!(nu(2, &big(0)).unwrap(), Valuation::Infinite);
        assert_eq!(nu(2, &big(7)).unwrap(), Valuation::Finite(0));
        assert_eq!(nu(2, &big(-32)).unwrap(), Valuation::Finite(5));
        assert_eq!(nu(3, &big(-162)).unwrap(), Valuation::Finite(4));
        assert_eq!(nu(5, &big(0)).unwrap(), Valuation::Infinite);
    }

    #[test]
    fn nu_rejects_composite() {
        assert_eq!(nu(4, &big(8)), Err(Error::NotPrime(4)));
        assert_eq!(nu(1, &big(8)), Err(Error::NotPrime(1)));
        assert_eq!(nu(0, &big(8)), Err(Error::NotPrime(0)));
    }

    #[test]
    fn product_check_examples() {
        assert!(nu_product_check(&rat(4, 1), &rat(6, 1)).unwrap());
        assert!(nu_product_check(&rat(3, 1), &rat(5, 1)).unwrap());
        assert!(nu_product_check(&rat(1, 2), &rat(8, 1)).unwrap());
        assert_eq!(
            nu_product_check(&rat(0, 1), &rat(8, 1)),
            Err(Error::ZeroRational)
        );
    }

    #[test]
    fn discriminant_examples() {
        let cases = [
            (1600, 3, 25, 1),
            (-229376, 7, -14, 2),
            (-11264, 5, -11, 5),
            (7, 0, 7, 7),
            (-2, 0, -2, 6),
        ];
        for (d, ell, delta, m) in cases {
            assert_eq!(
                factor_discriminant(&big(d)),
                DiscFactorization::NonZero {
                    ell,
                    delta: big(delta),
                    m
                },
                "D = {d}"
            );
        }
        assert!(factor_discriminant(&big(0)).is_zero());
    }

    #[test]
    fn square_examples() {
        assert!(is_square_in_z2(&big(25)).unwrap());
        assert!(is_square_in_z2(&big(1)).unwrap());
        assert!(!is_square_in_z2(&big(-11)).unwrap());
        assert!(is_square_in_z2(&big(-7)).unwrap());
        assert!(is_square_in_z2(&big(4)).is_err());
    }

    fn brute_inverse(a: i64, i: u32) -> u64 {
        let m = 1u64 << i;
        (0..m)
            .find(|x| (a.rem_euclid(m as i64) as u64 * x) % m == 1 % m)
            .unwrap()
    }

    #[test]
    fn inverse_examples() {
        // frozen from the brute-force scan
        assert_eq!(brute_inverse(5, 5), 13);
        assert_eq!(brute_inverse(13, 3), 5);
        assert_eq!(inverse_mod_pow2(&big(5), 5).unwrap(), BigUint::from(13u32));
        assert_eq!(inverse_mod_pow2(&big(1), 10).unwrap(), BigUint::from(1u32));
        assert_eq!(inverse_mod_pow2(&big(13), 3).unwrap(), BigUint::from(5u32));
        assert_eq!(inverse_mod_pow2(&big(7), 0).unwrap(), BigUint::zero());
        assert!(inverse_mod_pow2(&big(6), 4).is_err());
    }

    #[test]
    fn inverse_matches_brute_force_small() {
        for a in (-41i64..=41).filter(|a| a % 2 != 0) {
            for i in 1..=9 {
                assert_eq!(
                    inverse_mod_pow2(&big(a), i).unwrap(),
                    BigUint::from(brute_inverse(a, i)),
                    "a={a} i={i}"
                );
            }
        }
    }

    #[test]
    fn valuation_text_round_trip() {
        for v in [
            Valuation::Finite(0),
            Valuation::Finite(17),
            Valuation::Infinite,
        ] {
            assert_eq!(v.to_string().parse::<Valuation>().unwrap(), v);
        }
        assert!("-1".parse::<Valuation>().is_err());
        assert!(Valuation::Finite(u64::MAX) < Valuation::Infinite);
    }

    proptest! {
        #[test]
        fn nu2_is_additive(x in any::<i64>().prop_filter("nonzero", |x| *x != 0),
                           y in any::<i64>().prop_filter("nonzero", |y| *y != 0)) {
            let vx = nu2(&big(x)).finite().unwrap();
            let vy = nu2(&big(y)).finite().unwrap();
            prop_assert_eq!(nu2(&(big(x) * big(y))), Valuation::Finite(vx + vy));
        }

        #[test]
        fn discriminant_reassembles(d in any::<i64>().prop_filter("nonzero", |d| *d != 0)) {
            let fac = factor_discriminant(&big(d));
            prop_assert_eq!(fac.value(), big(d));
            let delta = fac.delta().unwrap();
            prop_assert!(!delta.is_multiple_of(&big(4)));
            prop_assert!(fac.m() != Some(0) && fac.m() != Some(4));
        }

        #[test]
        fn inverse_is_inverse(a in any::<i64>().prop_map(|a| a | 1), i in 1u32..200) {
            let x = inverse_mod_pow2(&big(a), i).unwrap();
            let prod = BigInt::from(x) * big(a);
            prop_assert_eq!(mod_pow2(&prod, i), BigUint::one());
        }

        #[test]
        fn square_predicate_matches_exhaustive_search(a in (-2000i64..2000).prop_map(|a| a | 1)) {
            let expected = is_square_in_z2(&big(a)).unwrap();
            for k in 3u32..=12 {
                let m = 1i64 << k;
                let target = a.rem_euclid(m);
                let found = (0..m).any(|x| (x * x) % m == target);
                prop_assert_eq!(found, expected, "a={} k={}", a, k);
            }
        }
    }
}
