//! Closed-form valuations for bounded (case 3(c)) quadratics.
//!
//! For `ℓ ≥ 2` every `n` falls in exactly one of the residue classes
//! `a⁻¹(2^{i−1} − b/2) mod 2^i` (`1 ≤ i ≤ ℓ`) or `a⁻¹(2^ℓ − b/2) mod 2^ℓ`;
//! the class determines the valuation. `ℓ = 1` uses its own table keyed on
//! `(m, b mod 4)` and the parity of `n`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{inverse_mod_pow2, mod_pow2, pow2, Valuation};
use crate::classifier::{classify, Case, Classification};
use crate::error::{Error, Result};
use crate::poly::QuadraticPoly;

/// Largest `ℓ` for which [`period_table`] will materialize `2^ℓ` entries.
pub const MAX_TABLE_ELL: u32 = 24;

/// One residue class of the closed form: `n ≡ residue (mod 2^level)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueCase {
    pub level: u32,
    pub residue: BigUint,
    /// Valuation of the reduced polynomial on this class.
    pub valuation: u64,
}

#[derive(Debug, Clone)]
enum Rule {
    /// `ℓ = 1`: valuation on even and odd `n`.
    Parity { even: u64, odd: u64 },
    /// `ℓ ≥ 2`: the `ℓ + 1` residue classes, ordered by level.
    Residues(Vec<ResidueCase>),
}

/// Precomputed closed form for one bounded polynomial.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    ell: u32,
    m: u8,
    even_offset: u64,
    rule: Rule,
}

/// Valuations `(even n, odd n)` for `ℓ = 1`.
///
/// With `b = 2k`, `a·f(n) = (an + k)² − Δ`, and `an + k` is odd exactly when
/// `n + k` is odd. The rows below are that computation tabulated by
/// `(m, b mod 4)`: `m ∈ {3,7}` and `m ∈ {2,6}` behave alike, `m = 5` gives 2.
fn ell_one_table(m: u8, b_mod4: u8) -> (u64, u64) {
    match (m, b_mod4) {
        (3 | 7, 0) | (2 | 6, 2) => (0, 1),
        (3 | 7, 2) | (2 | 6, 0) => (1, 0),
        (5, 0) => (0, 2),
        (5, 2) => (2, 0),
        _ => unreachable!("m in {{2,3,5,6,7}} and b even"),
    }
}

/// Valuations at the two level-`ℓ` classes, for
/// `n ≡ a⁻¹(2^{ℓ−1} − k)` and `n ≡ a⁻¹(2^ℓ − k)` respectively.
fn last_level_valuations(ell: u32, m: u8) -> (u64, u64) {
    let e = u64::from(ell);
    match m {
        2 | 6 => (2 * (e - 1), 2 * e - 1),
        3 | 7 => (2 * e - 1, 2 * (e - 1)),
        5 => (2 * e, 2 * (e - 1)),
        _ => unreachable!("m in {{2,3,5,6,7}}"),
    }
}

impl ClosedForm {
    pub fn new(f: &QuadraticPoly) -> Result<Self> {
        Self::from_classification(&classify(f))
    }

    pub fn from_classification(cls: &Classification) -> Result<Self> {
        if cls.case != Case::ThreeC {
            return Err(Error::NotBounded);
        }
        let ell = cls.ell().expect("case 3(c) has ℓ");
        let m = cls.m().expect("case 3(c) has m");
        let (a, b, _) = cls.reduced.coefficients();
        let k: BigInt = b >> 1usize;

        let rule = if ell == 1 {
            let b_mod4 = b.mod_floor(&BigInt::from(4)).to_u8().expect("below 4");
            let (even, odd) = ell_one_table(m, b_mod4);
            Rule::Parity { even, odd }
        } else {
            let a_inv = BigInt::from(inverse_mod_pow2(a, ell)?);
            let class = |level: u32, exponent: u32| {
                let target = BigInt::from(pow2(exponent)) - &k;
                mod_pow2(&(&a_inv * target), level)
            };
            let mut cases: Vec<ResidueCase> = (1..ell)
                .map(|i| ResidueCase {
                    level: i,
                    residue: class(i, i - 1),
                    valuation: 2 * u64::from(i - 1),
                })
                .collect();
            let (upper, lower) = last_level_valuations(ell, m);
            cases.push(ResidueCase {
                level: ell,
                residue: class(ell, ell - 1),
                valuation: upper,
            });
            cases.push(ResidueCase {
                level: ell,
                residue: class(ell, ell),
                valuation: lower,
            });
            Rule::Residues(cases)
        };
        Ok(ClosedForm {
            ell,
            m,
            even_offset: cls.even_offset,
            rule,
        })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn even_offset(&self) -> u64 {
        self.even_offset
    }

    pub fn period(&self) -> BigUint {
        pow2(self.ell)
    }

    /// The residue classes of the `ℓ ≥ 2` closed form; empty for `ℓ = 1`.
    pub fn residue_cases(&self) -> &[ResidueCase] {
        match &self.rule {
            Rule::Residues(cases) => cases,
            Rule::Parity { .. } => &[],
        }
    }

    pub fn valuation(&self, n: &BigUint) -> Valuation {
        let v = match &self.rule {
            Rule::Parity { even, odd } => {
                if n.is_even() {
                    *even
                } else {
                    *odd
                }
            }
            Rule::Residues(cases) => {
                let n = BigInt::from_biguint(Sign::Plus, n.clone());
                let mut hits = cases
                    .iter()
                    .filter(|case| mod_pow2(&n, case.level) == case.residue);
                let hit = hits.next().expect("residue classes cover every n");
                assert!(hits.next().is_none(), "residue classes overlap at n={n}");
                hit.valuation
            }
        };
        Valuation::Finite(v + self.even_offset)
    }

    pub fn max_valuation(&self) -> Valuation {
        let e = u64::from(self.ell);
        let top = if self.m == 5 { 2 * e } else { 2 * e - 1 };
        Valuation::Finite(top + self.even_offset)
    }

    pub fn period_table(&self) -> Result<PeriodTable> {
        if self.ell > MAX_TABLE_ELL {
            return Err(Error::TableTooLarge { ell: self.ell });
        }
        let entries = (0u64..1 << self.ell)
            .map(|r| self.valuation(&BigUint::from(r)))
            .collect();
        Ok(PeriodTable {
            ell: self.ell,
            entries,
        })
    }
}

/// Residue mod `2^ℓ` → valuation for a bounded sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodTable {
    pub ell: u32,
    pub entries: Vec<Valuation>,
}

impl PeriodTable {
    pub fn period(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, residue: usize) -> Valuation {
        self.entries[residue % self.entries.len()]
    }

    pub fn max(&self) -> Valuation {
        *self.entries.iter().max().expect("table is non-empty")
    }

    /// True when the table, read cyclically, repeats with period `p`.
    pub fn has_period(&self, p: usize) -> bool {
        let len = self.entries.len();
        (0..len).all(|r| self.entries[r] == self.entries[(r + p) % len])
    }
}

pub fn closed_form_valuation(f: &QuadraticPoly, n: &BigUint) -> Result<Valuation> {
    Ok(ClosedForm::new(f)?.valuation(n))
}

pub fn period_table(f: &QuadraticPoly) -> Result<PeriodTable> {
    ClosedForm::new(f)?.period_table()
}

pub fn max_valuation(f: &QuadraticPoly) -> Result<Valuation> {
    Ok(ClosedForm::new(f)?.max_valuation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nu2;

    fn poly(a: i64, b: i64, c: i64) -> QuadraticPoly {
        QuadraticPoly::from_i64(a, b, c).unwrap()
    }

    fn brute(f: &QuadraticPoly, n: u64) -> Valuation {
        nu2(&f.eval(&BigInt::from(n)))
    }

    fn fin(v: &[u64]) -> Vec<Valuation> {
        v.iter().copied().map(Valuation::Finite).collect()
    }

    #[test]
    fn reference_values() {
        let f4 = poly(5, 106, 1125);
        let at = |f: &QuadraticPoly, n: u32| closed_form_valuation(f, &BigUint::from(n)).unwrap();
        assert_eq!(at(&f4, 15), Valuation::Finite(8));
        assert_eq!(at(&f4, 7), Valuation::Finite(6));
        let f3 = poly(15, 1142, 25559);
        assert_eq!(at(&f3, 3), Valuation::Finite(6));
        assert_eq!(at(&f3, 11), Valuation::Finite(10));
    }

    #[test]
    fn ell_one_example() {
        let f = poly(1, 2, -4);
        // frozen from brute force over n = 0..16
        for n in 0..16u64 {
            assert_eq!(
                brute(&f, n),
                Valuation::Finite(if n % 2 == 0 { 2 } else { 0 })
            );
        }
        let cf = ClosedForm::new(&f).unwrap();
        assert_eq!(cf.valuation(&BigUint::from(0u32)), Valuation::Finite(2));
        assert_eq!(cf.valuation(&BigUint::from(1u32)), Valuation::Finite(0));
        assert!(cf.residue_cases().is_empty());
    }

    #[test]
    fn ell_one_table_covers_every_combination() {
        // (a, b, c) with ℓ = 1 for each (m, b mod 4)
        let samples = [
            ((1, 0, -2), 2, 0),
            ((1, 2, -1), 2, 2),
            ((1, 0, -3), 3, 0),
            ((1, 2, -2), 3, 2),
            ((1, 0, 3), 5, 0),
            ((1, 2, -4), 5, 2),
            ((1, 0, 2), 6, 0),
            ((1, 2, 3), 6, 2),
            ((1, 0, 1), 7, 0),
            ((1, 2, 2), 7, 2),
        ];
        for ((a, b, c), m, b4) in samples {
            let f = poly(a, b, c);
            let cls = classify(&f);
            assert_eq!(
                (cls.case, cls.ell(), cls.m()),
                (Case::ThreeC, Some(1), Some(m))
            );
            assert_eq!(b.rem_euclid(4), b4);
            let cf = ClosedForm::new(&f).unwrap();
            for n in 0..64u64 {
                assert_eq!(cf.valuation(&BigUint::from(n)), brute(&f, n), "{f} n={n}");
            }
        }
    }

    #[test]
    fn table_examples() {
        let f4 = period_table(&poly(5, 106, 1125)).unwrap();
        assert_eq!(f4.period(), 32);
        assert_eq!(
            &f4.entries[..20],
            &fin(&[0, 2, 0, 4, 0, 2, 0, 6, 0, 2, 0, 4, 0, 2, 0, 8, 0, 2, 0, 4])[..]
        );
        let f3 = period_table(&poly(15, 1142, 25559)).unwrap();
        assert_eq!(f3.period(), 128);
        assert_eq!(
            &f3.entries[..16],
            &fin(&[0, 2, 0, 6, 0, 2, 0, 4, 0, 2, 0, 10, 0, 2, 0, 4])[..]
        );
        let small = period_table(&poly(1, 2, 5)).unwrap();
        assert_eq!(small.entries, fin(&[0, 3, 0, 2]));
    }

    #[test]
    fn max_examples() {
        // frozen: oracle maxima over one period
        let f4 = poly(5, 106, 1125);
        let f3 = poly(15, 1142, 25559);
        assert_eq!(
            (0..32).map(|n| brute(&f4, n)).max(),
            Some(Valuation::Finite(10))
        );
        assert_eq!(
            (0..128).map(|n| brute(&f3, n)).max(),
            Some(Valuation::Finite(13))
        );
        assert_eq!(max_valuation(&f4).unwrap(), Valuation::Finite(10));
        assert_eq!(max_valuation(&f3).unwrap(), Valuation::Finite(13));
        assert_eq!(max_valuation(&poly(1, 2, 5)).unwrap(), Valuation::Finite(3));
    }

    #[test]
    fn even_offset_is_added_back() {
        let f = poly(8, 16, 40);
        let table = period_table(&f).unwrap();
        assert_eq!(table.entries, fin(&[3, 6, 3, 5]));
        assert_eq!(max_valuation(&f).unwrap(), Valuation::Finite(6));
    }

    #[test]
    fn unbounded_inputs_are_rejected() {
        for f in [poly(4, 13, -25), poly(13, 12, -28), poly(1, 1, 1)] {
            assert_eq!(period_table(&f), Err(Error::NotBounded));
            assert_eq!(max_valuation(&f), Err(Error::NotBounded));
            assert_eq!(
                closed_form_valuation(&f, &BigUint::from(3u32)),
                Err(Error::NotBounded)
            );
        }
    }

    #[test]
    fn table_structure() {
        let f3 = period_table(&poly(15, 1142, 25559)).unwrap();
        assert!(!f3.has_period(64));
        assert!(f3.has_period(128));
        let top = f3.max();
        assert_eq!(f3.entries.iter().filter(|v| **v == top).count(), 1);
        // each level i < ℓ contributes 2^{ℓ-i} entries of valuation 2(i-1)
        for i in 1..7u32 {
            let count = f3
                .entries
                .iter()
                .filter(|v| **v == Valuation::Finite(2 * u64::from(i - 1)))
                .count();
            let expected = 1usize << (7 - i);
            // m = 2: 2(ℓ-1) = 12 also appears once at level ℓ, not below ℓ
            assert_eq!(count, expected, "level {i}");
        }
    }
}
