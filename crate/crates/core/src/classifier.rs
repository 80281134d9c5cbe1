//! Coefficient-level classification of the sequence ν₂(f(n)).
//!
//! All-even coefficient triples are first reduced by their common power of
//! two; the classification then dispatches on the parities of the reduced
//! coefficients and, when `a` is odd and `b` even, on the discriminant
//! `b² − 4ac = 4^ℓ·Δ` and `m = Δ mod 8`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use crate::arith::{factor_discriminant, nu2, pow2, DiscFactorization, Valuation};
use crate::poly::QuadraticPoly;

/// The five parity cases, with the three discriminant sub-cases of case 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    /// `a`, `b` even, `c` odd: constantly zero.
    One,
    /// `a` even, `b` odd: unbounded, one infinite branch.
    Two,
    /// `a` odd, `b` even, zero discriminant: unbounded, one branch.
    ThreeA,
    /// `a` odd, `b` even, `m = 1`: unbounded, two branches.
    ThreeB,
    /// `a` odd, `b` even, `m ∈ {2,3,5,6,7}`: bounded with period `2^ℓ`.
    ThreeC,
    /// `a`, `b` odd, `c` even: unbounded, two branches.
    Four,
    /// `a`, `b`, `c` odd: constantly zero.
    Five,
}

impl Case {
    pub const ALL: [Case; 7] = [
        Case::One,
        Case::Two,
        Case::ThreeA,
        Case::ThreeB,
        Case::ThreeC,
        Case::Four,
        Case::Five,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Case::One => "CASE1_CONST_ZERO",
            Case::Two => "CASE2_UNBOUNDED",
            Case::ThreeA => "CASE3A_UNBOUNDED",
            Case::ThreeB => "CASE3B_UNBOUNDED",
            Case::ThreeC => "CASE3C_BOUNDED",
            Case::Four => "CASE4_UNBOUNDED",
            Case::Five => "CASE5_CONST_ZERO",
        }
    }

    /// Short human label, e.g. `3(c)`.
    pub fn label(self) -> &'static str {
        match self {
            Case::One => "1",
            Case::Two => "2",
            Case::ThreeA => "3(a)",
            Case::ThreeB => "3(b)",
            Case::ThreeC => "3(c)",
            Case::Four => "4",
            Case::Five => "5",
        }
    }

    pub fn is_bounded(self) -> bool {
        matches!(self, Case::One | Case::ThreeC | Case::Five)
    }

    pub fn is_constant(self) -> bool {
        matches!(self, Case::One | Case::Five)
    }

    pub fn infinite_branches(self) -> u8 {
        match self {
            Case::One | Case::ThreeC | Case::Five => 0,
            Case::Two | Case::ThreeA => 1,
            Case::ThreeB | Case::Four => 2,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub poly: QuadraticPoly,
    /// `poly / 2^even_offset`; coefficients not all even.
    pub reduced: QuadraticPoly,
    pub even_offset: u64,
    pub case: Case,
    /// Discriminant factorization of the reduced polynomial (case 3 only).
    pub disc: Option<DiscFactorization>,
    /// `2^ℓ` for case 3(c), 1 for the constant cases.
    pub period: Option<BigUint>,
    pub infinite_branches: u8,
}

impl Classification {
    pub fn is_bounded(&self) -> bool {
        self.case.is_bounded()
    }

    pub fn ell(&self) -> Option<u32> {
        self.disc.as_ref().and_then(DiscFactorization::ell)
    }

    pub fn m(&self) -> Option<u8> {
        self.disc.as_ref().and_then(DiscFactorization::m)
    }

    pub fn delta(&self) -> Option<&BigInt> {
        self.disc.as_ref().and_then(DiscFactorization::delta)
    }

    pub fn constant_valuation(&self) -> Option<Valuation> {
        constant_valuation(self)
    }
}

/// Factors the largest common power of two out of the coefficients.
pub fn reduce_even(f: &QuadraticPoly) -> (u64, QuadraticPoly) {
    let (a, b, c) = f.coefficients();
    let shift = nu2(a)
        .min(nu2(b))
        .min(nu2(c))
        .finite()
        .expect("a is nonzero");
    if shift == 0 {
        return (0, f.clone());
    }
    let s = shift as usize;
    let reduced = QuadraticPoly::new(a >> s, b >> s, c >> s).expect("a stays nonzero");
    (shift, reduced)
}

pub fn classify(f: &QuadraticPoly) -> Classification {
    let (even_offset, reduced) = reduce_even(f);
    let (a, b, c) = reduced.coefficients();
    let mut disc = None;
    let case = match (a.is_odd(), b.is_odd(), c.is_odd()) {
        (false, false, true) => Case::One,
        (false, true, _) => Case::Two,
        (true, false, _) => {
            let fac = factor_discriminant(&reduced.discriminant());
            let case = match fac.m() {
                None => Case::ThreeA,
                Some(1) => Case::ThreeB,
                Some(_) => Case::ThreeC,
            };
            disc = Some(fac);
            case
        }
        (true, true, false) => Case::Four,
        (true, true, true) => Case::Five,
        (false, false, false) => unreachable!("reduced coefficients are not all even"),
    };
    let period = match case {
        Case::One | Case::Five => Some(BigUint::one()),
        Case::ThreeC => disc.as_ref().and_then(DiscFactorization::ell).map(pow2),
        _ => None,
    };
    Classification {
        poly: f.clone(),
        reduced,
        even_offset,
        case,
        disc,
        period,
        infinite_branches: case.infinite_branches(),
    }
}

/// The constant valuation of cases 1 and 5 (the reduction shift), else `None`.
pub fn constant_valuation(cls: &Classification) -> Option<Valuation> {
    cls.case
        .is_constant()
        .then_some(Valuation::Finite(cls.even_offset))
}
