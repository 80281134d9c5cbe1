use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use quadval::oracle::{period_witness, valuation_at, valuation_sequence};
use quadval::{classify, translate, Case, ClosedForm, QuadraticPoly, Valuation};

fn poly(a: i64, b: i64, c: i64) -> QuadraticPoly {
    QuadraticPoly::from_i64(a, b, c).unwrap()
}

fn coefficients() -> impl Strategy<Value = QuadraticPoly> {
    (
        -10_000i64..=10_000,
        -10_000i64..=10_000,
        -10_000i64..=10_000,
    )
        .prop_filter("a must be nonzero", |(a, _, _)| *a != 0)
        .prop_map(|(a, b, c)| poly(a, b, c))
}

fn bounded() -> impl Strategy<Value = QuadraticPoly> {
    coefficients().prop_filter("case 3(c)", |f| classify(f).case == Case::ThreeC)
}

proptest! {
    #[test]
    fn closed_form_matches_oracle(f in bounded()) {
        let cf = ClosedForm::new(&f).unwrap();
        for n in 0..4u64 << cf.ell() {
            prop_assert_eq!(
                cf.valuation(&BigUint::from(n)),
                valuation_at(&f, &BigInt::from(n)),
                "n = {}", n
            );
        }
    }

    #[test]
    fn closed_form_is_periodic_far_out(f in bounded(), n in 0u64..1 << 40) {
        let cf = ClosedForm::new(&f).unwrap();
        prop_assert_eq!(cf.valuation(&BigUint::from(n)), valuation_at(&f, &BigInt::from(n)));
    }

    #[test]
    fn period_is_minimal(f in bounded()) {
        let ell = classify(&f).ell().unwrap();
        prop_assert_eq!(period_witness(&f, 1 << ell), None);
        let w = period_witness(&f, 1 << (ell - 1));
        prop_assert!(matches!(w, Some(n) if n < 1 << (ell - 1)));
    }

    #[test]
    fn max_valuation_is_attained(f in bounded()) {
        let cf = ClosedForm::new(&f).unwrap();
        let seq = valuation_sequence(&f, 0, 1 << cf.ell());
        prop_assert_eq!(seq.values.iter().max().copied(), Some(cf.max_valuation()));
    }

    #[test]
    fn constant_cases_are_constant(f in coefficients()) {
        let cls = classify(&f);
        prop_assume!(cls.case.is_constant());
        let want = Valuation::Finite(cls.even_offset);
        prop_assert!(valuation_sequence(&f, 0, 64).values.iter().all(|v| *v == want));
    }

    #[test]
    fn classification_is_translation_invariant(f in coefficients(), s in -1000i64..1000) {
        let before = classify(&f);
        let after = classify(&translate(&f, &BigInt::from(s)));
        prop_assert_eq!(before.case, after.case);
        prop_assert_eq!(before.ell(), after.ell());
        prop_assert_eq!(before.m(), after.m());
        prop_assert_eq!(before.even_offset, after.even_offset);
    }

    #[test]
    fn scaling_by_two_shifts_the_offset(f in coefficients(), k in 0u32..5) {
        let (a, b, c) = f.coefficients();
        let scaled = QuadraticPoly::new(a << k, b << k, c << k).unwrap();
        let before = classify(&f);
        let after = classify(&scaled);
        prop_assert_eq!(before.case, after.case);
        prop_assert_eq!(before.even_offset + u64::from(k), after.even_offset);
        if before.case == Case::ThreeC {
            let cf = ClosedForm::new(&scaled).unwrap();
            for n in 0..2u64 << cf.ell() {
                prop_assert_eq!(cf.valuation(&BigUint::from(n)), valuation_at(&scaled, &BigInt::from(n)));
            }
        }
    }
}

#[test]
fn every_ell_1_pattern() {
    let mut seen = std::collections::BTreeSet::new();
    for a in -15i64..=15 {
        for b in (-16i64..=16).step_by(2) {
            for c in -40i64..=40 {
                if a == 0 || a % 2 == 0 {
                    continue;
                }
                let f = poly(a, b, c);
                let cls = classify(&f);
                if cls.case != Case::ThreeC || cls.ell() != Some(1) {
                    continue;
                }
                seen.insert((cls.m().unwrap(), b.rem_euclid(4)));
                let cf = ClosedForm::new(&f).unwrap();
                for n in 0..64u64 {
                    assert_eq!(
                        cf.valuation(&BigUint::from(n)),
                        valuation_at(&f, &BigInt::from(n)),
                        "{f} at {n}"
                    );
                }
            }
        }
    }
    assert_eq!(seen.len(), 10);
}

/// Monic `n² + 2kn + c` with `k² − c = 4^{ℓ−1}Δ`, for ℓ up to 14.
#[test]
fn deep_periods_match_the_oracle() {
    let mut seen = std::collections::BTreeSet::new();
    for ell in 2u32..=14 {
        for delta in [-13i64, -11, -10, -9, -5, -2, -1, 2, 3, 5, 6, 7, 11] {
            let shift = 4i64.pow(ell - 1) * delta;
            let k = (ell as i64 * 37 + delta) % 97;
            let c = k * k - shift;
            let f = poly(1, 2 * k, c);
            let cls = classify(&f);
            assert_eq!((cls.case, cls.ell()), (Case::ThreeC, Some(ell)), "{f}");
            let cf = ClosedForm::new(&f).unwrap();
            for n in 0..4u64 << ell {
                assert_eq!(
                    cf.valuation(&BigUint::from(n)),
                    valuation_at(&f, &BigInt::from(n)),
                    "{f} at {n}"
                );
            }
            let w = period_witness(&f, 1 << (ell - 1));
            assert!(matches!(w, Some(n) if n < 1 << (ell - 1)), "{f}");
            seen.insert(cls.m().unwrap());
        }
    }
    assert_eq!(seen.into_iter().collect::<Vec<_>>(), [2, 3, 5, 6, 7]);
}
