//! Random polynomials for property tests and benchmarks.

use num_bigint::BigInt;
use rand::Rng;

use crate::classifier::{classify, Case, Classification};
use crate::poly::QuadraticPoly;

/// Rejection sampling gives up after this many draws.
const MAX_DRAWS: usize = 1_000_000;

/// Coefficients uniform in `[−bound, bound]`, `a ≠ 0`.
pub fn uniform_poly<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> QuadraticPoly {
    assert!(bound > 0);
    loop {
        let a = rng.gen_range(-bound..=bound);
        if a == 0 {
            continue;
        }
        let b = rng.gen_range(-bound..=bound);
        let c = rng.gen_range(-bound..=bound);
        return QuadraticPoly::from_i64(a, b, c).expect("a is nonzero");
    }
}

/// Draws uniform polynomials until one satisfies `keep`.
///
/// Panics if nothing is accepted within a million draws.
pub fn sample_where<R, P>(rng: &mut R, bound: i64, mut keep: P) -> (QuadraticPoly, Classification)
where
    R: Rng + ?Sized,
    P: FnMut(&Classification) -> bool,
{
    for _ in 0..MAX_DRAWS {
        let f = uniform_poly(rng, bound);
        let cls = classify(&f);
        if keep(&cls) {
            return (f, cls);
        }
    }
    panic!("no polynomial accepted in {MAX_DRAWS} draws");
}

/// A polynomial of the given case with coefficients in `[−bound, bound]`.
///
/// Case 3(a) is built as `a(n + t)²` with `a` odd, since a zero discriminant
/// is too rare to find by rejection.
pub fn sample_case<R: Rng + ?Sized>(rng: &mut R, case: Case, bound: i64) -> QuadraticPoly {
    if case == Case::ThreeA {
        loop {
            let a: i64 = rng.gen_range(-bound..=bound) | 1;
            let t_max = ((bound / a.abs()) as f64).sqrt() as i64;
            let t = rng.gen_range(-t_max..=t_max);
            if (2 * a * t).abs() > bound {
                continue;
            }
            let f = QuadraticPoly::new(
                BigInt::from(a),
                BigInt::from(2 * a * t),
                BigInt::from(a * t * t),
            )
            .expect("a is odd");
            return f;
        }
    }
    sample_where(rng, bound, |cls| cls.case == case).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_case_is_reachable() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for case in Case::ALL {
            for _ in 0..20 {
                let f = sample_case(&mut rng, case, 10_000);
                assert_eq!(classify(&f).case, case, "{f}");
                let (a, b, c) = f.coefficients();
                for x in [a, b, c] {
                    assert!(x.magnitude() <= &10_000u32.into(), "{f}");
                }
            }
        }
    }
}
