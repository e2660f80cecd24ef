//! Seeded random polynomials shared by the verification suites.
//!
//! Each term has numerator uniform in `[-9, 9] \ {0}`, denominator uniform in
//! `{1, 2, 3}`, a uniformly chosen blade and a monomial of total degree at
//! most the requested bound; a polynomial has 1 to 8 terms.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clifford::{Blade, Multivector};
use crate::poly::{CliffPoly, MultiIndex};
use crate::rational::{frac, Rational};

pub const MAX_TERMS: usize = 8;

/// Independent stream for trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let mut num = rng.gen_range(-9i64..=8);
    if num >= 0 {
        num += 1;
    }
    frac(num, rng.gen_range(1i64..=3))
}

pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, n: usize, degree: u32) -> CliffPoly {
    let mut p = CliffPoly::zero(n);
    let terms = rng.gen_range(1..=MAX_TERMS);
    for _ in 0..terms {
        let c = small_rational(rng);
        let blade = Blade::from_bits(rng.gen_range(0..1u64 << n));
        let total = rng.gen_range(0..=degree);
        let mut exps = vec![0u32; n];
        for _ in 0..total {
            exps[rng.gen_range(0..n)] += 1;
        }
        p.add_term(MultiIndex::new(exps), &Multivector::term(n, blade, c));
    }
    p
}

/// Random combination of `basis` with small rational weights (some zero).
pub fn random_combination<R: Rng + ?Sized>(rng: &mut R, n: usize, basis: &[CliffPoly]) -> CliffPoly {
    let mut p = CliffPoly::zero(n);
    for b in basis {
        if rng.gen_bool(0.6) {
            p.add_scaled(b, &small_rational(rng));
        }
    }
    p
}
