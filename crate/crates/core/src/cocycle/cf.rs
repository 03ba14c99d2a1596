//! Continued-fraction digits of a uniformly random real in `(0, 1)`.
//!
//! Given the digits so far, the remaining tail `x_n = Tⁿ(x)` has density
//! `(1 + r)/(1 + r·x)²` on `(0, 1)`, where `r = q_{n−1}/q_n = [0; a_n, …, a_1]`.
//! Sampling `x_n` by inverting that distribution and keeping only `r`
//! produces the digit sequence exactly, without ever materialising `x`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Infinite digit stream; deterministic for a given seed and stream.
#[derive(Debug, Clone)]
pub struct GaussDigits {
    rng: ChaCha8Rng,
    r: f64,
}

impl GaussDigits {
    pub fn new(seed: u64) -> Self {
        GaussDigits::with_stream(seed, 0)
    }

    /// Independent stream `stream` of the master `seed`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        GaussDigits { rng, r: 0.0 }
    }
}

impl Iterator for GaussDigits {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            // u = 0 would be the rational endpoint; resample.
            let u: f64 = self.rng.random();
            if u == 0.0 {
                continue;
            }
            let x = u / (1.0 + self.r - self.r * u);
            let inv = 1.0 / x;
            if !inv.is_finite() {
                continue;
            }
            let a = (inv.floor() as u64).max(1);
            self.r = 1.0 / (a as f64 + self.r);
            return Some(a);
        }
    }
}

pub fn cf_digits(seed: u64) -> GaussDigits {
    GaussDigits::new(seed)
}

/// Digits of `num/den` in `(0, 1)` by Euclid's algorithm.
pub fn cf_expansion(mut num: u128, mut den: u128) -> Vec<u64> {
    assert!(num < den, "expects a number in [0, 1)");
    let mut out = Vec::new();
    while num != 0 {
        out.push((den / num) as u64);
        (num, den) = (den % num, num);
    }
    out
}
