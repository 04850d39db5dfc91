//! Average-case residual collision model for the unsplit index.
//!
//! For `n` words drawn uniformly from strings of length `ell` over `sigma`
//! symbols, each of the `C(ell, d)` residuals of a query collides with each of
//! the `C(ell, d)` residuals of a word with probability `sigma^(d - ell)`, so
//! the expected number of colliding residual pairs is
//! `n * C(ell, d)^2 * sigma^(d - ell)`. Repeated residuals make this an
//! overestimate.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollisionModel {
    n: u64,
    ell: u32,
    d: u32,
    sigma: u32,
}

impl CollisionModel {
    pub fn new(n: u64, ell: u32, d: u32, sigma: u32) -> Result<Self> {
        if d > ell {
            return Err(Error::usage(format!("d = {d} exceeds word length {ell}")));
        }
        if sigma == 0 {
            return Err(Error::usage("alphabet size must be at least 1"));
        }
        Ok(CollisionModel { n, ell, d, sigma })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    /// `C(ell, d)^2` and `sigma^(ell - d)` as exact integers.
    fn collision_ratio(&self) -> (BigUint, BigUint) {
        let c = binomial(self.ell, self.d);
        let den = BigUint::from(self.sigma).pow(self.ell - self.d);
        (&c * &c, den)
    }
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `num / den` as `f64`, shifting both operands down first when either is too
/// large for a finite `f64`.
fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    let excess = num.bits().max(den.bits()).saturating_sub(1000);
    let num = num >> excess;
    let den = den >> excess;
    match (num.to_f64(), den.to_f64()) {
        (Some(a), Some(b)) if b != 0.0 => a / b,
        _ => 0.0,
    }
}

/// Expected number of residual collisions for a uniform random query.
pub fn expected_candidates(model: &CollisionModel) -> f64 {
    let (num, den) = model.collision_ratio();
    ratio(&(num * BigUint::from(model.n)), &den)
}

/// Markov bound on the probability that collisions reach `n / c`.
pub fn markov_bound(model: &CollisionModel, c: f64) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::usage(format!(
            "c must be a positive finite number, got {c}"
        )));
    }
    let (num, den) = model.collision_ratio();
    Ok(ratio(&num, &den) / c)
}
