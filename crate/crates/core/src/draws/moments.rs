use num_traits::Zero;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::rational::{nat, to_f64, Rational};

use super::closed::multinomial;

/// Moment selectors for multinomial draws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Moment<T> {
    /// `E[φ(y)]`.
    Mean(T),
    /// `E[φ(y)·φ(z)]` for `y ≠ z`.
    Mixed(T, T),
    /// `E[φ(y)·(φ(y) - 1)]`.
    FactorialSecond(T),
    /// `E[Flrn(φ)(y)²]`.
    FrequencySquare(T),
}

/// Moment computed by enumerating the multinomial distribution.
pub fn mn_moment<T: Ord + Clone>(w: &Dist<T>, k: u64, m: &Moment<T>) -> Result<Rational> {
    if let Moment::Mixed(y, z) = m {
        if y == z {
            return Err(Error::Invalid("mixed moment needs distinct points".into()));
        }
    }
    if k == 0 && matches!(m, Moment::FrequencySquare(_)) {
        return Err(Error::EmptyMultiset);
    }
    let mn = multinomial(w, k);
    Ok(mn.dist.validity(|phi| match m {
        Moment::Mean(y) => nat(phi.count(y)),
        Moment::Mixed(y, z) => nat(phi.count(y) * phi.count(z)),
        Moment::FactorialSecond(y) => {
            let c = phi.count(y);
            nat(c * c.saturating_sub(1))
        }
        Moment::FrequencySquare(y) => {
            let f = nat(phi.count(y)) / nat(k);
            &f * &f
        }
    }))
}

/// The corresponding closed forms in `K` and `ω`.
pub fn mn_moment_closed<T: Ord + Clone>(w: &Dist<T>, k: u64, m: &Moment<T>) -> Rational {
    let kk = nat(k);
    let k1 = if k == 0 { Rational::zero() } else { nat(k - 1) };
    match m {
        Moment::Mean(y) => &kk * w.weight(y),
        Moment::Mixed(y, z) => &kk * &k1 * w.weight(y) * w.weight(z),
        Moment::FactorialSecond(y) => {
            let p = w.weight(y);
            &kk * &k1 * &p * &p
        }
        Moment::FrequencySquare(y) => {
            let p = w.weight(y);
            (&k1 * &p * &p + &p) / &kk
        }
    }
}

/// `Σ ω(x)·ln(ω(x)/ω'(x))`; infinite when `ω` leaves the support of `ω'`.
pub fn kl_divergence<T: Ord + Clone>(w: &Dist<T>, w2: &Dist<T>) -> f64 {
    let mut total = 0.0;
    for (x, p) in w.iter() {
        let q = w2.weight(x);
        if q.is_zero() {
            return f64::INFINITY;
        }
        total += to_f64(p) * to_f64(&(p / q)).ln();
    }
    total
}

/// `(KL(mn_K(ω), mn_K(ω')), KL(ω, ω'))`; the first is `K` times the second.
pub fn kl_multinomial_check<T: Ord + Clone>(w: &Dist<T>, w2: &Dist<T>, k: u64) -> (f64, f64) {
    let lhs = kl_divergence(&multinomial(w, k).dist, &multinomial(w2, k).dist);
    (lhs, kl_divergence(w, w2))
}
