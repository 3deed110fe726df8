use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::dist::Dist;
use crate::rational::{monus, Rational};

fn union<'a, T: Ord + Clone>(w: &'a Dist<T>, w2: &'a Dist<T>) -> BTreeSet<&'a T> {
    w.support().chain(w2.support()).collect()
}

/// Total variation distance `½ Σ |ω(x) - ω'(x)|`.
pub fn tvd<T: Ord + Clone>(w: &Dist<T>, w2: &Dist<T>) -> Rational {
    let total: Rational = union(w, w2)
        .into_iter()
        .map(|x| (w.weight(x) - w2.weight(x)).abs())
        .sum();
    total / crate::rational::int(2)
}

/// `Σ_x ω(x) ⊖ ω'(x)`, the mass that must move out.
pub fn tvd_up<T: Ord + Clone>(w: &Dist<T>, w2: &Dist<T>) -> Rational {
    union(w, w2)
        .into_iter()
        .map(|x| monus(&w.weight(x), &w2.weight(x)))
        .sum()
}

/// `Σ_x ω'(x) ⊖ ω(x)`, the mass that must move in.
pub fn tvd_down<T: Ord + Clone>(w: &Dist<T>, w2: &Dist<T>) -> Rational {
    tvd_up(w2, w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TvdCoupling<T: Ord> {
    pub coupling: Dist<(T, T)>,
    /// Set when the inputs coincide and the identity coupling was returned.
    pub degenerate: bool,
}

/// Coupling that keeps `min(ω, ω')` on the diagonal and spreads the rest
/// proportionally; its discrete-metric cost equals the total variation.
pub fn tvd_coupling<T: Ord + Clone>(w: &Dist<T>, w2: &Dist<T>) -> TvdCoupling<T> {
    let t = tvd(w, w2);
    if t.is_zero() {
        return TvdCoupling {
            coupling: w.map(|x| (x.clone(), x.clone())),
            degenerate: true,
        };
    }
    let points: Vec<&T> = union(w, w2).into_iter().collect();
    let mut out = Vec::new();
    for &x in &points {
        let (a, b) = (w.weight(x), w2.weight(x));
        let diag = if a < b { a.clone() } else { b.clone() };
        out.push(((x.clone(), x.clone()), diag));
        let surplus = monus(&a, &b);
        if surplus.is_positive() {
            for &y in &points {
                let deficit = monus(&w2.weight(y), &w.weight(y));
                if y != x && deficit.is_positive() {
                    out.push(((x.clone(), y.clone()), &surplus * &deficit / &t));
                }
            }
        }
    }
    TvdCoupling {
        coupling: Dist::from_sorted_unchecked(out),
        degenerate: false,
    }
}
