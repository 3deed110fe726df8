use std::fmt;

use num_traits::{One, Zero};

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::multiset::{enumerate, sub_multisets, Multiset};
use crate::rational::{binom, from_big, multichoose, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DrawKind {
    Multinomial,
    Hypergeometric,
    Polya,
}

impl DrawKind {
    pub fn name(self) -> &'static str {
        match self {
            DrawKind::Multinomial => "multinomial",
            DrawKind::Hypergeometric => "hypergeometric",
            DrawKind::Polya => "polya",
        }
    }
}

impl fmt::Display for DrawKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A distribution over draws of a fixed size, tagged with the channel that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawDist<T: Ord> {
    pub kind: DrawKind,
    pub size: u64,
    pub dist: Dist<Multiset<T>>,
}

impl<T: Ord + Clone> DrawDist<T> {
    pub fn weight(&self, phi: &Multiset<T>) -> Rational {
        self.dist.weight(phi)
    }

    pub fn into_dist(self) -> Dist<Multiset<T>> {
        self.dist
    }
}

/// `coefm(φ)·∏ ω(x)^φ(x)`; zero when `φ` leaves the support of `ω`.
pub fn multinomial_pmf<T: Ord + Clone>(w: &Dist<T>, phi: &Multiset<T>) -> Rational {
    let mut p = from_big(&phi.coefm());
    for (x, n) in phi.iter() {
        let wx = w.weight(x);
        if wx.is_zero() {
            return Rational::zero();
        }
        p *= pow(&wx, n);
    }
    p
}

pub fn hypergeometric_pmf<T: Ord + Clone>(urn: &Multiset<T>, phi: &Multiset<T>) -> Rational {
    if !phi.leq(urn) {
        return Rational::zero();
    }
    let num = phi
        .iter()
        .fold(num_bigint::BigUint::one(), |acc, (x, n)| acc * binom(urn.count(x), n));
    from_big(&num) / from_big(&binom(urn.size(), phi.size()))
}

pub fn polya_pmf<T: Ord + Clone>(urn: &Multiset<T>, phi: &Multiset<T>) -> Rational {
    if urn.is_empty() || phi.support().any(|x| urn.count(x) == 0) {
        return Rational::zero();
    }
    let num = phi
        .iter()
        .fold(num_bigint::BigUint::one(), |acc, (x, n)| acc * multichoose(urn.count(x), n));
    from_big(&num) / from_big(&multichoose(urn.size(), phi.size()))
}

fn pow(r: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= r;
    }
    acc
}

/// Ordered draws with replacement from `ω`, accumulated.
pub fn multinomial<T: Ord + Clone>(w: &Dist<T>, k: u64) -> DrawDist<T> {
    let elems: Vec<T> = w.support().cloned().collect();
    let dist = Dist::from_sorted_unchecked(
        enumerate(&elems, k)
            .into_iter()
            .map(|phi| {
                let p = multinomial_pmf(w, &phi);
                (phi, p)
            }),
    );
    DrawDist {
        kind: DrawKind::Multinomial,
        size: k,
        dist,
    }
}

/// Draws without replacement.
pub fn hypergeometric<T: Ord + Clone>(urn: &Multiset<T>, k: u64) -> Result<DrawDist<T>> {
    if k > urn.size() {
        return Err(Error::Overdraw {
            draw: k,
            urn: urn.size(),
        });
    }
    let total = from_big(&binom(urn.size(), k));
    let dist = Dist::from_sorted_unchecked(sub_multisets(urn, k).into_iter().map(|phi| {
        let num = phi
            .iter()
            .fold(num_bigint::BigUint::one(), |acc, (x, n)| acc * binom(urn.count(x), n));
        let p = from_big(&num) / &total;
        (phi, p)
    }));
    Ok(DrawDist {
        kind: DrawKind::Hypergeometric,
        size: k,
        dist,
    })
}

/// Draws where each drawn ball is returned together with a copy.
pub fn polya<T: Ord + Clone>(urn: &Multiset<T>, k: u64) -> Result<DrawDist<T>> {
    if urn.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let elems: Vec<T> = urn.support().cloned().collect();
    let dist = Dist::from_sorted_unchecked(enumerate(&elems, k).into_iter().map(|phi| {
        let p = polya_pmf(urn, &phi);
        (phi, p)
    }));
    Ok(DrawDist {
        kind: DrawKind::Polya,
        size: k,
        dist,
    })
}
