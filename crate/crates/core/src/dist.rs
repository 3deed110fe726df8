//! Finitely supported probability distributions with exact weights.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A distribution over `T`. Stored weights are positive and sum to exactly one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dist<T: Ord> {
    weights: BTreeMap<T, Rational>,
}

impl<T: Ord + Clone> Dist<T> {
    /// Validating constructor. Duplicate entries are summed and zero weights dropped.
    pub fn new(items: impl IntoIterator<Item = (T, Rational)>) -> Result<Self> {
        let mut weights: BTreeMap<T, Rational> = BTreeMap::new();
        for (x, w) in items {
            if w.is_negative() {
                return Err(Error::InvalidDist(format!("negative weight {w}")));
            }
            *weights.entry(x).or_insert_with(Rational::zero) += w;
        }
        weights.retain(|_, w| !w.is_zero());
        let total: Rational = weights.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidDist(format!("weights sum to {total}")));
        }
        Ok(Dist { weights })
    }

    /// Accumulates weights without checking normalization. Callers guarantee a total of one.
    pub(crate) fn from_sorted_unchecked(items: impl IntoIterator<Item = (T, Rational)>) -> Self {
        let mut weights: BTreeMap<T, Rational> = BTreeMap::new();
        for (x, w) in items {
            *weights.entry(x).or_insert_with(Rational::zero) += w;
        }
        weights.retain(|_, w| !w.is_zero());
        debug_assert!(weights.values().sum::<Rational>().is_one());
        Dist { weights }
    }

    pub fn unit(x: T) -> Self {
        Dist {
            weights: BTreeMap::from([(x, Rational::one())]),
        }
    }

    /// Uniform over the given items; repeated items accumulate weight.
    pub fn uniform(items: impl IntoIterator<Item = T>) -> Result<Self> {
        let items: Vec<T> = items.into_iter().collect();
        if items.is_empty() {
            return Err(Error::InvalidDist("uniform over nothing".into()));
        }
        let w = rational::ratio(1, items.len() as i64);
        Ok(Dist::from_sorted_unchecked(
            items.into_iter().map(|x| (x, w.clone())),
        ))
    }

    pub fn weight(&self, x: &T) -> Rational {
        self.weights.get(x).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Rational)> + Clone {
        self.weights.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &T> + Clone {
        self.weights.keys()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.weights.contains_key(x)
    }

    /// Pushforward along a function.
    pub fn map<U: Ord + Clone>(&self, f: impl Fn(&T) -> U) -> Dist<U> {
        Dist::from_sorted_unchecked(self.iter().map(|(x, w)| (f(x), w.clone())))
    }

    /// Kleisli extension: `y ↦ Σ_x ω(x)·c(x)(y)`.
    pub fn bind<U: Ord + Clone>(&self, c: impl Fn(&T) -> Dist<U>) -> Dist<U> {
        let mut out = Vec::new();
        for (x, w) in self.iter() {
            for (y, v) in c(x).iter() {
                out.push((y.clone(), w * v));
            }
        }
        Dist::from_sorted_unchecked(out)
    }

    /// Fallible Kleisli extension.
    pub fn try_bind<U: Ord + Clone>(&self, c: impl Fn(&T) -> Result<Dist<U>>) -> Result<Dist<U>> {
        let mut out = Vec::new();
        for (x, w) in self.iter() {
            for (y, v) in c(x)?.iter() {
                out.push((y.clone(), w * v));
            }
        }
        Ok(Dist::from_sorted_unchecked(out))
    }

    pub fn tensor<U: Ord + Clone>(&self, other: &Dist<U>) -> Dist<(T, U)> {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for (x, a) in self.iter() {
            for (y, b) in other.iter() {
                out.push(((x.clone(), y.clone()), a * b));
            }
        }
        Dist::from_sorted_unchecked(out)
    }

    /// The K-fold product as a distribution over sequences.
    pub fn iid(&self, k: usize) -> Dist<Vec<T>> {
        let mut acc = Dist::unit(Vec::new());
        for _ in 0..k {
            acc = acc.bind(|prefix: &Vec<T>| {
                self.map(|x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            });
        }
        acc
    }

    /// Expected value `ω ⊨ p`.
    pub fn validity(&self, p: impl Fn(&T) -> Rational) -> Rational {
        self.iter().map(|(x, w)| w * p(x)).sum()
    }

    pub fn variance(&self, p: impl Fn(&T) -> Rational) -> Rational {
        let mean = self.validity(&p);
        let sq = self.validity(|x| {
            let v = p(x);
            &v * &v
        });
        sq - &mean * &mean
    }

    /// Convex combination `Σ r_i ω_i`. The coefficients must form a distribution.
    pub fn convex(parts: &[(Rational, Dist<T>)]) -> Result<Self> {
        let total: Rational = parts.iter().map(|(r, _)| r.clone()).sum();
        if !total.is_one() || parts.iter().any(|(r, _)| r.is_negative()) {
            return Err(Error::InvalidDist("mixture coefficients".into()));
        }
        let mut out = Vec::new();
        for (r, d) in parts {
            for (x, w) in d.iter() {
                out.push((x.clone(), r * w));
            }
        }
        Ok(Dist::from_sorted_unchecked(out))
    }

    /// True when every weight has a denominator dividing `k`.
    pub fn in_dk(&self, k: u64) -> bool {
        let k = num_bigint::BigInt::from(k);
        self.weights.values().all(|w| k.is_multiple_of(w.denom()))
    }
}

impl<T: Ord + Clone> Dist<Dist<T>> {
    /// Monad multiplication.
    pub fn flatten(&self) -> Dist<T> {
        self.bind(|d| d.clone())
    }
}

impl<A: Ord + Clone, B: Ord + Clone> Dist<(A, B)> {
    pub fn first_marginal(&self) -> Dist<A> {
        self.map(|p| p.0.clone())
    }

    pub fn second_marginal(&self) -> Dist<B> {
        self.map(|p| p.1.clone())
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for Dist<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .weights
            .iter()
            .map(|(k, w)| format!("{w}|{k:?}>"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
