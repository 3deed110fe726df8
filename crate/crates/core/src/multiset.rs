//! Finite multisets with natural multiplicities.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::rational::{self, factorial, nat};

/// A multiset over `T`. Zero counts are never stored.
///
/// Multisets are ordered by size first and then colexicographically on their
/// count vectors: the count of the largest element is compared first, smaller
/// count first. Over `{0,1,2}` with size 3 this gives
/// `3|0>, 2|0>+1|1>, 1|0>+2|1>, 3|1>, 2|0>+1|2>, ...`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Multiset<T: Ord> {
    counts: BTreeMap<T, u64>,
    size: u64,
}

impl<T: Ord> Multiset<T> {
    pub fn new() -> Self {
        Multiset {
            counts: BTreeMap::new(),
            size: 0,
        }
    }

    /// Adds `n` copies of `x`.
    pub fn insert(&mut self, x: T, n: u64) {
        if n == 0 {
            return;
        }
        *self.counts.entry(x).or_insert(0) += n;
        self.size += n;
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn count(&self, x: &T) -> u64 {
        self.counts.get(x).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&T, u64)> + Clone {
        self.counts.iter().map(|(k, &v)| (k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = &T> {
        self.counts.keys()
    }

    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    /// Pointwise order `self <= other`.
    pub fn leq(&self, other: &Self) -> bool {
        self.counts.iter().all(|(k, &n)| n <= other.count(k))
    }

    pub fn coefm(&self) -> BigUint {
        let denom = self
            .counts
            .values()
            .fold(BigUint::from(1u32), |acc, &n| acc * factorial(n));
        factorial(self.size) / denom
    }
}

impl<T: Ord + Clone> Multiset<T> {
    pub fn from_counts(items: impl IntoIterator<Item = (T, u64)>) -> Self {
        let mut m = Multiset::new();
        for (x, n) in items {
            m.insert(x, n);
        }
        m
    }

    /// Counts the items of a sequence.
    pub fn acc<'a>(items: impl IntoIterator<Item = &'a T>) -> Self
    where
        T: 'a,
    {
        let mut m = Multiset::new();
        for x in items {
            m.insert(x.clone(), 1);
        }
        m
    }

    pub fn singleton(x: T, n: u64) -> Self {
        Multiset::from_counts([(x, n)])
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for (k, n) in other.iter() {
            m.insert(k.clone(), n);
        }
        m
    }

    /// `self - other`, defined when `other <= self`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if !other.leq(self) {
            return Err(Error::SubtractionUnderflow);
        }
        Ok(Multiset::from_counts(
            self.iter().map(|(k, n)| (k.clone(), n - other.count(k))),
        ))
    }

    /// Removes a single copy of `x`.
    pub fn remove_one(&self, x: &T) -> Result<Self> {
        self.sub(&Multiset::singleton(x.clone(), 1))
    }

    pub fn scale(&self, n: u64) -> Self {
        Multiset::from_counts(self.iter().map(|(k, c)| (k.clone(), c * n)))
    }

    /// Frequentist learning: normalize counts into a distribution.
    pub fn flrn(&self) -> Result<Dist<T>> {
        if self.is_empty() {
            return Err(Error::EmptyMultiset);
        }
        let total = nat(self.size);
        Ok(Dist::from_sorted_unchecked(
            self.iter().map(|(k, n)| (k.clone(), nat(n) / &total)),
        ))
    }

    /// Pointwise product over pairs.
    pub fn tensor<U: Ord + Clone>(&self, other: &Multiset<U>) -> Multiset<(T, U)> {
        let mut m = Multiset::new();
        for (x, a) in self.iter() {
            for (y, b) in other.iter() {
                m.insert((x.clone(), y.clone()), a * b);
            }
        }
        m
    }

    /// Image under `f`, summing counts that collide.
    pub fn map<U: Ord + Clone>(&self, f: impl Fn(&T) -> U) -> Multiset<U> {
        Multiset::from_counts(self.iter().map(|(k, n)| (f(k), n)))
    }

    pub fn to_vec(&self) -> Vec<(T, u64)> {
        self.iter().map(|(k, n)| (k.clone(), n)).collect()
    }

    /// The sorted sequence with each element repeated by its count.
    pub fn sorted_items(&self) -> Vec<T> {
        let mut v = Vec::with_capacity(self.size as usize);
        for (k, n) in self.iter() {
            for _ in 0..n {
                v.push(k.clone());
            }
        }
        v
    }
}

impl<A: Ord + Clone, B: Ord + Clone> Multiset<(A, B)> {
    /// Both marginals of a multiset of pairs.
    pub fn dcpl(&self) -> (Multiset<A>, Multiset<B>) {
        (self.map(|p| p.0.clone()), self.map(|p| p.1.clone()))
    }
}

impl<T: Ord> PartialOrd for Multiset<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord> Ord for Multiset<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size.cmp(&other.size).then_with(|| {
            let mut a = self.counts.iter().rev().peekable();
            let mut b = other.counts.iter().rev().peekable();
            loop {
                match (a.peek(), b.peek()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((ka, na)), Some((kb, nb))) => match ka.cmp(kb) {
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Less => return Ordering::Less,
                        Ordering::Equal => {
                            if na != nb {
                                return na.cmp(nb);
                            }
                            a.next();
                            b.next();
                        }
                    },
                }
            }
        })
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for Multiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(k, n)| format!("{n}|{k:?}>"))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// All multisets of size `k` over `elems`, in colexicographic count order.
pub fn enumerate<T: Ord + Clone>(elems: &[T], k: u64) -> Vec<Multiset<T>> {
    enumerate_bounded(elems, None, k)
}

/// All multisets of size `k` below `bound` pointwise, in colexicographic count order.
pub fn sub_multisets<T: Ord + Clone>(bound: &Multiset<T>, k: u64) -> Vec<Multiset<T>> {
    let (elems, caps): (Vec<T>, Vec<u64>) = bound.iter().map(|(x, n)| (x.clone(), n)).unzip();
    enumerate_bounded(&elems, Some(&caps), k)
}

fn enumerate_bounded<T: Ord + Clone>(elems: &[T], caps: Option<&[u64]>, k: u64) -> Vec<Multiset<T>> {
    let vectors = count_vectors(elems.len(), caps, k);
    vectors
        .into_iter()
        .map(|v| Multiset::from_counts(elems.iter().cloned().zip(v)))
        .collect()
}

/// Count vectors of length `n` summing to `k`, last coordinate varying slowest.
fn count_vectors(n: usize, caps: Option<&[u64]>, k: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let cap = caps.map_or(k, |c| c[n - 1].min(k));
    let mut out = Vec::new();
    for last in 0..=cap {
        for mut v in count_vectors(n - 1, caps, k - last) {
            v.push(last);
            out.push(v);
        }
    }
    out
}

/// Number of sequences accumulating to a multiset with the given counts, as a rational.
pub fn coefm_rational<T: Ord>(m: &Multiset<T>) -> crate::rational::Rational {
    rational::from_big(&m.coefm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(items: &[(u32, u64)]) -> Multiset<u32> {
        Multiset::from_counts(items.iter().copied())
    }

    #[test]
    fn size_and_zero_counts() {
        let m = ms(&[(1, 3), (2, 0), (3, 1)]);
        assert_eq!(m.size(), 4);
        assert_eq!(m.support_len(), 2);
        assert_eq!(Multiset::<u32>::new().size(), 0);
    }

    #[test]
    fn arithmetic() {
        let a = ms(&[(1, 3), (2, 1)]);
        let b = ms(&[(1, 2), (3, 1)]);
        assert_eq!(a.add(&b), ms(&[(1, 5), (2, 1), (3, 1)]));
        assert!(a.sub(&a).unwrap().is_empty());
        assert_eq!(a.sub(&b), Err(Error::SubtractionUnderflow));
        assert_eq!(a.scale(2), ms(&[(1, 6), (2, 2)]));
        assert!(ms(&[(1, 2)]).leq(&a));
    }

    #[test]
    fn coefm_values() {
        assert_eq!(ms(&[(1, 3), (2, 1)]).coefm(), BigUint::from(4u32));
        assert_eq!(ms(&[(1, 2), (2, 1), (3, 1)]).coefm(), BigUint::from(12u32));
        assert_eq!(ms(&[(7, 5)]).coefm(), BigUint::from(1u32));
    }

    #[test]
    fn colex_enumeration() {
        let got = enumerate(&[0u32, 1, 2], 3);
        let want = vec![
            ms(&[(0, 3)]),
            ms(&[(0, 2), (1, 1)]),
            ms(&[(0, 1), (1, 2)]),
            ms(&[(1, 3)]),
            ms(&[(0, 2), (2, 1)]),
            ms(&[(0, 1), (1, 1), (2, 1)]),
            ms(&[(1, 2), (2, 1)]),
            ms(&[(0, 1), (2, 2)]),
            ms(&[(1, 1), (2, 2)]),
            ms(&[(2, 3)]),
        ];
        assert_eq!(got, want);
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(sorted, got);
        assert_eq!(enumerate(&[0u32, 1], 0), vec![Multiset::new()]);
        assert_eq!(
            enumerate(&['a', 'b'], 2),
            vec![
                Multiset::from_counts([('a', 2)]),
                Multiset::from_counts([('a', 1), ('b', 1)]),
                Multiset::from_counts([('b', 2)])
            ]
        );
    }

    #[test]
    fn sub_multisets_respect_bound() {
        let u = ms(&[(0, 8), (1, 2)]);
        let subs = sub_multisets(&u, 2);
        assert_eq!(subs, vec![ms(&[(0, 2)]), ms(&[(0, 1), (1, 1)]), ms(&[(1, 2)])]);
        assert!(sub_multisets(&ms(&[(0, 1)]), 2).is_empty());
    }

    #[test]
    fn flrn_values() {
        let m = ms(&[(0, 3), (1, 2), (2, 5)]);
        let f = m.flrn().unwrap();
        assert_eq!(f.weight(&0), rational::ratio(3, 10));
        assert_eq!(f.weight(&1), rational::ratio(1, 5));
        assert_eq!(f.weight(&2), rational::ratio(1, 2));
        assert_eq!(m.scale(3).flrn().unwrap(), f);
        assert_eq!(Multiset::<u32>::new().flrn(), Err(Error::EmptyMultiset));
    }

    #[test]
    fn dcpl_of_tensor() {
        let a = ms(&[(0, 2), (1, 1)]);
        let b = ms(&[(5, 1), (6, 1)]);
        let t = a.tensor(&b);
        assert_eq!(t.size(), 6);
        let (l, r) = t.dcpl();
        assert_eq!(l, a.scale(2));
        assert_eq!(r, b.scale(3));
    }
}
