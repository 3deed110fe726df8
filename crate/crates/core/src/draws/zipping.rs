use num_traits::Zero;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::multiset::Multiset;
use crate::rational::{nat, Rational};
use crate::tuple::{acc, arr, zip, Tuple};

/// Distribution over couplings of two equal-size multisets obtained by
/// arranging both uniformly, zipping and accumulating.
pub fn mzip<A: Ord + Clone, B: Ord + Clone>(
    phi: &Multiset<A>,
    psi: &Multiset<B>,
) -> Result<Dist<Multiset<(A, B)>>> {
    if phi.size() != psi.size() {
        return Err(Error::SizeMismatch {
            left: phi.size(),
            right: psi.size(),
        });
    }
    let pairs = arr(phi)?.tensor(&arr(psi)?);
    Ok(pairs.map(|(x, y)| acc(&zip(x, y).expect("equal lengths"))))
}

/// Expected coupling cost under [`mzip`]. This is an upper bound for the
/// multiset Kantorovich distance and in general differs from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveDistance {
    /// `Σ_τ mzip(τ) · Σ τ(x,y)·d(x,y)`.
    pub total: Rational,
    /// `total / K`, on the scale of the multiset Kantorovich distance.
    pub normalized: Rational,
}

pub fn mzip_naive_distance<T: Ord + Clone, M: Metric<T>>(
    phi: &Multiset<T>,
    psi: &Multiset<T>,
    d: &M,
) -> Result<NaiveDistance> {
    let z = mzip(phi, psi)?;
    let total = z.validity(|tau| {
        tau.iter()
            .map(|((x, y), n)| nat(n) * d.distance(x, y))
            .sum::<Rational>()
    });
    let normalized = if phi.is_empty() {
        Rational::zero()
    } else {
        &total / nat(phi.size())
    };
    Ok(NaiveDistance { total, normalized })
}

/// Parallel multinomial law: arrange the multiset of distributions, draw
/// once from each, accumulate.
pub fn pml<T: Ord + Clone>(phi: &Multiset<Dist<T>>) -> Result<Dist<Multiset<T>>> {
    Ok(arr(phi)?.bind(|ws: &Tuple<Dist<T>>| {
        let mut seqs: Dist<Tuple<T>> = Dist::unit(Vec::new());
        for w in ws {
            seqs = seqs.bind(|prefix| {
                w.map(|x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            });
        }
        seqs.map(|t| acc(t))
    }))
}
