use std::collections::{BTreeMap, BTreeSet};
use std::sync::RwLock;

use num_traits::{ToPrimitive, Zero};

use super::ground::tuple_dist;
use super::kantorovich::{assemble, kantorovich, solve_costs, TransportResult};
use super::Metric;
use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::multiset::Multiset;
use crate::rational::{nat, Rational};
use crate::tuple::{acc, acc_preimage, zip};

/// Result of the multiset transport problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MsetTransport<T: Ord> {
    /// Normalized distance: the optimal `Σ τ(x,y)·d(x,y)` divided by the size.
    pub cost: Rational,
    /// Unnormalized optimum `Σ τ(x,y)·d(x,y)`.
    pub total: Rational,
    /// Optimal coupling with natural multiplicities.
    pub coupling: Multiset<(T, T)>,
    /// Certificates for the frequentist normalizations; absent for empty inputs.
    pub certificate: Option<TransportResult<T>>,
}

/// Kantorovich distance between multisets of equal size.
pub fn mset_kantorovich<T: Ord + Clone, M: Metric<T>>(
    phi: &Multiset<T>,
    psi: &Multiset<T>,
    d: &M,
) -> Result<MsetTransport<T>> {
    if phi.size() != psi.size() {
        return Err(Error::SizeMismatch {
            left: phi.size(),
            right: psi.size(),
        });
    }
    for x in phi.support().chain(psi.support()) {
        d.check(x)?;
    }
    let k = phi.size();
    if k == 0 {
        return Ok(MsetTransport {
            cost: Rational::zero(),
            total: Rational::zero(),
            coupling: Multiset::new(),
            certificate: None,
        });
    }
    let scale = nat(k);
    if phi == psi {
        let cert = kantorovich(&phi.flrn()?, &psi.flrn()?, d)?;
        return Ok(MsetTransport {
            cost: Rational::zero(),
            total: Rational::zero(),
            coupling: phi.map(|x| (x.clone(), x.clone())),
            certificate: Some(cert),
        });
    }
    let (xs, a): (Vec<T>, Vec<Rational>) = phi.iter().map(|(x, n)| (x.clone(), nat(n))).unzip();
    let (ys, b): (Vec<T>, Vec<Rational>) = psi.iter().map(|(y, n)| (y.clone(), nat(n))).unzip();
    let plan = solve_costs(&xs, &a, &ys, &b, d);
    let mut coupling = Multiset::new();
    for (i, j, f) in &plan.flow {
        assert!(f.is_integer(), "integral marginals give an integral vertex");
        let n = f.to_integer().to_u64().expect("flow fits in u64");
        coupling.insert((xs[*i].clone(), ys[*j].clone()), n);
    }
    let total = plan.cost.clone();
    let cert = assemble(&xs, &ys, plan, &scale, d);
    Ok(MsetTransport {
        cost: &total / &scale,
        total,
        coupling,
        certificate: Some(cert),
    })
}

/// Brute-force sequence alignment: the minimum over arrangements of both
/// multisets of the averaged componentwise distance.
pub fn alignment_distance<T: Ord + Clone, M: Metric<T>>(
    phi: &Multiset<T>,
    psi: &Multiset<T>,
    d: &M,
) -> Result<Rational> {
    if phi.size() != psi.size() {
        return Err(Error::SizeMismatch {
            left: phi.size(),
            right: psi.size(),
        });
    }
    if phi.is_empty() {
        return Ok(Rational::zero());
    }
    let xs = acc_preimage(phi)?;
    let ys = acc_preimage(psi)?;
    let mut best: Option<Rational> = None;
    for x in &xs {
        for y in &ys {
            let v = tuple_dist(x, y, d)?;
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
    }
    Ok(best.unwrap() / nat(phi.size()))
}

/// All couplings `acc(zip(x, y))` over arrangements `x` of `phi` and `y` of `psi`.
pub fn couplings_enumerate<A: Ord + Clone, B: Ord + Clone>(
    phi: &Multiset<A>,
    psi: &Multiset<B>,
) -> Result<BTreeSet<Multiset<(A, B)>>> {
    if phi.size() != psi.size() {
        return Err(Error::SizeMismatch {
            left: phi.size(),
            right: psi.size(),
        });
    }
    let xs = acc_preimage(phi)?;
    let ys = acc_preimage(psi)?;
    let mut out = BTreeSet::new();
    for x in &xs {
        for y in &ys {
            out.insert(acc(&zip(x, y)?));
        }
    }
    Ok(out)
}

type Memo<T> = BTreeMap<(Multiset<T>, Multiset<T>), Rational>;

/// The multiset Kantorovich metric over a ground metric, memoized.
///
/// Lookups take a shared lock; new entries are inserted under the write lock.
pub struct MsetMetric<T: Ord, M> {
    inner: M,
    cache: RwLock<Memo<T>>,
}

impl<T: Ord + Clone, M: Metric<T>> MsetMetric<T, M> {
    pub fn new(inner: M) -> Self {
        MsetMetric {
            inner,
            cache: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn inner(&self) -> &M {
        &self.inner
    }

    pub fn cached_pairs(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    pub fn try_distance(&self, a: &Multiset<T>, b: &Multiset<T>) -> Result<Rational> {
        let key = if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        if let Some(v) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = mset_kantorovich(&key.0, &key.1, &self.inner)?.cost;
        self.cache
            .write()
            .expect("cache lock")
            .insert(key, v.clone());
        Ok(v)
    }
}

impl<T: Ord + Clone, M: Metric<T>> Metric<Multiset<T>> for MsetMetric<T, M> {
    /// Panics on multisets of different sizes; [`nested_kantorovich`] checks sizes first.
    fn distance(&self, a: &Multiset<T>, b: &Multiset<T>) -> Rational {
        self.try_distance(a, b).expect("multisets of equal size")
    }

    fn check(&self, a: &Multiset<T>) -> Result<()> {
        a.support().try_for_each(|x| self.inner.check(x))
    }
}

/// Kantorovich distance between distributions over equal-size multisets,
/// using the multiset metric as ground distance.
pub fn nested_kantorovich<T: Ord + Clone, M: Metric<T>>(
    w: &Dist<Multiset<T>>,
    w2: &Dist<Multiset<T>>,
    d: &MsetMetric<T, M>,
) -> Result<TransportResult<Multiset<T>>> {
    let mut sizes = w.support().chain(w2.support()).map(|m| m.size());
    if let Some(k) = sizes.next() {
        if let Some(other) = sizes.find(|s| *s != k) {
            return Err(Error::MixedSizes(k, other));
        }
    }
    kantorovich(w, w2, d)
}
