//! Channel composites that reproduce the closed-form draw distributions.
//! They are slow and exist as independent oracles.

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::multiset::Multiset;
use crate::rational::{nat, Rational};
use crate::tuple::{acc, arr, Tuple};

use super::closed::{DrawDist, DrawKind};

/// Draw-delete: remove one ball, chosen with probability proportional to its count.
pub fn dd<T: Ord + Clone>(urn: &Multiset<T>) -> Result<Dist<Multiset<T>>> {
    if urn.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let total = nat(urn.size());
    let mut out = Vec::with_capacity(urn.support_len());
    for (x, n) in urn.iter() {
        out.push((urn.remove_one(x)?, nat(n) / &total));
    }
    Ok(Dist::from_sorted_unchecked(out))
}

/// Delete a uniformly chosen position.
pub fn pd<T: Ord + Clone>(t: &[T]) -> Result<Dist<Tuple<T>>> {
    if t.is_empty() {
        return Err(Error::Invalid("cannot delete from an empty sequence".into()));
    }
    Dist::uniform((0..t.len()).map(|i| {
        let mut v = t.to_vec();
        v.remove(i);
        v
    }))
}

/// Hypergeometric draw as `‖υ‖ - K` draw-delete steps.
pub fn hypergeometric_via_dd<T: Ord + Clone>(urn: &Multiset<T>, k: u64) -> Result<DrawDist<T>> {
    if k > urn.size() {
        return Err(Error::Overdraw {
            draw: k,
            urn: urn.size(),
        });
    }
    let mut cur = Dist::unit(urn.clone());
    for _ in k..urn.size() {
        cur = cur.try_bind(dd)?;
    }
    Ok(DrawDist {
        kind: DrawKind::Hypergeometric,
        size: k,
        dist: cur,
    })
}

/// Projection-store-add: pick a position of `x ++ y` uniformly and insert a
/// copy of that item at a uniform position of `y`.
pub fn psa<T: Ord + Clone>(x: &[T], y: &[T]) -> Result<Dist<(Tuple<T>, Tuple<T>)>> {
    let (l, n) = (x.len(), y.len());
    if l + n == 0 {
        return Err(Error::EmptyMultiset);
    }
    let w = Rational::new(1.into(), (((l + n) * (n + 1)) as i64).into());
    let mut out = Vec::with_capacity((l + n) * (n + 1));
    for i in 0..l + n {
        let z = if i < l { &x[i] } else { &y[i - l] };
        for j in 0..=n {
            let mut y2 = y.to_vec();
            y2.insert(j, z.clone());
            out.push(((x.to_vec(), y2), w.clone()));
        }
    }
    Ok(Dist::from_sorted_unchecked(out))
}

/// Second component of the `K`-fold projection-store-add started at `(x, ⟨⟩)`.
pub fn seqpolya<T: Ord + Clone>(x: &[T], k: u64) -> Result<Dist<Tuple<T>>> {
    if x.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let mut cur = Dist::unit((x.to_vec(), Vec::new()));
    for _ in 0..k {
        cur = cur.try_bind(|(a, b)| psa(a, b))?;
    }
    Ok(cur.second_marginal())
}

/// Pólya draw as accumulated sequence Pólya over arrangements of the urn.
pub fn polya_via_seqpolya<T: Ord + Clone>(urn: &Multiset<T>, k: u64) -> Result<DrawDist<T>> {
    if urn.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let dist = arr(urn)?
        .try_bind(|x| seqpolya(x, k))?
        .map(|t| acc(t));
    Ok(DrawDist {
        kind: DrawKind::Polya,
        size: k,
        dist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn dd_example() {
        let u = Multiset::from_counts([('G', 8), ('B', 2)]);
        let d = dd(&u).unwrap();
        assert_eq!(d.weight(&Multiset::from_counts([('G', 7), ('B', 2)])), ratio(4, 5));
        assert_eq!(d.weight(&Multiset::from_counts([('G', 8), ('B', 1)])), ratio(1, 5));
        assert_eq!(dd(&Multiset::singleton('x', 3)).unwrap(), Dist::unit(Multiset::singleton('x', 2)));
        assert!(dd(&Multiset::<char>::new()).is_err());
    }

    #[test]
    fn pd_natural_in_acc() {
        let t = vec!['a', 'b', 'a'];
        let lhs = pd(&t).unwrap().map(|s| acc(s));
        let rhs = dd(&acc(&t)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn seqpolya_single() {
        assert_eq!(seqpolya(&['x'], 2).unwrap(), Dist::unit(vec!['x', 'x']));
    }
}
