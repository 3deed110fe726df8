//! Sequences, accumulation and arrangement.

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::multiset::Multiset;

pub type Tuple<T> = Vec<T>;

/// Largest multiset size for which preimages of `acc` are materialized by default.
pub const DEFAULT_PREIMAGE_CAP: u64 = 8;

pub fn acc<T: Ord + Clone>(t: &[T]) -> Multiset<T> {
    Multiset::acc(t)
}

/// Every sequence accumulating to `m`, in lexicographic order.
pub fn acc_preimage<T: Ord + Clone>(m: &Multiset<T>) -> Result<Vec<Tuple<T>>> {
    acc_preimage_capped(m, DEFAULT_PREIMAGE_CAP)
}

pub fn acc_preimage_capped<T: Ord + Clone>(m: &Multiset<T>, cap: u64) -> Result<Vec<Tuple<T>>> {
    if m.size() > cap {
        return Err(Error::CapExceeded {
            size: m.size(),
            cap,
        });
    }
    let mut remaining = m.to_vec();
    let mut prefix = Vec::with_capacity(m.size() as usize);
    let mut out = Vec::new();
    permutations(&mut remaining, &mut prefix, m.size() as usize, &mut out);
    Ok(out)
}

fn permutations<T: Clone>(
    remaining: &mut [(T, u64)],
    prefix: &mut Vec<T>,
    len: usize,
    out: &mut Vec<Tuple<T>>,
) {
    if prefix.len() == len {
        out.push(prefix.clone());
        return;
    }
    for i in 0..remaining.len() {
        if remaining[i].1 == 0 {
            continue;
        }
        remaining[i].1 -= 1;
        prefix.push(remaining[i].0.clone());
        permutations(remaining, prefix, len, out);
        prefix.pop();
        remaining[i].1 += 1;
    }
}

/// Uniform distribution over the arrangements of `m`.
pub fn arr<T: Ord + Clone>(m: &Multiset<T>) -> Result<Dist<Tuple<T>>> {
    Dist::uniform(acc_preimage(m)?)
}

/// Uniform distribution over the permutations of a sequence.
pub fn prm<T: Ord + Clone>(t: &[T]) -> Result<Dist<Tuple<T>>> {
    arr(&acc(t))
}

pub fn zip<A: Clone, B: Clone>(a: &[A], b: &[B]) -> Result<Tuple<(A, B)>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter().cloned().zip(b.iter().cloned()).collect())
}
