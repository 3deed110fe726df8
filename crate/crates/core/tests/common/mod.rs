//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use urnkit::metric::GroundMetric;
use urnkit::rational::{int, ratio};
use urnkit::{Dist, Elem, Multiset, Rational, Space};

pub fn space(n: usize) -> Space {
    Space::new((0..n).map(|i| format!("x{i}"))).unwrap()
}

/// Random rational metric: shortest-path closure of random positive weights.
pub fn metric<R: Rng>(rng: &mut R, s: &Space) -> GroundMetric {
    let n = s.len();
    let mut m = vec![vec![int(0); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = ratio(rng.random_range(1..=24), rng.random_range(1..=12));
            m[i][j] = w.clone();
            m[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &m[i][k] + &m[k][j];
                if via < m[i][j] {
                    m[i][j] = via;
                }
            }
        }
    }
    GroundMetric::matrix(s, m).unwrap()
}

/// Either the discrete metric, a numeric metric on random integer points, or a random matrix.
pub fn any_metric<R: Rng>(rng: &mut R, n: usize) -> (Space, GroundMetric) {
    match rng.random_range(0..3) {
        0 => {
            let s = space(n);
            let d = GroundMetric::discrete(&s);
            (s, d)
        }
        1 => {
            let mut pts: Vec<i64> = Vec::new();
            while pts.len() < n {
                let p = rng.random_range(-10..=10);
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
            pts.sort();
            let s = Space::numeric(&pts).unwrap();
            let d = GroundMetric::numeric(&s).unwrap();
            (s, d)
        }
        _ => {
            let s = space(n);
            let d = metric(rng, &s);
            (s, d)
        }
    }
}

/// Random distribution over `elems` with denominator at most `max_den`.
pub fn dist_over<R: Rng>(rng: &mut R, elems: &[Elem], max_den: i64) -> Dist<Elem> {
    let q = rng.random_range(1..=max_den);
    let mut counts = vec![0i64; elems.len()];
    for _ in 0..q {
        counts[rng.random_range(0..elems.len())] += 1;
    }
    Dist::new(
        elems
            .iter()
            .zip(&counts)
            .map(|(e, &c)| (*e, ratio(c, q))),
    )
    .unwrap()
}

pub fn dist<R: Rng>(rng: &mut R, s: &Space, max_den: i64) -> Dist<Elem> {
    let elems: Vec<Elem> = s.elems().collect();
    dist_over(rng, &elems, max_den)
}

/// Random multiset of the given size.
pub fn urn<R: Rng>(rng: &mut R, s: &Space, size: u64) -> Multiset<Elem> {
    let mut m = Multiset::new();
    for _ in 0..size {
        m.insert(Elem(rng.random_range(0..s.len())), 1);
    }
    m
}

pub fn r(num: i64, den: i64) -> Rational {
    ratio(num, den)
}
