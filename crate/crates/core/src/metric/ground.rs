use num_traits::{Signed, Zero};

use super::Metric;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::space::{Elem, Space};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    Discrete,
    Numeric,
    Matrix,
}

/// A metric on the elements of a [`Space`], tabulated at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundMetric {
    kind: MetricKind,
    n: usize,
    table: Vec<Rational>,
}

impl GroundMetric {
    /// Distance 0 on the diagonal and 1 elsewhere.
    pub fn discrete(space: &Space) -> Self {
        let n = space.len();
        let table = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    Rational::zero()
                } else {
                    crate::rational::int(1)
                }
            })
            .collect();
        GroundMetric {
            kind: MetricKind::Discrete,
            n,
            table,
        }
    }

    /// `|x - y|` on the coordinates of the space. Coordinates must be distinct.
    pub fn numeric(space: &Space) -> Result<Self> {
        let coords = space.coords().ok_or(Error::MissingCoords)?;
        let n = space.len();
        let mut table = Vec::with_capacity(n * n);
        for a in coords {
            for b in coords {
                table.push((a - b).abs());
            }
        }
        let d = GroundMetric {
            kind: MetricKind::Numeric,
            n,
            table,
        };
        d.validate(space)?;
        Ok(d)
    }

    /// Explicit matrix in space order; all metric axioms are checked.
    pub fn matrix(space: &Space, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = space.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::MetricAxiom(format!("matrix must be {n}x{n}")));
        }
        let d = GroundMetric {
            kind: MetricKind::Matrix,
            n,
            table: rows.into_iter().flatten().collect(),
        };
        d.validate(space)?;
        Ok(d)
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn eval(&self, x: Elem, y: Elem) -> &Rational {
        &self.table[x.0 * self.n + y.0]
    }

    /// Exhaustive check of nonnegativity, separation, symmetry and the triangle inequality.
    pub fn validate(&self, space: &Space) -> Result<()> {
        let l = |i: usize| space.labels()[i].as_str();
        let n = self.n;
        let d = |i: usize, j: usize| &self.table[i * n + j];
        for i in 0..n {
            for j in 0..n {
                if d(i, j).is_negative() {
                    return Err(Error::MetricAxiom(format!(
                        "negative distance d({}, {})",
                        l(i),
                        l(j)
                    )));
                }
                if (i == j) != d(i, j).is_zero() {
                    return Err(Error::MetricAxiom(format!(
                        "separation fails at ({}, {})",
                        l(i),
                        l(j)
                    )));
                }
                if d(i, j) != d(j, i) {
                    return Err(Error::MetricAxiom(format!(
                        "symmetry fails at ({}, {})",
                        l(i),
                        l(j)
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if d(i, k) > &(d(i, j) + d(j, k)) {
                        return Err(Error::MetricAxiom(format!(
                            "triangle fails at ({}, {}, {})",
                            l(i),
                            l(j),
                            l(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl Metric<Elem> for GroundMetric {
    fn distance(&self, a: &Elem, b: &Elem) -> Rational {
        self.eval(*a, *b).clone()
    }

    fn check(&self, a: &Elem) -> Result<()> {
        if a.0 < self.n {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                index: a.0,
                size: self.n,
            })
        }
    }

    fn domain(&self) -> Option<Vec<Elem>> {
        Some((0..self.n).map(Elem).collect())
    }
}

pub fn validate_metric(d: &GroundMetric, space: &Space) -> bool {
    d.size() == space.len() && d.validate(space).is_ok()
}

/// Largest pairwise distance within a finite nonempty set.
pub fn diameter<T, M: Metric<T>>(points: &[T], d: &M) -> Result<Rational> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut best = Rational::zero();
    for a in points {
        for b in points {
            let x = d.distance(a, b);
            if x > best {
                best = x;
            }
        }
    }
    Ok(best)
}

/// Wraps a closure as a metric.
pub struct FnMetric<F>(pub F);

impl<T, F: Fn(&T, &T) -> Rational> Metric<T> for FnMetric<F> {
    fn distance(&self, a: &T, b: &T) -> Rational {
        (self.0)(a, b)
    }
}

/// Sum metric on sequences of equal length.
#[derive(Debug, Clone)]
pub struct TupleMetric<M>(pub M);

impl<T, M: Metric<T>> Metric<Vec<T>> for TupleMetric<M> {
    /// Panics on sequences of different lengths; use [`tuple_dist`] for a checked version.
    fn distance(&self, a: &Vec<T>, b: &Vec<T>) -> Rational {
        tuple_dist(a, b, &self.0).expect("sequences of equal length")
    }

    fn check(&self, a: &Vec<T>) -> Result<()> {
        a.iter().try_for_each(|x| self.0.check(x))
    }
}

pub fn tuple_dist<T, M: Metric<T>>(a: &[T], b: &[T], d: &M) -> Result<Rational> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter().zip(b).map(|(x, y)| d.distance(x, y)).sum())
}

/// Sum metric on pairs.
#[derive(Debug, Clone)]
pub struct PairMetric<M, N>(pub M, pub N);

impl<A, B, M: Metric<A>, N: Metric<B>> Metric<(A, B)> for PairMetric<M, N> {
    fn distance(&self, a: &(A, B), b: &(A, B)) -> Rational {
        self.0.distance(&a.0, &b.0) + self.1.distance(&a.1, &b.1)
    }

    fn check(&self, a: &(A, B)) -> Result<()> {
        self.0.check(&a.0)?;
        self.1.check(&a.1)
    }
}
