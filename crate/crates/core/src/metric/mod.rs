//! Ground metrics, Kantorovich distances with certificates, total variation
//! and the multiset Kantorovich metric.

mod ground;
mod kantorovich;
mod mset;
mod simplex;
mod tvd;

pub use ground::{
    diameter, tuple_dist, validate_metric, FnMetric, GroundMetric, MetricKind, PairMetric,
    TupleMetric,
};
pub use kantorovich::{
    fractionality_check, kantorovich, tvd_bound_check, CertificateError, TransportResult,
};
pub use mset::{
    alignment_distance, couplings_enumerate, mset_kantorovich, nested_kantorovich, MsetMetric,
    MsetTransport,
};
pub use tvd::{tvd, tvd_coupling, tvd_down, tvd_up, TvdCoupling};

use crate::error::Result;
use crate::rational::Rational;

/// A metric on `T` with exact rational values.
pub trait Metric<T> {
    fn distance(&self, a: &T, b: &T) -> Rational;

    /// Rejects points that do not belong to the underlying space.
    fn check(&self, _a: &T) -> Result<()> {
        Ok(())
    }

    /// The whole (finite) space, when the metric knows it.
    fn domain(&self) -> Option<Vec<T>> {
        None
    }
}

impl<T, M: Metric<T> + ?Sized> Metric<T> for &M {
    fn distance(&self, a: &T, b: &T) -> Rational {
        (**self).distance(a, b)
    }

    fn check(&self, a: &T) -> Result<()> {
        (**self).check(a)
    }

    fn domain(&self) -> Option<Vec<T>> {
        (**self).domain()
    }
}
