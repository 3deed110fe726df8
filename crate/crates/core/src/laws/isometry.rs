use crate::dist::Dist;
use crate::draws::{hypergeometric, multinomial, polya, DrawDist, DrawKind};
use crate::error::{Error, Result};
use crate::metric::{kantorovich, mset_kantorovich, nested_kantorovich, Metric, MsetMetric, TransportResult};
use crate::multiset::Multiset;
use crate::rational::Rational;

/// Input to a draw channel: a distribution for multinomial draws, an urn otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Urn<T: Ord> {
    Dist(Dist<T>),
    Multiset(Multiset<T>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryReport<T: Ord> {
    pub kind: DrawKind,
    pub size: u64,
    /// Distance between the two inputs.
    pub base: Rational,
    /// Certificate for the base distance, at the level of distributions.
    pub base_certificate: Option<TransportResult<T>>,
    /// Distance between the two draw distributions.
    pub nested: TransportResult<Multiset<T>>,
}

impl<T: Ord> IsometryReport<T> {
    pub fn equal(&self) -> bool {
        self.base == self.nested.cost
    }
}

fn draw<T: Ord + Clone>(kind: DrawKind, u: &Urn<T>, k: u64) -> Result<DrawDist<T>> {
    match (kind, u) {
        (DrawKind::Multinomial, Urn::Dist(w)) => Ok(multinomial(w, k)),
        (DrawKind::Hypergeometric, Urn::Multiset(m)) => hypergeometric(m, k),
        (DrawKind::Polya, Urn::Multiset(m)) => polya(m, k),
        (DrawKind::Multinomial, _) => Err(Error::Invalid("multinomial draws take distributions".into())),
        _ => Err(Error::Invalid(format!("{kind} draws take urns"))),
    }
}

/// Computes the base distance and the distance between the two draw
/// distributions of size `k`; the channels are isometries, so they agree.
pub fn isometry_check<T: Ord + Clone, M: Metric<T>>(
    kind: DrawKind,
    u: &Urn<T>,
    u2: &Urn<T>,
    k: u64,
    d: &MsetMetric<T, M>,
) -> Result<IsometryReport<T>> {
    let (base, base_certificate) = match (u, u2) {
        (Urn::Dist(a), Urn::Dist(b)) => {
            let r = kantorovich(a, b, d.inner())?;
            (r.cost.clone(), Some(r))
        }
        (Urn::Multiset(a), Urn::Multiset(b)) => {
            let r = mset_kantorovich(a, b, d.inner())?;
            (r.cost, r.certificate)
        }
        _ => return Err(Error::Invalid("inputs must be of the same kind".into())),
    };
    let left = draw(kind, u, k)?;
    let right = draw(kind, u2, k)?;
    let nested = nested_kantorovich(&left.dist, &right.dist, d)?;
    Ok(IsometryReport {
        kind,
        size: k,
        base,
        base_certificate,
        nested,
    })
}
