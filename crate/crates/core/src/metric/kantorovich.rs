use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use thiserror::Error;

use super::simplex::{self, Plan};
use super::tvd::tvd;
use super::Metric;
use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Optimal cost with a primal coupling, dual potentials and a single short witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportResult<T: Ord> {
    pub cost: Rational,
    /// A vertex of the transportation polytope.
    pub coupling: Dist<(T, T)>,
    /// Potential on the support of the first argument.
    pub pot_p: BTreeMap<T, Rational>,
    /// Potential on the support of the second argument.
    pub pot_p2: BTreeMap<T, Rational>,
    /// Nonnegative 1-Lipschitz factor with `ω' ⊨ q - ω ⊨ q = cost`.
    pub witness_q: BTreeMap<T, Rational>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("coupling marginals differ from the inputs")]
    Marginal,
    #[error("coupling cost {found} differs from {cost}")]
    PrimalCost { cost: Rational, found: Rational },
    #[error("dual sum {found} differs from {cost}")]
    DualSum { cost: Rational, found: Rational },
    #[error("dual potentials exceed the ground distance")]
    DualInfeasible,
    #[error("witness gap {found} differs from {cost}")]
    WitnessGap { cost: Rational, found: Rational },
    #[error("witness is not short")]
    WitnessNotShort,
    #[error("witness takes a negative value")]
    WitnessNegative,
}

impl<T: Ord + Clone> TransportResult<T> {
    /// Checks every certificate against the inputs, exactly.
    pub fn verify<M: Metric<T>>(
        &self,
        w: &Dist<T>,
        w2: &Dist<T>,
        d: &M,
    ) -> std::result::Result<(), CertificateError> {
        if &self.coupling.first_marginal() != w || &self.coupling.second_marginal() != w2 {
            return Err(CertificateError::Marginal);
        }
        let primal = self.coupling.validity(|(x, y)| d.distance(x, y));
        if primal != self.cost {
            return Err(CertificateError::PrimalCost {
                cost: self.cost.clone(),
                found: primal,
            });
        }
        let look = |m: &BTreeMap<T, Rational>, x: &T| m.get(x).cloned().unwrap_or_default();
        let dual = w.validity(|x| look(&self.pot_p, x)) + w2.validity(|y| look(&self.pot_p2, y));
        if dual != self.cost {
            return Err(CertificateError::DualSum {
                cost: self.cost.clone(),
                found: dual,
            });
        }
        for x in w.support() {
            for y in w2.support() {
                if look(&self.pot_p, x) + look(&self.pot_p2, y) > d.distance(x, y) {
                    return Err(CertificateError::DualInfeasible);
                }
            }
        }
        if self.witness_q.values().any(|q| q.is_negative()) {
            return Err(CertificateError::WitnessNegative);
        }
        for (a, qa) in &self.witness_q {
            for (b, qb) in &self.witness_q {
                if (qa - qb).abs() > d.distance(a, b) {
                    return Err(CertificateError::WitnessNotShort);
                }
            }
        }
        let gap = (w.validity(|x| look(&self.witness_q, x))
            - w2.validity(|x| look(&self.witness_q, x)))
        .abs();
        if gap != self.cost {
            return Err(CertificateError::WitnessGap {
                cost: self.cost.clone(),
                found: gap,
            });
        }
        Ok(())
    }
}

/// Exact Kantorovich distance between two finitely supported distributions.
pub fn kantorovich<T: Ord + Clone, M: Metric<T>>(
    w: &Dist<T>,
    w2: &Dist<T>,
    d: &M,
) -> Result<TransportResult<T>> {
    for x in w.support().chain(w2.support()) {
        d.check(x)?;
    }
    let xs: Vec<T> = w.support().cloned().collect();
    let ys: Vec<T> = w2.support().cloned().collect();
    if w == w2 {
        let zero = |v: &[T]| v.iter().map(|x| (x.clone(), Rational::zero())).collect();
        return Ok(TransportResult {
            cost: Rational::zero(),
            coupling: w.map(|x| (x.clone(), x.clone())),
            pot_p: zero(&xs),
            pot_p2: zero(&ys),
            witness_q: zero(&witness_domain(&xs, &ys, d)),
        });
    }
    let a: Vec<Rational> = w.iter().map(|(_, p)| p.clone()).collect();
    let b: Vec<Rational> = w2.iter().map(|(_, p)| p.clone()).collect();
    let plan = solve_costs(&xs, &a, &ys, &b, d);
    Ok(assemble(&xs, &ys, plan, &Rational::from_integer(1.into()), d))
}

pub(super) fn solve_costs<T, M: Metric<T>>(
    xs: &[T],
    a: &[Rational],
    ys: &[T],
    b: &[Rational],
    d: &M,
) -> Plan {
    let cost: Vec<Vec<Rational>> = xs
        .iter()
        .map(|x| ys.iter().map(|y| d.distance(x, y)).collect())
        .collect();
    simplex::solve(a, b, &cost)
}

fn witness_domain<T: Ord + Clone, M: Metric<T>>(xs: &[T], ys: &[T], d: &M) -> Vec<T> {
    match d.domain() {
        Some(all) => all,
        None => xs
            .iter()
            .chain(ys)
            .cloned()
            .collect::<BTreeSet<T>>()
            .into_iter()
            .collect(),
    }
}

/// Builds a result from a plan whose flows are `scale` times the coupling weights.
pub(super) fn assemble<T: Ord + Clone, M: Metric<T>>(
    xs: &[T],
    ys: &[T],
    plan: Plan,
    scale: &Rational,
    d: &M,
) -> TransportResult<T> {
    let coupling = Dist::from_sorted_unchecked(
        plan.flow
            .iter()
            .map(|(i, j, f)| ((xs[*i].clone(), ys[*j].clone()), f / scale)),
    );
    let pot_p: BTreeMap<T, Rational> = xs.iter().cloned().zip(plan.u).collect();
    let pot_p2: BTreeMap<T, Rational> = ys.iter().cloned().zip(plan.v).collect();
    let mut q: BTreeMap<T, Rational> = witness_domain(xs, ys, d)
        .into_iter()
        .map(|z| {
            let v = pot_p
                .iter()
                .map(|(x, p)| d.distance(&z, x) - p)
                .min()
                .expect("nonempty support");
            (z, v)
        })
        .collect();
    if let Some(lo) = q.values().min().cloned() {
        for v in q.values_mut() {
            *v -= &lo;
        }
    }
    TransportResult {
        cost: plan.cost / scale,
        coupling,
        pot_p,
        pot_p2,
        witness_q: q,
    }
}

/// Returns `(d(ω, ω'), D·tvd(ω, ω'))` where `D` is the largest distance across the two supports.
pub fn tvd_bound_check<T: Ord + Clone, M: Metric<T>>(
    w: &Dist<T>,
    w2: &Dist<T>,
    d: &M,
) -> Result<(Rational, Rational)> {
    let lhs = kantorovich(w, w2, d)?.cost;
    let mut diam = Rational::zero();
    for x in w.support() {
        for y in w2.support() {
            let v = d.distance(x, y);
            if v > diam {
                diam = v;
            }
        }
    }
    let rhs = diam * tvd(w, w2);
    debug_assert!(lhs <= rhs);
    Ok((lhs, rhs))
}

/// For inputs whose weights all have denominators dividing `k`, reports whether
/// the solver's optimal vertex coupling has the same property.
pub fn fractionality_check<T: Ord + Clone, M: Metric<T>>(
    w: &Dist<T>,
    w2: &Dist<T>,
    k: u64,
    d: &M,
) -> Result<bool> {
    if k == 0 || !w.in_dk(k) || !w2.in_dk(k) {
        return Err(Error::NotInDk(k));
    }
    Ok(kantorovich(w, w2, d)?.coupling.in_dk(k))
}
