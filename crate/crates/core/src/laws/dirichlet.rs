use num_traits::Zero;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;

use super::table::{Check, SweepReport, SweepRow, SweepTable, Value};
use crate::dist::Dist;
use crate::draws::polya;
use crate::error::{Error, Result};
use crate::metric::{kantorovich, tvd, GroundMetric};
use crate::multiset::Multiset;
use crate::rational::{from_f64_dyadic, nat, to_f64, Rational};
use crate::space::Elem;

/// Samples drawn per independent random stream.
const CHUNK: u64 = 4096;
/// Two-sided 99% normal quantile.
const Z99: f64 = 2.5758293035489004;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceKind {
    Tvd,
    Kantorovich,
}

impl DistanceKind {
    pub fn name(self) -> &'static str {
        match self {
            DistanceKind::Tvd => "tvd",
            DistanceKind::Kantorovich => "kantorovich",
        }
    }
}

/// Distance between distributions over colours.
#[derive(Debug, Clone, Copy)]
pub enum Distance<'a> {
    Tvd,
    Kantorovich(&'a GroundMetric),
}

impl Distance<'_> {
    pub fn kind(&self) -> DistanceKind {
        match self {
            Distance::Tvd => DistanceKind::Tvd,
            Distance::Kantorovich(_) => DistanceKind::Kantorovich,
        }
    }

    pub fn exact(&self, a: &Dist<Elem>, b: &Dist<Elem>) -> Result<Rational> {
        match self {
            Distance::Tvd => Ok(tvd(a, b)),
            Distance::Kantorovich(d) => Ok(kantorovich(a, b, *d)?.cost),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct McConfig<'a> {
    pub samples: u64,
    pub seed: u64,
    pub distance: Distance<'a>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

impl McEstimate {
    pub fn ci99(&self) -> (f64, f64) {
        (self.mean - Z99 * self.std_error, self.mean + Z99 * self.std_error)
    }
}

/// Seed for task `task` of a run seeded with `seed`.
pub fn derive_seed(seed: u64, task: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(task);
    rng.next_u64()
}

/// `pol_K(υ) ⊨ dist(Flrn(-), flrn(υ))`, exactly.
pub fn polya_validity(urn: &Multiset<Elem>, k: u64, distance: &Distance) -> Result<Rational> {
    if k == 0 {
        return Err(Error::Invalid("draw size must be positive".into()));
    }
    let target = urn.flrn()?;
    let pol = polya(urn, k)?;
    let mut total = Rational::zero();
    for (phi, p) in pol.dist.iter() {
        total += p * distance.exact(&phi.flrn()?, &target)?;
    }
    Ok(total)
}

/// Estimates `Dir(υ) ⊨ dist(-, flrn(υ))` by gamma-ratio sampling.
pub fn polya_dirichlet_mc(urn: &Multiset<Elem>, cfg: &McConfig) -> Result<McEstimate> {
    if cfg.samples < 2 {
        return Err(Error::Invalid("need at least two samples".into()));
    }
    let target = urn.flrn()?;
    let elems: Vec<Elem> = urn.support().copied().collect();
    let gammas: Vec<Gamma<f64>> = urn
        .iter()
        .map(|(_, n)| Gamma::new(n as f64, 1.0).expect("positive shape"))
        .collect();
    let target_f: Vec<f64> = target.iter().map(|(_, p)| to_f64(p)).collect();
    let chunks = cfg.samples.div_ceil(CHUNK);
    let partial: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<(f64, f64)> {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(c);
            let n = CHUNK.min(cfg.samples - c * CHUNK);
            let (mut s, mut ss) = (0.0, 0.0);
            let mut x = vec![0.0; gammas.len()];
            for _ in 0..n {
                for (xi, g) in x.iter_mut().zip(&gammas) {
                    *xi = g.sample(&mut rng);
                }
                let total: f64 = x.iter().sum();
                x.iter_mut().for_each(|v| *v /= total);
                let v = match cfg.distance {
                    Distance::Tvd => {
                        0.5 * x.iter().zip(&target_f).map(|(a, b)| (a - b).abs()).sum::<f64>()
                    }
                    Distance::Kantorovich(d) => {
                        let w = rationalize(&elems, &x);
                        to_f64(&kantorovich(&w, &target, d)?.cost)
                    }
                };
                s += v;
                ss += v * v;
            }
            Ok((s, ss))
        })
        .collect::<Result<_>>()?;
    // Sequential merge keeps the floating-point sum independent of scheduling.
    let (s, ss) = partial
        .iter()
        .fold((0.0, 0.0), |(a, b), (c, d)| (a + c, b + d));
    let n = cfg.samples as f64;
    let mean = s / n;
    let var = ((ss - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok(McEstimate {
        mean,
        std_error: (var / n).sqrt(),
        samples: cfg.samples,
    })
}

/// Rounds sampled weights onto a dyadic grid; the largest weight absorbs the remainder.
fn rationalize(elems: &[Elem], x: &[f64]) -> Dist<Elem> {
    let mut w: Vec<Rational> = x.iter().map(|&v| from_f64_dyadic(v, 40)).collect();
    let top = x
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    let rest: Rational = w
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != top)
        .map(|(_, v)| v.clone())
        .sum();
    w[top] = nat(1) - rest;
    Dist::new(elems.iter().copied().zip(w)).expect("rounded weights form a distribution")
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyaDirichletReport {
    pub estimate: McEstimate,
    pub k: u64,
    pub validity: Rational,
    pub check: Check,
}

/// Compares the exact Pólya validity at draw size `k` with the Monte Carlo
/// estimate: it must fall inside the 99% interval widened by `slack`.
pub fn polya_dirichlet_check(
    urn: &Multiset<Elem>,
    cfg: &McConfig,
    k: u64,
    slack: f64,
) -> Result<PolyaDirichletReport> {
    let estimate = polya_dirichlet_mc(urn, cfg)?;
    let validity = polya_validity(urn, k, &cfg.distance)?;
    let v = to_f64(&validity);
    let (lo, hi) = estimate.ci99();
    let passed = v >= lo - slack && v <= hi + slack;
    let check = Check::new(
        format!("polya validity at K={k} within widened 99% interval"),
        passed,
        format!("validity {v}, interval [{lo}, {hi}], slack {slack}"),
    );
    Ok(PolyaDirichletReport {
        estimate,
        k,
        validity,
        check,
    })
}

#[derive(Debug, Clone)]
pub struct GridConfig {
    pub grid_max: u64,
    pub samples: u64,
    pub seed: u64,
    /// Draw size for the exact Pólya column.
    pub k: u64,
}

/// Binary urns `i|a> + j|b>` for `1 <= i, j <= grid_max`, with total variation.
pub fn dirichlet_grid(cfg: &GridConfig) -> Result<SweepReport> {
    if cfg.grid_max == 0 {
        return Err(Error::Invalid("grid needs at least one cell".into()));
    }
    let g = cfg.grid_max;
    let cells: Vec<(u64, u64)> = (1..=g).flat_map(|i| (1..=g).map(move |j| (i, j))).collect();
    let rows: Vec<SweepRow> = cells
        .par_iter()
        .enumerate()
        .map(|(task, &(i, j))| -> Result<SweepRow> {
            let urn = Multiset::from_counts([(Elem(0), i), (Elem(1), j)]);
            let mc = McConfig {
                samples: cfg.samples,
                seed: derive_seed(cfg.seed, task as u64),
                distance: Distance::Tvd,
            };
            let est = polya_dirichlet_mc(&urn, &mc)?;
            let exact = polya_validity(&urn, cfg.k, &Distance::Tvd)?;
            Ok(SweepRow {
                parameter: i,
                cells: vec![
                    Value::Int(j),
                    Value::Text(DistanceKind::Tvd.name().into()),
                    Value::Float(est.mean),
                    Value::Float(est.std_error),
                    Value::Int(cfg.k),
                    Value::Exact(exact),
                ],
            })
        })
        .collect::<Result<_>>()?;
    let mut table = SweepTable::new(
        ["i", "j", "distance", "mc_estimate", "std_error", "polya_k", "polya_validity"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    );
    table.rows = rows;
    let last = table.rows.len() - 1;
    let corner = |r: usize| table.rows[r].cells[2].as_float().unwrap();
    let exact = |r: usize| table.rows[r].cells[5].as_exact().unwrap().clone();
    let mut checks = Vec::new();
    if last > 0 {
        checks.push(Check::new(
            "estimate at (1,1) above estimate at (max,max)",
            corner(0) > corner(last),
            format!("{} vs {}", corner(0), corner(last)),
        ));
        checks.push(Check::new(
            "exact polya validity at (1,1) above (max,max)",
            exact(0) > exact(last),
            format!("{} vs {}", exact(0), exact(last)),
        ));
    }
    Ok(SweepReport { table, checks })
}
