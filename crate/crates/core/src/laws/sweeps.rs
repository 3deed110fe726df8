use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::table::{Check, SweepReport, SweepRow, SweepTable, Value};
use crate::dist::Dist;
use crate::draws::{hypergeometric, multinomial, polya};
use crate::error::{Error, Result};
use crate::metric::{kantorovich, nested_kantorovich, tvd, GroundMetric, Metric, MsetMetric};
use crate::multiset::Multiset;
use crate::rational::{falling, from_big, multichoose, nat, ratio, to_f64, Rational};
use crate::space::{Elem, Space};

pub const DEFAULT_URN_SCHEDULE: [u64; 10] = [1, 2, 5, 10, 20, 50, 100, 200, 500, 1000];

#[derive(Debug, Clone)]
pub struct UrnSweepConfig {
    pub schedule: Vec<u64>,
    /// The final distances must drop below `first / threshold_div`.
    pub threshold_div: u64,
    /// Largest allowed `|mn/hg - 1|` and `|mn/pol - 1|` at the final scale.
    pub ratio_tol: Option<f64>,
}

impl Default for UrnSweepConfig {
    fn default() -> Self {
        UrnSweepConfig {
            schedule: DEFAULT_URN_SCHEDULE.to_vec(),
            threshold_div: 10,
            ratio_tol: Some(0.05),
        }
    }
}

fn sorted_schedule(s: &[u64]) -> Result<Vec<u64>> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.is_empty() || v[0] == 0 {
        return Err(Error::Invalid("schedule needs positive entries".into()));
    }
    Ok(v)
}

fn diameter_across<M: Metric<Multiset<Elem>>>(
    a: &Dist<Multiset<Elem>>,
    b: &Dist<Multiset<Elem>>,
    d: &M,
) -> Rational {
    let mut best = Rational::zero();
    for x in a.support() {
        for y in b.support() {
            let v = d.distance(x, y);
            if v > best {
                best = v;
            }
        }
    }
    best
}

fn shrinks(first: &Rational, last: &Rational, div: u64) -> bool {
    (first.is_zero() && last.is_zero()) || *last < first / nat(div)
}

/// Distances between hypergeometric/Pólya draws from the scaled urn `n·υ`
/// and multinomial draws from `flrn(υ)`, for each `n` in the schedule.
pub fn large_urn_sweep(
    urn: &Multiset<Elem>,
    k: u64,
    space: &Space,
    d: &MsetMetric<Elem, GroundMetric>,
    cfg: &UrnSweepConfig,
) -> Result<SweepReport> {
    if k == 0 || k > urn.size() {
        return Err(Error::Overdraw {
            draw: k,
            urn: urn.size(),
        });
    }
    let schedule = sorted_schedule(&cfg.schedule)?;
    let mn = multinomial(&urn.flrn()?, k).dist;
    let draws: Vec<Multiset<Elem>> = mn.support().cloned().collect();
    let mut columns: Vec<String> = ["n", "hg_distance", "pol_distance", "hg_bound", "pol_bound"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for phi in &draws {
        columns.push(format!("mn/hg {}", space.fmt_mset(phi)));
    }
    for phi in &draws {
        columns.push(format!("mn/pol {}", space.fmt_mset(phi)));
    }
    let rows: Vec<SweepRow> = schedule
        .par_iter()
        .map(|&n| -> Result<SweepRow> {
            let scaled = urn.scale(n);
            let hg = hypergeometric(&scaled, k)?.dist;
            let pol = polya(&scaled, k)?.dist;
            let hg_d = nested_kantorovich(&hg, &mn, d)?.cost;
            let pol_d = nested_kantorovich(&pol, &mn, d)?.cost;
            let hg_b = diameter_across(&hg, &mn, d) * tvd(&hg, &mn);
            let pol_b = diameter_across(&pol, &mn, d) * tvd(&pol, &mn);
            let mut cells = vec![
                Value::Exact(hg_d),
                Value::Exact(pol_d),
                Value::Exact(hg_b),
                Value::Exact(pol_b),
            ];
            for other in [&hg, &pol] {
                for phi in &draws {
                    let q = other.weight(phi);
                    cells.push(if q.is_zero() {
                        Value::Missing
                    } else {
                        Value::Exact(mn.weight(phi) / q)
                    });
                }
            }
            Ok(SweepRow { parameter: n, cells })
        })
        .collect::<Result<_>>()?;
    let mut table = SweepTable::new(columns);
    table.rows = rows;

    let mut checks = Vec::new();
    let last = table.rows.len() - 1;
    for name in ["hg_distance", "pol_distance"] {
        let first = table.cell(0, name).unwrap();
        let fin = table.cell(last, name).unwrap();
        let (f, l) = (first.as_exact().unwrap(), fin.as_exact().unwrap());
        if last > 0 {
            checks.push(Check::new(
                format!("{name} final below first"),
                (f.is_zero() && l.is_zero()) || l < f,
                format!("first {f}, final {l}"),
            ));
        }
        checks.push(Check::new(
            format!("{name} final below first/{}", cfg.threshold_div),
            shrinks(f, l, cfg.threshold_div),
            format!("first {f}, final {l}"),
        ));
    }
    for row in 0..=last {
        for name in ["hg", "pol"] {
            let dist = table.cell(row, &format!("{name}_distance")).unwrap();
            let bound = table.cell(row, &format!("{name}_bound")).unwrap();
            if dist.as_exact().unwrap() > bound.as_exact().unwrap() {
                checks.push(Check::new(
                    format!("{name} distance within bound at n={}", table.rows[row].parameter),
                    false,
                    format!("{} > {}", dist, bound),
                ));
            }
        }
    }
    if let Some(tol) = cfg.ratio_tol {
        let worst = table.rows[last].cells[4..]
            .iter()
            .filter_map(|v| v.as_float())
            .map(|r| (r - 1.0).abs())
            .fold(0.0, f64::max);
        checks.push(Check::new(
            format!("pmf ratios within {tol} of 1 at final n"),
            worst <= tol,
            format!("largest deviation {worst}"),
        ));
    }
    Ok(SweepReport { table, checks })
}

#[derive(Debug, Clone)]
pub struct DrawSweepConfig {
    pub schedule: Vec<u64>,
    /// Largest number of draws enumerated per size.
    pub cap: u64,
    /// Largest number of draws for which the Kantorovich columns are computed.
    pub kantorovich_cap: u64,
    /// Reference distribution for the triangle-inequality trend.
    pub rho: Option<Dist<Elem>>,
}

impl DrawSweepConfig {
    pub fn new(schedule: Vec<u64>) -> Self {
        DrawSweepConfig {
            schedule,
            cap: 50_000,
            kantorovich_cap: 2_000,
            rho: None,
        }
    }
}

/// Sizes `1..=K_max` where `K_max <= max_k` is the largest size whose draw count stays within `cap`.
pub fn default_draw_schedule(support: usize, cap: u64, max_k: u64) -> Vec<u64> {
    let cap = BigUint::from(cap);
    (1..=max_k)
        .take_while(|&k| multichoose(support as u64, k) <= cap)
        .collect()
}

/// `mn_K(ω) ⊨ tvd(ω, Flrn(-))` per draw size, with the variance bound
/// `½ Σ_y sqrt(ω(y)(1 - ω(y))/K)` and the Kantorovich analogue.
pub fn large_draw_sweep(
    w: &Dist<Elem>,
    d: &GroundMetric,
    cfg: &DrawSweepConfig,
) -> Result<SweepReport> {
    let schedule = sorted_schedule(&cfg.schedule)?;
    let support = w.len() as u64;
    for &k in &schedule {
        let count = multichoose(support, k);
        if count > BigUint::from(cfg.cap) {
            return Err(Error::CapExceeded { size: k, cap: cfg.cap });
        }
    }
    let target = match &cfg.rho {
        Some(rho) => Some(kantorovich(w, rho, d)?.cost),
        None => None,
    };
    let mut columns: Vec<String> = ["K", "tvd_value", "bound", "kantorovich_value"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    if target.is_some() {
        columns.push("triangle_value".into());
        columns.push("triangle_target".into());
    }
    let rows: Vec<SweepRow> = schedule
        .par_iter()
        .map(|&k| -> Result<SweepRow> {
            let mn = multinomial(w, k).dist;
            let value = mn.validity(|phi| tvd(w, &phi.flrn().expect("nonempty draw")));
            let bound: f64 = 0.5
                * w.iter()
                    .map(|(_, p)| {
                        let p = to_f64(p);
                        (p * (1.0 - p) / k as f64).sqrt()
                    })
                    .sum::<f64>();
            let feasible = multichoose(support, k) <= BigUint::from(cfg.kantorovich_cap);
            let mut cells = vec![Value::Exact(value), Value::Float(bound)];
            let kant = |other: Option<&Dist<Elem>>| -> Result<Value> {
                if !feasible {
                    return Ok(Value::Missing);
                }
                let mut total = Rational::zero();
                for (phi, p) in mn.iter() {
                    let f = phi.flrn()?;
                    let c = match other {
                        None => kantorovich(w, &f, d)?.cost,
                        Some(rho) => kantorovich(&f, rho, d)?.cost,
                    };
                    total += p * c;
                }
                Ok(Value::Exact(total))
            };
            cells.push(kant(None)?);
            if let (Some(rho), Some(t)) = (&cfg.rho, &target) {
                cells.push(kant(Some(rho))?);
                cells.push(Value::Exact(t.clone()));
            }
            Ok(SweepRow { parameter: k, cells })
        })
        .collect::<Result<_>>()?;
    let mut table = SweepTable::new(columns);
    table.rows = rows;

    let mut checks = Vec::new();
    let bad: Vec<u64> = table
        .rows
        .iter()
        .filter(|r| {
            let v = r.cells[0].as_float().unwrap();
            let b = r.cells[1].as_float().unwrap();
            v > b + 1e-12
        })
        .map(|r| r.parameter)
        .collect();
    checks.push(Check::new(
        "tvd value within variance bound",
        bad.is_empty(),
        format!("violations at K in {bad:?}"),
    ));
    let last = table.rows.len() - 1;
    if last > 0 {
        let first = table.rows[0].cells[0].as_exact().unwrap();
        let fin = table.rows[last].cells[0].as_exact().unwrap();
        checks.push(Check::new(
            "tvd value at final K below first",
            (first.is_zero() && fin.is_zero()) || fin < first,
            format!("first {first}, final {fin}"),
        ));
        if let Some(t) = &target {
            let gap = |row: usize| -> Option<Rational> {
                table.rows[row].cells[3].as_exact().map(|v| (v - t).abs())
            };
            if let (Some(g0), Some(g1)) = (gap(0), gap(last)) {
                checks.push(Check::new(
                    "triangle gap at final K below first",
                    (g0.is_zero() && g1.is_zero()) || g1 < g0,
                    format!("first gap {g0}, final gap {g1}"),
                ));
            }
        }
    }
    Ok(SweepReport { table, checks })
}

/// `n!/((n-m)!·n^m)` and `(n+m-1)!/((n-1)!·n^m)` for each `n`.
pub fn coefficient_limit_probe(m: u64, schedule: &[u64]) -> Result<SweepReport> {
    let schedule = sorted_schedule(schedule)?;
    let mut table = SweepTable::new(vec!["n".into(), "falling".into(), "rising".into()]);
    for &n in &schedule {
        let nm = from_big(&num_traits::pow(BigUint::from(n), m as usize));
        let fall = from_big(&falling(n, m)) / &nm;
        let rise = from_big(&falling(n + m - 1, m)) / &nm;
        table.rows.push(SweepRow {
            parameter: n,
            cells: vec![Value::Exact(fall), Value::Exact(rise)],
        });
    }
    let mut checks = Vec::new();
    let last = table.rows.last().unwrap();
    if last.parameter >= 100 * m {
        let tol = ratio(1, 100);
        let one = Rational::one();
        let ok = last
            .cells
            .iter()
            .all(|v| (v.as_exact().unwrap() - &one).abs() <= tol);
        checks.push(Check::new(
            "coefficients within 1/100 of 1 at final n",
            ok,
            format!("n = {}", last.parameter),
        ));
    }
    Ok(SweepReport { table, checks })
}
