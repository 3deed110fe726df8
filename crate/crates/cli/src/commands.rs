//! Subcommand bodies. Each returns the text for stdout plus an optional failed assertion.

use std::fmt::Write as _;
use std::path::PathBuf;

use urnkit::laws::{
    default_draw_schedule, dirichlet_grid, isometry_check, large_draw_sweep, large_urn_sweep,
    polya_dirichlet_check, Distance, DrawSweepConfig, GridConfig, McConfig, SweepReport,
    SweepRow, SweepTable, Urn, UrnSweepConfig, Value,
};
use urnkit::draws::{hypergeometric, multinomial, polya, DrawKind};
use urnkit::metric::{kantorovich, mset_kantorovich, MsetMetric, TransportResult};
use urnkit::{Dist, Elem, Rational, Space};

use crate::error::CliError;
use crate::spec::{DistanceName, Object, Problem};

/// Knobs that may come from the command line instead of the problem file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub threshold_div: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub stdout: String,
    /// First failing assertion, if any.
    pub failure: Option<String>,
}

const DEFAULT_K: u64 = 2;
const DEFAULT_MC_SAMPLES: u64 = 100_000;
const DEFAULT_GRID_SAMPLES: u64 = 10_000;
const DEFAULT_POLYA_K: u64 = 32;
const DRAW_CAP: u64 = 50_000;
const MAX_DRAWS: u64 = 32;
const MC_SLACK: f64 = 0.05;

/// Left-aligned columns separated by two spaces.
pub fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                let _ = write!(s, "{c:<w$}  ");
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

/// Plain rational for text output: integers print without a denominator.
fn frac(r: &Rational) -> String {
    r.to_string()
}

fn certificate_text(space: &Space, r: &TransportResult<Elem>) -> String {
    let mut out = String::new();
    let rows: Vec<Vec<String>> = r
        .coupling
        .iter()
        .map(|((x, y), w)| vec![space.label(*x).into(), space.label(*y).into(), frac(w)])
        .collect();
    out.push_str("coupling\n");
    out.push_str(&aligned(&["from", "to", "weight"], &rows));
    let mut labels: Vec<&Elem> = r.pot_p.keys().chain(r.pot_p2.keys()).collect();
    labels.sort();
    labels.dedup();
    let show = |m: &std::collections::BTreeMap<Elem, Rational>, e: &Elem| {
        m.get(e).map(frac).unwrap_or_else(|| "-".into())
    };
    let rows: Vec<Vec<String>> = labels
        .iter()
        .map(|e| vec![space.label(**e).into(), show(&r.pot_p, e), show(&r.pot_p2, e)])
        .collect();
    out.push_str("potentials\n");
    out.push_str(&aligned(&["label", "p", "p'"], &rows));
    let rows: Vec<Vec<String>> = r
        .witness_q
        .iter()
        .map(|(e, q)| vec![space.label(*e).into(), frac(q)])
        .collect();
    out.push_str("witness\n");
    out.push_str(&aligned(&["label", "q"], &rows));
    out
}

fn verify_line(
    out: &mut String,
    r: &TransportResult<Elem>,
    a: &Dist<Elem>,
    b: &Dist<Elem>,
    p: &Problem,
) -> Option<String> {
    match r.verify(a, b, &p.metric) {
        Ok(()) => {
            out.push_str("certificate  verified\n");
            None
        }
        Err(e) => {
            let _ = writeln!(out, "certificate  FAILED: {e}");
            Some(format!("certificate: {e}"))
        }
    }
}

pub fn distance(p: &Problem) -> Result<Report, CliError> {
    let a = p.object("params.left", p.params.left.as_ref())?;
    let b = p.object("params.right", p.params.right.as_ref())?;
    let mut out = String::new();
    let failure = match (a, b) {
        (Object::Dist(a), Object::Dist(b)) => {
            let r = kantorovich(a, b, &p.metric)?;
            let _ = writeln!(out, "distance  {}", frac(&r.cost));
            out.push_str(&certificate_text(&p.space, &r));
            verify_line(&mut out, &r, a, b, p)
        }
        (Object::Multiset(a), Object::Multiset(b)) => {
            let r = mset_kantorovich(a, b, &p.metric)?;
            let _ = writeln!(out, "distance  {}", frac(&r.cost));
            let _ = writeln!(out, "total     {}", frac(&r.total));
            let rows: Vec<Vec<String>> = r
                .coupling
                .iter()
                .map(|((x, y), n)| {
                    vec![p.space.label(*x).into(), p.space.label(*y).into(), n.to_string()]
                })
                .collect();
            out.push_str("matching\n");
            out.push_str(&aligned(&["from", "to", "count"], &rows));
            match &r.certificate {
                Some(c) => {
                    out.push_str(&certificate_text(&p.space, c));
                    verify_line(&mut out, c, &a.flrn()?, &b.flrn()?, p)
                }
                None => None,
            }
        }
        (a, b) => {
            return Err(crate::error::SpecError::Field {
                field: "params.right".into(),
                message: format!("cannot compare a {} with a {}", a.kind(), b.kind()),
            }
            .into())
        }
    };
    Ok(Report { stdout: out, failure })
}

fn draw_kind(p: &Problem) -> Result<DrawKind, CliError> {
    Ok(p.require("params.draw", p.params.draw)?.into())
}

pub fn draw(p: &Problem) -> Result<Report, CliError> {
    let kind = draw_kind(p)?;
    let k = p.params.k.unwrap_or(DEFAULT_K);
    let (source, dd) = match kind {
        DrawKind::Multinomial => {
            let w = p.dist("params.left", p.params.left.as_ref())?;
            (p.space.fmt_dist(w), multinomial(w, k))
        }
        DrawKind::Hypergeometric => {
            let u = p.multiset("params.left", p.params.left.as_ref())?;
            (p.space.fmt_mset(u), hypergeometric(u, k)?)
        }
        DrawKind::Polya => {
            let u = p.multiset("params.left", p.params.left.as_ref())?;
            (p.space.fmt_mset(u), polya(u, k)?)
        }
    };
    let mut out = format!("{kind} K={k} from {source}\n");
    let rows: Vec<Vec<String>> = dd
        .dist
        .iter()
        .map(|(phi, w)| vec![p.space.fmt_mset(phi), frac(w)])
        .collect();
    out.push_str(&aligned(&["draw", "probability"], &rows));
    Ok(Report { stdout: out, failure: None })
}

fn urn(o: &Object) -> Urn<Elem> {
    match o {
        Object::Multiset(m) => Urn::Multiset(m.clone()),
        Object::Dist(d) => Urn::Dist(d.clone()),
    }
}

pub fn isometry(p: &Problem) -> Result<Report, CliError> {
    let kind = draw_kind(p)?;
    let k = p.params.k.unwrap_or(DEFAULT_K);
    let (a, b) = match kind {
        DrawKind::Multinomial => (
            Object::Dist(p.dist("params.left", p.params.left.as_ref())?.clone()),
            Object::Dist(p.dist("params.right", p.params.right.as_ref())?.clone()),
        ),
        _ => (
            Object::Multiset(p.multiset("params.left", p.params.left.as_ref())?.clone()),
            Object::Multiset(p.multiset("params.right", p.params.right.as_ref())?.clone()),
        ),
    };
    let mm = MsetMetric::new(p.metric.clone());
    let rep = isometry_check(kind, &urn(&a), &urn(&b), k, &mm)?;
    let base = frac(&rep.base);
    let nested = frac(&rep.nested.cost);
    let mut out = format!("{kind} K={k}\n");
    out.push_str(&aligned(
        &["level", "distance"],
        &[vec!["inputs".into(), base.clone()], vec!["draws".into(), nested.clone()]],
    ));
    let failure = if rep.equal() {
        let _ = writeln!(out, "PASS {base} = {nested}");
        None
    } else {
        let _ = writeln!(out, "FAIL {base} != {nested}");
        Some(format!("{kind} isometry: inputs {base}, draws {nested}"))
    };
    Ok(Report { stdout: out, failure })
}

/// Writes the CSV to `--out` or stdout, followed by one line per check.
fn emit(report: &SweepReport, o: &Overrides) -> Result<Report, CliError> {
    let csv = report.table.to_csv();
    let mut out = String::new();
    match &o.out {
        Some(path) => {
            std::fs::write(path, &csv)?;
            let _ = writeln!(out, "wrote {}", path.display());
            for c in &report.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{tag} {}: {}", c.name, c.detail);
            }
        }
        None => out.push_str(&csv),
    }
    let failure = report.first_failure().map(|c| format!("{}: {}", c.name, c.detail));
    Ok(Report { stdout: out, failure })
}

pub fn sweep_urn(p: &Problem, o: &Overrides) -> Result<Report, CliError> {
    let u = p.multiset("params.left", p.params.left.as_ref())?;
    let mut cfg = UrnSweepConfig::default();
    if let Some(s) = &p.params.schedule {
        cfg.schedule = s.clone();
    }
    if let Some(d) = o.threshold_div.or(p.params.threshold_div) {
        cfg.threshold_div = d;
    }
    let k = p.params.k.unwrap_or(DEFAULT_K);
    let mm = MsetMetric::new(p.metric.clone());
    let report = large_urn_sweep(u, k, &p.space, &mm, &cfg)?;
    emit(&report, o)
}

pub fn sweep_draw(p: &Problem, o: &Overrides) -> Result<Report, CliError> {
    let w = p.dist("params.left", p.params.left.as_ref())?;
    let schedule = match &p.params.schedule {
        Some(s) => s.clone(),
        None => default_draw_schedule(w.len(), DRAW_CAP, MAX_DRAWS),
    };
    let mut cfg = DrawSweepConfig::new(schedule);
    if p.params.rho.is_some() {
        cfg.rho = Some(p.dist("params.rho", p.params.rho.as_ref())?.clone());
    }
    let report = large_draw_sweep(w, &p.metric, &cfg)?;
    emit(&report, o)
}

pub fn polya_dirichlet(p: &Problem, o: &Overrides) -> Result<Report, CliError> {
    let seed = o.seed.or(p.params.seed).unwrap_or(0);
    let k = p.params.k.unwrap_or(DEFAULT_POLYA_K);
    if let Some(grid_max) = p.params.grid_max {
        let cfg = GridConfig {
            grid_max,
            samples: o.samples.or(p.params.samples).unwrap_or(DEFAULT_GRID_SAMPLES),
            seed,
            k,
        };
        return emit(&dirichlet_grid(&cfg)?, o);
    }
    let u = p.multiset("params.left", p.params.left.as_ref())?;
    let distance = match p.params.distance.unwrap_or(DistanceName::Tvd) {
        DistanceName::Tvd => Distance::Tvd,
        DistanceName::Kantorovich => Distance::Kantorovich(&p.metric),
    };
    let cfg = McConfig {
        samples: o.samples.or(p.params.samples).unwrap_or(DEFAULT_MC_SAMPLES),
        seed,
        distance,
    };
    let rep = polya_dirichlet_check(u, &cfg, k, MC_SLACK)?;
    let (lo, hi) = rep.estimate.ci99();
    let mut table = SweepTable::new(
        [
            "polya_k",
            "distance",
            "samples",
            "seed",
            "mc_estimate",
            "std_error",
            "ci99_low",
            "ci99_high",
            "polya_validity",
        ]
        .map(String::from)
        .to_vec(),
    );
    table.rows.push(SweepRow {
        parameter: k,
        cells: vec![
            Value::Text(distance.kind().name().into()),
            Value::Int(cfg.samples),
            Value::Int(seed),
            Value::Float(rep.estimate.mean),
            Value::Float(rep.estimate.std_error),
            Value::Float(lo),
            Value::Float(hi),
            Value::Exact(rep.validity.clone()),
        ],
    });
    emit(&SweepReport { table, checks: vec![rep.check] }, o)
}
