use std::path::Path;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::args::{
    CheckArgs, Command, ExperimentArgs, ExperimentKind, NamedTuple, NormArgs, RegionArgs, RihaczekArgs, ScanArgs,
    Space,
};
use super::{usage_error, Cli, CliError};
use crate::error::Error;
use crate::experiments::{
    bump_scaling_series, khinchin_empirical, khinchin_exhaustive, star_growth_series, ScalingReport,
};
use crate::io::{read_json, read_signal, to_json_string, write_json, write_text};
use crate::lattice::{ExponentTuple, ExtendedExponent, Grid, LatticeSignal, Rational, SeparableWeight, Verdict};
use crate::norms::{fourier_modulation_norm, modulation_norm, wiener_amalgam_norm, PartitionOfUnity};
use crate::regions::{RegionKind, RegionQuery};
use crate::rihaczek::{closed_form_residual, rihaczek};

type CliResult<T> = std::result::Result<T, CliError>;

/// Runs a parsed command and returns what it prints on stdout.
pub fn execute(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Check(a) => cmd_check(&a),
        Command::Scan(a) => cmd_scan(&a),
        Command::Norm(a) => cmd_norm(&a),
        Command::Rihaczek(a) => cmd_rihaczek(&a),
        Command::Experiment(a) => cmd_experiment(&a),
    }
}

fn compact<T: serde::Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string(v).map_err(|source| Error::Json {
        context: "serializing output".into(),
        source,
    })?;
    s.push('\n');
    Ok(s)
}

fn query(a: &RegionArgs) -> RegionQuery {
    RegionQuery {
        m: a.m,
        p: a.p,
        q: a.q,
        pj: a.pj.clone(),
        qj: a.qj.clone(),
        p1: a.p1,
        q1: a.q1,
        p2: a.p2,
        q2: a.q2,
        s: a.s,
        d: a.d,
    }
}

fn require_inputs(sub: &str, kind: RegionKind, q: &RegionQuery) -> CliResult<()> {
    let missing = q.missing(kind);
    if missing.is_empty() {
        return Ok(());
    }
    let flags: Vec<String> = missing.iter().map(|m| format!("--{m}")).collect();
    Err(usage_error(
        sub,
        format!("--kind {kind} needs {} (inputs: {})", flags.join(", "), kind.arity()),
    ))
}

fn evaluate(sub: &str, kind: RegionKind, q: &RegionQuery) -> CliResult<Verdict> {
    q.evaluate(kind).map_err(|e| match e {
        Error::InvalidArgument(_) | Error::DimensionMismatch { .. } => usage_error(sub, e),
        other => CliError::Run(other),
    })
}

fn cmd_check(a: &CheckArgs) -> CliResult<String> {
    let q = query(&a.region);
    require_inputs("check", a.region.kind, &q)?;
    compact(&evaluate("check", a.region.kind, &q)?)
}

/// One swept coordinate: a name and its exact values.
#[derive(Debug, Clone)]
struct Sweep {
    name: String,
    values: Vec<Rational>,
}

const MAX_SWEEP_POINTS: usize = 1_000_000;

fn parse_sweep(spec: &str) -> CliResult<Sweep> {
    let bad = |msg: String| usage_error("scan", format!("--sweep {spec:?}: {msg}"));
    let (name, range) = spec
        .split_once('=')
        .ok_or_else(|| bad("expected NAME=START:STOP:STEP".into()))?;
    let name = name.trim().to_string();
    let valid = matches!(name.as_str(), "p" | "q" | "p1" | "q1" | "p2" | "q2" | "s")
        || ["pj", "qj"]
            .iter()
            .any(|pre| name.strip_prefix(pre).is_some_and(|i| !i.is_empty() && i.parse::<usize>().is_ok()));
    if !valid {
        return Err(bad(format!("unknown sweep name {name:?}")));
    }
    let parts: Vec<&str> = range.split(':').collect();
    let num = |s: &str| crate::lattice::parse_rational(s).ok_or_else(|| bad(format!("cannot parse {s:?}")));
    let values = match parts.as_slice() {
        [v] => vec![num(v)?],
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if stop < start {
                return Err(bad("reversed range: STOP is below START".into()));
            }
            if step <= Rational::zero() {
                return Err(bad("STEP must be positive".into()));
            }
            let count = ((stop - start) / step).floor().to_integer() + 1;
            if count as usize > MAX_SWEEP_POINTS {
                return Err(bad(format!("{count} points exceeds the limit {MAX_SWEEP_POINTS}")));
            }
            (0..count).map(|k| start + step * Rational::from_integer(k)).collect()
        }
        _ => return Err(bad("expected NAME=START:STOP:STEP or NAME=VALUE".into())),
    };
    Ok(Sweep { name, values })
}

fn set_swept(q: &mut RegionQuery, name: &str, v: Rational) -> std::result::Result<(), String> {
    if name == "s" {
        q.s = Some(v);
        return Ok(());
    }
    let e = ExtendedExponent::from_reciprocal(v).map_err(|e| e.to_string())?;
    let slot = |list: &mut Option<Vec<ExtendedExponent>>, idx: &str, label: &str| {
        let i: usize = idx.parse().map_err(|_| format!("bad index in {name}"))?;
        let list = list.as_mut().ok_or_else(|| format!("sweeping {name} needs --{label}"))?;
        let len = list.len();
        let cell = list
            .get_mut(i)
            .ok_or_else(|| format!("{name} is out of range for {len} entries"))?;
        *cell = e;
        Ok::<(), String>(())
    };
    match name {
        "p" => q.p = Some(e),
        "q" => q.q = Some(e),
        "p1" => q.p1 = Some(e),
        "q1" => q.q1 = Some(e),
        "p2" => q.p2 = Some(e),
        "q2" => q.q2 = Some(e),
        _ => {
            if let Some(i) = name.strip_prefix("pj") {
                slot(&mut q.pj, i, "pj")?;
            } else if let Some(i) = name.strip_prefix("qj") {
                slot(&mut q.qj, i, "qj")?;
            }
        }
    }
    Ok(())
}

fn column_name(name: &str) -> String {
    if name == "s" {
        "s".into()
    } else {
        format!("1/{name}")
    }
}

fn cmd_scan(a: &ScanArgs) -> CliResult<String> {
    let kind = a.region.kind;
    let mut sweeps = vec![parse_sweep(&a.sweep)?];
    if let Some(s2) = &a.sweep2 {
        sweeps.push(parse_sweep(s2)?);
        if sweeps[0].name == sweeps[1].name {
            return Err(usage_error("scan", "the two sweeps must name different inputs"));
        }
    }
    let base = query(&a.region);
    let mut points: Vec<Vec<Rational>> = sweeps[0].values.iter().map(|v| vec![*v]).collect();
    if let Some(inner) = sweeps.get(1) {
        points = points
            .into_iter()
            .flat_map(|p| inner.values.iter().map(move |v| [p.clone(), vec![*v]].concat()))
            .collect();
    }
    // Fill every swept slot so the arity check sees it.
    let mut probe = base.clone();
    for (s, v) in sweeps.iter().zip(&points[0]) {
        set_swept(&mut probe, &s.name, *v).map_err(|m| usage_error("scan", m))?;
    }
    require_inputs("scan", kind, &probe)?;
    let rows: Vec<(Vec<Rational>, Verdict)> = points
        .into_par_iter()
        .map(|vals| {
            let mut q = base.clone();
            for (s, v) in sweeps.iter().zip(&vals) {
                set_swept(&mut q, &s.name, *v).map_err(|m| CliError::Run(Error::InvalidArgument(m)))?;
            }
            let verdict = q.evaluate(kind).map_err(CliError::Run)?;
            Ok((vals, verdict))
        })
        .collect::<CliResult<_>>()?;
    let mut csv = sweeps.iter().map(|s| column_name(&s.name)).collect::<Vec<_>>().join(",");
    csv.push_str(",bounded,failed,boundary\n");
    for (vals, v) in &rows {
        for x in vals {
            csv.push_str(&format!("{},", x.to_f64().unwrap_or(f64::NAN)));
        }
        csv.push_str(&format!("{},{},{}\n", v.bounded, v.failed_conditions.join(";"), v.boundary));
    }
    match &a.output {
        Some(path) => {
            write_text(path, &csv)?;
            let bounded = rows.iter().filter(|(_, v)| v.bounded).count();
            compact(&json!({"rows": rows.len(), "bounded": bounded, "output": path}))
        }
        None => Ok(csv),
    }
}

fn load_signal(path: &Path) -> CliResult<LatticeSignal> {
    Ok(read_signal(path)?)
}

fn cmd_norm(a: &NormArgs) -> CliResult<String> {
    let f = load_signal(&a.signal)?;
    let grid = f.grid();
    let weight: Option<SeparableWeight> = a.weight.as_deref().map(read_json).transpose()?;
    let value = match a.space {
        Space::Lebesgue => f.lp_norm(a.p.p_f64()),
        Space::Modulation | Space::FourierModulation => {
            let window = match &a.window {
                Some(p) => load_signal(p)?,
                None => LatticeSignal::gaussian(grid, a.window_width),
            };
            let w = weight.unwrap_or_else(|| SeparableWeight::trivial(2 * grid.d));
            if a.space == Space::Modulation {
                modulation_norm(&f, &window, a.p, a.q, &w)?
            } else {
                fourier_modulation_norm(&f, &window, a.p, a.q, &w)?
            }
        }
        Space::Wiener => {
            let part = PartitionOfUnity::new(grid, a.step.unwrap_or(grid.n))?;
            let mu = weight.unwrap_or_else(|| SeparableWeight::trivial(grid.d));
            wiener_amalgam_norm(&f, &part, a.p, a.q, &mu)?
        }
    };
    let space = match a.space {
        Space::Modulation => "modulation",
        Space::FourierModulation => "fourier_modulation",
        Space::Wiener => "wiener",
        Space::Lebesgue => "lebesgue",
    };
    compact(&json!({"space": space, "p": a.p, "q": a.q, "value": value}))
}

fn rihaczek_grid(a: &RihaczekArgs) -> CliResult<Grid> {
    let grid = match a.alpha {
        Some(alpha) => Grid::new(a.d, a.n, alpha),
        None => Grid::balanced(a.d, a.n),
    };
    grid.map_err(|e| usage_error("rihaczek", e))
}

fn cmd_rihaczek(a: &RihaczekArgs) -> CliResult<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let from_files = a.g.is_some() || a.f.is_some();
    if from_files && (a.g.is_none() || a.f.is_none()) {
        return Err(usage_error("rihaczek", "--g and --f must be given together"));
    }
    let files = match (&a.g, &a.f) {
        (Some(g), Some(fs)) => {
            let g = load_signal(g)?;
            let fs = fs.iter().map(|p| load_signal(p)).collect::<CliResult<Vec<_>>>()?;
            Some((g, fs))
        }
        _ => None,
    };
    if !a.check_identity {
        let Some((g, fs)) = files else {
            return Err(usage_error("rihaczek", "give --g and --f, or --check-identity"));
        };
        let r = rihaczek(&g, &fs)?;
        return match &a.output {
            Some(path) => {
                write_json(path, &r)?;
                compact(&json!({"m": fs.len(), "output": path}))
            }
            None => Ok(to_json_string(&r)?),
        };
    }
    if a.m == 0 || a.trials == 0 {
        return Err(usage_error("rihaczek", "--m and --trials must be positive"));
    }
    let mut worst = 0.0f64;
    let (m, grid) = match &files {
        Some((g, fs)) => (fs.len(), g.grid()),
        None => (a.m, rihaczek_grid(a)?),
    };
    for _ in 0..a.trials {
        let (g, fs) = match &files {
            Some((g, fs)) => (g.clone(), fs.clone()),
            None => (
                LatticeSignal::random(grid, &mut rng),
                (0..m).map(|_| LatticeSignal::random(grid, &mut rng)).collect(),
            ),
        };
        let windows: Vec<LatticeSignal> = (0..=m).map(|_| LatticeSignal::random(grid, &mut rng)).collect();
        worst = worst.max(closed_form_residual(&g, &fs, &windows)?);
    }
    let report = json!({
        "m": m,
        "N": grid.n,
        "d": grid.d,
        "alpha": grid.alpha,
        "seed": a.seed,
        "trials": a.trials,
        "tolerance": a.tolerance,
        "max_residual": worst,
        "pass": worst < a.tolerance,
    });
    if let Some(path) = &a.output {
        write_json(path, &report)?;
    }
    compact(&report)
}

fn experiment_tuple(a: &ExperimentArgs) -> CliResult<ExponentTuple> {
    let two: ExtendedExponent = ExtendedExponent::int(2);
    let one = ExtendedExponent::int(1);
    if let Some(named) = a.tuple {
        return Ok(match named {
            NamedTuple::UnboundedDemo => ExponentTuple::new(1, one, one, vec![two; 2], vec![two; 2])?,
            NamedTuple::BoundedDemo => ExponentTuple::uniform(1, two),
        });
    }
    let (Some(p), Some(q), Some(pj)) = (a.p, a.q, a.pj.clone()) else {
        return Err(usage_error("experiment", "scaling needs --tuple or --p, --q and --pj"));
    };
    let m = a.m.unwrap_or(pj.len().saturating_sub(1));
    let qj = a.qj.clone().unwrap_or_else(|| pj.clone());
    ExponentTuple::new(m, p, q, pj, qj).map_err(|e| usage_error("experiment", e))
}

fn scaling_output(a: &ExperimentArgs, kind: &str, report: &ScalingReport, tolerance: f64) -> CliResult<String> {
    if let Some(path) = &a.csv {
        write_text(path, &report.to_csv())?;
    }
    let out = json!({
        "kind": kind,
        "slope": report.slope,
        "predicted": report.predicted,
        "tolerance": tolerance,
        "pass": report.within(tolerance),
        "report": report,
    });
    if let Some(path) = &a.output {
        write_json(path, &out)?;
    }
    compact(&out)
}

fn cmd_experiment(a: &ExperimentArgs) -> CliResult<String> {
    match a.kind {
        ExperimentKind::Scaling => {
            let tuple = experiment_tuple(a)?;
            let grid = Grid::balanced(a.d, a.n).map_err(|e| usage_error("experiment", e))?;
            let report = bump_scaling_series(grid, &tuple, a.target, &a.lambdas)?;
            let tol = a.tolerance.unwrap_or(if report.predicted == 0.0 { 0.1 } else { 0.2 });
            scaling_output(a, "scaling", &report, tol)
        }
        ExperimentKind::StarGrowth => {
            let two = ExtendedExponent::int(2);
            let q = a.q.unwrap_or(two);
            let qj = a.qj.clone().unwrap_or_else(|| vec![two; 2]);
            let report = star_growth_series(q, &qj, a.d, &a.sizes)?;
            scaling_output(a, "star-growth", &report, a.tolerance.unwrap_or(0.1))
        }
        ExperimentKind::Khinchin => {
            let p = a.p.unwrap_or(ExtendedExponent::int(2));
            if a.prefix == 0 || a.prefix > a.count {
                return Err(usage_error("experiment", "--prefix must lie in 1..=--count"));
            }
            let coeffs = vec![Complex64::new(1.0, 0.0); a.count];
            let emp = khinchin_empirical(&coeffs, p, a.trials, a.seed)?;
            let exact = khinchin_exhaustive(&coeffs[..a.prefix], p)?;
            let tol = a.tolerance.unwrap_or(0.15);
            let deviation = (emp.ratio - exact).abs() / exact;
            let band = match &a.band {
                Some(b) => Some((b[0], b[1])),
                None if p == ExtendedExponent::int(2) => Some((0.8, 1.25)),
                None => None,
            };
            let in_band = band.is_none_or(|(lo, hi)| (lo..=hi).contains(&emp.ratio));
            let out = json!({
                "kind": "khinchin",
                "p": p,
                "count": a.count,
                "trials": a.trials,
                "seed": a.seed,
                "mean_p_norm": emp.mean_p_norm,
                "l2_reference": emp.l2_reference,
                "ratio": emp.ratio,
                "prefix": a.prefix,
                "exhaustive_ratio": exact,
                "relative_deviation": deviation,
                "band": band.map(|(lo, hi)| [lo, hi]),
                "tolerance": tol,
                "pass": in_band && deviation <= tol,
            });
            if let Some(path) = &a.output {
                write_json(path, &out)?;
            }
            compact(&out)
        }
    }
}
