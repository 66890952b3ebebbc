use std::fs::File;
use std::io::{BufWriter, Write};

use gibbs_chains::{exact_matrix, format_real, simulate_with, write_traces_csv, ChainKind, ChainSpec, SimOptions};
use gibbs_oracle::{default_suite, rational_check, rational_suite, run_suite, Fault, OracleCase, OracleError};
use gibbs_spectral::{
    cutoff_threshold, decompose, random_scan_spectrum, tv_bounds_range, write_reports_csv, write_reports_json,
};
use serde_json::json;

use crate::error::CliError;
use crate::{parse_range, parse_state, Format, Global};

fn emit(g: &Global, bytes: &[u8]) -> Result<(), CliError> {
    match &g.out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::Config(format!("writing {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn pool(g: &Global) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(g.workers())
        .build()
        .map_err(|e| CliError::Config(format!("worker pool: {e}")))
}

fn json_bytes(v: &serde_json::Value) -> Result<Vec<u8>, CliError> {
    let mut b = serde_json::to_vec_pretty(v)?;
    b.push(b'\n');
    Ok(b)
}

pub fn bounds(g: &Global, start: &str, steps: &str) -> Result<(), CliError> {
    let kind = g.chain()?;
    let spec = ChainSpec::new(g.model()?, kind)?;
    let start = parse_state(start, kind)?;
    let range = parse_range(steps)?;
    if range.contains(&0) {
        return Err(CliError::Config("bounds are reported for ell >= 1".into()));
    }
    let decomp = decompose(&spec)?;
    spec.check_state(start)?;
    let reports = pool(g)?.install(|| tv_bounds_range(&decomp, start, range))?;
    let mut buf = Vec::new();
    match g.format {
        Format::Csv => write_reports_csv(&reports, &mut buf)?,
        Format::Json => {
            write_reports_json(&reports, &mut buf)?;
            buf.push(b'\n');
        }
    }
    emit(g, &buf)
}

pub fn simulate(g: &Global, start: &str, steps: usize, reps: usize, bins: usize, traces: bool) -> Result<(), CliError> {
    let kind = g.chain()?;
    let spec = ChainSpec::new(g.model()?, kind)?;
    let start = parse_state(start, kind)?;
    if reps == 0 {
        return Err(CliError::Config("--reps must be at least 1".into()));
    }
    let trace_path = match (&g.out, traces) {
        (Some(p), true) => Some(format!("{}.traces.csv", p.display())),
        (None, true) => return Err(CliError::Config("--traces needs --out".into())),
        _ => None,
    };
    let opts = SimOptions { workers: g.workers(), keep_traces: traces, bins: bins.max(1) };
    let sim = simulate_with(&spec, start, steps, reps, g.seed, &opts)?;
    let tv = sim.empirical_tv(&spec);
    let mut buf = Vec::new();
    match g.format {
        Format::Csv => sim.histogram.write_csv(&mut buf)?,
        Format::Json => {
            let v = json!({
                "model": spec.model().to_json(),
                "chain": kind.name(),
                "seed": g.seed,
                "start": start,
                "steps": steps,
                "reps": reps,
                "empirical_tv": tv,
                "histogram": sim.histogram,
            });
            buf = json_bytes(&v)?;
        }
    }
    emit(g, &buf)?;
    if let Some(path) = trace_path {
        let f = File::create(&path).map_err(|e| CliError::Config(format!("writing {path}: {e}")))?;
        write_traces_csv(&sim.traces, BufWriter::new(f))?;
    }
    match tv {
        Some(tv) => eprintln!("{} reps, {} steps: empirical TV to stationary {}", reps, steps, format_real(tv)),
        None => eprintln!("{} reps, {} steps: continuous state space, no empirical TV", reps, steps),
    }
    Ok(())
}

/// The finite (or truncatable) chains of one model, in a fixed order.
fn model_cases(g: &Global) -> Result<(Vec<OracleCase>, Vec<gibbs_models::Model>), CliError> {
    let model = g.model()?;
    let kinds: Vec<ChainKind> = if g.chain.is_none() {
        vec![ChainKind::XChain, ChainKind::ThetaChain, ChainKind::BivariateKTilde, ChainKind::BivariateK]
    } else {
        vec![g.chain()?]
    };
    let mut cases = Vec::new();
    let mut reasons = Vec::new();
    for kind in kinds {
        match ChainSpec::new(model.clone(), kind).and_then(|s| exact_matrix(&s)) {
            Ok(_) => cases.push(OracleCase::new(model.clone(), kind)),
            Err(e) => reasons.push(format!("{}: {e}", kind.name())),
        }
    }
    if cases.is_empty() {
        return Err(CliError::Unsupported(format!("no finite chain to verify ({})", reasons.join("; "))));
    }
    let rational = match rational_check(&model, 0) {
        Ok(_) => vec![model],
        Err(OracleError::Unsupported(_) | OracleError::NotRational(_)) => Vec::new(),
        Err(e) => return Err(e.into()),
    };
    Ok((cases, rational))
}

pub fn verify(g: &Global, inject_fault: bool) -> Result<(), CliError> {
    let (cases, rational) = if g.model.is_some() { model_cases(g)? } else { (default_suite(), rational_suite()) };
    let fault = inject_fault.then(Fault::default);
    let report = run_suite(&cases, &rational, g.workers(), fault)?;
    let bytes = match g.format {
        Format::Json => {
            let mut b = report.to_json().into_bytes();
            b.push(b'\n');
            b
        }
        Format::Csv => report.to_string().into_bytes(),
    };
    emit(g, &bytes)?;
    if report.passed {
        return Ok(());
    }
    let mut worst = Vec::new();
    for c in report.comparisons.iter().filter(|c| !c.passed) {
        for v in c.verdicts.iter().filter(|v| !v.passed) {
            worst.push(format!(
                "{} {} {}: {} > {}",
                c.model,
                c.chain,
                v.name,
                format_real(v.worst),
                format_real(v.tolerance)
            ));
        }
    }
    for r in report.rational.iter().filter(|r| !r.passed) {
        worst.push(format!("{}: exact checks failed", r.chain));
    }
    Err(CliError::Verification(format!("verification failed\n{}", worst.join("\n"))))
}

pub fn catalog(g: &Global, degrees: &str, random_scan: bool) -> Result<(), CliError> {
    let model = g.model()?;
    let range = parse_range(degrees)?;
    if random_scan {
        let spectrum = random_scan_spectrum(&model, *range.end())?;
        let branches: Vec<_> = spectrum.branches.iter().filter(|b| range.contains(&b.k)).collect();
        let bytes = match g.format {
            Format::Json => json_bytes(&json!({
                "model": spectrum.model,
                "support_size": spectrum.support_size,
                "branches": branches,
                "half_eigenvalue_note": spectrum.half_eigenvalue_note,
            }))?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["k", "eta", "mu", "plus", "minus", "ratio"])?;
                for b in branches {
                    w.write_record([
                        b.k.to_string(),
                        format_real(b.eta),
                        format_real(b.mu),
                        format_real(b.plus),
                        format_real(b.minus),
                        format_real(b.ratio),
                    ])?;
                }
                w.into_inner().map_err(|e| CliError::Config(e.to_string()))?
            }
        };
        return emit(g, &bytes);
    }
    let spec = ChainSpec::new(model, g.chain()?)?;
    let decomp = decompose(&spec)?;
    let family = decomp.basis().name();
    let top = match decomp.basis().max_degree() {
        Some(m) => (*range.end()).min(m),
        None => *range.end(),
    };
    let mut rows = Vec::new();
    for j in *range.start()..=top {
        rows.push((j, decomp.eigenvalue(j), decomp.norm(j)?));
    }
    let bytes = match g.format {
        Format::Json => {
            let rows: Vec<_> = rows.iter().map(|(j, b, z)| json!({"j": j, "beta": b, "z": z, "family": family})).collect();
            json_bytes(&json!(rows))?
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["j", "beta", "z", "family"])?;
            for (j, b, z) in &rows {
                w.write_record([j.to_string(), format_real(*b), format_real(*z), family.to_string()])?;
            }
            w.into_inner().map_err(|e| CliError::Config(e.to_string()))?
        }
    };
    emit(g, &bytes)
}

pub fn cutoff(g: &Global, start: &str, c: f64) -> Result<(), CliError> {
    let kind = g.chain()?;
    let spec = ChainSpec::new(g.model()?, kind)?;
    let start = parse_state(start, kind)?;
    let decomp = decompose(&spec)?;
    let thresholds = cutoff_threshold(&decomp, start, c)?;
    let checks = thresholds.check(&decomp, start)?;
    let bytes = match g.format {
        Format::Json => json_bytes(&json!({"thresholds": thresholds, "checks": checks}))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["label", "ell", "chi2", "bound", "holds"])?;
            for k in &checks {
                w.write_record([
                    k.label.to_string(),
                    format_real(k.ell),
                    format_real(k.chi_square),
                    format_real(k.bound),
                    k.holds.to_string(),
                ])?;
            }
            w.into_inner().map_err(|e| CliError::Config(e.to_string()))?
        }
    };
    emit(g, &bytes)?;
    let opt = |v: Option<f64>| v.map_or("none".to_string(), format_real);
    eprintln!(
        "{}: c = {}, upper threshold {}, lower threshold {}",
        thresholds.setting,
        format_real(c),
        opt(thresholds.ell_upper),
        opt(thresholds.ell_lower)
    );
    Ok(())
}
