use std::fmt;

use gibbs_chains::{exact_matrix, format_real, ChainKind, ChainSpec, State, StochasticMatrix};
use gibbs_models::{ConjugatePair, LocationPair, Model};
use gibbs_spectral::{chi_square_real, decompose, tv_bounds, SpectralDecomp};
use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::{brute_distances, brute_eigenpairs, eigen_residual};
use crate::rational::{rational_check, RationalReport};
use crate::OracleError;

/// Catalog vs numeric eigenvalues.
pub const EIGENVALUE_TOL: f64 = 1e-10;
/// Right eigenvectors, relative to their sup norm.
pub const EIGENVECTOR_TOL: f64 = 1e-7;
/// Series vs matrix-power chi-square, absolute up to χ² = 1 and relative beyond.
pub const DISTANCE_TOL: f64 = 1e-9;
/// Slack on the orderings TV_lower ≤ TV ≤ TV_upper and the half-step sandwich.
pub const ORDER_TOL: f64 = 1e-12;
/// Eigenvalues compared on truncated chains.
const TRUNCATED_TOP: usize = 6;
/// Truncated chains are started only where the stationary mass is at least this.
const TRUNCATED_START_MASS: f64 = 1e-4;
const MAX_STEPS: u64 = 10;

/// Test hook: shift one catalog eigenvalue of one suite case before comparing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fault {
    pub case: usize,
    pub degree: u64,
    pub shift: f64,
}

impl Default for Fault {
    fn default() -> Self {
        Fault { case: 0, degree: 1, shift: 1e-3 }
    }
}

#[derive(Debug, Clone)]
pub struct OracleCase {
    pub model: Model,
    pub kind: ChainKind,
}

impl OracleCase {
    pub fn new(model: impl Into<Model>, kind: ChainKind) -> Self {
        OracleCase { model: model.into(), kind }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenDelta {
    pub j: u64,
    pub catalog: f64,
    pub numeric: f64,
    pub delta: f64,
    /// Truncated chains: residual of the catalog pair on the cut matrix, which
    /// bounds how far truncation can move the eigenvalue. Zero otherwise.
    pub allowance: f64,
}

/// Worst gaps over all starts at one ℓ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceDelta {
    pub ell: u64,
    pub worst_start: String,
    /// |series χ² - matrix-power χ²| at the start with the least slack.
    pub chi_square_delta: f64,
    pub tolerance: f64,
    /// max(0, TV_lower - TV, TV - TV_upper).
    pub tv_order_violation: f64,
    /// Joint chains: max(0, χ²_marg(ℓ) - χ², χ² - χ²_marg(ℓ-1)).
    pub sandwich_violation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub name: &'static str,
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Verdict {
    fn new(name: &'static str, worst: f64, tolerance: f64) -> Self {
        Verdict { name, worst, tolerance, passed: worst <= tolerance }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    /// The model as JSON.
    pub model: String,
    pub chain: &'static str,
    pub dimension: usize,
    pub truncation_bound: f64,
    pub eigenvalues: Vec<EigenDelta>,
    /// (j, relative sup-norm gap) for simple nonzero eigenvalues.
    pub eigenvectors: Vec<(u64, f64)>,
    pub distances: Vec<DistanceDelta>,
    pub verdicts: Vec<Verdict>,
    pub passed: bool,
}

impl ComparisonReport {
    pub fn worst_eigenvalue_delta(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, e| m.max(e.delta))
    }

    pub fn worst_distance_delta(&self) -> f64 {
        self.distances.iter().fold(0.0, |m, d| m.max(d.chi_square_delta))
    }
}

fn pair(a: f64, b: f64) -> String {
    format!("{}/{}", format_real(a), format_real(b))
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} {} dim={} truncation={} {}",
            self.model,
            self.chain,
            self.dimension,
            format_real(self.truncation_bound),
            if self.passed { "PASS" } else { "FAIL" }
        )?;
        for v in &self.verdicts {
            writeln!(
                f,
                "  {:<20} worst/tol={:<48} {}",
                v.name,
                pair(v.worst, v.tolerance),
                if v.passed { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

fn start_label(s: &State) -> String {
    s.render()
}

fn eigen_part(
    decomp: &SpectralDecomp,
    matrix: &StochasticMatrix,
    fault: Option<Fault>,
    truncated: bool,
) -> Result<(Vec<EigenDelta>, Vec<(u64, f64)>), OracleError> {
    let pairs = brute_eigenpairs(matrix)?;
    let mut catalog: Vec<(u64, f64)> = (0..pairs.len() as u64).map(|j| (j, decomp.eigenvalue(j))).collect();
    if let Some(f) = fault {
        if let Some(c) = catalog.iter_mut().find(|c| c.0 == f.degree) {
            c.1 += f.shift;
        }
    }
    // the numeric list is sorted, so sort the catalog the same way
    let mut sorted = catalog.clone();
    sorted.sort_by(|a, b| b.1.total_cmp(&a.1));
    let take = if truncated { TRUNCATED_TOP.min(pairs.len()) } else { pairs.len() };
    let mut values = Vec::new();
    for (&(j, c), (n, _)) in sorted.iter().zip(&pairs).take(take) {
        let allowance = if truncated {
            let p: Vec<f64> = matrix
                .states()
                .iter()
                .map(|s| decomp.eigenfunction(j, s.observed()))
                .collect::<Result<_, _>>()?;
            eigen_residual(matrix, c, &p)?
        } else {
            0.0
        };
        values.push(EigenDelta { j, catalog: c, numeric: *n, delta: (c - n).abs(), allowance });
    }

    let mut vectors = Vec::new();
    if !truncated {
        let numeric: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        for (k, (value, v)) in pairs.iter().enumerate() {
            let gap = numeric
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .fold(f64::INFINITY, |m, (_, w)| m.min((w - value).abs()));
            if *value < 1e-8 || gap < 1e-6 {
                continue;
            }
            let j = sorted[k].0;
            let p: Vec<f64> = matrix
                .states()
                .iter()
                .map(|s| decomp.eigenfunction(j, s.observed()))
                .collect::<Result<_, _>>()?;
            // both scaled to 1 where the catalog function peaks
            let at = (0..p.len()).max_by(|&a, &b| p[a].abs().total_cmp(&p[b].abs())).unwrap_or(0);
            let gap = p.iter().zip(v).fold(0.0f64, |m, (a, b)| m.max((a / p[at] - b / v[at]).abs()));
            vectors.push((j, gap));
        }
    }
    Ok((values, vectors))
}

fn distance_part(decomp: &SpectralDecomp, matrix: &StochasticMatrix, truncated: bool) -> Result<Vec<DistanceDelta>, OracleError> {
    let joint = decomp.is_joint();
    let starts: Vec<usize> = (0..matrix.dim())
        .filter(|&i| !truncated || matrix.stationary()[i] >= TRUNCATED_START_MASS)
        .collect();
    let mut out = Vec::new();
    for ell in 1..=MAX_STEPS {
        let mut worst = DistanceDelta {
            ell,
            worst_start: String::new(),
            chi_square_delta: 0.0,
            tolerance: DISTANCE_TOL,
            tv_order_violation: 0.0,
            sandwich_violation: 0.0,
        };
        let mut worst_excess = f64::NEG_INFINITY;
        for &i in &starts {
            let start = matrix.states()[i];
            let exact = brute_distances(matrix, i, ell as usize);
            let report = tv_bounds(decomp, start, ell)?;
            let delta = (report.chi_square - exact.chi_square).abs();
            // χ² from an unlikely start is of order 1/m(start), so the float
            // comparison is relative past 1; the truncated matrix is also off by
            // its tail mass in every row, which such a start amplifies
            let tol = DISTANCE_TOL * exact.chi_square.max(1.0)
                + report.chi_square_truncation_bound
                + if truncated { matrix.truncation_bound() * (1.0 + exact.chi_square) * ell as f64 / matrix.stationary()[i] } else { 0.0 };
            if delta - tol > worst_excess {
                worst_excess = delta - tol;
                worst.worst_start = start_label(&start);
                worst.chi_square_delta = delta;
                worst.tolerance = tol;
            }
            let tv_gap = (report.tv_lower - exact.tv).max(exact.tv - report.tv_upper).max(0.0);
            worst.tv_order_violation = worst.tv_order_violation.max(tv_gap);
            if joint {
                let lower = chi_square_real(decomp, start, ell as f64)?.value;
                let mut gap = (lower - exact.chi_square).max(0.0);
                if ell > 1 {
                    let upper = chi_square_real(decomp, start, ell as f64 - 1.0)?;
                    gap = gap.max(exact.chi_square - upper.value - upper.truncation_bound);
                }
                // relative, since χ² from an unlikely pair is large
                worst.sandwich_violation = worst.sandwich_violation.max(gap / (1.0 + exact.chi_square));
            }
        }
        out.push(worst);
    }
    Ok(out)
}

/// Compares one chain's catalog spectrum and distances against the brute-force paths.
///
/// Reversible chains get eigenvalue and eigenvector comparisons; the joint
/// chains K and K̃ are not reversible and only get the distance part, with
/// the half-step sandwich between marginal distances at ℓ and ℓ-1.
pub fn compare(case: &OracleCase, fault: Option<Fault>) -> Result<ComparisonReport, OracleError> {
    let spec = ChainSpec::new(case.model.clone(), case.kind)?;
    let decomp = decompose(&spec)?;
    let matrix = exact_matrix(&spec)?;
    let truncated = matrix.truncation_bound() > 0.0;
    let joint = case.kind.is_joint();
    if case.kind == ChainKind::RandomScan {
        return Err(OracleError::Unsupported("random scan has no eigen-series distance to compare".into()));
    }

    let (eigenvalues, eigenvectors) =
        if joint { (Vec::new(), Vec::new()) } else { eigen_part(&decomp, &matrix, fault, truncated)? };
    let distances = distance_part(&decomp, &matrix, truncated)?;

    let mut verdicts = Vec::new();
    if !joint {
        let excess = eigenvalues.iter().fold(0.0f64, |m, e| m.max(e.delta - e.allowance));
        verdicts.push(Verdict::new("eigenvalues", excess, EIGENVALUE_TOL));
        if !truncated {
            verdicts.push(Verdict::new("eigenvectors", eigenvectors.iter().fold(0.0, |m, e| m.max(e.1)), EIGENVECTOR_TOL));
        }
    }
    // one verdict against the tightest per-ℓ tolerance would be wrong, so the
    // worst excess over each ℓ's own tolerance is reported
    let excess = distances.iter().fold(0.0f64, |m, d| m.max(d.chi_square_delta - d.tolerance + DISTANCE_TOL));
    verdicts.push(Verdict::new("chi-square", excess, DISTANCE_TOL));
    verdicts.push(Verdict::new("tv-ordering", distances.iter().fold(0.0, |m, d| m.max(d.tv_order_violation)), ORDER_TOL));
    if joint {
        verdicts.push(Verdict::new("sandwich", distances.iter().fold(0.0, |m, d| m.max(d.sandwich_violation)), ORDER_TOL));
    }
    let passed = verdicts.iter().all(|v| v.passed);
    Ok(ComparisonReport {
        model: case.model.to_json(),
        chain: case.kind.name(),
        dimension: matrix.dim(),
        truncation_bound: matrix.truncation_bound(),
        eigenvalues,
        eigenvectors,
        distances,
        verdicts,
        passed,
    })
}

/// The chains `verify` runs by default.
pub fn default_suite() -> Vec<OracleCase> {
    let mut out = Vec::new();
    for n in [1u64, 2, 5, 12] {
        for (a, b) in [(1.0, 1.0), (2.0, 3.0), (0.5, 0.5)] {
            out.push(OracleCase::new(ConjugatePair::beta_binomial(n, a, b).unwrap(), ChainKind::XChain));
        }
    }
    out.push(OracleCase::new(ConjugatePair::beta_binomial(30, 0.5, 0.5).unwrap(), ChainKind::XChain));
    out.push(OracleCase::new(ConjugatePair::beta_binomial(63, 2.0, 3.0).unwrap(), ChainKind::XChain));
    for (n1, n2, p) in [(5u64, 7u64, 0.3), (4, 4, 0.5), (10, 2, 0.8)] {
        let m = LocationPair::binomial(n1, n2, p).unwrap();
        out.push(OracleCase::new(m.clone(), ChainKind::XChain));
        out.push(OracleCase::new(m, ChainKind::ThetaChain));
    }
    let m = LocationPair::binomial(3, 4, 0.4).unwrap();
    out.push(OracleCase::new(m.clone(), ChainKind::BivariateKTilde));
    out.push(OracleCase::new(m, ChainKind::BivariateK));
    out.push(OracleCase::new(ConjugatePair::poisson_gamma(2.0, 1.0).unwrap(), ChainKind::XChain));
    out.push(OracleCase::new(LocationPair::poisson(2.0, 3.0, 1.0).unwrap(), ChainKind::XChain));
    out.push(OracleCase::new(LocationPair::neg_binomial(2.0, 1.5, 0.4).unwrap(), ChainKind::XChain));
    out
}

/// Models checked in exact arithmetic by `verify`.
pub fn rational_suite() -> Vec<Model> {
    vec![
        ConjugatePair::beta_binomial(4, 1.0, 1.0).unwrap().into(),
        ConjugatePair::beta_binomial(12, 2.0, 3.0).unwrap().into(),
        ConjugatePair::beta_binomial(7, 0.5, 1.5).unwrap().into(),
        LocationPair::binomial(5, 7, 0.3).unwrap().into(),
        LocationPair::binomial(4, 4, 0.5).unwrap().into(),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub comparisons: Vec<ComparisonReport>,
    pub rational: Vec<RationalReport>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.comparisons {
            write!(f, "{c}")?;
        }
        for r in &self.rational {
            let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            writeln!(
                f,
                "{} exact checks={} failed={} float matrix/poly={} {}",
                r.chain,
                r.checks.len(),
                failed.len(),
                pair(r.float_matrix_delta, r.float_polynomial_delta),
                if r.passed { "PASS" } else { "FAIL" }
            )?;
            for name in failed {
                writeln!(f, "  failed: {name}")?;
            }
        }
        writeln!(f, "{}", if self.passed { "all verdicts pass" } else { "verification FAILED" })
    }
}

/// Runs the comparison and exact suites on `workers` threads. Results keep
/// the input order whatever the worker count.
pub fn run_suite(
    cases: &[OracleCase],
    rational: &[Model],
    workers: usize,
    fault: Option<Fault>,
) -> Result<SuiteReport, OracleError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| OracleError::InvalidInput(format!("worker pool: {e}")))?;
    pool.install(|| {
        let comparisons = cases
            .par_iter()
            .enumerate()
            .map(|(i, c)| compare(c, fault.filter(|f| f.case == i)))
            .collect::<Result<Vec<_>, _>>()?;
        let rational = rational
            .par_iter()
            .map(|m| rational_check(m, 6))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect::<Vec<_>>();
        let passed = comparisons.iter().all(|c| c.passed) && rational.iter().all(|r| r.passed);
        Ok(SuiteReport { comparisons, rational, passed })
    })
}
