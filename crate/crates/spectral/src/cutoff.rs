use gibbs_chains::{ChainKind, State};
use gibbs_models::{ConjugateFamily, LocationFamily, Model};
use serde::Serialize;

use crate::series::series_at;
use crate::{SpectralDecomp, SpectralError};

/// Which step counts a statement covers, relative to its threshold ℓ*.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepRange {
    AtLeast,
    AtMost,
    Exactly,
    /// Every ℓ ≥ 1; the threshold is unused.
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// χ² ≤ bound
    AtMost,
    /// χ² ≥ bound
    AtLeast,
}

/// "χ²(ℓ) <relation> factor · rate^ℓ for ℓ in <steps> of `ell`".
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutoffStatement {
    pub label: &'static str,
    pub steps: StepRange,
    pub ell: f64,
    pub relation: Relation,
    pub factor: f64,
    pub rate: f64,
}

/// Relative slack for rounding when a bound is attained with equality.
const ROUNDING: f64 = 1e-12;

impl CutoffStatement {
    pub fn bound_at(&self, ell: f64) -> f64 {
        self.factor * self.rate.powf(ell)
    }

    pub fn holds(&self, chi_square: f64, ell: f64) -> bool {
        let b = self.bound_at(ell);
        match self.relation {
            Relation::AtMost => chi_square <= b * (1.0 + ROUNDING),
            Relation::AtLeast => chi_square >= b * (1.0 - ROUNDING),
        }
    }

    /// Step counts ≥ 1 at which the statement is checked; the threshold
    /// itself is always included since χ² is monotone in ℓ.
    pub fn check_points(&self) -> Vec<f64> {
        let l = self.ell;
        let mut pts = match self.steps {
            StepRange::Exactly => vec![l],
            StepRange::AtLeast => vec![l.max(1.0), l.ceil() + 1.0, (2.0 * l).ceil() + 1.0],
            StepRange::AtMost => vec![l, l.floor(), 1.0].into_iter().filter(|&p| p <= l).collect(),
            StepRange::Any => vec![1.0, 2.0, 3.0, 5.0, 10.0, 25.0],
        };
        pts.retain(|&p| p >= 1.0 && p.is_finite());
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutoffThresholds {
    pub setting: &'static str,
    pub c: f64,
    /// Steps after which the upper bound applies.
    pub ell_upper: Option<f64>,
    /// Steps up to which the lower bound applies.
    pub ell_lower: Option<f64>,
    pub statements: Vec<CutoffStatement>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutoffCheck {
    pub label: &'static str,
    pub ell: f64,
    pub chi_square: f64,
    pub bound: f64,
    pub holds: bool,
}

impl CutoffThresholds {
    /// Evaluates every statement with the series engine.
    pub fn check(&self, decomp: &SpectralDecomp, start: State) -> Result<Vec<CutoffCheck>, SpectralError> {
        let v = decomp.start_coordinate(start)?;
        let mut out = Vec::new();
        for s in &self.statements {
            for ell in s.check_points() {
                let chi = series_at(decomp, v, ell)?.value;
                out.push(CutoffCheck { label: s.label, ell, chi_square: chi, bound: s.bound_at(ell), holds: s.holds(chi, ell) });
            }
        }
        Ok(out)
    }
}

/// χ²_0(ℓ) = (1 - (2τ²)^{4ℓ})^{-1/2} - 1 for the Gaussian chain with
/// ν = 0, σ² + τ² = 1/2, started at 0.
pub fn gaussian_chi_square_at_zero(tau2: f64, ell: f64) -> f64 {
    let u = (2.0 * tau2).powf(4.0 * ell);
    (-0.5 * (-u).ln_1p()).exp_m1()
}

fn mismatch(d: &SpectralDecomp, why: &str) -> SpectralError {
    SpectralError::SettingMismatch(format!("{} {}: {why}", d.model().name(), d.chain().kind().name()))
}

fn need_positive(c: f64) -> Result<(), SpectralError> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(SpectralError::InvalidInput(format!("c = {c} must be positive here")))
    }
}

fn statement(label: &'static str, steps: StepRange, ell: f64, relation: Relation, factor: f64, rate: f64) -> CutoffStatement {
    CutoffStatement { label, steps, ell, relation, factor, rate }
}

/// Explicit thresholds and bounds for the five cutoff settings:
///
/// - Beta/Binomial θ-chain from 0 with α ≥ β (or from 1 with β ≥ α), and
///   from 1/2 with α = β;
/// - Poisson/Gamma x-chain with a = α = 1 from n;
/// - Poisson/Gamma θ-chain with α = 1 from θ > 0;
/// - Gaussian x-chain with ν = 0, σ² + τ² = 1/2;
/// - location Binomial x-chain from 0.
///
/// The statements are recorded as published; [`CutoffThresholds::check`]
/// tells whether they hold.
pub fn cutoff_threshold(decomp: &SpectralDecomp, start: State, c: f64) -> Result<CutoffThresholds, SpectralError> {
    use Relation as R;
    use StepRange as S;
    let v = decomp.start_coordinate(start)?;
    let kind = decomp.chain().kind();
    let thresholds = |setting, ell_upper, ell_lower, statements| CutoffThresholds { setting, c, ell_upper, ell_lower, statements };
    match (decomp.model(), kind) {
        (Model::Conjugate(p), ChainKind::ThetaChain) if matches!(p.family(), ConjugateFamily::BetaBinomial { .. }) => {
            let ConjugateFamily::BetaBinomial { alpha, beta, .. } = *p.family() else { unreachable!() };
            if v == 0.5 && alpha == beta {
                let b2 = decomp.eigenvalue(2);
                let rate = b2 * b2;
                let l = 1.0 / (-2.0 * b2.ln());
                return Ok(thresholds(
                    "beta-binomial theta-chain from 1/2",
                    Some(l),
                    None,
                    vec![
                        statement("upper: 13 beta_2^(2l)", S::AtLeast, l, R::AtMost, 13.0, rate),
                        statement("lower: beta_2^(2l)/2", S::Any, 0.0, R::AtLeast, 0.5, rate),
                    ],
                ));
            }
            // from 1 the chain is the mirror image with α and β exchanged
            let (a, b) = match v {
                x if x == 0.0 && alpha >= beta => (alpha, beta),
                x if x == 1.0 && beta >= alpha => (beta, alpha),
                _ => return Err(mismatch(decomp, "needs start 0 with alpha >= beta, 1 with beta >= alpha, or 1/2 with alpha = beta")),
            };
            need_positive(c)?;
            let big_n = ((a + b) * (a + 1.0) / (b + 1.0)).ln();
            let rate = -2.0 * decomp.eigenvalue(1).ln();
            let (lu, ll) = ((big_n + c) / rate, (big_n - c) / rate);
            Ok(thresholds(
                "beta-binomial theta-chain from the edge",
                Some(lu),
                Some(ll),
                vec![
                    statement("upper: 7 e^-c", S::AtLeast, lu, R::AtMost, 7.0 * (-c).exp(), 1.0),
                    statement("lower: e^c / 6", S::AtMost, ll, R::AtLeast, c.exp() / 6.0, 1.0),
                ],
            ))
        }
        (Model::Conjugate(p), ChainKind::XChain)
            if *p.family() == (ConjugateFamily::PoissonGamma { a: 1.0, alpha: 1.0 }) =>
        {
            if v < 1.0 {
                return Err(mismatch(decomp, "start n must be a positive integer"));
            }
            need_positive(c)?;
            let lu = (1.0 + v).log2() + c;
            let mut st = vec![statement("upper: 2^-2c", S::Exactly, lu, R::AtMost, (-2.0 * c).exp2(), 1.0)];
            let mut ll = None;
            if v >= 2.0 {
                let l = (v - 1.0).log2() - c;
                ll = Some(l);
                st.push(statement("lower: 2^2c", S::Exactly, l, R::AtLeast, (2.0 * c).exp2(), 1.0));
            }
            Ok(thresholds("poisson-gamma x-chain, a = alpha = 1", Some(lu), ll, st))
        }
        (Model::Conjugate(p), ChainKind::ThetaChain) if matches!(p.family(), ConjugateFamily::PoissonGamma { alpha, .. } if *alpha == 1.0) => {
            let ConjugateFamily::PoissonGamma { a, .. } = *p.family() else { unreachable!() };
            if v <= 0.0 {
                return Err(mismatch(decomp, "start theta must be positive"));
            }
            need_positive(c)?;
            let lu = 0.5 * ((2.0 * (1.0 + a + v * v / a)).log2() + c);
            let mut st = vec![statement("upper: e^2 2^-c", S::AtLeast, lu, R::AtMost, (2.0f64).exp() * (-c).exp2(), 1.0)];
            let mut ll = None;
            if v < a / 2.0 || v > 2.0 * a {
                let l = 0.5 * ((0.5 * (v * v / a + a)).log2() - c);
                ll = Some(l);
                st.push(statement("lower: 2^c", S::AtMost, l, R::AtLeast, c.exp2(), 1.0));
            }
            Ok(thresholds("poisson-gamma theta-chain, alpha = 1", Some(lu), ll, st))
        }
        (Model::Conjugate(p), ChainKind::XChain) if matches!(p.family(), ConjugateFamily::GaussianGaussian { .. }) => {
            let ConjugateFamily::GaussianGaussian { sigma2, v: nu, tau2 } = *p.family() else { unreachable!() };
            if nu != 0.0 || (sigma2 + tau2 - 0.5).abs() > 1e-12 {
                return Err(mismatch(decomp, "needs nu = 0 and sigma2 + tau2 = 1/2"));
            }
            need_positive(c)?;
            let x = v;
            let rate = -2.0 * (2.0 * tau2).ln();
            let base = (2.0 * (1.0 + x * x)).ln();
            let (lu, ll) = ((base + c) / rate, (base - c) / rate);
            let mut st = vec![
                statement("upper: 8 e^-c", S::AtLeast, lu, R::AtMost, 8.0 * (-c).exp(), 1.0),
                statement("lower: x^2 e^c / (2(1+x^2))", S::AtMost, ll, R::AtLeast, x * x * c.exp() / (2.0 * (1.0 + x * x)), 1.0),
            ];
            if x == 0.0 {
                st.push(statement("start 0: (2 tau2)^(4l)", S::Any, 0.0, R::AtLeast, 1.0, (2.0 * tau2).powi(4)));
            }
            Ok(thresholds("gaussian x-chain, nu = 0, sigma2 + tau2 = 1/2", Some(lu), Some(ll), st))
        }
        (Model::Location(l), ChainKind::XChain) if matches!(l.family(), LocationFamily::Binomial { .. }) => {
            let LocationFamily::Binomial { n1, n2, p } = *l.family() else { unreachable!() };
            if v != 0.0 {
                return Err(mismatch(decomp, "needs start 0"));
            }
            if !c.is_finite() {
                return Err(SpectralError::InvalidInput(format!("c = {c} must be finite")));
            }
            let big_n = (n1 + n2) as f64;
            let q = p / (1.0 - p);
            let ell = ((q * big_n).ln() + c) / (-2.0 * (1.0 - n2 as f64 / big_n).ln());
            let e = (-c).exp();
            Ok(thresholds(
                "location binomial x-chain from 0",
                Some(ell),
                Some(ell),
                vec![
                    statement("lower: e^-c", S::Exactly, ell, R::AtLeast, e, 1.0),
                    statement("upper: e^-c e^(e^-c)", S::Exactly, ell, R::AtMost, e * e.exp(), 1.0),
                ],
            ))
        }
        _ => Err(mismatch(decomp, "not one of the cutoff settings")),
    }
}
