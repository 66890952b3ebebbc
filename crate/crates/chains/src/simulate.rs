use std::collections::BTreeMap;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{format_real, ChainError, ChainKind, ChainSpec, State};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace {
    pub model: &'static str,
    pub kind: ChainKind,
    pub seed: u64,
    pub rep: u64,
    pub start: State,
    /// start followed by one state per step
    pub states: Vec<State>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
}

/// Counts of the observed coordinate of the final states.
///
/// Discrete states get one bin per visited value (lo = hi = value);
/// continuous ones get equal-width bins over the observed range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub discrete: bool,
    pub bins: Vec<Bin>,
}

impl Histogram {
    pub fn from_values(values: &[f64], discrete: bool, width_bins: usize) -> Histogram {
        if discrete {
            let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
            for &v in values {
                *counts.entry(v as i64).or_default() += 1;
            }
            let bins = counts.into_iter().map(|(v, count)| Bin { lo: v as f64, hi: v as f64, count }).collect();
            return Histogram { discrete, bins };
        }
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if values.is_empty() {
            return Histogram { discrete, bins: Vec::new() };
        }
        let k = if hi > lo { width_bins.max(1) } else { 1 };
        let w = (hi - lo) / k as f64;
        let mut counts = vec![0u64; k];
        for &v in values {
            let i = if w > 0.0 { (((v - lo) / w) as usize).min(k - 1) } else { 0 };
            counts[i] += 1;
        }
        let bins = counts
            .into_iter()
            .enumerate()
            .map(|(i, count)| Bin { lo: lo + i as f64 * w, hi: if i + 1 == k { hi } else { lo + (i + 1) as f64 * w }, count })
            .collect();
        Histogram { discrete, bins }
    }

    pub fn total(&self) -> u64 {
        self.bins.iter().map(|b| b.count).sum()
    }

    /// ½ Σ |p̂(x) - p(x)| over the whole support, unvisited points included.
    /// Discrete histograms only.
    pub fn tv_to(&self, mass: impl Fn(f64) -> f64) -> Option<f64> {
        if !self.discrete {
            return None;
        }
        let n = self.total() as f64;
        let mut covered = 0.0;
        let mut diff = 0.0;
        for b in &self.bins {
            let p = mass(b.lo);
            covered += p;
            diff += (b.count as f64 / n - p).abs();
        }
        Some(0.5 * (diff + (1.0 - covered).max(0.0)))
    }

    /// CSV with header `bin,count`; continuous bins are labelled by their midpoint.
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["bin", "count"])?;
        for b in &self.bins {
            let label = if self.discrete { b.lo } else { 0.5 * (b.lo + b.hi) };
            out.write_record([format_real(label), b.count.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimOptions {
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
    pub keep_traces: bool,
    /// Bin count for continuous histograms.
    pub bins: usize,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions { workers: 0, keep_traces: true, bins: 50 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Simulation {
    /// Empty unless traces were kept.
    pub traces: Vec<Trace>,
    pub finals: Vec<State>,
    pub histogram: Histogram,
}

impl Simulation {
    /// Empirical TV of the final observed coordinate to the chain's stationary law (discrete only).
    pub fn empirical_tv(&self, chain: &ChainSpec) -> Option<f64> {
        self.histogram.tv_to(|v| chain.stationary_density(v).unwrap_or(0.0))
    }
}

pub fn simulate(chain: &ChainSpec, start: State, steps: usize, reps: usize, seed: u64) -> Result<Simulation, ChainError> {
    simulate_with(chain, start, steps, reps, seed, &SimOptions::default())
}

/// Runs `reps` independent copies for `steps` steps each.
///
/// Replicate r draws from ChaCha8 keyed by `seed` on stream r, so every
/// replicate is reproducible on its own and the output does not depend on
/// the number of workers or the order they finish in.
pub fn simulate_with(
    chain: &ChainSpec,
    start: State,
    steps: usize,
    reps: usize,
    seed: u64,
    opts: &SimOptions,
) -> Result<Simulation, ChainError> {
    chain.check_state(start)?;
    let run = |rep: usize| -> Result<(State, Option<Trace>), ChainError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(rep as u64);
        let mut s = start;
        let mut states = if opts.keep_traces { Vec::with_capacity(steps + 1) } else { Vec::new() };
        if opts.keep_traces {
            states.push(s);
        }
        for _ in 0..steps {
            s = chain.step(s, &mut rng)?;
            if opts.keep_traces {
                states.push(s);
            }
        }
        let trace = opts.keep_traces.then(|| Trace {
            model: chain.model().name(),
            kind: chain.kind(),
            seed,
            rep: rep as u64,
            start,
            states,
        });
        Ok((s, trace))
    };
    let results: Result<Vec<_>, ChainError> = if opts.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| ChainError::Unsupported(format!("thread pool: {e}")))?;
        pool.install(|| (0..reps).into_par_iter().map(run).collect())
    } else {
        (0..reps).into_par_iter().map(run).collect()
    };
    let (finals, traces): (Vec<State>, Vec<Option<Trace>>) = results?.into_iter().unzip();
    let discrete = match chain.kind() {
        ChainKind::ThetaChain => chain.model().theta_support().is_discrete(),
        _ => chain.model().x_support().is_discrete(),
    };
    let observed: Vec<f64> = finals.iter().map(State::observed).collect();
    Ok(Simulation {
        traces: traces.into_iter().flatten().collect(),
        histogram: Histogram::from_values(&observed, discrete, opts.bins),
        finals,
    })
}

/// CSV with header `rep,step,state`.
pub fn write_traces_csv<W: Write>(traces: &[Trace], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["rep", "step", "state"])?;
    for t in traces {
        for (step, s) in t.states.iter().enumerate() {
            out.write_record([t.rep.to_string(), step.to_string(), s.render()])?;
        }
    }
    out.flush()?;
    Ok(())
}
