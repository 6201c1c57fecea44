//! Sequential Stern–Gerlach chains: analytic Born probabilities and seeded
//! Monte Carlo sampling.
//!
//! Sampling uses ChaCha8 (`rand_chacha`). Runs are split into fixed blocks of
//! [`BLOCK_SIZE`]; block `b` draws from stream `b` of the generator seeded
//! with the user seed, so counts do not depend on how many threads run.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amplitude::{general_table, probabilities, PhaseConvention, ProbabilityTable};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spin::{Direction, Projection, Spin};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const BLOCK_SIZE: u64 = 1 << 16;
/// z-scores beyond this magnitude are flagged.
pub const Z_FLAG: f64 = 5.0;
const MAX_SEQUENCES: usize = 1 << 20;

/// One analyzer: measures the projection along `direction`, optionally
/// keeping only runs that yield `select`.
#[derive(Clone, Debug, PartialEq)]
pub struct Stage<T> {
    pub direction: Direction<T>,
    pub select: Option<Projection>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementChain<T> {
    spin: Spin,
    prepare_direction: Direction<T>,
    prepare_m: Projection,
    stages: Vec<Stage<T>>,
}

/// Projections observed at each stage, in stage order.
pub type Outcome = Vec<Projection>;

impl<T: Scalar> MeasurementChain<T> {
    pub fn new(
        spin: Spin,
        prepare_direction: Direction<T>,
        prepare_m: Projection,
        stages: Vec<Stage<T>>,
    ) -> Result<Self> {
        spin.index_of(prepare_m).map_err(|e| Error::InvalidChain(format!("prepare.m: {e}")))?;
        if stages.is_empty() {
            return Err(Error::InvalidChain("stages: at least one stage is required".into()));
        }
        for (i, stage) in stages.iter().enumerate() {
            if let Some(m) = stage.select {
                spin.index_of(m).map_err(|e| Error::InvalidChain(format!("stages[{i}].select: {e}")))?;
            }
        }
        let sequences = spin.dim().checked_pow(stages.len() as u32).filter(|&n| n <= MAX_SEQUENCES);
        if sequences.is_none() {
            return Err(Error::InvalidChain(format!(
                "stages: {} stages of spin {spin} give more than {MAX_SEQUENCES} outcome sequences",
                stages.len()
            )));
        }
        Ok(Self { spin, prepare_direction, prepare_m, stages })
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn prepare_direction(&self) -> &Direction<T> {
        &self.prepare_direction
    }

    pub fn prepare_m(&self) -> Projection {
        self.prepare_m
    }

    pub fn stages(&self) -> &[Stage<T>] {
        &self.stages
    }

    fn sequence_count(&self) -> usize {
        self.spin.dim().pow(self.stages.len() as u32)
    }

    fn decode(&self, mut code: usize) -> Vec<usize> {
        let dim = self.spin.dim();
        let mut idx = vec![0; self.stages.len()];
        for slot in idx.iter_mut().rev() {
            *slot = code % dim;
            code /= dim;
        }
        idx
    }

    fn outcome(&self, indices: &[usize]) -> Outcome {
        indices.iter().map(|&k| self.spin.level(k)).collect()
    }

    fn accepted(&self, indices: &[usize]) -> bool {
        self.stages.iter().zip(indices).all(|(s, &k)| s.select.is_none_or(|m| self.spin.level(k) == m))
    }
}

/// Probability of moving from each level of the previous axis to each level
/// of stage `i`'s axis (row: new level, column: previous level).
pub fn stage_conditionals<T: Scalar>(chain: &MeasurementChain<T>) -> Result<Vec<ProbabilityTable<T>>> {
    let mut prev = chain.prepare_direction;
    chain
        .stages
        .iter()
        .map(|stage| {
            let table = general_table(chain.spin, &prev, &stage.direction, PhaseConvention::Canonical)?;
            prev = stage.direction;
            Ok(probabilities(&table))
        })
        .collect()
}

/// Joint and post-selected probabilities of every outcome sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainProbabilities<T> {
    /// Every sequence, selection ignored; sums to 1.
    pub joint: BTreeMap<Outcome, T>,
    /// Sequences passing every `select`, renormalized by `acceptance`.
    pub post_selected: BTreeMap<Outcome, T>,
    /// Probability that a run passes every `select`.
    pub acceptance: T,
}

/// Born-rule joint probabilities: product of `|ψ|²` between consecutive axes,
/// collapsing onto the observed level after each stage.
pub fn analytic_chain_probabilities<T: Scalar>(chain: &MeasurementChain<T>) -> Result<ChainProbabilities<T>> {
    let tables = stage_conditionals(chain)?;
    let start = chain.spin.index_of(chain.prepare_m)?;
    let mut joint = BTreeMap::new();
    let mut accepted = Vec::new();
    for code in 0..chain.sequence_count() {
        let idx = chain.decode(code);
        let mut prev = start;
        let mut p = T::one();
        for (table, &k) in tables.iter().zip(&idx) {
            p = p * table.entries[(k, prev)];
            prev = k;
        }
        let outcome = chain.outcome(&idx);
        if chain.accepted(&idx) {
            accepted.push((outcome.clone(), p));
        }
        joint.insert(outcome, p);
    }
    let acceptance: T = accepted.iter().map(|(_, p)| *p).sum();
    let post_selected = if acceptance > T::zero() {
        accepted.into_iter().map(|(o, p)| (o, p / acceptance)).collect()
    } else {
        BTreeMap::new()
    };
    Ok(ChainProbabilities { joint, post_selected, acceptance })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimulationResult<T> {
    pub chain: MeasurementChain<T>,
    pub samples: u64,
    pub seed: u64,
    /// Accepted runs per observed sequence.
    pub counts: BTreeMap<Outcome, u64>,
    pub analytic: ChainProbabilities<T>,
    /// Runs rejected by a `select` filter.
    pub discarded: u64,
}

/// Cumulative distributions for sampling, indexed `[stage][previous level]`.
fn cumulative<T: Scalar>(tables: &[ProbabilityTable<T>]) -> Vec<Vec<Vec<f64>>> {
    tables
        .iter()
        .map(|t| {
            (0..t.entries.ncols())
                .map(|prev| {
                    let mut acc = 0.0;
                    t.entries
                        .column(prev)
                        .iter()
                        .map(|p| {
                            acc += p.as_f64();
                            acc
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn draw(cdf: &[f64], u: f64) -> usize {
    match cdf.iter().position(|&c| u < c) {
        Some(k) => k,
        // u landed above a total that rounded below 1: take the last level
        // that carries probability
        None => {
            let mut k = cdf.len() - 1;
            while k > 0 && cdf[k] == cdf[k - 1] {
                k -= 1;
            }
            k
        }
    }
}

/// Samples `samples` independent runs of the chain.
pub fn run_chain<T: Scalar>(chain: &MeasurementChain<T>, samples: u64, seed: u64) -> Result<SimulationResult<T>> {
    if samples == 0 {
        return Err(Error::ZeroSamples("samples"));
    }
    let analytic = analytic_chain_probabilities(chain)?;
    let cdfs = cumulative(&stage_conditionals(chain)?);
    let start = chain.spin.index_of(chain.prepare_m)?;
    let dim = chain.spin.dim();
    let selects: Vec<Option<usize>> =
        chain.stages.iter().map(|s| s.select.map(|m| chain.spin.index_of(m)).transpose()).collect::<Result<_>>()?;
    let n_seq = chain.sequence_count();
    let blocks = samples.div_ceil(BLOCK_SIZE);

    let (dense, discarded) = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let runs = BLOCK_SIZE.min(samples - b * BLOCK_SIZE);
            let mut counts = vec![0u64; n_seq];
            let mut discarded = 0u64;
            'run: for _ in 0..runs {
                let mut prev = start;
                let mut code = 0usize;
                for (cdf, select) in cdfs.iter().zip(&selects) {
                    let k = draw(&cdf[prev], rng.gen::<f64>());
                    if select.is_some_and(|s| s != k) {
                        discarded += 1;
                        continue 'run;
                    }
                    code = code * dim + k;
                    prev = k;
                }
                counts[code] += 1;
            }
            (counts, discarded)
        })
        .reduce(
            || (vec![0u64; n_seq], 0),
            |(mut a, da), (b, db)| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                (a, da + db)
            },
        );

    let counts = dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(code, c)| (chain.outcome(&chain.decode(code)), c))
        .collect();
    Ok(SimulationResult { chain: chain.clone(), samples, seed, counts, analytic, discarded })
}

/// Empirical versus analytic statistics for one sequence (or for the
/// discarded runs when `outcome` is `None`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeComparison {
    pub outcome: Option<Outcome>,
    pub count: u64,
    pub probability: f64,
    pub expected: f64,
    pub frequency: f64,
    /// `(count − Np) / √(Np(1−p))`; infinite for an impossible event that
    /// occurred (serialized as `null`).
    pub z: f64,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub samples: u64,
    pub rows: Vec<OutcomeComparison>,
    pub max_abs_deviation: f64,
    pub max_abs_z: f64,
    pub flagged: bool,
}

fn z_score(count: u64, p: f64, n: u64) -> f64 {
    let n = n as f64;
    let expected = n * p;
    let var = n * p * (1.0 - p);
    let diff = count as f64 - expected;
    if var > 0.0 {
        diff / var.sqrt()
    } else if diff.abs() < 0.5 {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    }
}

fn row(outcome: Option<Outcome>, count: u64, p: f64, n: u64) -> OutcomeComparison {
    let z = z_score(count, p, n);
    OutcomeComparison {
        outcome,
        count,
        probability: p,
        expected: p * n as f64,
        frequency: count as f64 / n as f64,
        z,
        flagged: z.is_nan() || z.abs() > Z_FLAG,
    }
}

/// Per-sequence z-scores against the joint Born probabilities. Every accepted
/// sequence and every observed sequence gets a row; when a `select` is present
/// a final row covers the discarded runs.
pub fn compare<T: Scalar>(result: &SimulationResult<T>) -> ComparisonReport {
    let n = result.samples;
    let chain = &result.chain;
    let mut rows = Vec::new();
    for (outcome, p) in &result.analytic.joint {
        let idx: Vec<usize> = outcome.iter().map(|m| chain.spin.index_of(*m).expect("valid level")).collect();
        let count = result.counts.get(outcome).copied().unwrap_or(0);
        if chain.accepted(&idx) || count > 0 {
            rows.push(row(Some(outcome.clone()), count, p.as_f64(), n));
        }
    }
    if chain.stages.iter().any(|s| s.select.is_some()) {
        let rejected: f64 = result
            .analytic
            .joint
            .iter()
            .filter(|(o, _)| !result.analytic.post_selected.contains_key(*o))
            .map(|(_, p)| p.as_f64())
            .sum();
        let rejected = if result.analytic.acceptance > T::zero() { rejected } else { 1.0 };
        rows.push(row(None, result.discarded, rejected, n));
    }
    let max_abs_deviation = rows.iter().map(|r| (r.frequency - r.probability).abs()).fold(0.0, f64::max);
    let max_abs_z = rows.iter().map(|r| r.z.abs()).fold(0.0, f64::max);
    let flagged = rows.iter().any(|r| r.flagged);
    ComparisonReport { samples: n, rows, max_abs_deviation, max_abs_z, flagged }
}

/// JSON chain description. Angles are radians unless the caller converts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpec {
    pub spin: f64,
    pub prepare: PrepareSpec,
    pub stages: Vec<StageSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrepareSpec {
    pub theta: f64,
    pub phi: f64,
    pub m: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageSpec {
    pub theta: f64,
    pub phi: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub select: Option<f64>,
}

impl ChainSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidChain(e.to_string()))
    }

    /// Builds the chain, reading angles as degrees when `degrees` is set.
    pub fn to_chain(&self, degrees: bool) -> Result<MeasurementChain<f64>> {
        let spin = Spin::new(self.spin).map_err(|e| Error::InvalidChain(format!("spin: {e}")))?;
        let dir = |theta: f64, phi: f64, field: &str| -> Result<Direction<f64>> {
            if !theta.is_finite() || !phi.is_finite() {
                return Err(Error::InvalidChain(format!("{field}: angles must be finite")));
            }
            Ok(if degrees { Direction::from_degrees(theta, phi) } else { Direction::new(theta, phi) })
        };
        let proj = |m: f64, field: &str| {
            Projection::from_f64(m)
                .ok_or_else(|| Error::InvalidChain(format!("{field}: {m} is not an integer or half-integer")))
        };
        let prepare_m = proj(self.prepare.m, "prepare.m")?;
        let prepare = dir(self.prepare.theta, self.prepare.phi, "prepare")?;
        let stages = self
            .stages
            .iter()
            .enumerate()
            .map(|(i, s)| {
                Ok(Stage {
                    direction: dir(s.theta, s.phi, &format!("stages[{i}]"))?,
                    select: s.select.map(|m| proj(m, &format!("stages[{i}].select"))).transpose()?,
                })
            })
            .collect::<Result<_>>()?;
        MeasurementChain::new(spin, prepare, prepare_m, stages)
    }
}
