//! Monte-Carlo comparison of decoders by field-operation counts.

use std::collections::BTreeMap;
use std::io::Write;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::GrsCode;
use crate::decoder::{
    lee_osullivan_for_radius, multi_trial_decode, DecodeOptions, DecodeResult,
};
use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::interp::ReencodedBasis;
use crate::params::{build_schedule, DecodingSchedule, RootPolicy};
use crate::poly::Polynomial;

/// `"consecutive"` / `"all-one"` or an explicit list of values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Named(String),
    Values(Vec<i64>),
}

impl PointSpec {
    fn resolve(&self, field: PrimeField, n: usize, what: &str) -> Result<Vec<Fe>> {
        match self {
            PointSpec::Named(name) => match (what, name.as_str()) {
                ("alphas", "consecutive") => Ok((1..=n as i64).map(|i| field.elem(i)).collect()),
                ("ws", "all-one") => Ok(vec![field.one(); n]),
                _ => Err(Error::InvalidCode(format!("unknown {what} preset {name:?}"))),
            },
            PointSpec::Values(v) if v.len() == n => Ok(v.iter().map(|&x| field.elem(x)).collect()),
            PointSpec::Values(v) => Err(Error::InvalidCode(format!(
                "{} {what} given for length {n}",
                v.len()
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecoderSpec {
    Multitrial {
        #[serde(default)]
        reencoding: bool,
        #[serde(default)]
        reencoded_basis: ReencodedBasis,
        #[serde(default)]
        root_policy: RootPolicy,
    },
    LeeOsullivan {
        tau: usize,
        #[serde(default)]
        reencoding: bool,
        #[serde(default)]
        reencoded_basis: ReencodedBasis,
    },
}

impl DecoderSpec {
    /// Value of the `decoder` CSV column.
    pub fn id(&self) -> String {
        let base = self.base_id();
        if self.reencoding() && self.basis() == ReencodedBasis::Divided {
            format!("{base}_divided")
        } else {
            base
        }
    }

    fn base_id(&self) -> String {
        match self {
            DecoderSpec::Multitrial {
                root_policy: RootPolicy::EveryRadiusIncrease,
                ..
            } => "multitrial".into(),
            DecoderSpec::Multitrial {
                root_policy: RootPolicy::FinalOnly,
                ..
            } => "multitrial_final".into(),
            DecoderSpec::LeeOsullivan { tau, .. } => format!("lee_osullivan_tau{tau}"),
        }
    }

    pub fn basis(&self) -> ReencodedBasis {
        match self {
            DecoderSpec::Multitrial { reencoded_basis, .. }
            | DecoderSpec::LeeOsullivan { reencoded_basis, .. } => *reencoded_basis,
        }
    }

    pub fn options(&self) -> DecodeOptions {
        DecodeOptions {
            basis: self.basis(),
            ..DecodeOptions::reencoded(self.reencoding())
        }
    }

    pub fn reencoding(&self) -> bool {
        match self {
            DecoderSpec::Multitrial { reencoding, .. } | DecoderSpec::LeeOsullivan { reencoding, .. } => {
                *reencoding
            }
        }
    }
}

fn default_alphas() -> PointSpec {
    PointSpec::Named("consecutive".into())
}

fn default_ws() -> PointSpec {
    PointSpec::Named("all-one".into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    #[serde(default = "default_alphas")]
    pub alphas: PointSpec,
    #[serde(default = "default_ws")]
    pub ws: PointSpec,
    pub target_tau: usize,
    pub decoders: Vec<DecoderSpec>,
    pub trials_per_epsilon: usize,
    /// Inclusive.
    pub epsilon_range: (usize, usize),
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameters(format!("config: {e}")))
    }

    pub fn code(&self) -> Result<GrsCode> {
        let field = PrimeField::new(self.q)?;
        let alphas = self.alphas.resolve(field, self.n, "alphas")?;
        let ws = self.ws.resolve(field, self.n, "ws")?;
        GrsCode::new(field, self.k, alphas, ws)
    }

    pub fn validate(&self) -> Result<GrsCode> {
        let code = self.code()?;
        let (lo, hi) = self.epsilon_range;
        if lo > hi || hi > self.target_tau {
            return Err(Error::InvalidParameters(format!(
                "epsilon range [{lo}, {hi}] must lie within [0, {}]",
                self.target_tau
            )));
        }
        if self.trials_per_epsilon == 0 {
            return Err(Error::InvalidParameters("trials_per_epsilon must be positive".into()));
        }
        if self.decoders.is_empty() {
            return Err(Error::InvalidParameters("no decoders configured".into()));
        }
        Ok(code)
    }
}

/// A transmitted polynomial, its codeword and the corrupted word.
#[derive(Debug, Clone)]
pub struct Instance {
    pub f: Polynomial,
    pub codeword: Vec<Fe>,
    pub received: Vec<Fe>,
}

/// Random codeword plus an error of weight exactly `epsilon`.
pub fn random_instance<R: Rng>(code: &GrsCode, epsilon: usize, rng: &mut R) -> Result<Instance> {
    let n = code.n();
    if epsilon > n {
        return Err(Error::InvalidParameters(format!(
            "error weight {epsilon} exceeds length {n}"
        )));
    }
    let field = code.field();
    let q = field.order();
    let f = Polynomial::from_coeffs(
        field,
        (0..code.k())
            .map(|_| field.elem(rng.gen_range(0..q) as i64))
            .collect(),
    );
    let codeword = code.encode(&f)?;
    let mut received = codeword.clone();
    for pos in sample(rng, n, epsilon) {
        received[pos] += field.elem(rng.gen_range(1..q) as i64);
    }
    Ok(Instance {
        f,
        codeword,
        received,
    })
}

/// The generator for trial `index` at weight `epsilon`.
pub fn trial_rng(seed: u64, epsilon: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((epsilon as u64) << 32) | index as u64);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub epsilon: usize,
    pub trial: usize,
    pub decoder: String,
    pub reencoded: bool,
    pub mul_count: u64,
    pub add_count: u64,
    pub inv_count: u64,
    pub success: bool,
    pub list_size: usize,
    pub s_hat: usize,
    pub l_hat: usize,
    pub tau_hat: i64,
}

enum Runner {
    Multi(DecodingSchedule),
    Lo(usize),
}

fn run_decoder(
    code: &GrsCode,
    runner: &Runner,
    r: &[Fe],
    opts: DecodeOptions,
) -> Result<DecodeResult> {
    match runner {
        Runner::Multi(sched) => multi_trial_decode(code, r, sched, opts),
        Runner::Lo(tau) => lee_osullivan_for_radius(code, r, *tau, opts),
    }
}

/// Runs every configured decoder on the same instances. Records are ordered
/// by `(epsilon, trial, decoder position in the config)`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    let code = config.validate()?;
    let runners = config
        .decoders
        .iter()
        .map(|d| match d {
            DecoderSpec::Multitrial { root_policy, .. } => {
                build_schedule(&code, config.target_tau, *root_policy).map(Runner::Multi)
            }
            DecoderSpec::LeeOsullivan { tau, .. } => Ok(Runner::Lo(*tau)),
        })
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = config.epsilon_range;
    let jobs: Vec<(usize, usize)> = (lo..=hi)
        .flat_map(|e| (0..config.trials_per_epsilon).map(move |t| (e, t)))
        .collect();
    let per_job = jobs
        .par_iter()
        .map(|&(epsilon, trial)| -> Result<Vec<TrialRecord>> {
            let inst = random_instance(&code, epsilon, &mut trial_rng(config.seed, epsilon, trial))?;
            Ok(config
                .decoders
                .iter()
                .zip(&runners)
                .map(|(spec, runner)| {
                    let opts = spec.options();
                    let base = TrialRecord {
                        epsilon,
                        trial,
                        decoder: spec.id(),
                        reencoded: spec.reencoding(),
                        mul_count: 0,
                        add_count: 0,
                        inv_count: 0,
                        success: false,
                        list_size: 0,
                        s_hat: 0,
                        l_hat: 0,
                        tau_hat: -1,
                    };
                    match run_decoder(&code, runner, &inst.received, opts) {
                        Ok(res) => TrialRecord {
                            mul_count: res.ops.mul_count,
                            add_count: res.ops.add_count,
                            inv_count: res.ops.inv_count,
                            success: res.candidates.iter().any(|c| c.codeword == inst.codeword),
                            list_size: res.candidates.len(),
                            s_hat: res.stopped_at.0,
                            l_hat: res.stopped_at.1,
                            tau_hat: res.stopped_at.2,
                            ..base
                        },
                        Err(_) => base,
                    }
                })
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_job.into_iter().flatten().collect())
}

/// [`run_experiment`] on a dedicated pool of `threads` workers.
pub fn run_experiment_with_threads(
    config: &ExperimentConfig,
    threads: usize,
) -> Result<Vec<TrialRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
    pool.install(|| run_experiment(config))
}

pub fn write_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::InvalidParameters(format!("csv: {e}")))?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<TrialRecord>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(csv_error)
}

fn csv_error(e: csv::Error) -> Error {
    Error::InvalidParameters(format!("csv: {e}"))
}

/// Per-`(epsilon, decoder, reencoded)` means.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub epsilon: usize,
    pub decoder: String,
    pub reencoded: bool,
    pub trials: usize,
    pub mean_mul: f64,
    pub mean_add: f64,
    pub mean_inv: f64,
    pub success_rate: f64,
}

pub fn summarize(records: &[TrialRecord]) -> Vec<Summary> {
    let mut order: Vec<(String, bool)> = Vec::new();
    let mut groups: BTreeMap<(usize, usize), Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        let key = (r.decoder.clone(), r.reencoded);
        let pos = order.iter().position(|k| *k == key).unwrap_or_else(|| {
            order.push(key);
            order.len() - 1
        });
        groups.entry((r.epsilon, pos)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((epsilon, pos), rs)| {
            let m = rs.len() as f64;
            let mean = |g: fn(&TrialRecord) -> u64| rs.iter().map(|r| g(r) as f64).sum::<f64>() / m;
            Summary {
                epsilon,
                decoder: order[pos].0.clone(),
                reencoded: order[pos].1,
                trials: rs.len(),
                mean_mul: mean(|r| r.mul_count),
                mean_add: mean(|r| r.add_count),
                mean_inv: mean(|r| r.inv_count),
                success_rate: rs.iter().filter(|r| r.success).count() as f64 / m,
            }
        })
        .collect()
}
