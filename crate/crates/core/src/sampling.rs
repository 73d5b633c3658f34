//! Seedable samplers for the secret, error, encryption-randomness and uniform
//! distributions, plus a scripted replacement used to replay fixed draws.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::{BigInt, RandBigInt};
use num_traits::{One, Zero};
use rand::seq::index;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::ring::center;

/// Continuous draws beyond this many standard deviations are rejected.
pub const DG_TAIL_CUT: f64 = 12.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplingError {
    #[error("Hamming weight {h} exceeds length {n}")]
    WeightTooLarge { h: usize, n: usize },
    #[error("variance must be positive and finite, got {0}")]
    InvalidVariance(f64),
    #[error("rho must lie strictly between 0 and 1, got {0}")]
    InvalidRho(f64),
    #[error("modulus must be at least 1")]
    InvalidModulus,
    #[error("scripted draw #{index}: expected a {expected} sample, script has {found}")]
    ScriptKindMismatch {
        index: usize,
        expected: SamplerKind,
        found: SamplerKind,
    },
    #[error("scripted draw #{index}: expected {expected} coefficients, script has {found}")]
    ScriptLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("scripted draw #{index}: {reason}")]
    ScriptValue { index: usize, reason: String },
    #[error("sampler script line {line}: {reason}")]
    ScriptSyntax { line: usize, reason: String },
}

/// The four coefficient distributions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplerKind {
    Hwt,
    Dg,
    Zo,
    Uniform,
}

impl fmt::Display for SamplerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SamplerKind::Hwt => "hwt",
            SamplerKind::Dg => "dg",
            SamplerKind::Zo => "zo",
            SamplerKind::Uniform => "uniform",
        })
    }
}

impl std::str::FromStr for SamplerKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "hwt" => Ok(SamplerKind::Hwt),
            "dg" => Ok(SamplerKind::Dg),
            "zo" => Ok(SamplerKind::Zo),
            "uniform" => Ok(SamplerKind::Uniform),
            _ => Err(()),
        }
    }
}

/// Deterministic pseudorandom stream seeded from a `u64`.
///
/// Single owner; callers that want parallelism should seed independent states.
#[derive(Clone, Debug)]
pub struct RngState(ChaCha20Rng);

impl RngState {
    pub fn from_seed(seed: u64) -> Self {
        RngState(ChaCha20Rng::seed_from_u64(seed))
    }
}

impl RngCore for RngState {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.0.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.0.try_fill_bytes(dest)
    }
}

/// Ternary vector of length `n` with exactly `h` nonzero entries.
pub fn sample_hwt(n: usize, h: usize, rng: &mut RngState) -> Result<Vec<i64>, SamplingError> {
    if h > n {
        return Err(SamplingError::WeightTooLarge { h, n });
    }
    let mut out = vec![0i64; n];
    for pos in index::sample(rng, n, h).into_iter() {
        out[pos] = if rng.gen::<bool>() { 1 } else { -1 };
    }
    Ok(out)
}

/// Rounded continuous Gaussian with variance `sigma2`, centered at zero.
pub fn sample_dg(n: usize, sigma2: f64, rng: &mut RngState) -> Result<Vec<i64>, SamplingError> {
    if !(sigma2.is_finite() && sigma2 > 0.0) {
        return Err(SamplingError::InvalidVariance(sigma2));
    }
    let sigma = sigma2.sqrt();
    let normal = Normal::new(0.0, sigma).map_err(|_| SamplingError::InvalidVariance(sigma2))?;
    let cut = DG_TAIL_CUT * sigma;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x: f64 = normal.sample(rng);
        if x.abs() <= cut {
            out.push(x.round() as i64);
        }
    }
    Ok(out)
}

/// Entries are `+1` and `-1` with probability `rho/2` each, else `0`.
pub fn sample_zo(n: usize, rho: f64, rng: &mut RngState) -> Result<Vec<i64>, SamplingError> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(SamplingError::InvalidRho(rho));
    }
    Ok((0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            if u < rho / 2.0 {
                1
            } else if u < rho {
                -1
            } else {
                0
            }
        })
        .collect())
}

/// Uniform centered representatives of `Z_q`, i.e. values in `(-q/2, q/2]`.
pub fn sample_uniform(
    n: usize,
    q: &BigInt,
    rng: &mut RngState,
) -> Result<Vec<BigInt>, SamplingError> {
    if q < &BigInt::one() {
        return Err(SamplingError::InvalidModulus);
    }
    let zero = BigInt::zero();
    Ok((0..n)
        .map(|_| center(&rng.gen_bigint_range(&zero, q), q))
        .collect())
}

/// Source of the coefficient vectors consumed by key generation and encryption.
///
/// [`RngState`] draws fresh samples; [`ScriptedSampler`] replays fixed ones.
pub trait CoefficientSampler {
    fn hwt(&mut self, n: usize, h: usize) -> Result<Vec<i64>, SamplingError>;
    fn dg(&mut self, n: usize, sigma2: f64) -> Result<Vec<i64>, SamplingError>;
    fn zo(&mut self, n: usize, rho: f64) -> Result<Vec<i64>, SamplingError>;
    fn uniform(&mut self, n: usize, q: &BigInt) -> Result<Vec<BigInt>, SamplingError>;
}

impl CoefficientSampler for RngState {
    fn hwt(&mut self, n: usize, h: usize) -> Result<Vec<i64>, SamplingError> {
        sample_hwt(n, h, self)
    }

    fn dg(&mut self, n: usize, sigma2: f64) -> Result<Vec<i64>, SamplingError> {
        sample_dg(n, sigma2, self)
    }

    fn zo(&mut self, n: usize, rho: f64) -> Result<Vec<i64>, SamplingError> {
        sample_zo(n, rho, self)
    }

    fn uniform(&mut self, n: usize, q: &BigInt) -> Result<Vec<BigInt>, SamplingError> {
        sample_uniform(n, q, self)
    }
}

/// One line of a sampler script: a kind plus fixed coefficients, or `None`
/// to draw this call from the fallback stream.
#[derive(Clone, Debug, PartialEq)]
pub struct ScriptEntry {
    pub kind: SamplerKind,
    pub values: Option<Vec<BigInt>>,
}

/// Replays a fixed list of draws in call order.
///
/// Each call must match the kind of the next entry. Entries written as `*`,
/// and every call after the script runs out, are served by the fallback
/// [`RngState`].
///
/// Script text has one draw per line, `#` starts a comment:
///
/// ```text
/// hwt 0 1 -1 0
/// uniform -221 67 -15 103
/// dg 1 1 0 0
/// uniform *
/// ```
#[derive(Clone, Debug)]
pub struct ScriptedSampler {
    entries: VecDeque<ScriptEntry>,
    consumed: usize,
    fallback: RngState,
}

impl ScriptedSampler {
    pub fn new(entries: Vec<ScriptEntry>, fallback: RngState) -> Self {
        Self {
            entries: entries.into(),
            consumed: 0,
            fallback,
        }
    }

    pub fn parse(text: &str, fallback: RngState) -> Result<Self, SamplingError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let head = words.next().unwrap_or_default();
            let kind: SamplerKind = head.parse().map_err(|_| SamplingError::ScriptSyntax {
                line: i + 1,
                reason: format!("unknown sampler {head:?}"),
            })?;
            let rest: Vec<&str> = words.collect();
            let values = if rest == ["*"] {
                None
            } else {
                let parsed = rest
                    .iter()
                    .map(|w| w.parse::<BigInt>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| SamplingError::ScriptSyntax {
                        line: i + 1,
                        reason: e.to_string(),
                    })?;
                Some(parsed)
            };
            entries.push(ScriptEntry { kind, values });
        }
        Ok(Self::new(entries, fallback))
    }

    /// Number of scripted entries not yet consumed.
    pub fn remaining(&self) -> usize {
        self.entries.len()
    }

    fn next_fixed(
        &mut self,
        kind: SamplerKind,
        n: usize,
    ) -> Result<Option<Vec<BigInt>>, SamplingError> {
        let Some(entry) = self.entries.pop_front() else {
            return Ok(None);
        };
        let index = self.consumed;
        self.consumed += 1;
        if entry.kind != kind {
            return Err(SamplingError::ScriptKindMismatch {
                index,
                expected: kind,
                found: entry.kind,
            });
        }
        match entry.values {
            None => Ok(None),
            Some(values) if values.len() != n => Err(SamplingError::ScriptLength {
                index,
                expected: n,
                found: values.len(),
            }),
            Some(values) => Ok(Some(values)),
        }
    }

    fn small(&mut self, kind: SamplerKind, n: usize) -> Result<Option<Vec<i64>>, SamplingError> {
        let index = self.consumed;
        let Some(values) = self.next_fixed(kind, n)? else {
            return Ok(None);
        };
        values
            .iter()
            .map(|v| {
                i64::try_from(v).map_err(|_| SamplingError::ScriptValue {
                    index,
                    reason: format!("{v} does not fit a small coefficient"),
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }
}

fn check_ternary(values: &[i64], index: usize) -> Result<(), SamplingError> {
    match values.iter().find(|v| v.abs() > 1) {
        Some(v) => Err(SamplingError::ScriptValue {
            index,
            reason: format!("{v} is not in {{-1, 0, 1}}"),
        }),
        None => Ok(()),
    }
}

impl CoefficientSampler for ScriptedSampler {
    fn hwt(&mut self, n: usize, h: usize) -> Result<Vec<i64>, SamplingError> {
        let index = self.consumed;
        match self.small(SamplerKind::Hwt, n)? {
            Some(values) => {
                check_ternary(&values, index)?;
                let weight = values.iter().filter(|v| **v != 0).count();
                if weight != h {
                    return Err(SamplingError::ScriptValue {
                        index,
                        reason: format!("Hamming weight {weight}, expected {h}"),
                    });
                }
                Ok(values)
            }
            None => self.fallback.hwt(n, h),
        }
    }

    fn dg(&mut self, n: usize, sigma2: f64) -> Result<Vec<i64>, SamplingError> {
        match self.small(SamplerKind::Dg, n)? {
            Some(values) => Ok(values),
            None => self.fallback.dg(n, sigma2),
        }
    }

    fn zo(&mut self, n: usize, rho: f64) -> Result<Vec<i64>, SamplingError> {
        let index = self.consumed;
        match self.small(SamplerKind::Zo, n)? {
            Some(values) => {
                check_ternary(&values, index)?;
                Ok(values)
            }
            None => self.fallback.zo(n, rho),
        }
    }

    fn uniform(&mut self, n: usize, q: &BigInt) -> Result<Vec<BigInt>, SamplingError> {
        let index = self.consumed;
        match self.next_fixed(SamplerKind::Uniform, n)? {
            Some(values) => {
                if let Some(v) = values.iter().find(|v| center(v, q) != **v) {
                    return Err(SamplingError::ScriptValue {
                        index,
                        reason: format!("{v} is not a centered residue mod {q}"),
                    });
                }
                Ok(values)
            }
            None => self.fallback.uniform(n, q),
        }
    }
}
