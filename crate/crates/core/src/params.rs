//! Public parameters and the modulus chain `q_l = p^l * q0`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamsError {
    #[error("cyclotomic index M = {0} is not a power of two")]
    MNotPowerOfTwo(usize),
    #[error("cyclotomic index M = {0} must exceed 2")]
    MTooSmall(usize),
    #[error("ring degree N = {n} does not equal M/2 for M = {m}")]
    DegreeMismatch { m: usize, n: usize },
    #[error("secret Hamming weight h = {h} exceeds N = {n}")]
    HammingWeightTooLarge { h: usize, n: usize },
    #[error("scale delta must be positive")]
    NonPositiveDelta,
    #[error("rescale base p must be at least 2")]
    BaseTooSmall,
    #[error("base modulus q0 must be positive")]
    NonPositiveBaseModulus,
    #[error("error parameter sigma must be a positive finite real, got {0}")]
    InvalidSigma(f64),
    #[error("auxiliary modulus P must be positive")]
    NonPositiveAuxModulus,
    #[error("level {level} is outside the chain [0, {max}]")]
    LevelOutOfRange { level: usize, max: usize },
}

/// All public parameters of an instance.
///
/// Field names follow the conventional symbols: `m` is the cyclotomic index
/// `M`, `n = M/2` the ring degree, `levels` the maximum level `L` and
/// `aux_modulus` the key-switching modulus `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct CkksParams {
    pub m: usize,
    pub n: usize,
    pub delta: BigInt,
    pub p: BigInt,
    pub q0: BigInt,
    pub levels: usize,
    pub sigma_err: f64,
    pub h: usize,
    pub aux_modulus: BigInt,
}

impl CkksParams {
    /// Builds and validates a parameter set.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        m: usize,
        n: usize,
        delta: BigInt,
        p: BigInt,
        q0: BigInt,
        levels: usize,
        sigma_err: f64,
        h: usize,
        aux_modulus: BigInt,
    ) -> Result<Self, ParamsError> {
        let params = Self {
            m,
            n,
            delta,
            p,
            q0,
            levels,
            sigma_err,
            h,
            aux_modulus,
        };
        params.validate()?;
        Ok(params)
    }

    /// Like [`CkksParams::new`] with the default auxiliary modulus `P = q_L`.
    #[allow(clippy::too_many_arguments)]
    pub fn with_default_aux(
        m: usize,
        delta: BigInt,
        p: BigInt,
        q0: BigInt,
        levels: usize,
        sigma_err: f64,
        h: usize,
    ) -> Result<Self, ParamsError> {
        let top = &q0 * num_traits::pow(p.clone(), levels);
        Self::new(m, m / 2, delta, p, q0, levels, sigma_err, h, top)
    }

    /// The worked toy example: `M = 8`, `Δ = 64`, chain `[5, 20, 80, 320, 1280]`.
    pub fn toy() -> Self {
        Self::with_default_aux(
            8,
            BigInt::from(64),
            BigInt::from(4),
            BigInt::from(5),
            4,
            3.2,
            2,
        )
        .expect("toy preset is valid")
    }

    /// A larger demonstration set: `N = 1024`, 30-bit scale. Not a secure parameter set.
    pub fn demo() -> Self {
        Self::with_default_aux(
            2048,
            BigInt::one() << 30,
            BigInt::one() << 30,
            BigInt::one() << 40,
            3,
            3.2,
            64,
        )
        .expect("demo preset is valid")
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        if self.m <= 2 {
            return Err(ParamsError::MTooSmall(self.m));
        }
        if !self.m.is_power_of_two() {
            return Err(ParamsError::MNotPowerOfTwo(self.m));
        }
        if self.n * 2 != self.m {
            return Err(ParamsError::DegreeMismatch {
                m: self.m,
                n: self.n,
            });
        }
        if self.h > self.n {
            return Err(ParamsError::HammingWeightTooLarge {
                h: self.h,
                n: self.n,
            });
        }
        if !self.delta.is_positive() {
            return Err(ParamsError::NonPositiveDelta);
        }
        if self.p < BigInt::from(2) {
            return Err(ParamsError::BaseTooSmall);
        }
        if !self.q0.is_positive() {
            return Err(ParamsError::NonPositiveBaseModulus);
        }
        if !(self.sigma_err.is_finite() && self.sigma_err > 0.0) {
            return Err(ParamsError::InvalidSigma(self.sigma_err));
        }
        if !self.aux_modulus.is_positive() {
            return Err(ParamsError::NonPositiveAuxModulus);
        }
        Ok(())
    }

    /// `[q_0, ..., q_L]`.
    pub fn modulus_chain(&self) -> Vec<BigInt> {
        let mut chain = Vec::with_capacity(self.levels + 1);
        let mut q = self.q0.clone();
        for _ in 0..=self.levels {
            chain.push(q.clone());
            q *= &self.p;
        }
        chain
    }

    /// `q_l`, for `0 <= l <= L`.
    pub fn modulus_at(&self, level: usize) -> Result<BigInt, ParamsError> {
        if level > self.levels {
            return Err(ParamsError::LevelOutOfRange {
                level,
                max: self.levels,
            });
        }
        Ok(&self.q0 * num_traits::pow(self.p.clone(), level))
    }

    /// `q_L`.
    pub fn top_modulus(&self) -> BigInt {
        &self.q0 * num_traits::pow(self.p.clone(), self.levels)
    }

    /// `P * q_L`, the modulus of evaluation and rotation keys.
    pub fn key_modulus(&self) -> BigInt {
        &self.aux_modulus * self.top_modulus()
    }

    pub fn slots(&self) -> usize {
        self.n / 2
    }

    /// Parses the flat `name=value` document written by `Display`.
    ///
    /// `P` may be omitted, in which case it defaults to `q_L`.
    pub fn from_text(text: &str) -> Result<Self, crate::Error> {
        use crate::Error;

        let mut m = None;
        let mut n = None;
        let mut delta = None;
        let mut p = None;
        let mut q0 = None;
        let mut levels = None;
        let mut sigma = None;
        let mut h = None;
        let mut aux = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("line {}: expected name=value", lineno + 1)))?;
            let value = value.trim();
            let bad =
                |what: &str| Error::parse(format!("line {}: invalid {what} {value:?}", lineno + 1));
            match key.trim() {
                "M" => m = Some(value.parse::<usize>().map_err(|_| bad("M"))?),
                "N" => n = Some(value.parse::<usize>().map_err(|_| bad("N"))?),
                "delta" => delta = Some(value.parse::<BigInt>().map_err(|_| bad("delta"))?),
                "p" => p = Some(value.parse::<BigInt>().map_err(|_| bad("p"))?),
                "q0" => q0 = Some(value.parse::<BigInt>().map_err(|_| bad("q0"))?),
                "L" => levels = Some(value.parse::<usize>().map_err(|_| bad("L"))?),
                "sigma_err" => sigma = Some(value.parse::<f64>().map_err(|_| bad("sigma_err"))?),
                "h" => h = Some(value.parse::<usize>().map_err(|_| bad("h"))?),
                "P" => aux = Some(value.parse::<BigInt>().map_err(|_| bad("P"))?),
                other => {
                    return Err(Error::parse(format!(
                        "line {}: unknown parameter {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        let missing = |name: &str| Error::parse(format!("missing parameter {name}"));
        let m = m.ok_or_else(|| missing("M"))?;
        let n = n.ok_or_else(|| missing("N"))?;
        let delta = delta.ok_or_else(|| missing("delta"))?;
        let p = p.ok_or_else(|| missing("p"))?;
        let q0 = q0.ok_or_else(|| missing("q0"))?;
        let levels = levels.ok_or_else(|| missing("L"))?;
        let sigma = sigma.ok_or_else(|| missing("sigma_err"))?;
        let h = h.ok_or_else(|| missing("h"))?;
        let aux = match aux {
            Some(aux) => aux,
            None => &q0 * num_traits::pow(p.clone(), levels),
        };
        Ok(Self::new(m, n, delta, p, q0, levels, sigma, h, aux)?)
    }
}

impl fmt::Display for CkksParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "M={}", self.m)?;
        writeln!(f, "N={}", self.n)?;
        writeln!(f, "delta={}", self.delta)?;
        writeln!(f, "p={}", self.p)?;
        writeln!(f, "q0={}", self.q0)?;
        writeln!(f, "L={}", self.levels)?;
        writeln!(f, "sigma_err={:?}", self.sigma_err)?;
        writeln!(f, "h={}", self.h)?;
        writeln!(f, "P={}", self.aux_modulus)
    }
}
