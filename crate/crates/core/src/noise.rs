//! Fresh-encryption noise bound and measured noise.

use crate::encoding::EmbeddingContext;
use crate::params::CkksParams;
use crate::ring::RingElement;
use crate::scheme::{decrypt, Ciphertext, SchemeError, SecretKey};
use num_traits::ToPrimitive;

/// High-probability bound on the canonical norm of fresh encryption noise:
/// `8√2·σN + 6σ√N + 16σ√(hN)`.
pub fn b_clean(params: &CkksParams) -> f64 {
    b_clean_for(params.sigma_err, params.n, params.h)
}

pub fn b_clean_for(sigma: f64, n: usize, h: usize) -> f64 {
    let n = n as f64;
    let h = h as f64;
    8.0 * 2f64.sqrt() * sigma * n + 6.0 * sigma * n.sqrt() + 16.0 * sigma * (h * n).sqrt()
}

/// Whether `Δ > N + 2·B_clean`, the condition under which fresh Gaussian-integer
/// messages decode exactly.
pub fn decode_safe(params: &CkksParams) -> bool {
    let delta = params.delta.to_f64().unwrap_or(f64::INFINITY);
    decode_safe_with(delta, params.n, b_clean(params))
}

pub fn decode_safe_with(delta: f64, n: usize, b_clean: f64) -> bool {
    delta > n as f64 + 2.0 * b_clean
}

/// `‖decrypt(c) - m‖^can`.
pub fn measured_noise(
    ctx: &EmbeddingContext,
    sk: &SecretKey,
    c: &Ciphertext,
    expected: &RingElement,
) -> Result<f64, SchemeError> {
    let diff = decrypt(sk, c)?.sub(&expected.lift())?;
    Ok(ctx.canonical_norm(&diff)?)
}

/// Noise bound after a homomorphic addition.
pub fn add_bound(n1: f64, n2: f64) -> f64 {
    n1 + n2
}

/// The fresh-noise bound of a parameter set together with an optional
/// measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseBudget {
    pub b_clean: f64,
    pub level: usize,
    pub measured: Option<f64>,
}

impl NoiseBudget {
    pub fn fresh(params: &CkksParams) -> Self {
        Self {
            b_clean: b_clean(params),
            level: params.levels,
            measured: None,
        }
    }

    pub fn measure(
        params: &CkksParams,
        ctx: &EmbeddingContext,
        sk: &SecretKey,
        c: &Ciphertext,
        expected: &RingElement,
    ) -> Result<Self, SchemeError> {
        Ok(Self {
            b_clean: b_clean(params),
            level: c.level,
            measured: Some(measured_noise(ctx, sk, c, expected)?),
        })
    }

    /// `None` when nothing has been measured.
    pub fn within_bound(&self) -> Option<bool> {
        self.measured.map(|m| m < self.b_clean)
    }
}
