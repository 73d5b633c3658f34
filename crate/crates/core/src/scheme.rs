//! Key generation, encryption, decryption and homomorphic evaluation.
//!
//! A ciphertext at level `l` is a pair `(c0, c1)` over `R_{q_l}` that
//! decrypts as `c0 + c1·s`. Evaluation and rotation keys live modulo
//! `P·q_L` and are used through the same key-switching routine: multiply
//! the component to be switched by the key, divide by `P` with rounding and
//! reduce modulo `q_l`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::encoding::EncodingError;
use crate::params::{CkksParams, ParamsError};
use crate::ring::{RingElement, RingError};
use crate::sampling::{CoefficientSampler, SamplingError};

/// Probability of a nonzero entry in the encryption randomness `v`.
pub const ZO_DENSITY: f64 = 0.5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchemeError {
    #[error("ciphertext levels differ: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },
    #[error("ciphertext scales differ: {left} vs {right}")]
    ScaleMismatch { left: BigInt, right: BigInt },
    #[error("scale {scale} does not fit below q_{level}/2")]
    ScaleOverflow { scale: BigInt, level: usize },
    #[error("plaintext coefficient bound {bound} must stay below q_L/4 = {limit}")]
    PlaintextTooLarge { bound: BigInt, limit: BigInt },
    #[error("target level {target} must be below the current level {current}")]
    InvalidRescaleTarget { target: usize, current: usize },
    #[error("scale {scale} is not divisible by the rescale factor {factor}")]
    ScaleNotDivisible { scale: BigInt, factor: BigInt },
    #[error("rotation key is for exponent {found}, requested {expected}")]
    RotationKeyMismatch { expected: i64, found: i64 },
    #[error("component modulus does not match q_{level}")]
    MalformedCiphertext { level: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
}

/// `sk = (1, s)` with `s` ternary of Hamming weight `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecretKey {
    pub s: RingElement,
}

/// `(b, a)` with `b = -a·s + e mod q_L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicKey {
    pub b: RingElement,
    pub a: RingElement,
}

/// `(b', a')` with `b' = -a'·s + e' + P·s² mod P·q_L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationKey {
    pub b: RingElement,
    pub a: RingElement,
}

/// Key-switching material from `s(x^k)` back to `s`:
/// `b = -a·s + e + P·s(x^k) mod P·q_L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationKey {
    pub k: i64,
    pub b: RingElement,
    pub a: RingElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciphertext {
    pub c0: RingElement,
    pub c1: RingElement,
    pub level: usize,
    /// Current scale of the encrypted message, `Δ` for fresh ciphertexts.
    pub scale: BigInt,
}

impl Ciphertext {
    /// Checks both components carry `q_level`.
    pub fn check(&self, params: &CkksParams) -> Result<(), SchemeError> {
        let q = params.modulus_at(self.level)?;
        if self.c0.modulus() != Some(&q) || self.c1.modulus() != Some(&q) {
            return Err(SchemeError::MalformedCiphertext { level: self.level });
        }
        Ok(())
    }

    /// `(m, 0)` at the given level: decrypts to `m` under every key.
    pub fn trivial(
        params: &CkksParams,
        m: &RingElement,
        level: usize,
        scale: BigInt,
    ) -> Result<Self, SchemeError> {
        let q = params.modulus_at(level)?;
        Ok(Self {
            c0: m.mod_switch(&q)?,
            c1: RingElement::zero(params.n, Some(q)),
            level,
            scale,
        })
    }
}

fn ring_from_small(coeffs: Vec<i64>) -> RingElement {
    RingElement::new(coeffs.into_iter().map(BigInt::from).collect())
}

/// `-a·s + e + extra mod q`, with `a` drawn uniformly and `e` from the error distribution.
fn rlwe_pair(
    params: &CkksParams,
    s: &RingElement,
    extra: Option<&RingElement>,
    q: &BigInt,
    sampler: &mut impl CoefficientSampler,
) -> Result<(RingElement, RingElement), SchemeError> {
    let a = RingElement::with_modulus(sampler.uniform(params.n, q)?, q.clone())?;
    let e = ring_from_small(sampler.dg(params.n, params.sigma_err.powi(2))?).mod_switch(q)?;
    let mut b = a.mul(s)?.neg().add(&e)?;
    if let Some(extra) = extra {
        b = b.add(&extra.mod_switch(q)?)?;
    }
    Ok((b, a))
}

/// Samples `s`, then the public and evaluation keys, in that draw order:
/// `s` (hwt), `a` (uniform), `e` (dg), `a'` (uniform), `e'` (dg).
pub fn keygen(
    params: &CkksParams,
    sampler: &mut impl CoefficientSampler,
) -> Result<(SecretKey, PublicKey, EvaluationKey), SchemeError> {
    let s = ring_from_small(sampler.hwt(params.n, params.h)?);
    let (b, a) = rlwe_pair(params, &s, None, &params.top_modulus(), sampler)?;
    let s2 = s.mul(&s)?.scalar_mul(&params.aux_modulus);
    let (eb, ea) = rlwe_pair(params, &s, Some(&s2), &params.key_modulus(), sampler)?;
    Ok((
        SecretKey { s },
        PublicKey { b, a },
        EvaluationKey { b: eb, a: ea },
    ))
}

/// Key-switching material for the Galois exponent `k`.
pub fn rotation_keygen(
    params: &CkksParams,
    sk: &SecretKey,
    k: i64,
    sampler: &mut impl CoefficientSampler,
) -> Result<RotationKey, SchemeError> {
    let target = sk.s.automorphism(k)?.scalar_mul(&params.aux_modulus);
    let (b, a) = rlwe_pair(params, &sk.s, Some(&target), &params.key_modulus(), sampler)?;
    Ok(RotationKey { k, b, a })
}

/// `c = v·pk + (m + e0, e1) mod q_L` with `v` from ZO(0.5) and `e0, e1` from
/// the error distribution, drawn in that order.
pub fn encrypt(
    params: &CkksParams,
    pk: &PublicKey,
    m: &RingElement,
    sampler: &mut impl CoefficientSampler,
) -> Result<Ciphertext, SchemeError> {
    let q = params.top_modulus();
    let bound = m.max_abs();
    let limit = &q / 4;
    if bound >= limit {
        return Err(SchemeError::PlaintextTooLarge { bound, limit });
    }
    let v = ring_from_small(sampler.zo(params.n, ZO_DENSITY)?);
    let sigma2 = params.sigma_err.powi(2);
    let e0 = ring_from_small(sampler.dg(params.n, sigma2)?);
    let e1 = ring_from_small(sampler.dg(params.n, sigma2)?);
    let c0 = v.mul(&pk.b)?.add(&m.add(&e0)?.mod_switch(&q)?)?;
    let c1 = v.mul(&pk.a)?.add(&e1.mod_switch(&q)?)?;
    Ok(Ciphertext {
        c0,
        c1,
        level: params.levels,
        scale: params.delta.clone(),
    })
}

/// Centered lift of `c0 + c1·secret mod q_l`.
pub fn decrypt_with(secret: &RingElement, c: &Ciphertext) -> Result<RingElement, SchemeError> {
    Ok(c.c0.add(&c.c1.mul(secret)?)?.lift())
}

/// Centered lift of `⟨c, sk⟩ mod q_l`.
pub fn decrypt(sk: &SecretKey, c: &Ciphertext) -> Result<RingElement, SchemeError> {
    decrypt_with(&sk.s, c)
}

fn same_level(c1: &Ciphertext, c2: &Ciphertext) -> Result<(), SchemeError> {
    if c1.level != c2.level {
        return Err(SchemeError::LevelMismatch {
            left: c1.level,
            right: c2.level,
        });
    }
    Ok(())
}

pub fn add(c1: &Ciphertext, c2: &Ciphertext) -> Result<Ciphertext, SchemeError> {
    same_level(c1, c2)?;
    if c1.scale != c2.scale {
        return Err(SchemeError::ScaleMismatch {
            left: c1.scale.clone(),
            right: c2.scale.clone(),
        });
    }
    Ok(Ciphertext {
        c0: c1.c0.add(&c2.c0)?,
        c1: c1.c1.add(&c2.c1)?,
        level: c1.level,
        scale: c1.scale.clone(),
    })
}

/// `(d0, d1, d2) = (b1·b2, a1·b2 + a2·b1, a1·a2) mod q_l`, which decrypts
/// under `(1, s, s²)`.
pub fn tensor(
    c1: &Ciphertext,
    c2: &Ciphertext,
) -> Result<(RingElement, RingElement, RingElement), SchemeError> {
    same_level(c1, c2)?;
    let d0 = c1.c0.mul(&c2.c0)?;
    let d1 = c1.c1.mul(&c2.c0)?.add(&c2.c1.mul(&c1.c0)?)?;
    let d2 = c1.c1.mul(&c2.c1)?;
    Ok((d0, d1, d2))
}

/// `round(d·(b, a) / P) mod q_l`, where `d` lives modulo `q_l` and the key
/// modulo `P·q_L`.
fn key_switch(
    params: &CkksParams,
    level: usize,
    d: &RingElement,
    key_b: &RingElement,
    key_a: &RingElement,
) -> Result<(RingElement, RingElement), SchemeError> {
    let q = params.modulus_at(level)?;
    let pq = &params.aux_modulus * &q;
    let d = d.lift();
    let one = BigInt::one();
    let switch = |key: &RingElement| -> Result<RingElement, SchemeError> {
        let prod = d.mul(&key.mod_switch(&pq)?)?;
        Ok(prod
            .round_scale(&one, &params.aux_modulus)?
            .mod_switch(&q)?)
    };
    Ok((switch(key_b)?, switch(key_a)?))
}

/// Homomorphic product with relinearization. The output scale is the
/// product of the input scales.
pub fn multiply(
    params: &CkksParams,
    c1: &Ciphertext,
    c2: &Ciphertext,
    evk: &EvaluationKey,
) -> Result<Ciphertext, SchemeError> {
    same_level(c1, c2)?;
    let scale = &c1.scale * &c2.scale;
    let q = params.modulus_at(c1.level)?;
    if &scale * 2u8 >= q {
        return Err(SchemeError::ScaleOverflow {
            scale,
            level: c1.level,
        });
    }
    let (d0, d1, d2) = tensor(c1, c2)?;
    let (r0, r1) = key_switch(params, c1.level, &d2, &evk.b, &evk.a)?;
    Ok(Ciphertext {
        c0: d0.add(&r0)?,
        c1: d1.add(&r1)?,
        level: c1.level,
        scale,
    })
}

/// `round(q_target / q_l · c) mod q_target`; divides the scale by
/// `p^(l - target)`.
pub fn rescale(
    params: &CkksParams,
    c: &Ciphertext,
    target: usize,
) -> Result<Ciphertext, SchemeError> {
    if target >= c.level {
        return Err(SchemeError::InvalidRescaleTarget {
            target,
            current: c.level,
        });
    }
    let factor = num_traits::pow(params.p.clone(), c.level - target);
    let (scale, rem) = c.scale.div_rem(&factor);
    if !rem.is_zero() {
        return Err(SchemeError::ScaleNotDivisible {
            scale: c.scale.clone(),
            factor,
        });
    }
    let q_from = params.modulus_at(c.level)?;
    let q_to = params.modulus_at(target)?;
    let down = |x: &RingElement| -> Result<RingElement, SchemeError> {
        Ok(x.round_scale(&q_to, &q_from)?.mod_switch(&q_to)?)
    };
    Ok(Ciphertext {
        c0: down(&c.c0)?,
        c1: down(&c.c1)?,
        level: target,
        scale,
    })
}

/// Applies `x -> x^k` to both components without key switching. The result
/// decrypts under `s(x^k)`, not `s`.
pub fn apply_galois(c: &Ciphertext, k: i64) -> Result<Ciphertext, SchemeError> {
    Ok(Ciphertext {
        c0: c.c0.automorphism(k)?,
        c1: c.c1.automorphism(k)?,
        level: c.level,
        scale: c.scale.clone(),
    })
}

/// Decrypts the output of [`apply_galois`] directly under `s(x^k)`.
pub fn decrypt_galois(sk: &SecretKey, c: &Ciphertext, k: i64) -> Result<RingElement, SchemeError> {
    decrypt_with(&sk.s.automorphism(k)?, c)
}

/// Slot permutation: automorphism on both components, then a key switch from
/// `s(x^k)` back to `s`.
pub fn rotate(
    params: &CkksParams,
    c: &Ciphertext,
    k: i64,
    rotk: &RotationKey,
) -> Result<Ciphertext, SchemeError> {
    if rotk.k != k {
        return Err(SchemeError::RotationKeyMismatch {
            expected: k,
            found: rotk.k,
        });
    }
    let moved = apply_galois(c, k)?;
    let (r0, r1) = key_switch(params, c.level, &moved.c1, &rotk.b, &rotk.a)?;
    Ok(Ciphertext {
        c0: moved.c0.add(&r0)?,
        c1: r1,
        level: c.level,
        scale: c.scale.clone(),
    })
}
