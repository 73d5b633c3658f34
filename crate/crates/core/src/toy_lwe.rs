//! Single-bit LWE public-key encryption.
//!
//! Keys: `A ← Z_q^{n×m}`, `b = sᵀA + eᵀ mod q` with every error entry in
//! `[-⌊q/4m⌋, ⌊q/4m⌋]`. A bit `μ` encrypts as `(A·r, bᵀr + μ·⌈q/2⌉)` for
//! `r ← {0,1}^m`. Since `|eᵀr| ≤ m·q/4m = q/4`, decryption compares the
//! centered distance of `v - sᵀu` from zero against `q/4`.

use rand::Rng;
use thiserror::Error;

use crate::sampling::RngState;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LweError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("dimensions must be positive (n = {n}, m = {m})")]
    InvalidDimension { n: usize, m: usize },
    #[error("message must be a single bit, got {0}")]
    InvalidBit(u8),
    #[error("expected a vector of length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("error entry {value} exceeds the bound q/(4m)")]
    ErrorTooLarge { value: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LweParams {
    pub n: usize,
    pub m: usize,
    pub q: u64,
}

impl LweParams {
    pub fn new(n: usize, m: usize, q: u64) -> Result<Self, LweError> {
        if n == 0 || m == 0 {
            return Err(LweError::InvalidDimension { n, m });
        }
        if !is_prime(q) {
            return Err(LweError::NotPrime(q));
        }
        Ok(Self { n, m, q })
    }

    /// The per-entry error bound `q/(4m)` as a fraction `(numerator, denominator)`.
    pub fn noise_bound(&self) -> (u64, u64) {
        (self.q, 4 * self.m as u64)
    }

    /// `⌊q/(4m)⌋`, the largest integer error magnitude.
    pub fn chi_bound(&self) -> i64 {
        (self.q / (4 * self.m as u64)) as i64
    }

    /// `⌈q/2⌉`.
    pub fn half(&self) -> i64 {
        self.q.div_ceil(2) as i64
    }

    fn reduce(&self, x: i128) -> i64 {
        x.rem_euclid(self.q as i128) as i64
    }

    /// Centered representative in `(-q/2, q/2]`.
    pub fn center(&self, x: i64) -> i64 {
        let r = self.reduce(x as i128);
        if 2 * r as u64 > self.q {
            r - self.q as i64
        } else {
            r
        }
    }
}

/// `(A, b)`, with `A` stored as `n` rows of length `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LwePublicKey {
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LweKeys {
    pub s: Vec<i64>,
    /// Kept so the correctness identity can be checked term by term.
    pub e: Vec<i64>,
    pub public: LwePublicKey,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LweCiphertext {
    pub u: Vec<i64>,
    pub v: i64,
}

fn check_len(len: usize, expected: usize) -> Result<(), LweError> {
    if len != expected {
        return Err(LweError::LengthMismatch {
            expected,
            found: len,
        });
    }
    Ok(())
}

impl LweKeys {
    /// Assembles keys from explicit `s`, `A` and `e`, computing `b`.
    pub fn from_parts(
        params: &LweParams,
        s: Vec<i64>,
        a: Vec<Vec<i64>>,
        e: Vec<i64>,
    ) -> Result<Self, LweError> {
        check_len(s.len(), params.n)?;
        check_len(a.len(), params.n)?;
        for row in &a {
            check_len(row.len(), params.m)?;
        }
        check_len(e.len(), params.m)?;
        let (num, den) = params.noise_bound();
        if let Some(&value) = e.iter().find(|&&x| x.unsigned_abs() * den > num) {
            return Err(LweError::ErrorTooLarge { value });
        }
        let b = (0..params.m)
            .map(|j| {
                let dot: i128 = (0..params.n).map(|i| s[i] as i128 * a[i][j] as i128).sum();
                params.reduce(dot + e[j] as i128)
            })
            .collect();
        Ok(Self {
            s,
            e,
            public: LwePublicKey { a, b },
        })
    }

    /// Whether every entry of `b - sᵀA` is within `q/(4m)` of zero.
    pub fn is_consistent(&self, params: &LweParams) -> bool {
        let (num, den) = params.noise_bound();
        (0..params.m).all(|j| {
            let dot: i128 = (0..params.n)
                .map(|i| self.s[i] as i128 * self.public.a[i][j] as i128)
                .sum();
            let diff = params.center(params.reduce(self.public.b[j] as i128 - dot));
            diff.unsigned_abs() * den <= num
        })
    }
}

pub fn lwe_gen(params: &LweParams, rng: &mut RngState) -> Result<LweKeys, LweError> {
    let q = params.q as i64;
    let bound = params.chi_bound();
    let s = (0..params.n).map(|_| rng.gen_range(0..q)).collect();
    let a = (0..params.n)
        .map(|_| (0..params.m).map(|_| rng.gen_range(0..q)).collect())
        .collect();
    let e = (0..params.m)
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    LweKeys::from_parts(params, s, a, e)
}

/// Encryption with an explicit selector vector `r ∈ {0,1}^m`.
pub fn lwe_enc_with(
    params: &LweParams,
    pk: &LwePublicKey,
    bit: u8,
    r: &[u8],
) -> Result<LweCiphertext, LweError> {
    if bit > 1 {
        return Err(LweError::InvalidBit(bit));
    }
    check_len(r.len(), params.m)?;
    if let Some(&x) = r.iter().find(|&&x| x > 1) {
        return Err(LweError::InvalidBit(x));
    }
    let u =
        pk.a.iter()
            .map(|row| {
                let sum: i128 = row
                    .iter()
                    .zip(r)
                    .map(|(&a, &ri)| a as i128 * ri as i128)
                    .sum();
                params.reduce(sum)
            })
            .collect();
    let br: i128 =
        pk.b.iter()
            .zip(r)
            .map(|(&b, &ri)| b as i128 * ri as i128)
            .sum();
    let v = params.reduce(br + bit as i128 * params.half() as i128);
    Ok(LweCiphertext { u, v })
}

pub fn lwe_enc(
    params: &LweParams,
    pk: &LwePublicKey,
    bit: u8,
    rng: &mut RngState,
) -> Result<LweCiphertext, LweError> {
    let r: Vec<u8> = (0..params.m).map(|_| rng.gen_range(0..=1)).collect();
    lwe_enc_with(params, pk, bit, &r)
}

/// `0` when `v - sᵀu` is centered-closer to zero than `q/4`, else `1`.
pub fn lwe_dec(params: &LweParams, s: &[i64], ct: &LweCiphertext) -> Result<u8, LweError> {
    check_len(s.len(), params.n)?;
    check_len(ct.u.len(), params.n)?;
    let dot: i128 = s
        .iter()
        .zip(&ct.u)
        .map(|(&a, &b)| a as i128 * b as i128)
        .sum();
    let x = params.center(params.reduce(ct.v as i128 - dot));
    Ok(if 4 * x.unsigned_abs() < params.q {
        0
    } else {
        1
    })
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for &a in &BASES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(257));
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(LweParams::new(4, 8, 96).is_err());
        assert!(LweParams::new(0, 8, 97).is_err());
    }

    #[test]
    fn params_quantities() {
        let p = LweParams::new(8, 16, 257).unwrap();
        assert_eq!(p.chi_bound(), 4);
        assert_eq!(p.half(), 129);
        assert_eq!(p.noise_bound(), (257, 64));
        assert_eq!(p.center(200), -57);
        assert_eq!(p.center(128), 128);
    }

    #[test]
    fn zero_error_gives_exact_product() {
        let params = LweParams::new(4, 8, 97).unwrap();
        let mut rng = RngState::from_seed(1);
        let keys = lwe_gen(&params, &mut rng).unwrap();
        let exact = LweKeys::from_parts(&params, keys.s.clone(), keys.public.a.clone(), vec![0; 8])
            .unwrap();
        for j in 0..8 {
            let dot: i64 = (0..4).map(|i| exact.s[i] * exact.public.a[i][j]).sum();
            assert_eq!(exact.public.b[j], dot.rem_euclid(97));
        }
    }

    #[test]
    fn keys_are_deterministic_and_consistent() {
        let params = LweParams::new(4, 8, 97).unwrap();
        let k1 = lwe_gen(&params, &mut RngState::from_seed(42)).unwrap();
        let k2 = lwe_gen(&params, &mut RngState::from_seed(42)).unwrap();
        assert_eq!(k1, k2);
        assert!(k1.is_consistent(&params));
        // recompute b by hand
        for j in 0..8 {
            let dot: i64 = (0..4).map(|i| k1.s[i] * k1.public.a[i][j]).sum::<i64>() + k1.e[j];
            assert_eq!(k1.public.b[j], dot.rem_euclid(97));
        }
        let mut tampered = k1.clone();
        tampered.public.b[3] = (tampered.public.b[3] + 40) % 97;
        assert!(!tampered.is_consistent(&params));
    }

    #[test]
    fn zero_selector_encryptions() {
        let params = LweParams::new(4, 8, 97).unwrap();
        let keys = lwe_gen(&params, &mut RngState::from_seed(5)).unwrap();
        let zero = [0u8; 8];
        let c1 = lwe_enc_with(&params, &keys.public, 1, &zero).unwrap();
        assert_eq!(
            c1,
            LweCiphertext {
                u: vec![0; 4],
                v: 49
            }
        );
        let c0 = lwe_enc_with(&params, &keys.public, 0, &zero).unwrap();
        assert_eq!(
            c0,
            LweCiphertext {
                u: vec![0; 4],
                v: 0
            }
        );
        assert_eq!(lwe_dec(&params, &keys.s, &c0).unwrap(), 0);
        assert_eq!(lwe_dec(&params, &keys.s, &c1).unwrap(), 1);
        assert!(lwe_enc_with(&params, &keys.public, 2, &zero).is_err());
    }

    #[test]
    fn correctness_identity() {
        let params = LweParams::new(8, 16, 257).unwrap();
        let mut rng = RngState::from_seed(77);
        let keys = lwe_gen(&params, &mut rng).unwrap();
        for bit in [0u8, 1] {
            let r: Vec<u8> = (0..16).map(|_| rng.gen_range(0..=1)).collect();
            let ct = lwe_enc_with(&params, &keys.public, bit, &r).unwrap();
            let su: i64 = keys.s.iter().zip(&ct.u).map(|(a, b)| a * b).sum();
            let er: i64 = keys.e.iter().zip(&r).map(|(&e, &ri)| e * ri as i64).sum();
            assert_eq!(
                (ct.v - su).rem_euclid(257),
                (er + bit as i64 * 129).rem_euclid(257)
            );
        }
    }

    #[test]
    fn round_trips_over_seeds() {
        let params = LweParams::new(8, 16, 257).unwrap();
        for seed in 0..100 {
            let mut rng = RngState::from_seed(seed);
            let keys = lwe_gen(&params, &mut rng).unwrap();
            for bit in [0u8, 1] {
                let ct = lwe_enc(&params, &keys.public, bit, &mut rng).unwrap();
                assert_eq!(lwe_dec(&params, &keys.s, &ct).unwrap(), bit);
            }
        }
    }
}
