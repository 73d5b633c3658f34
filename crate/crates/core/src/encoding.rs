//! Canonical embedding and the message encoder/decoder.
//!
//! Embedding coordinates are indexed by the odd exponents `1, 3, ..., M-1`
//! in ascending order, so coordinate `j` holds `a(ζ^(2j+1))`. The message
//! slots are the coordinates with exponent below `M/2`; the partner of
//! exponent `e` is `M - e`, which holds the complex conjugate for every
//! real polynomial.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, ToPrimitive};
use rand::Rng;
use thiserror::Error;

use crate::ring::RingElement;
use crate::sampling::RngState;

/// Relative tolerance for symmetry, projection and inversion residuals.
pub const TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EncodingError {
    #[error("cyclotomic index {0} must be a power of two greater than 2")]
    InvalidIndex(usize),
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vector is not conjugate symmetric at coordinate {index} (deviation {deviation:e})")]
    NotConjugateSymmetric { index: usize, deviation: f64 },
    #[error("projection onto basis vector {index} has imaginary part {imag:e}")]
    ComplexProjection { index: usize, imag: f64 },
    #[error("embedding inverse residual {residual:e} exceeds tolerance")]
    IllConditioned { residual: f64 },
    #[error("value {0} cannot be rounded to an integer")]
    NonFinite(f64),
    #[error("scale must be positive")]
    InvalidScale,
}

/// `N/2` complex message slots.
#[derive(Clone, Debug, PartialEq)]
pub struct MessageVector {
    pub slots: Vec<Complex64>,
}

impl MessageVector {
    pub fn new(slots: Vec<Complex64>) -> Self {
        Self { slots }
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); len])
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Largest slot-wise distance to `other`.
    pub fn max_distance(&self, other: &Self) -> f64 {
        self.slots
            .iter()
            .zip(&other.slots)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Rounds every slot to the nearest Gaussian integer.
    pub fn round_gaussian(&self) -> Self {
        Self::new(
            self.slots
                .iter()
                .map(|z| Complex64::new(z.re.round(), z.im.round()))
                .collect(),
        )
    }

    /// One slot per line, `<real> <imag>`.
    pub fn from_text(text: &str) -> Result<Self, crate::Error> {
        let mut slots = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parse = |w: &str| {
                w.parse::<f64>().map_err(|_| {
                    crate::Error::parse(format!("line {}: invalid number {w:?}", i + 1))
                })
            };
            match parts.as_slice() {
                [re, im] => slots.push(Complex64::new(parse(re)?, parse(im)?)),
                _ => {
                    return Err(crate::Error::parse(format!(
                        "line {}: expected `<real> <imag>`",
                        i + 1
                    )))
                }
            }
        }
        Ok(Self::new(slots))
    }
}

impl fmt::Display for MessageVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for z in &self.slots {
            writeln!(f, "{:?} {:?}", z.re, z.im)?;
        }
        Ok(())
    }
}

/// How real basis coordinates are rounded to integers.
pub enum Rounding<'a> {
    /// Nearest integer, ties to even.
    Nearest,
    /// Coordinate-wise random rounding: `c` goes to `ceil(c)` with probability
    /// `c - floor(c)`, so the result is unbiased.
    Random(&'a mut RngState),
}

/// Precomputed roots of unity for one cyclotomic index `M`.
#[derive(Clone, Debug)]
pub struct EmbeddingContext {
    m: usize,
    n: usize,
    exponents: Vec<usize>,
    /// `roots[k] = ζ^k` for `0 <= k < M`.
    roots: Vec<Complex64>,
}

impl EmbeddingContext {
    pub fn new(m: usize) -> Result<Self, EncodingError> {
        if m <= 2 || !m.is_power_of_two() {
            return Err(EncodingError::InvalidIndex(m));
        }
        let roots = (0..m)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64))
            .collect();
        Ok(Self {
            m,
            n: m / 2,
            exponents: (1..m).step_by(2).collect(),
            roots,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn slots(&self) -> usize {
        self.n / 2
    }

    /// `ζ = e^(2πi/M)`.
    pub fn zeta(&self) -> Complex64 {
        self.roots[1]
    }

    /// The odd exponents `1, 3, ..., M-1`.
    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    /// `ζ^k` for any integer `k`.
    pub fn root(&self, k: usize) -> Complex64 {
        self.roots[k % self.m]
    }

    /// `β_i = σ(x^i)` for `0 <= i < N`.
    pub fn basis_vector(&self, i: usize) -> Vec<Complex64> {
        self.exponents.iter().map(|&e| self.root(e * i)).collect()
    }

    /// Position of exponent `e` among the coordinates.
    pub fn coordinate_of(&self, e: usize) -> usize {
        (e % self.m - 1) / 2
    }

    fn check_len(&self, len: usize, expected: usize) -> Result<(), EncodingError> {
        if len != expected {
            return Err(EncodingError::LengthMismatch {
                expected,
                found: len,
            });
        }
        Ok(())
    }

    /// Evaluates a real-coefficient polynomial at every `ζ^e`.
    fn evaluate(&self, coeffs: &[f64]) -> Vec<Complex64> {
        self.exponents
            .iter()
            .map(|&e| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| self.root(e * i) * c)
                    .sum()
            })
            .collect()
    }

    /// `σ(a)`: the values `a(ζ^e)`. Elements with a modulus are read through
    /// their centered coefficients.
    pub fn canonical_embed(&self, a: &RingElement) -> Result<Vec<Complex64>, EncodingError> {
        self.check_len(a.degree(), self.n)?;
        let coeffs: Vec<f64> = a
            .coeffs()
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect();
        Ok(self.evaluate(&coeffs))
    }

    /// Solves `Σ α_i (ζ^e)^i = v_e` for the complex coefficients `α`.
    ///
    /// The Vandermonde matrix `V` of the embedding satisfies `V^H V = N I`, so
    /// `α = V^H v / N`.
    pub fn embed_inverse(&self, v: &[Complex64]) -> Result<Vec<Complex64>, EncodingError> {
        self.check_len(v.len(), self.n)?;
        let alpha: Vec<Complex64> = (0..self.n)
            .map(|i| {
                self.exponents
                    .iter()
                    .zip(v)
                    .map(|(&e, x)| x * self.root(e * i).conj())
                    .sum::<Complex64>()
                    / self.n as f64
            })
            .collect();

        let scale = v.iter().map(|x| x.norm()).fold(1.0, f64::max);
        let residual = self
            .exponents
            .iter()
            .zip(v)
            .map(|(&e, x)| {
                let y: Complex64 = alpha
                    .iter()
                    .enumerate()
                    .map(|(i, a)| a * self.root(e * i))
                    .sum();
                (y - x).norm()
            })
            .fold(0.0, f64::max);
        if residual > TOLERANCE * scale {
            return Err(EncodingError::IllConditioned { residual });
        }
        Ok(alpha)
    }

    /// Extends the slots to a conjugate-symmetric vector of length `N`.
    pub fn pi_expand(&self, z: &MessageVector) -> Result<Vec<Complex64>, EncodingError> {
        self.check_len(z.len(), self.slots())?;
        let mut v = vec![Complex64::new(0.0, 0.0); self.n];
        for (s, &x) in z.slots.iter().enumerate() {
            v[s] = x;
            v[self.n - 1 - s] = x.conj();
        }
        Ok(v)
    }

    /// Keeps the slot coordinates of a conjugate-symmetric vector.
    pub fn pi_restrict(&self, v: &[Complex64]) -> Result<MessageVector, EncodingError> {
        self.check_len(v.len(), self.n)?;
        let scale = v.iter().map(|x| x.norm()).fold(1.0, f64::max);
        for s in 0..self.slots() {
            let deviation = (v[self.n - 1 - s] - v[s].conj()).norm();
            if deviation > TOLERANCE * scale {
                return Err(EncodingError::NotConjugateSymmetric {
                    index: s,
                    deviation,
                });
            }
        }
        Ok(MessageVector::new(v[..self.slots()].to_vec()))
    }

    /// Coordinates `⟨v, β_i⟩ / ‖β_i‖²` of `v` in the orthogonal basis `β`.
    ///
    /// Each `β_i` has squared norm `N`. The inner product conjugates its
    /// second argument.
    pub fn project_onto_sigma(&self, v: &[Complex64]) -> Result<Vec<f64>, EncodingError> {
        self.check_len(v.len(), self.n)?;
        let scale = v.iter().map(|x| x.norm()).fold(1.0, f64::max);
        (0..self.n)
            .map(|i| {
                let z: Complex64 = self
                    .exponents
                    .iter()
                    .zip(v)
                    .map(|(&e, x)| x * self.root(e * i).conj())
                    .sum::<Complex64>()
                    / self.n as f64;
                if z.im.abs() > TOLERANCE * scale {
                    Err(EncodingError::ComplexProjection {
                        index: i,
                        imag: z.im,
                    })
                } else {
                    Ok(z.re)
                }
            })
            .collect()
    }

    /// `Σ z_i β_i`.
    pub fn reconstruct(&self, coords: &[f64]) -> Result<Vec<Complex64>, EncodingError> {
        self.check_len(coords.len(), self.n)?;
        Ok(self.evaluate(coords))
    }

    /// Full encoder: expand, scale by `Δ`, project onto `σ(R)`, round, then
    /// invert the embedding of the rounded lattice point.
    pub fn encode(
        &self,
        z: &MessageVector,
        delta: &BigInt,
        rounding: Rounding<'_>,
    ) -> Result<RingElement, EncodingError> {
        let delta = positive_scale(delta)?;
        let scaled: Vec<Complex64> = self.pi_expand(z)?.into_iter().map(|x| x * delta).collect();
        let coords = self.project_onto_sigma(&scaled)?;
        let rounded = cwr_round(&coords, rounding)?;
        let lattice_coords: Vec<f64> = rounded
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect();
        let point = self.reconstruct(&lattice_coords)?;
        let alpha = self.embed_inverse(&point)?;

        let coeffs = alpha
            .iter()
            .map(|a| {
                let nearest = a.re.round();
                let residual = (a - Complex64::new(nearest, 0.0)).norm();
                if residual > TOLERANCE * a.norm().max(1.0) {
                    return Err(EncodingError::IllConditioned { residual });
                }
                BigInt::from_f64(nearest).ok_or(EncodingError::NonFinite(nearest))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RingElement::new(coeffs))
    }

    /// `π(σ(m)) / Δ`.
    pub fn decode(&self, m: &RingElement, delta: &BigInt) -> Result<MessageVector, EncodingError> {
        let delta = positive_scale(delta)?;
        let v = self.canonical_embed(m)?;
        let slots = self.pi_restrict(&v)?;
        Ok(MessageVector::new(
            slots.slots.into_iter().map(|x| x / delta).collect(),
        ))
    }

    /// `‖σ(a)‖_∞`.
    pub fn canonical_norm(&self, a: &RingElement) -> Result<f64, EncodingError> {
        Ok(self
            .canonical_embed(a)?
            .iter()
            .map(|x| x.norm())
            .fold(0.0, f64::max))
    }

    /// For `a'(x) = a(x^k)`, coordinate `j` of `σ(a')` equals coordinate
    /// `map[j]` of `σ(a)`.
    pub fn galois_coordinate_map(&self, k: usize) -> Vec<usize> {
        self.exponents
            .iter()
            .map(|&e| self.coordinate_of(e * k))
            .collect()
    }

    /// Slot-level view of [`Self::galois_coordinate_map`]: new slot `s` is old
    /// slot `map[s].0`, conjugated when `map[s].1` is set.
    pub fn galois_slot_map(&self, k: usize) -> Vec<(usize, bool)> {
        (0..self.slots())
            .map(|s| {
                let t = ((2 * s + 1) * k) % self.m;
                if t < self.m / 2 {
                    ((t - 1) / 2, false)
                } else {
                    ((self.m - t - 1) / 2, true)
                }
            })
            .collect()
    }

    /// The slot vector that decoding `m(x^k)` yields when `m` decodes to `z`.
    pub fn permute_slots(&self, z: &MessageVector, k: usize) -> MessageVector {
        MessageVector::new(
            self.galois_slot_map(k)
                .into_iter()
                .map(|(src, conj)| {
                    if conj {
                        z.slots[src].conj()
                    } else {
                        z.slots[src]
                    }
                })
                .collect(),
        )
    }
}

fn positive_scale(delta: &BigInt) -> Result<f64, EncodingError> {
    match delta.to_f64() {
        Some(d) if d > 0.0 && d.is_finite() => Ok(d),
        _ => Err(EncodingError::InvalidScale),
    }
}

/// Rounds each real coordinate to an integer.
pub fn cwr_round(coeffs: &[f64], rounding: Rounding<'_>) -> Result<Vec<BigInt>, EncodingError> {
    match rounding {
        Rounding::Nearest => coeffs
            .iter()
            .map(|&c| {
                let r = c.round_ties_even();
                BigInt::from_f64(r).ok_or(EncodingError::NonFinite(c))
            })
            .collect(),
        Rounding::Random(rng) => coeffs
            .iter()
            .map(|&c| {
                if !c.is_finite() {
                    return Err(EncodingError::NonFinite(c));
                }
                let floor = c.floor();
                let frac = c - floor;
                let u: f64 = rng.gen();
                let r = if u < frac { floor + 1.0 } else { floor };
                BigInt::from_f64(r).ok_or(EncodingError::NonFinite(c))
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ctx8() -> EmbeddingContext {
        EmbeddingContext::new(8).unwrap()
    }

    /// Direct evaluation `Σ a_i z^i` via powi, independent of the root table.
    fn eval_at(coeffs: &[i64], z: Complex64) -> Complex64 {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| z.powi(i as i32) * a as f64)
            .sum()
    }

    #[test]
    fn context_shape() {
        let ctx = ctx8();
        assert_eq!(ctx.exponents(), &[1, 3, 5, 7]);
        assert!((ctx.zeta() - c(0.5f64.sqrt(), 0.5f64.sqrt())).norm() < 1e-12);
        for i in 0..4 {
            assert!(ctx
                .basis_vector(i)
                .iter()
                .all(|x| (x.norm() - 1.0).abs() < 1e-12));
        }
        assert!(EmbeddingContext::new(6).is_err());
        assert!(EmbeddingContext::new(2).is_err());
    }

    #[test]
    fn embedding_of_worked_example_polynomial() {
        let ctx = ctx8();
        assert!(ctx
            .canonical_embed(&RingElement::from_i64(&[1, 0, 0, 0]))
            .unwrap()
            .iter()
            .all(|x| (x - c(1.0, 0.0)).norm() < 1e-12));
        let m = RingElement::from_i64(&[160, 90, 160, 45]);
        let v = ctx.canonical_embed(&m).unwrap();
        assert!((v[0].re - 191.82).abs() < 0.01 && (v[0].im - 255.46).abs() < 0.01);
        assert!((v[1].re - 128.18).abs() < 0.01 && (v[1].im + 64.54).abs() < 0.01);
    }

    #[test]
    fn embedding_matches_direct_evaluation_and_is_symmetric() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(11);
        for m in [8usize, 16, 64] {
            let ctx = EmbeddingContext::new(m).unwrap();
            let n = m / 2;
            let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-1000..1000)).collect();
            let v = ctx
                .canonical_embed(&RingElement::from_i64(&coeffs))
                .unwrap();
            for (j, &e) in ctx.exponents().iter().enumerate() {
                let zeta_e = Complex64::from_polar(1.0, 2.0 * PI * e as f64 / m as f64);
                assert!((v[j] - eval_at(&coeffs, zeta_e)).norm() < 1e-6);
                let partner = ctx.coordinate_of(m - e);
                assert!((v[partner] - v[j].conj()).norm() < 1e-6);
            }
        }
    }

    #[test]
    fn projection_of_worked_example() {
        let ctx = ctx8();
        let z = MessageVector::new(vec![c(3.0, 4.0), c(2.0, -1.0)]);
        let v = ctx.pi_expand(&z).unwrap();
        // in ascending exponent order: ζ, ζ^3, ζ^5, ζ^7
        assert_eq!(
            v,
            vec![c(3.0, 4.0), c(2.0, -1.0), c(2.0, 1.0), c(3.0, -4.0)]
        );
        let scaled: Vec<Complex64> = v.iter().map(|x| x * 64.0).collect();
        let coords = ctx.project_onto_sigma(&scaled).unwrap();
        for (got, want) in coords.iter().zip([160.0, 90.5, 160.0, 45.2]) {
            assert!((got - want).abs() < 0.06, "{got} vs {want}");
        }
        // exact values are 160, 64√2, 160, 32√2
        assert!((coords[1] - 64.0 * 2f64.sqrt()).abs() < 1e-9);
        assert!((coords[3] - 32.0 * 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn projection_of_basis_vector() {
        let ctx = ctx8();
        let coords = ctx.project_onto_sigma(&ctx.basis_vector(1)).unwrap();
        for (got, want) in coords.iter().zip([0.0, 1.0, 0.0, 0.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        let asym = vec![c(1.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            ctx.project_onto_sigma(&asym),
            Err(EncodingError::ComplexProjection { .. })
        ));
    }

    #[test]
    fn restrict_cases() {
        let ctx = ctx8();
        let v = vec![
            c(189.70, 258.58),
            c(130.302, -63.419),
            c(130.302, 63.419),
            c(189.70, -258.58),
        ];
        let z = ctx.pi_restrict(&v).unwrap();
        assert_eq!(z.slots, vec![c(189.70, 258.58), c(130.302, -63.419)]);
        let mut bad = v.clone();
        bad[2].im += 1.0;
        assert!(matches!(
            ctx.pi_restrict(&bad),
            Err(EncodingError::NotConjugateSymmetric { .. })
        ));
        let real = ctx
            .pi_expand(&MessageVector::new(vec![c(1.5, 0.0), c(-2.0, 0.0)]))
            .unwrap();
        assert_eq!(real[0], real[3]);
        assert_eq!(real[1], real[2]);
    }

    #[test]
    fn nearest_rounding_ties_to_even() {
        let got = cwr_round(&[160.0, 90.5, 160.0, 45.2], Rounding::Nearest).unwrap();
        assert_eq!(got, [160, 90, 160, 45].map(BigInt::from).to_vec());
        let got = cwr_round(&[2.5, -2.5, 3.5, -0.4], Rounding::Nearest).unwrap();
        assert_eq!(got, [2, -2, 4, 0].map(BigInt::from).to_vec());
    }

    #[test]
    fn rounding_keeps_integers() {
        let ints = [3.0, -7.0, 0.0, 12345.0];
        let want: Vec<BigInt> = [3, -7, 0, 12345].map(BigInt::from).to_vec();
        assert_eq!(cwr_round(&ints, Rounding::Nearest).unwrap(), want);
        let mut rng = RngState::from_seed(4);
        assert_eq!(cwr_round(&ints, Rounding::Random(&mut rng)).unwrap(), want);
    }

    #[test]
    fn random_rounding_is_unbiased() {
        let mut rng = RngState::from_seed(8);
        let trials = 10_000;
        let out = cwr_round(&vec![0.25; trials], Rounding::Random(&mut rng)).unwrap();
        let mean = out.iter().map(|x| x.to_f64().unwrap()).sum::<f64>() / trials as f64;
        assert!((mean - 0.25).abs() < 0.02, "mean {mean}");
        // three standard errors for a Bernoulli(0.7) shifted by -3
        let out = cwr_round(&vec![-2.3; trials], Rounding::Random(&mut rng)).unwrap();
        let mean = out.iter().map(|x| x.to_f64().unwrap()).sum::<f64>() / trials as f64;
        let se = (0.3f64 * 0.7 / trials as f64).sqrt();
        assert!((mean + 2.3).abs() < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn inverse_recovers_integer_polynomials() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(12);
        for m in [8usize, 16, 512] {
            let ctx = EmbeddingContext::new(m).unwrap();
            let coeffs: Vec<i64> = (0..m / 2)
                .map(|_| rng.gen_range(-1 << 20..1 << 20))
                .collect();
            let v = ctx
                .canonical_embed(&RingElement::from_i64(&coeffs))
                .unwrap();
            let alpha = ctx.embed_inverse(&v).unwrap();
            for (a, &want) in alpha.iter().zip(&coeffs) {
                assert!((a.re - want as f64).abs() < 1e-6 && a.im.abs() < 1e-6);
                assert_eq!(a.re.round() as i64, want);
            }
            // projection then reconstruction is the identity on lattice points
            let coords = ctx.project_onto_sigma(&v).unwrap();
            let back = ctx.reconstruct(&coords).unwrap();
            for (x, y) in back.iter().zip(&v) {
                assert!((x - y).norm() < 1e-6 * y.norm().max(1.0));
            }
        }
        let ctx = ctx8();
        let zero = ctx.embed_inverse(&[c(0.0, 0.0); 4]).unwrap();
        assert!(zero.iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn decode_constant() {
        let ctx = EmbeddingContext::new(16).unwrap();
        let z = ctx
            .decode(
                &RingElement::constant(8, BigInt::from(64)),
                &BigInt::from(64),
            )
            .unwrap();
        assert!(z.slots.iter().all(|s| (s - c(1.0, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn canonical_norm_cases() {
        let ctx = ctx8();
        assert!(
            (ctx.canonical_norm(&RingElement::constant(4, BigInt::from(5)))
                .unwrap()
                - 5.0)
                .abs()
                < 1e-12
        );
        for k in 0..4 {
            let mut coeffs = [0i64; 4];
            coeffs[k] = 1;
            let norm = ctx.canonical_norm(&RingElement::from_i64(&coeffs)).unwrap();
            assert!((norm - 1.0).abs() < 1e-12);
        }
        let a = [7i64, -3, 11, 2];
        let direct = [1usize, 3, 5, 7]
            .iter()
            .map(|&e| eval_at(&a, Complex64::from_polar(1.0, 2.0 * PI * e as f64 / 8.0)).norm())
            .fold(0.0, f64::max);
        let got = ctx.canonical_norm(&RingElement::from_i64(&a)).unwrap();
        assert!((got - direct).abs() < 1e-9);
    }

    #[test]
    fn slot_maps() {
        let ctx = EmbeddingContext::new(16).unwrap();
        assert_eq!(
            ctx.galois_slot_map(1),
            vec![(0, false), (1, false), (2, false), (3, false)]
        );
        // exponent 1 * 3 = 3 -> slot 1; 3 * 3 = 9 -> partner of 7 (slot 3), conjugated
        assert_eq!(ctx.galois_slot_map(3)[0], (1, false));
        assert_eq!(ctx.galois_slot_map(3)[1], (3, true));
        assert_eq!(ctx.galois_coordinate_map(1), (0..8).collect::<Vec<_>>());
        let mut seen = ctx.galois_coordinate_map(5);
        seen.sort_unstable();
        assert_eq!(seen, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn message_text_round_trip() {
        let z = MessageVector::new(vec![c(3.0, 4.0), c(2.0333333333333, -0.9909)]);
        assert_eq!(MessageVector::from_text(&z.to_string()).unwrap(), z);
        assert!(MessageVector::from_text("1.0\n").is_err());
    }
}
