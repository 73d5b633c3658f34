//! Arithmetic in `Z[x]/(x^N + 1)` and `Z_q[x]/(x^N + 1)`.
//!
//! Coefficients are arbitrary-precision integers. When an element carries a
//! modulus `q`, every coefficient is kept as its centered representative in
//! `(-q/2, q/2]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RingError {
    #[error("ring degree mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: String, right: String },
    #[error("modulus must be at least 1, got {0}")]
    InvalidModulus(BigInt),
    #[error("Galois exponent {k} is not a unit in (0, {m})")]
    InvalidGaloisExponent { k: i64, m: usize },
    #[error("division by zero in rounded scaling")]
    ZeroDenominator,
    #[error("ring degree must be a power of two, got {0}")]
    InvalidDegree(usize),
}

/// Centered representative of `x mod q`, in `(-q/2, q/2]`.
pub fn center(x: &BigInt, q: &BigInt) -> BigInt {
    let r = x.mod_floor(q);
    if &(&r * 2u8) > q {
        r - q
    } else {
        r
    }
}

/// `num / den` rounded to the nearest integer, halves away from zero.
pub fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let negative = num.is_negative() != den.is_negative();
    let (n, d) = (num.abs(), den.abs());
    let (q, r) = n.div_rem(&d);
    let q = if &r * 2u8 >= d { q + 1u8 } else { q };
    if negative {
        -q
    } else {
        q
    }
}

/// Element of `Z[x]/(x^N + 1)`, optionally reduced modulo `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    coeffs: Vec<BigInt>,
    modulus: Option<BigInt>,
}

impl RingElement {
    /// Integer polynomial; `coeffs[i]` is the coefficient of `x^i`.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self {
            coeffs,
            modulus: None,
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Polynomial over `Z_q`, reducing the given coefficients.
    pub fn with_modulus(coeffs: Vec<BigInt>, q: BigInt) -> Result<Self, RingError> {
        Self::new(coeffs).mod_switch(&q)
    }

    pub fn zero(n: usize, modulus: Option<BigInt>) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); n],
            modulus,
        }
    }

    /// The constant polynomial `c`.
    pub fn constant(n: usize, c: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs[0] = c;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops the modulus, keeping the centered coefficients as integers.
    pub fn lift(&self) -> RingElement {
        Self::new(self.coeffs.clone())
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    fn reduce(mut coeffs: Vec<BigInt>, modulus: Option<BigInt>) -> Self {
        if let Some(q) = &modulus {
            for c in coeffs.iter_mut() {
                *c = center(c, q);
            }
        }
        Self { coeffs, modulus }
    }

    fn same_shape(&self, other: &Self) -> Result<(), RingError> {
        if self.degree() != other.degree() {
            return Err(RingError::LengthMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    fn same_modulus(&self, other: &Self) -> Result<Option<BigInt>, RingError> {
        self.same_shape(other)?;
        if self.modulus != other.modulus {
            return Err(RingError::ModulusMismatch {
                left: fmt_modulus(self.modulus.as_ref()),
                right: fmt_modulus(other.modulus.as_ref()),
            });
        }
        Ok(self.modulus.clone())
    }

    /// Equal moduli, or one side over `Z` (the result takes the other modulus).
    fn compatible_modulus(&self, other: &Self) -> Result<Option<BigInt>, RingError> {
        self.same_shape(other)?;
        match (&self.modulus, &other.modulus) {
            (Some(a), Some(b)) if a != b => Err(RingError::ModulusMismatch {
                left: a.to_string(),
                right: b.to_string(),
            }),
            (Some(q), _) | (_, Some(q)) => Ok(Some(q.clone())),
            (None, None) => Ok(None),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        let modulus = self.same_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::reduce(coeffs, modulus))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        let modulus = self.same_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::reduce(coeffs, modulus))
    }

    pub fn neg(&self) -> Self {
        Self::reduce(
            self.coeffs.iter().map(|c| -c).collect(),
            self.modulus.clone(),
        )
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        Self::reduce(
            self.coeffs.iter().map(|c| c * k).collect(),
            self.modulus.clone(),
        )
    }

    /// Product modulo `x^N + 1` (and `q`, when present).
    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        let modulus = self.compatible_modulus(other)?;
        Ok(Self::reduce(
            negacyclic_mul(&self.coeffs, &other.coeffs),
            modulus,
        ))
    }

    /// Centered reduction into `Z_{q_new}`; replaces any existing modulus.
    pub fn mod_switch(&self, q_new: &BigInt) -> Result<Self, RingError> {
        if q_new < &BigInt::one() {
            return Err(RingError::InvalidModulus(q_new.clone()));
        }
        Ok(Self::reduce(self.coeffs.clone(), Some(q_new.clone())))
    }

    /// Replaces each coefficient `c` by `round(num * c / den)` and clears the modulus.
    pub fn round_scale(&self, num: &BigInt, den: &BigInt) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::ZeroDenominator);
        }
        Ok(Self::new(
            self.coeffs
                .iter()
                .map(|c| round_div(&(c * num), den))
                .collect(),
        ))
    }

    /// `a(x) -> a(x^k)` in `Z[x]/(x^N + 1)`, for odd `0 < k < 2N`.
    pub fn automorphism(&self, k: i64) -> Result<Self, RingError> {
        let n = self.degree();
        let m = 2 * n;
        if k <= 0 || k as usize >= m || k % 2 == 0 {
            return Err(RingError::InvalidGaloisExponent { k, m });
        }
        let k = k as usize;
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = (i * k) % m;
            if e >= n {
                out[e - n] = -c;
            } else {
                out[e] = c.clone();
            }
        }
        Ok(Self::reduce(out, self.modulus.clone()))
    }

    /// Parses the three-line text form written by `Display`.
    pub fn from_text(text: &str) -> Result<Self, crate::Error> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        Self::read_lines(&mut lines)
    }

    pub(crate) fn read_lines<'a>(
        lines: &mut impl Iterator<Item = &'a str>,
    ) -> Result<Self, crate::Error> {
        use crate::Error;

        let n_line = lines
            .next()
            .ok_or_else(|| Error::parse("missing N= line"))?;
        let n: usize = n_line
            .trim()
            .strip_prefix("N=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::parse(format!("expected N=<int>, got {n_line:?}")))?;
        let q_line = lines
            .next()
            .ok_or_else(|| Error::parse("missing q= line"))?;
        let q = match q_line.trim().strip_prefix("q=") {
            Some("none") => None,
            Some(v) => Some(
                v.parse::<BigInt>()
                    .map_err(|_| Error::parse(format!("invalid modulus {v:?}")))?,
            ),
            None => {
                return Err(Error::parse(format!(
                    "expected q=<int|none>, got {q_line:?}"
                )))
            }
        };
        let c_line = lines.next().unwrap_or("");
        let coeffs = c_line
            .split_whitespace()
            .map(|w| {
                w.parse::<BigInt>()
                    .map_err(|_| Error::parse(format!("invalid coefficient {w:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() != n {
            return Err(Error::parse(format!(
                "expected {n} coefficients, found {}",
                coeffs.len()
            )));
        }
        match q {
            Some(q) => Ok(Self::with_modulus(coeffs, q)?),
            None => Ok(Self::new(coeffs)),
        }
    }
}

fn fmt_modulus(q: Option<&BigInt>) -> String {
    q.map_or_else(|| "none".to_string(), |q| q.to_string())
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N={}", self.degree())?;
        writeln!(f, "q={}", fmt_modulus(self.modulus.as_ref()))?;
        let mut first = true;
        for c in &self.coeffs {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        writeln!(f)
    }
}

/// Negacyclic product of two coefficient vectors of equal length.
///
/// Uses `i128` accumulators when the operand sizes guarantee no overflow and
/// falls back to big-integer arithmetic otherwise.
pub fn negacyclic_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    debug_assert_eq!(n, b.len());
    let bits = |v: &[BigInt]| v.iter().map(BigInt::bits).max().unwrap_or(0);
    let headroom = usize::BITS - n.leading_zeros();
    if bits(a) + bits(b) + headroom as u64 + 1 < 127 && bits(a) < 127 && bits(b) < 127 {
        let a: Vec<i128> = a
            .iter()
            .map(|c| c.to_i128().expect("checked bit length"))
            .collect();
        let b: Vec<i128> = b
            .iter()
            .map(|c| c.to_i128().expect("checked bit length"))
            .collect();
        let mut acc = vec![0i128; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let k = i + j;
                if k < n {
                    acc[k] += x * y;
                } else {
                    acc[k - n] -= x * y;
                }
            }
        }
        return acc.into_iter().map(BigInt::from).collect();
    }
    let mut acc = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let k = i + j;
            if k < n {
                acc[k] += x * y;
            } else {
                acc[k - n] -= x * y;
            }
        }
    }
    acc
}
