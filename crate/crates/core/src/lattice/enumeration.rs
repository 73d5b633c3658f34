//! Exhaustive short-vector and closest-vector search.
//!
//! Points `Σ x_i b_i` within a given distance of a target are listed by
//! walking the coefficients from the last Gram-Schmidt direction to the
//! first. Along direction `i` the partial squared distance is
//! `(x_i - c_i)²·‖b̃_i‖²`, where `c_i` depends only on the coefficients
//! already fixed, so each level scans outward from the nearest integer to
//! `c_i` and stops as soon as the remaining budget is exceeded.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{norm_sq, Basis, Gso, LatticeError, Q};

/// Largest rank accepted by the brute-force searches.
pub const MAX_ENUM_RANK: usize = 6;

fn check_rank(b: &Basis) -> Result<(), LatticeError> {
    if b.rank() > MAX_ENUM_RANK {
        return Err(LatticeError::DimensionTooLarge {
            rank: b.rank(),
            max: MAX_ENUM_RANK,
        });
    }
    Ok(())
}

/// Calls `visit(x, d²)` for every integer `x` with
/// `‖Σ x_i b_i - Σ τ_i b̃_i‖² = d² ≤ radius_sq`.
pub(crate) fn enumerate_ball(
    gso: &Gso,
    tau: &[Q],
    radius_sq: &Q,
    visit: &mut dyn FnMut(&[BigInt], &Q),
) {
    let n = gso.norms.len();
    if n == 0 {
        return;
    }
    let mut x = vec![BigInt::zero(); n];
    search(gso, tau, radius_sq, n - 1, &Q::zero(), &mut x, visit);
}

fn search(
    gso: &Gso,
    tau: &[Q],
    radius_sq: &Q,
    i: usize,
    partial: &Q,
    x: &mut Vec<BigInt>,
    visit: &mut dyn FnMut(&[BigInt], &Q),
) {
    let mut c = tau[i].clone();
    for j in i + 1..x.len() {
        c -= Q::from_integer(x[j].clone()) * &gso.mu[j][i];
    }
    let nearest = (&c + Q::new(1.into(), 2.into())).floor().to_integer();
    // upward from the nearest integer, then downward from one below it
    for step in [BigInt::one(), -BigInt::one()] {
        let mut k = if step.is_positive() {
            nearest.clone()
        } else {
            &nearest - 1
        };
        loop {
            let d = Q::from_integer(k.clone()) - &c;
            let cost = partial + &d * &d * &gso.norms[i];
            if cost > *radius_sq {
                break;
            }
            x[i] = k.clone();
            if i == 0 {
                visit(x, &cost);
            } else {
                search(gso, tau, radius_sq, i - 1, &cost, x, visit);
            }
            k += &step;
        }
    }
    x[i] = BigInt::zero();
}

fn radius_factor(multiplier: f64) -> Result<Q, LatticeError> {
    if !multiplier.is_finite() || multiplier < 1.0 {
        return Err(LatticeError::InvalidRadius(multiplier));
    }
    Q::from_float(multiplier * multiplier).ok_or(LatticeError::InvalidRadius(multiplier))
}

/// A nonzero lattice vector of least Euclidean norm, first nonzero entry
/// positive.
///
/// The search ball has radius `radius_multiplier · min_i ‖b_i‖`, which is at
/// least the shortest vector length whenever the multiplier is `≥ 1`.
pub fn brute_force_svp(b: &Basis, radius_multiplier: f64) -> Result<Vec<Q>, LatticeError> {
    check_rank(b)?;
    let factor = radius_factor(radius_multiplier)?;
    let gso = Gso::new(b.vectors());
    let shortest_input = b
        .vectors()
        .iter()
        .map(|v| norm_sq(v))
        .min()
        .expect("a basis has at least one vector");
    let radius_sq = shortest_input * factor;
    let tau = vec![Q::zero(); b.rank()];
    let mut best: Option<(Q, Vec<BigInt>)> = None;
    enumerate_ball(&gso, &tau, &radius_sq, &mut |x, d| {
        if x.iter().all(Zero::is_zero) {
            return;
        }
        if best.as_ref().is_none_or(|(bd, _)| d < bd) {
            best = Some((d.clone(), x.to_vec()));
        }
    });
    let (_, x) = best.expect("some basis vector lies inside the search ball");
    let mut v = b.combine(&x);
    if v.iter()
        .find(|t| !t.is_zero())
        .is_some_and(|t| t.is_negative())
    {
        v.iter_mut().for_each(|t| *t = -&*t);
    }
    Ok(v)
}

/// The lattice vector nearest to `t`.
///
/// A target outside the span is first projected onto it; the orthogonal part
/// is the same for every lattice vector. The search radius is the distance to
/// the rounded-coordinates candidate, so the result is never worse than it.
pub fn brute_force_cvp(b: &Basis, t: &[Q]) -> Result<Vec<Q>, LatticeError> {
    check_rank(b)?;
    if t.len() != b.dim() {
        return Err(LatticeError::DimensionMismatch {
            left: b.dim(),
            right: t.len(),
        });
    }
    let gso = Gso::new(b.vectors());
    let rounded = babai_rounding(b, t)?;
    let tau = gso.gso_coords(t);
    let within = |v: &[Q]| gso.residual_free_distance_sq(v, t);
    let radius_sq = within(&b.combine(&rounded));
    let mut best = (radius_sq.clone(), rounded);
    enumerate_ball(&gso, &tau, &radius_sq, &mut |x, d| {
        if *d < best.0 {
            best = (d.clone(), x.to_vec());
        }
    });
    Ok(b.combine(&best.1))
}

/// Rounds the exact coordinates of the projection of `t` (halves go up).
pub fn babai_rounding(b: &Basis, t: &[Q]) -> Result<Vec<BigInt>, LatticeError> {
    let gso = Gso::new(b.vectors());
    let mut projected = vec![Q::zero(); b.dim()];
    for (c, bs) in gso.gso_coords(t).iter().zip(&gso.bstar) {
        for (p, s) in projected.iter_mut().zip(bs) {
            *p += c * s;
        }
    }
    let y = gso
        .coordinates(&projected)
        .expect("projection lies in the span");
    let half = Q::new(1.into(), 2.into());
    Ok(y.iter().map(|c| (c + &half).floor().to_integer()).collect())
}

impl Gso {
    /// `‖v - t‖²` minus the part of `t` orthogonal to the span, for `v` in the
    /// span.
    fn residual_free_distance_sq(&self, v: &[Q], t: &[Q]) -> Q {
        let diff: Vec<Q> = v.iter().zip(t).map(|(a, b)| a - b).collect();
        norm_sq(&diff) - self.distance_sq(t)
    }
}
