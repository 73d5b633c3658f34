//! Exact rational lattice utilities for small dimensions.
//!
//! A [`Basis`] holds `n` linearly independent rational row vectors in
//! `Q^m`. Everything here, including Gram-Schmidt, coordinates and
//! determinants, is computed over `BigRational`, so boundary questions such as
//! "is this coordinate exactly 1" have definite answers.

mod enumeration;

pub use enumeration::{babai_rounding, brute_force_cvp, brute_force_svp, MAX_ENUM_RANK};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Q = BigRational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("no vectors given")]
    Empty,
    #[error("vector {index} has length {found}, expected {expected}")]
    RaggedRows {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("{n} vectors cannot be independent in dimension {m}")]
    TooManyVectors { n: usize, m: usize },
    #[error("vectors have rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("ambient dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("ranks differ: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("vector is not in the span of the basis")]
    OutsideSpan,
    #[error("vector {index} is not in the lattice")]
    NotInLattice { index: usize },
    #[error("rank {rank} exceeds the enumeration limit {max}")]
    DimensionTooLarge { rank: usize, max: usize },
    #[error("all generators are zero")]
    AllZero,
    #[error("radius multiplier must be a finite number >= 1, got {0}")]
    InvalidRadius(f64),
}

/// Independent rational row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    vectors: Vec<Vec<Q>>,
}

fn check_rows(rows: &[Vec<Q>]) -> Result<usize, LatticeError> {
    let first = rows.first().ok_or(LatticeError::Empty)?;
    let m = first.len();
    for (index, r) in rows.iter().enumerate() {
        if r.len() != m {
            return Err(LatticeError::RaggedRows {
                index,
                expected: m,
                found: r.len(),
            });
        }
    }
    Ok(m)
}

impl Basis {
    pub fn new(vectors: Vec<Vec<Q>>) -> Result<Self, LatticeError> {
        let m = check_rows(&vectors)?;
        let n = vectors.len();
        if n > m {
            return Err(LatticeError::TooManyVectors { n, m });
        }
        let rank = rank_of(&vectors);
        if rank != n {
            return Err(LatticeError::RankDeficient { rank, expected: n });
        }
        Ok(Self { vectors })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn from_bigints(rows: &[Vec<BigInt>]) -> Result<Self, LatticeError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
                .collect(),
        )
    }

    pub fn vectors(&self) -> &[Vec<Q>] {
        &self.vectors
    }

    /// Number of vectors.
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.vectors[0].len()
    }

    /// `Σ x_i b_i`.
    pub fn combine(&self, x: &[BigInt]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (xi, b) in x.iter().zip(&self.vectors) {
            if xi.is_zero() {
                continue;
            }
            let xi = Q::from_integer(xi.clone());
            for (o, bj) in out.iter_mut().zip(b) {
                *o += &xi * bj;
            }
        }
        out
    }

    /// Exact coordinates `y` with `v = Σ y_i b_i`.
    pub fn coordinates(&self, v: &[Q]) -> Result<Vec<Q>, LatticeError> {
        if v.len() != self.dim() {
            return Err(LatticeError::DimensionMismatch {
                left: self.dim(),
                right: v.len(),
            });
        }
        Gso::new(&self.vectors)
            .coordinates(v)
            .ok_or(LatticeError::OutsideSpan)
    }

    /// Reads `n m` followed by `n` rows of `m` rationals (`p/q` or integers).
    pub fn from_text(text: &str) -> crate::Result<Self> {
        Ok(Self::new(parse_matrix(text)?)?)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_matrix(&self.vectors))
    }
}

pub fn parse_rational(s: &str) -> crate::Result<Q> {
    let q: Q = s
        .parse()
        .map_err(|_| crate::Error::parse(format!("bad rational `{s}`")))?;
    Ok(q)
}

/// Whitespace-separated rationals on one line.
pub fn parse_vector(line: &str) -> crate::Result<Vec<Q>> {
    line.split_whitespace().map(parse_rational).collect()
}

pub fn parse_matrix(text: &str) -> crate::Result<Vec<Vec<Q>>> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| crate::Error::parse("empty matrix file"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| crate::Error::parse(format!("bad matrix header `{header}`")))?;
    let [n, m] = dims[..] else {
        return Err(crate::Error::parse(format!(
            "matrix header must be `n m`, got `{header}`"
        )));
    };
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| crate::Error::parse(format!("missing row {i} of {n}")))?;
        let row = parse_vector(line)?;
        if row.len() != m {
            return Err(crate::Error::parse(format!(
                "row {i} has {} entries, expected {m}",
                row.len()
            )));
        }
        rows.push(row);
    }
    if let Some(extra) = lines.next() {
        return Err(crate::Error::parse(format!("unexpected line `{extra}`")));
    }
    Ok(rows)
}

pub fn format_vector(v: &[Q]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_matrix(rows: &[Vec<Q>]) -> String {
    let m = rows.first().map_or(0, Vec::len);
    let mut out = format!("{} {m}\n", rows.len());
    for r in rows {
        out.push_str(&format_vector(r));
        out.push('\n');
    }
    out
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(v: &[Q]) -> Q {
    dot(v, v)
}

/// Floating-point Euclidean norm of an exact vector, for reporting.
pub fn norm(v: &[Q]) -> f64 {
    sqrt_f64(&norm_sq(v))
}

fn sqrt_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY).sqrt()
}

/// Gram-Schmidt data of an independent family.
pub(crate) struct Gso {
    pub bstar: Vec<Vec<Q>>,
    pub norms: Vec<Q>,
    /// `mu[i][j] = <b_i, b̃_j> / <b̃_j, b̃_j>` for `j < i`.
    pub mu: Vec<Vec<Q>>,
}

impl Gso {
    /// `vectors` must be independent.
    pub fn new(vectors: &[Vec<Q>]) -> Self {
        let mut bstar: Vec<Vec<Q>> = Vec::with_capacity(vectors.len());
        let mut norms: Vec<Q> = Vec::with_capacity(vectors.len());
        let mut mu = Vec::with_capacity(vectors.len());
        for b in vectors {
            let mut v = b.clone();
            let mut row = Vec::with_capacity(bstar.len());
            for (bs, ns) in bstar.iter().zip(&norms) {
                let c = dot(b, bs) / ns;
                for (vi, bsi) in v.iter_mut().zip(bs) {
                    *vi -= &c * bsi;
                }
                row.push(c);
            }
            norms.push(norm_sq(&v));
            bstar.push(v);
            mu.push(row);
        }
        Self { bstar, norms, mu }
    }

    /// `<v, b̃_j> / <b̃_j, b̃_j>` for each `j`.
    pub fn gso_coords(&self, v: &[Q]) -> Vec<Q> {
        self.bstar
            .iter()
            .zip(&self.norms)
            .map(|(bs, ns)| dot(v, bs) / ns)
            .collect()
    }

    /// Component of `v` orthogonal to the span.
    pub fn residual(&self, v: &[Q]) -> Vec<Q> {
        let mut r = v.to_vec();
        for (t, bs) in self.gso_coords(v).iter().zip(&self.bstar) {
            for (ri, bsi) in r.iter_mut().zip(bs) {
                *ri -= t * bsi;
            }
        }
        r
    }

    pub fn distance_sq(&self, v: &[Q]) -> Q {
        norm_sq(&self.residual(v))
    }

    /// Coordinates in the original vectors, or `None` outside the span.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        if !self.residual(v).iter().all(Zero::is_zero) {
            return None;
        }
        let t = self.gso_coords(v);
        let n = t.len();
        let mut y = vec![Q::zero(); n];
        for j in (0..n).rev() {
            let mut acc = t[j].clone();
            for i in j + 1..n {
                acc -= &y[i] * &self.mu[i][j];
            }
            y[j] = acc;
        }
        Some(y)
    }
}

/// Exact rank of a family of rational vectors.
pub fn rank_of(rows: &[Vec<Q>]) -> usize {
    let mut kept: Vec<Vec<Q>> = Vec::new();
    for r in rows {
        let g = Gso::new(&kept);
        if !g.residual(r).iter().all(Zero::is_zero) {
            kept.push(r.clone());
        }
    }
    kept.len()
}

/// `b̃_i = b_i - Σ_{j<i} proj_{b̃_j}(b_i)`, pairwise exactly orthogonal.
pub fn gram_schmidt(b: &Basis) -> Vec<Vec<Q>> {
    Gso::new(&b.vectors).bstar
}

/// `min_i ‖b̃_i‖²`, exact.
pub fn lambda1_lower_bound_sq(b: &Basis) -> Q {
    Gso::new(&b.vectors)
        .norms
        .into_iter()
        .min()
        .expect("a basis has at least one vector")
}

/// `min_i ‖b̃_i‖`, a lower bound on the shortest nonzero lattice vector.
pub fn lambda1_lower_bound(b: &Basis) -> f64 {
    sqrt_f64(&lambda1_lower_bound_sq(b))
}

/// Exact determinant by fraction-based elimination.
pub fn determinant(u: &[Vec<Q>]) -> Result<Q, LatticeError> {
    let cols = check_rows(u)?;
    let n = u.len();
    if cols != n {
        return Err(LatticeError::NotSquare { rows: n, cols });
    }
    let mut a = u.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Ok(Q::zero());
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..n {
                let delta = &f * &a[c][k];
                a[r][k] -= delta;
            }
        }
    }
    Ok(det)
}

/// Integer entries and determinant `±1`.
pub fn is_unimodular(u: &[Vec<Q>]) -> Result<bool, LatticeError> {
    let det = determinant(u)?;
    let integral = u.iter().flatten().all(|x| x.is_integer());
    Ok(integral && det.abs().is_one())
}

fn check_compatible(b1: &Basis, b2: &Basis) -> Result<(), LatticeError> {
    if b1.dim() != b2.dim() {
        return Err(LatticeError::DimensionMismatch {
            left: b1.dim(),
            right: b2.dim(),
        });
    }
    if b1.rank() != b2.rank() {
        return Err(LatticeError::RankMismatch {
            left: b1.rank(),
            right: b2.rank(),
        });
    }
    Ok(())
}

/// Whether the change-of-basis matrix taking `b1` to `b2` exists and is
/// unimodular.
pub fn same_lattice(b1: &Basis, b2: &Basis) -> Result<bool, LatticeError> {
    check_compatible(b1, b2)?;
    let g = Gso::new(&b1.vectors);
    let mut change = Vec::with_capacity(b2.rank());
    for v in &b2.vectors {
        match g.coordinates(v) {
            Some(y) => change.push(y),
            None => return Ok(false),
        }
    }
    is_unimodular(&change)
}

/// Whether every coordinate of `v` in `b` lies in `[0, 1)`.
pub fn in_parallelepiped(v: &[Q], b: &Basis) -> Result<bool, LatticeError> {
    let y = b.coordinates(v)?;
    Ok(y.iter().all(|c| !c.is_negative() && c < &Q::one()))
}

/// Whether `v` (vectors of `L(b)`) is itself a basis of `L(b)`: true iff no
/// nonzero lattice point lies in the half-open parallelepiped of `v`.
///
/// With `v = C·b`, a point `x·b` lies in the parallelepiped iff `x = y·C`
/// for some `y ∈ [0,1)^n`, so each `x_j` lies between the sums of the
/// negative and positive entries of column `j` of `C`. That box is searched
/// exhaustively.
pub fn is_basis_of(v: &Basis, b: &Basis) -> Result<bool, LatticeError> {
    check_compatible(v, b)?;
    let gb = Gso::new(&b.vectors);
    let mut c = Vec::with_capacity(v.rank());
    for (index, row) in v.vectors.iter().enumerate() {
        let y = gb
            .coordinates(row)
            .filter(|y| y.iter().all(|t| t.is_integer()))
            .ok_or(LatticeError::NotInLattice { index })?;
        c.push(
            y.into_iter()
                .map(|t| t.to_integer())
                .collect::<Vec<BigInt>>(),
        );
    }
    let n = b.rank();
    let lo: Vec<BigInt> = (0..n)
        .map(|j| c.iter().map(|r| r[j].clone().min(BigInt::zero())).sum())
        .collect();
    let hi: Vec<BigInt> = (0..n)
        .map(|j| c.iter().map(|r| r[j].clone().max(BigInt::zero())).sum())
        .collect();
    let gv = Gso::new(&v.vectors);
    let mut x = lo.clone();
    loop {
        if !x.iter().all(Zero::is_zero) {
            let point = b.combine(&x);
            let y = gv
                .coordinates(&point)
                .expect("lattice point lies in the span");
            if y.iter().all(|t| !t.is_negative() && t < &Q::one()) {
                return Ok(false);
            }
        }
        // odometer step
        let mut j = 0;
        loop {
            if j == n {
                return Ok(true);
            }
            if x[j] < hi[j] {
                x[j] += 1;
                break;
            }
            x[j] = lo[j].clone();
            j += 1;
        }
    }
}

/// Integer row echelon form by Euclidean row operations. The nonzero rows
/// span the same integer lattice as the input.
pub fn integer_echelon(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = rows.first().map_or(0, Vec::len);
    let mut active: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| !r.iter().all(Zero::is_zero))
        .cloned()
        .collect();
    let mut out = Vec::new();
    for col in 0..m {
        loop {
            let nz: Vec<usize> = (0..active.len())
                .filter(|&i| !active[i][col].is_zero())
                .collect();
            if nz.len() <= 1 {
                if let Some(&p) = nz.first() {
                    let mut row = active.remove(p);
                    if row[col].is_negative() {
                        row.iter_mut().for_each(|x| *x = -&*x);
                    }
                    out.push(row);
                }
                break;
            }
            let p = *nz
                .iter()
                .min_by_key(|&&i| active[i][col].abs())
                .expect("nonempty");
            let pivot = active[p].clone();
            for &i in &nz {
                if i == p {
                    continue;
                }
                let f = &active[i][col] / &pivot[col];
                for (a, b) in active[i].iter_mut().zip(&pivot) {
                    *a -= &f * b;
                }
            }
        }
    }
    out
}

/// `⌈√x⌉` for a nonnegative rational.
fn ceil_sqrt(x: &Q) -> BigInt {
    let c = x.ceil().to_integer();
    let mut r = c.sqrt();
    while Q::from_integer(&r * &r) < *x {
        r += 1;
    }
    r
}

/// A basis for the integer span of `g`.
///
/// Starts from a shortest nonzero vector and repeatedly adjoins a lattice
/// vector of least positive distance to the span of those chosen so far.
/// Candidates come from enumerating a ball: a minimizer can be shifted by
/// chosen vectors until its component inside the span has coordinates in
/// `[-1/2, 1/2]`, so its norm is at most
/// `√(d² + (½ Σ ⌈‖v_i‖⌉)²)` where `d` is any known positive distance.
pub fn basis_from_generators(g: &[Vec<BigInt>]) -> Result<Basis, LatticeError> {
    if g.is_empty() {
        return Err(LatticeError::Empty);
    }
    let m = g[0].len();
    for (index, r) in g.iter().enumerate() {
        if r.len() != m {
            return Err(LatticeError::RaggedRows {
                index,
                expected: m,
                found: r.len(),
            });
        }
    }
    let echelon = integer_echelon(g);
    if echelon.is_empty() {
        return Err(LatticeError::AllZero);
    }
    let reference = Basis::from_bigints(&echelon)?;
    let n = reference.rank();
    if n > MAX_ENUM_RANK {
        return Err(LatticeError::DimensionTooLarge {
            rank: n,
            max: MAX_ENUM_RANK,
        });
    }
    let ref_gso = Gso::new(&reference.vectors);
    let zero_target = vec![Q::zero(); n];
    let mut chosen = vec![brute_force_svp(&reference, 1.0)?];
    while chosen.len() < n {
        let cur = Gso::new(&chosen);
        let known = reference
            .vectors
            .iter()
            .map(|r| cur.distance_sq(r))
            .filter(|d| d.is_positive())
            .min()
            .expect("reference spans more than the chosen vectors");
        let half_sum = Q::new(
            chosen.iter().map(|c| ceil_sqrt(&norm_sq(c))).sum(),
            2.into(),
        );
        let radius_sq = known + &half_sum * &half_sum;
        let mut best: Option<(Q, Q, Vec<Q>)> = None;
        enumeration::enumerate_ball(&ref_gso, &zero_target, &radius_sq, &mut |x, norm| {
            let w = reference.combine(x);
            let d = cur.distance_sq(&w);
            if d.is_zero() {
                return;
            }
            let better = match &best {
                None => true,
                Some((bd, bn, _)) => d < *bd || (d == *bd && norm < bn),
            };
            if better {
                best = Some((d, norm.clone(), w));
            }
        });
        let (_, _, w) = best.expect("the ball contains a vector at the known distance");
        chosen.push(w);
    }
    Basis::new(chosen)
}
