//! Exact boundary data of a framed caloron and the spectral predicates that
//! depend on it alone.
//!
//! The boundary endomorphism Φ∞ splits the boundary bundle into eigen-lines.
//! Line `j` carries the eigenvalue `i·mu_j` and the first Chern number `k_j`.
//! Together with the circle parameter `mu0` and the framed second Chern
//! number `k0` these numbers determine every index-theoretic quantity in
//! this crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative distance to `mu0·Z` below which a value counts as a lattice point.
pub const LATTICE_TOL: f64 = 1e-9;

/// One eigen-line of Φ∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub mu: f64,
    pub k: i64,
}

impl Line {
    pub fn new(mu: f64, k: i64) -> Self {
        Line { mu, k }
    }
}

/// The admissible boundary pair together with the framed second Chern number.
///
/// Repeated eigenvalues are separate lines. Construct through
/// [`BoundaryData::new`] to get a validated value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryData {
    pub mu0: f64,
    pub lines: Vec<Line>,
    pub k0: i64,
}

impl BoundaryData {
    /// Validates and wraps the data.
    pub fn new(mu0: f64, lines: Vec<Line>, k0: i64) -> Result<Self> {
        validate(BoundaryData { mu0, lines, k0 })
    }

    /// Shorthand for `(mu, k)` pairs.
    pub fn from_pairs(mu0: f64, pairs: &[(f64, i64)], k0: i64) -> Result<Self> {
        Self::new(mu0, pairs.iter().map(|&(mu, k)| Line::new(mu, k)).collect(), k0)
    }

    pub fn rank(&self) -> usize {
        self.lines.len()
    }

    /// Length of the circle, `2π/mu0`.
    pub fn period_length(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.mu0
    }

    pub fn with_k0(&self, k0: i64) -> Self {
        BoundaryData {
            k0,
            ..self.clone()
        }
    }

    /// All Chern numbers vanish.
    pub fn has_trivial_eigenbundles(&self) -> bool {
        self.lines.iter().all(|l| l.k == 0)
    }
}

/// Checks `mu0 > 0`, finiteness, at least one line, and `Σ k_j = 0`.
pub fn validate(data: BoundaryData) -> Result<BoundaryData> {
    if !(data.mu0 > 0.0) || !data.mu0.is_finite() {
        return Err(Error::NonPositivePeriod { mu0: data.mu0 });
    }
    if data.lines.is_empty() {
        return Err(Error::NoLines);
    }
    if let Some(line) = data.lines.iter().position(|l| !l.mu.is_finite()) {
        return Err(Error::NonFinite { line });
    }
    let sum: i64 = data.lines.iter().map(|l| l.k).sum();
    if sum != 0 {
        return Err(Error::ChernSumNonzero { sum });
    }
    Ok(data)
}

/// Position of `x` relative to the lattice `mu0·Z`: the nearest lattice index
/// and the tolerance-aware verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct LatticePosition {
    pub nearest: f64,
    pub on_lattice: bool,
}

pub(crate) fn lattice_position(x: f64, mu0: f64) -> LatticePosition {
    let q = x / mu0;
    let nearest = q.round();
    let tol = LATTICE_TOL * f64::max(1.0, q.abs());
    LatticePosition {
        nearest,
        on_lattice: (q - nearest).abs() < tol,
    }
}

/// Finds the first line whose shifted eigenvalue `mu_j - t` sits on the lattice.
pub(crate) fn first_lattice_hit(data: &BoundaryData, t: f64) -> Option<Error> {
    data.lines.iter().enumerate().find_map(|(line, l)| {
        let pos = lattice_position(l.mu - t, data.mu0);
        pos.on_lattice.then(|| Error::NotFredholm {
            line,
            mu: l.mu,
            t,
            lattice_point: pos.nearest * data.mu0,
        })
    })
}

/// Returns an error naming the offending line unless the shifted operator is
/// Fredholm.
pub fn require_fredholm(data: &BoundaryData, t: f64) -> Result<()> {
    match first_lattice_hit(data, t) {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Fredholm criterion for the operator coupled to `𝔸 − it dz`: no `mu_j − t`
/// lies in `mu0·Z`, i.e. `1 − exp(2π(Φ∞ − it)/mu0)` is invertible.
pub fn fredholm_check(data: &BoundaryData, t: f64) -> bool {
    first_lattice_hit(data, t).is_none()
}

/// `min_{j,k} |(mu_j − t) + k·mu0|`.
///
/// Exactly zero when the data is not Fredholm at `t` (lattice hits within
/// the tolerance are snapped to zero so the two predicates agree).
pub fn spectral_gap(data: &BoundaryData, t: f64) -> f64 {
    if !fredholm_check(data, t) {
        return 0.0;
    }
    data.lines
        .iter()
        .map(|l| {
            let r = (l.mu - t).rem_euclid(data.mu0);
            r.min(data.mu0 - r)
        })
        .fold(f64::INFINITY, f64::min)
}

/// `mu = big_n·mu0 + eps` with `0 < eps < mu0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueReduction {
    pub big_n: i64,
    pub eps: f64,
}

impl EigenvalueReduction {
    pub fn reconstruct(&self, mu0: f64) -> f64 {
        self.big_n as f64 * mu0 + self.eps
    }
}

/// Splits `mu` into its lattice part and the fractional offset in `(0, mu0)`.
pub fn reduce(mu: f64, mu0: f64) -> Result<EigenvalueReduction> {
    let pos = lattice_position(mu, mu0);
    if pos.on_lattice {
        return Err(Error::OnLattice {
            mu,
            mu0,
            lattice_point: pos.nearest * mu0,
        });
    }
    let big_n = (mu / mu0).floor();
    let eps = mu - big_n * mu0;
    // floor() can land one cell off when mu/mu0 rounds across an integer
    let (big_n, eps) = if eps >= mu0 {
        (big_n + 1.0, mu - (big_n + 1.0) * mu0)
    } else if eps <= 0.0 {
        (big_n - 1.0, mu - (big_n - 1.0) * mu0)
    } else {
        (big_n, eps)
    };
    Ok(EigenvalueReduction {
        big_n: big_n as i64,
        eps,
    })
}

/// Invertibility of the indicial operator `∇_z + i(η₁e₁ + η₂e₂ + ξe₃)` on the
/// boundary fibre. The Clifford part is invertible off the origin; at the
/// origin only the `∇_z` part is left, which is the Fredholm condition.
pub fn indicial_invertible(data: &BoundaryData, eta1: f64, eta2: f64, xi: f64, t: f64) -> bool {
    eta1 * eta1 + eta2 * eta2 + xi * xi > 0.0 || fredholm_check(data, t)
}
