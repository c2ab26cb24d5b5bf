//! Closed-form L²-index of the chiral Dirac operator.
//!
//! ```text
//! ind D⁺ = −k0 − Σ_k c₁(E⁺₍ₖ₎)
//! ```
//!
//! where `E⁺₍ₖ₎` is the sum of the eigen-lines on which `k·mu0 + (mu_j − t)` is
//! positive. Each Fourier mode `k` of a z-independent configuration is a
//! Callias-type operator on ℝ³ with index `−c₁(E⁺₍ₖ₎)`. Only finitely many modes
//! see a proper subbundle, so the sum is finite.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::boundary::{require_fredholm, BoundaryData};
use crate::error::Result;

/// Index split into the framing term and the per-mode Callias indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexBreakdown {
    pub total: i64,
    /// `−k0`.
    pub k0_term: i64,
    /// `k ↦ −c₁(E⁺₍ₖ₎)` for every mode whose positive subbundle is proper.
    pub mode_terms: BTreeMap<i64, i64>,
    /// Closed mode interval that was scanned.
    pub active_range: (i64, i64),
}

/// Mode window `[⌈(t − max mu)/mu0⌉ − 1, ⌊(t − min mu)/mu0⌋ + 1]`; every mode
/// outside it sees either all lines positive or none.
pub fn mode_range(data: &BoundaryData, t: f64) -> (i64, i64) {
    let (lo_mu, hi_mu) = data
        .lines
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), l| {
            (lo.min(l.mu), hi.max(l.mu))
        });
    let lo = ((t - hi_mu) / data.mu0).ceil() as i64 - 1;
    let hi = ((t - lo_mu) / data.mu0).floor() as i64 + 1;
    (lo, hi)
}

fn is_positive(data: &BoundaryData, k: i64, mu: f64, t: f64) -> bool {
    k as f64 * data.mu0 + (mu - t) > 0.0
}

/// `c₁` of the subbundle on which `k·mu0 − iΦ∞ + t` is positive definite.
pub fn positive_subbundle_c1(data: &BoundaryData, k: i64, t: f64) -> Result<i64> {
    require_fredholm(data, t)?;
    Ok(positive_c1_unchecked(data, k, t))
}

fn positive_c1_unchecked(data: &BoundaryData, k: i64, t: f64) -> i64 {
    data.lines
        .iter()
        .filter(|l| is_positive(data, k, l.mu, t))
        .map(|l| l.k)
        .sum()
}

/// Index of the `k`-th Fourier mode, `−c₁(E⁺₍ₖ₎)`.
pub fn callias_index_mode(data: &BoundaryData, k: i64, t: f64) -> Result<i64> {
    positive_subbundle_c1(data, k, t).map(|c| -c)
}

/// Full index with its decomposition.
pub fn index_total(data: &BoundaryData, t: f64) -> Result<IndexBreakdown> {
    require_fredholm(data, t)?;
    let active_range = mode_range(data, t);
    let mut mode_terms = BTreeMap::new();
    for k in active_range.0..=active_range.1 {
        let positive = data
            .lines
            .iter()
            .filter(|l| is_positive(data, k, l.mu, t))
            .count();
        if positive == 0 || positive == data.lines.len() {
            continue;
        }
        mode_terms.insert(k, -positive_c1_unchecked(data, k, t));
    }
    let k0_term = -data.k0;
    let total = k0_term + mode_terms.values().sum::<i64>();
    Ok(IndexBreakdown {
        total,
        k0_term,
        mode_terms,
        active_range,
    })
}

/// `∫ ch(𝔼) = −k0 − (1/mu0) Σ_j mu_j k_j`.
pub fn charge_closed_form(data: &BoundaryData) -> f64 {
    let weighted: f64 = data.lines.iter().map(|l| l.mu * l.k as f64).sum();
    -(data.k0 as f64) - weighted / data.mu0
}
