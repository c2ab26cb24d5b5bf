//! Rank profile of the shifted family `𝔸_t = 𝔸 − it dz`.
//!
//! For a self-dual caloron the Dirac operator coupled to `𝔸_t` is injective,
//! so its cokernel (the Nahm fibre at `t`) has dimension `−ind`. The index is
//! locally constant in `t`, jumps only where some `mu_j − t` hits `mu0·Z`, and
//! is `mu0`-periodic. Crossing `t = mu_j + N·mu0` upward raises the index by
//! `k_j`.
//!
//! Next to the index-formula profile this module computes the sequence
//! `m_j = k0 + k_1 + … + k_j` attached to the intervals between the offsets
//! `ε_1 ≥ ε_2 ≥ … ≥ ε_n`. Both profiles have the same jumps; they differ by the
//! constant `Σ_j N_j k_j`, so they coincide when all `mu_j` lie in `(0, mu0)`
//! or all `k_j` vanish.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::boundary::{lattice_position, BoundaryData, LATTICE_TOL};
use crate::error::Result;
use crate::index::index_total;

/// A jump point in `[0, mu0)` with the lines congruent to it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JumpPoint {
    pub t: f64,
    pub lines: Vec<usize>,
    /// `Σ k_j` over the congruent lines: the index increase when crossing
    /// upward.
    pub jump: i64,
    /// Some congruent `mu_j` is itself a lattice point, so the unshifted
    /// operator (t = 0) is not Fredholm.
    pub non_fredholm_line: bool,
}

/// Offset of `mu` in `[0, mu0)`, snapping lattice hits to 0.
fn offset(mu: f64, mu0: f64) -> f64 {
    if lattice_position(mu, mu0).on_lattice {
        return 0.0;
    }
    let r = mu.rem_euclid(mu0);
    if r >= mu0 {
        0.0
    } else {
        r
    }
}

fn dedup_tol(mu0: f64) -> f64 {
    LATTICE_TOL * mu0
}

/// Jump points with their annotations, ascending in `[0, mu0)`.
pub fn jump_annotations(data: &BoundaryData) -> Vec<JumpPoint> {
    let mu0 = data.mu0;
    let mut raw: Vec<(f64, usize)> = data
        .lines
        .iter()
        .enumerate()
        .map(|(j, l)| (offset(l.mu, mu0), j))
        .collect();
    raw.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let tol = dedup_tol(mu0);
    let mut out: Vec<JumpPoint> = Vec::new();
    for (eps, j) in raw {
        let on_lattice = eps == 0.0;
        match out.last_mut() {
            Some(p) if (eps - p.t).abs() < tol => {
                p.lines.push(j);
                p.jump += data.lines[j].k;
                p.non_fredholm_line |= on_lattice;
            }
            _ => out.push(JumpPoint {
                t: eps,
                lines: vec![j],
                jump: data.lines[j].k,
                non_fredholm_line: on_lattice,
            }),
        }
    }
    // a value just below mu0 is congruent to 0
    if out.len() > 1 {
        let last = out.last().unwrap();
        if mu0 - last.t < tol {
            let last = out.pop().unwrap();
            let first = &mut out[0];
            if first.t < tol {
                first.lines.extend(last.lines);
                first.jump += last.jump;
                first.non_fredholm_line |= last.non_fredholm_line;
            } else {
                out.insert(0, JumpPoint { t: 0.0, ..last });
            }
        }
    }
    out
}

/// `{mu_j mod mu0}` deduplicated and sorted.
pub fn jump_points(data: &BoundaryData) -> Vec<f64> {
    jump_annotations(data).into_iter().map(|p| p.t).collect()
}

/// One open interval of constant index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub t_lo: f64,
    pub t_hi: f64,
    pub index: i64,
    pub rank: i64,
}

/// `m_j` attached to one line in the ε-descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankLabel {
    /// Position in the ε-descending order, `0..n`.
    pub j: usize,
    /// Line whose ε closes the interval from above (`None` for `j = 0`).
    pub line: Option<usize>,
    pub m: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NahmProfile {
    pub mu0: f64,
    pub jump_points: Vec<JumpPoint>,
    /// One period, starting at the first jump point.
    pub segments: Vec<Segment>,
    pub mj_sequence: Vec<RankLabel>,
}

const MIDPOINT_GUARD: f64 = 10.0 * LATTICE_TOL;

fn evaluate_segment(data: &BoundaryData, lo: f64, hi: f64) -> Result<Segment> {
    let mid = 0.5 * (lo + hi);
    let guard = MIDPOINT_GUARD * data.mu0.max(mid.abs());
    debug_assert!(mid - lo > guard && hi - mid > guard);
    let index = index_total(data, mid)?.total;
    Ok(Segment {
        t_lo: lo,
        t_hi: hi,
        index,
        rank: -index,
    })
}

/// Segments over one period `[p_0, p_0 + mu0)`, with ranks from the index
/// formula, plus the `m_j` sequence.
pub fn rank_profile(data: &BoundaryData) -> Result<NahmProfile> {
    let jumps = jump_annotations(data);
    let mu0 = data.mu0;
    let mut bounds: Vec<f64> = jumps.iter().map(|p| p.t).collect();
    bounds.push(bounds[0] + mu0);
    let segments = bounds
        .windows(2)
        .map(|w| evaluate_segment(data, w[0], w[1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(NahmProfile {
        mu0,
        jump_points: jumps,
        segments,
        mj_sequence: mj_sequence(data, &data.lines.iter().map(|l| l.k).collect::<Vec<_>>()),
    })
}

/// Lines in the ε-descending order (ties broken by line index).
fn descending_order(data: &BoundaryData) -> Vec<usize> {
    let mut order: Vec<usize> = (0..data.lines.len()).collect();
    let eps: Vec<f64> = data.lines.iter().map(|l| offset(l.mu, data.mu0)).collect();
    order.sort_by(|&a, &b| eps[b].total_cmp(&eps[a]).then(a.cmp(&b)));
    order
}

/// `m_j = k0 + Σ_{i≤j} k_{(i)}` with `k_{(i)}` the Chern numbers in the
/// ε-descending order, for `j = 0, …, n−1`.
fn mj_sequence(data: &BoundaryData, ks: &[i64]) -> Vec<RankLabel> {
    let order = descending_order(data);
    let mut out = Vec::with_capacity(order.len());
    let mut m = data.k0;
    out.push(RankLabel {
        j: 0,
        line: None,
        m,
    });
    for (j, &line) in order.iter().enumerate().take(order.len() - 1) {
        m += ks[line];
        out.push(RankLabel {
            j: j + 1,
            line: Some(line),
            m,
        });
    }
    out
}

/// Which `m_j` interval a point of `[0, mu0)` falls into: `I_0` wraps around
/// from `ε_1` to `ε_n + mu0`, `I_j = (ε_{j+1}, ε_j)`.
fn mj_interval_of(t: f64, sorted_eps_desc: &[f64], mu0: f64) -> usize {
    let t = t.rem_euclid(mu0);
    let n = sorted_eps_desc.len();
    for j in 1..n {
        if t > sorted_eps_desc[j] && t < sorted_eps_desc[j - 1] {
            return j;
        }
    }
    0
}

impl NahmProfile {
    /// Rank from the `m_j` sequence on each segment.
    pub fn mj_ranks(&self, data: &BoundaryData) -> Vec<i64> {
        self.ranks_for(data, &data.lines.iter().map(|l| l.k).collect::<Vec<_>>())
    }

    fn ranks_for(&self, data: &BoundaryData, ks: &[i64]) -> Vec<i64> {
        let order = descending_order(data);
        let eps: Vec<f64> = order
            .iter()
            .map(|&l| offset(data.lines[l].mu, data.mu0))
            .collect();
        let seq = mj_sequence(data, ks);
        self.segments
            .iter()
            .map(|s| seq[mj_interval_of(0.5 * (s.t_lo + s.t_hi), &eps, self.mu0)].m)
            .collect()
    }

    /// Rank on the segment containing `t` (periodic extension).
    pub fn rank_at(&self, t: f64) -> Option<i64> {
        let p0 = self.segments.first()?.t_lo;
        let shifted = p0 + (t - p0).rem_euclid(self.mu0);
        self.segments
            .iter()
            .find(|s| shifted > s.t_lo && shifted < s.t_hi)
            .map(|s| s.rank)
    }

    /// Periodic extension of the segments over `[t_min, t_max]`, clipped to
    /// the range. Interval ends at jump points are open.
    pub fn extend(&self, t_min: f64, t_max: f64) -> Vec<Segment> {
        let mut out = Vec::new();
        let Some(first) = self.segments.first() else {
            return out;
        };
        let p0 = first.t_lo;
        let mut period = ((t_min - p0) / self.mu0).floor() as i64 - 1;
        loop {
            let shift = period as f64 * self.mu0;
            if p0 + shift > t_max {
                break;
            }
            for s in &self.segments {
                let lo = (s.t_lo + shift).max(t_min);
                let hi = (s.t_hi + shift).min(t_max);
                if hi > lo {
                    out.push(Segment {
                        t_lo: lo,
                        t_hi: hi,
                        ..s.clone()
                    });
                }
            }
            period += 1;
        }
        out
    }

    pub fn to_csv(&self) -> String {
        segments_to_csv(&self.segments)
    }
}

/// `t_lo,t_hi,index,rank` with a header row.
pub fn segments_to_csv(segments: &[Segment]) -> String {
    let mut s = String::from("t_lo,t_hi,index,rank\n");
    for seg in segments {
        let _ = writeln!(s, "{},{},{},{}", seg.t_lo, seg.t_hi, seg.index, seg.rank);
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConsistencyStatus {
    Match,
    MatchUpToRelabeling,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub status: ConsistencyStatus,
    /// Ranks from the index formula, one per segment.
    pub theorem_ranks: Vec<i64>,
    /// Ranks from the `m_j` sequence on the same segments.
    pub mj_ranks: Vec<i64>,
    /// `theorem − mj` when that difference is constant.
    pub constant_offset: Option<i64>,
    /// `Σ_j N_j k_j`.
    pub lattice_winding: i64,
}

fn permutations(items: &[i64]) -> Vec<Vec<i64>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Largest rank for which relabelings are tried exhaustively.
const MAX_RELABEL_RANK: usize = 7;

/// Compares the index-formula ranks with the `m_j` sequence.
pub fn profile_consistency_check(data: &BoundaryData) -> Result<ConsistencyReport> {
    let profile = rank_profile(data)?;
    let theorem: Vec<i64> = profile.segments.iter().map(|s| s.rank).collect();
    let mj = profile.mj_ranks(data);
    let diffs: Vec<i64> = theorem.iter().zip(&mj).map(|(a, b)| a - b).collect();
    let constant_offset = diffs
        .first()
        .copied()
        .filter(|&d| diffs.iter().all(|&x| x == d));
    let lattice_winding = data
        .lines
        .iter()
        .map(|l| {
            let n = if lattice_position(l.mu, data.mu0).on_lattice {
                lattice_position(l.mu, data.mu0).nearest
            } else {
                (l.mu / data.mu0).floor()
            };
            n as i64 * l.k
        })
        .sum();

    let status = if theorem == mj {
        ConsistencyStatus::Match
    } else if data.lines.len() <= MAX_RELABEL_RANK
        && permutations(&data.lines.iter().map(|l| l.k).collect::<Vec<_>>())
            .iter()
            .any(|ks| profile.ranks_for(data, ks) == theorem)
    {
        ConsistencyStatus::MatchUpToRelabeling
    } else {
        ConsistencyStatus::Mismatch
    };
    Ok(ConsistencyReport {
        status,
        theorem_ranks: theorem,
        mj_ranks: mj,
        constant_offset,
        lattice_winding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config_a() -> BoundaryData {
        BoundaryData::from_pairs(1.0, &[(0.3, 1), (-0.3, -1)], 1).unwrap()
    }

    #[test]
    fn jump_point_examples() {
        let pts = jump_points(&config_a());
        assert_eq!(pts.len(), 2);
        assert!((pts[0] - 0.3).abs() < 1e-15 && (pts[1] - 0.7).abs() < 1e-15);

        let d = BoundaryData::from_pairs(1.0, &[(0.5, 0), (-0.5, 0)], 0).unwrap();
        assert_eq!(jump_points(&d), vec![0.5]);

        let d = BoundaryData::from_pairs(2.0, &[(0.5, 0)], 0).unwrap();
        assert_eq!(jump_points(&d), vec![0.5]);
    }

    #[test]
    fn lattice_lines_are_annotated() {
        let d = BoundaryData::from_pairs(1.0, &[(2.0, 1), (0.4, -1)], 0).unwrap();
        let ann = jump_annotations(&d);
        assert_eq!(ann.len(), 2);
        assert_eq!(ann[0].t, 0.0);
        assert!(ann[0].non_fredholm_line);
        assert!(!ann[1].non_fredholm_line);
        // the rest of the profile is still computed
        let p = rank_profile(&d).unwrap();
        assert_eq!(p.segments.len(), 2);
    }

    #[test]
    fn near_period_end_merges_with_zero() {
        let d = BoundaryData::from_pairs(1.0, &[(-1e-12, 1), (0.5, -1)], 0).unwrap();
        let ann = jump_annotations(&d);
        assert_eq!(ann.len(), 2);
        assert_eq!(ann[0].t, 0.0);
    }

    #[test]
    fn profile_examples() {
        let trivial = BoundaryData::from_pairs(1.0, &[(0.5, 0), (-0.5, 0)], 1).unwrap();
        let p = rank_profile(&trivial).unwrap();
        assert_eq!(p.segments.len(), 1);
        assert_eq!(p.segments[0].rank, 1);
        assert!(p.mj_sequence.iter().all(|m| m.m == 1));

        let p = rank_profile(&config_a()).unwrap();
        let summary: Vec<(f64, f64, i64)> =
            p.segments.iter().map(|s| (s.t_lo, s.t_hi, s.rank)).collect();
        assert_eq!(summary.len(), 2);
        assert!((summary[0].0 - 0.3).abs() < 1e-15 && (summary[0].1 - 0.7).abs() < 1e-15);
        assert_eq!(summary[0].2, 1);
        assert!((summary[1].0 - 0.7).abs() < 1e-15 && (summary[1].1 - 1.3).abs() < 1e-15);
        assert_eq!(summary[1].2, 2);

        let zero = BoundaryData::from_pairs(1.0, &[(0.2, 0), (0.9, 0)], 0).unwrap();
        let p = rank_profile(&zero).unwrap();
        assert!(p.segments.iter().all(|s| s.rank == 0));
    }

    #[test]
    fn periodic_extension() {
        let p = rank_profile(&config_a()).unwrap();
        let ext = p.extend(-0.5, 1.5);
        let ranks: Vec<i64> = ext.iter().map(|s| s.rank).collect();
        assert_eq!(ranks, vec![1, 2, 1, 2, 1]);
        assert_eq!(ext.first().unwrap().t_lo, -0.5);
        assert_eq!(ext.last().unwrap().t_hi, 1.5);
        assert_eq!(p.rank_at(-0.4), Some(1));
        assert_eq!(p.rank_at(5.0), Some(2));
    }

    #[test]
    fn consistency_examples() {
        let d = BoundaryData::from_pairs(1.0, &[(0.3, 0), (0.6, 0)], 2).unwrap();
        let r = profile_consistency_check(&d).unwrap();
        assert_eq!(r.status, ConsistencyStatus::Match);
        assert!(r.theorem_ranks.iter().chain(&r.mj_ranks).all(|&m| m == 2));

        let r = profile_consistency_check(&config_a()).unwrap();
        assert_eq!(r.theorem_ranks, vec![1, 2]);
        assert_eq!(r.mj_ranks, vec![0, 1]);
        assert_eq!(r.constant_offset, Some(1));
        assert_eq!(r.lattice_winding, 1);
        assert_eq!(r.status, ConsistencyStatus::Mismatch);

        let single = BoundaryData::from_pairs(1.0, &[(0.4, 0)], 0).unwrap();
        assert_eq!(
            profile_consistency_check(&single).unwrap().status,
            ConsistencyStatus::Match
        );
    }

    #[test]
    fn eigenvalues_in_first_cell_match() {
        let d = BoundaryData::from_pairs(1.0, &[(0.3, 1), (0.7, -1)], 1).unwrap();
        let r = profile_consistency_check(&d).unwrap();
        assert_eq!(r.lattice_winding, 0);
        assert_eq!(r.status, ConsistencyStatus::Match);
    }

    #[test]
    fn csv_layout() {
        let p = rank_profile(&config_a()).unwrap();
        let csv = p.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("t_lo,t_hi,index,rank"));
        assert_eq!(lines.count(), 2);
    }
}
