//! Subcommand implementations. Each returns a printable document and an exit
//! code; hard failures come back as errors.

use std::fmt::Write as _;

use caloron_core::boundary::{fredholm_check, spectral_gap, BoundaryData};
use caloron_core::chern_weil::{
    boundary_face_integral, default_sphere_radius, integrate_c1_sphere, integrate_ch_4d, integrate_degree_ball,
    stokes_split, GridSpec, NumericReport,
};
use caloron_core::eta::{corollary_identity, EtaReport};
use caloron_core::field::{default_regular_value, make_clutching_map, preimage_degree};
use caloron_core::format::sig;
use caloron_core::index::{index_total, IndexBreakdown};
use caloron_core::nahm::{profile_consistency_check, rank_profile, ConsistencyReport, RankLabel, Segment};
use serde::{Deserialize, Serialize};

use crate::config::{FieldRecipe, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{
    report_csv_row, report_table_header, report_table_row, to_json, Document, REPORT_CSV_HEADER,
};

pub struct Outcome {
    pub doc: Box<dyn Document>,
    pub code: u8,
    /// Reports to append to a ledger.
    pub reports: Vec<NumericReport>,
}

impl Outcome {
    fn ok(doc: impl Document + 'static) -> Self {
        Outcome {
            doc: Box::new(doc),
            code: 0,
            reports: Vec::new(),
        }
    }
}

/// Drops wall-clock times so repeated runs print identical bytes.
pub fn strip_timing(r: &mut NumericReport) {
    r.seconds = 0.0;
}

// ---- index ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexOutput {
    pub t: f64,
    pub breakdown: IndexBreakdown,
    pub corollary: EtaReport,
}

impl Document for IndexOutput {
    fn table(&self) -> String {
        let b = &self.breakdown;
        let mut s = format!("index at t = {}\n", sig(self.t));
        let _ = writeln!(s, "  total         {}", b.total);
        let _ = writeln!(s, "  k0 term       {}", b.k0_term);
        for (k, v) in &b.mode_terms {
            let _ = writeln!(s, "  mode {k:<8} {v}");
        }
        let _ = writeln!(
            s,
            "corollary: charge {} - eta/2 ({}) = {}, residual {}",
            sig(self.corollary.chern_character_integral),
            sig(0.5 * self.corollary.eta_bar_lim),
            sig(self.corollary.index_via_corollary),
            sig(self.corollary.residual)
        );
        s
    }

    fn csv(&self) -> String {
        let b = &self.breakdown;
        let mut s = String::from("quantity,value\n");
        let _ = writeln!(s, "t,{}", sig(self.t));
        let _ = writeln!(s, "total,{}", b.total);
        let _ = writeln!(s, "k0_term,{}", b.k0_term);
        for (k, v) in &b.mode_terms {
            let _ = writeln!(s, "mode_{k},{v}");
        }
        let _ = writeln!(s, "index_via_corollary,{}", sig(self.corollary.index_via_corollary));
        let _ = writeln!(s, "residual,{}", sig(self.corollary.residual));
        s
    }

    fn json(&self) -> CliResult<String> {
        to_json(self)
    }
}

pub fn index(cfg: &RunConfig, t: f64) -> CliResult<Outcome> {
    let breakdown = index_total(&cfg.boundary, t)?;
    let corollary = corollary_identity(&cfg.boundary, t)?;
    Ok(Outcome::ok(IndexOutput { t, breakdown, corollary }))
}

// ---- fredholm ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeHit {
    pub line: usize,
    pub mu: f64,
    pub lattice_point: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FredholmOutput {
    pub t: f64,
    pub fredholm: bool,
    pub spectral_gap: f64,
    pub hits: Vec<LatticeHit>,
}

impl Document for FredholmOutput {
    fn table(&self) -> String {
        if self.fredholm {
            return format!(
                "Fredholm at t={} (spectral gap {})\n",
                sig(self.t),
                sig(self.spectral_gap)
            );
        }
        let mut s = format!("NOT Fredholm at t={}\n", sig(self.t));
        for h in &self.hits {
            let _ = writeln!(
                s,
                "  line {}: mu - t = {} lies on the lattice point {}",
                h.line,
                sig(h.mu - self.t),
                sig(h.lattice_point)
            );
        }
        s
    }

    fn csv(&self) -> String {
        format!(
            "t,fredholm,spectral_gap\n{},{},{}\n",
            sig(self.t),
            self.fredholm,
            sig(self.spectral_gap)
        )
    }

    fn json(&self) -> CliResult<String> {
        to_json(self)
    }
}

pub fn fredholm(cfg: &RunConfig, t: f64) -> CliResult<Outcome> {
    let d = &cfg.boundary;
    let ok = fredholm_check(d, t);
    let hits = d
        .lines
        .iter()
        .enumerate()
        .filter_map(|(line, l)| {
            let single = BoundaryData::from_pairs(d.mu0, &[(l.mu, 0)], 0).ok()?;
            (!fredholm_check(&single, t)).then(|| LatticeHit {
                line,
                mu: l.mu,
                lattice_point: ((l.mu - t) / d.mu0).round() * d.mu0,
            })
        })
        .collect();
    let out = FredholmOutput {
        t,
        fredholm: ok,
        spectral_gap: spectral_gap(d, t),
        hits,
    };
    Ok(Outcome {
        doc: Box::new(out),
        code: if ok { 0 } else { 2 },
        reports: Vec::new(),
    })
}

// ---- eta ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EtaOutput(pub EtaReport);

impl Document for EtaOutput {
    fn table(&self) -> String {
        let r = &self.0;
        let mut s = format!("eta invariants at t = {}\n", sig(r.t));
        let _ = writeln!(s, "  {:<6} {:>20} {:>20}", "line", "eps", "eta");
        for l in &r.per_line {
            let _ = writeln!(s, "  {:<6} {:>20} {:>20}", l.line, sig(l.eps), sig(l.eta));
        }
        let _ = writeln!(s, "eta_bar_lim = {}", sig(r.eta_bar_lim));
        let _ = writeln!(s, "weighted sum = {}", sig(r.eta_bar_weighted));
        s
    }

    fn csv(&self) -> String {
        let mut s = String::from("line,eps,eta\n");
        for l in &self.0.per_line {
            let _ = writeln!(s, "{},{},{}", l.line, sig(l.eps), sig(l.eta));
        }
        let _ = writeln!(s, "total,,{}", sig(self.0.eta_bar_lim));
        s
    }

    fn json(&self) -> CliResult<String> {
        to_json(&self.0)
    }
}

pub fn eta(cfg: &RunConfig, t: f64) -> CliResult<Outcome> {
    Ok(Outcome::ok(EtaOutput(corollary_identity(&cfg.boundary, t)?)))
}

// ---- nahm ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NahmOutput {
    pub t_min: f64,
    pub t_max: f64,
    pub jump_points: Vec<f64>,
    pub segments: Vec<Segment>,
    pub mj_sequence: Vec<RankLabel>,
    pub consistency: ConsistencyReport,
}

impl Document for NahmOutput {
    fn table(&self) -> String {
        let mut s = format!("rank profile on [{}, {}]\n", sig(self.t_min), sig(self.t_max));
        let _ = writeln!(s, "  {:>20} {:>20} {:>6} {:>6}", "t_lo", "t_hi", "index", "rank");
        for seg in &self.segments {
            let _ = writeln!(
                s,
                "  {:>20} {:>20} {:>6} {:>6}",
                sig(seg.t_lo),
                sig(seg.t_hi),
                seg.index,
                seg.rank
            );
        }
        let m: Vec<String> = self.mj_sequence.iter().map(|l| l.m.to_string()).collect();
        let _ = writeln!(s, "m_j sequence: {}", m.join(", "));
        let c = &self.consistency;
        let _ = writeln!(
            s,
            "consistency: {:?} (offset {}, lattice winding {})",
            c.status,
            c.constant_offset.map_or("none".into(), |v| v.to_string()),
            c.lattice_winding
        );
        s
    }

    fn csv(&self) -> String {
        let mut s = String::from("t_lo,t_hi,index,rank\n");
        for seg in &self.segments {
            let _ = writeln!(s, "{},{},{},{}", sig(seg.t_lo), sig(seg.t_hi), seg.index, seg.rank);
        }
        s
    }

    fn json(&self) -> CliResult<String> {
        to_json(self)
    }
}

pub fn nahm(cfg: &RunConfig, t_min: Option<f64>, t_max: Option<f64>) -> CliResult<(Outcome, Vec<Segment>)> {
    let profile = rank_profile(&cfg.boundary)?;
    let p0 = profile.segments[0].t_lo;
    let t_min = t_min.unwrap_or(p0);
    let t_max = t_max.unwrap_or(t_min + cfg.boundary.mu0);
    if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max) {
        return Err(CliError::Config(format!(
            "need t_min < t_max, got [{t_min}, {t_max}]"
        )));
    }
    let segments = profile.extend(t_min, t_max);
    let out = NahmOutput {
        t_min,
        t_max,
        jump_points: profile.jump_points.iter().map(|p| p.t).collect(),
        segments: segments.clone(),
        mj_sequence: profile.mj_sequence.clone(),
        consistency: profile_consistency_check(&cfg.boundary)?,
    };
    Ok((Outcome::ok(out), segments))
}

// ---- numeric reports ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportList {
    pub reports: Vec<NumericReport>,
}

impl Document for ReportList {
    fn table(&self) -> String {
        let mut s = report_table_header();
        s.push('\n');
        for r in &self.reports {
            s.push_str(&report_table_row(r));
            s.push('\n');
        }
        s
    }

    fn csv(&self) -> String {
        let mut s = String::from(REPORT_CSV_HEADER);
        s.push('\n');
        for r in &self.reports {
            s.push_str(&report_csv_row(r));
            s.push('\n');
        }
        s
    }

    fn json(&self) -> CliResult<String> {
        to_json(self)
    }
}

fn numeric_outcome(reports: Vec<NumericReport>, keep_timing: bool, extra_failure: Option<String>) -> CliResult<Outcome> {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.quantity.clone())
        .chain(extra_failure)
        .collect();
    let mut shown = reports.clone();
    if !keep_timing {
        shown.iter_mut().for_each(strip_timing);
    }
    Ok(Outcome {
        doc: Box::new(ReportList { reports: shown }),
        code: if failed.is_empty() { 0 } else { 3 },
        reports,
    })
}

pub fn degree(cfg: Option<&RunConfig>, d: i64, n3: Option<usize>, keep_timing: bool) -> CliResult<Outcome> {
    let recipe = cfg.map_or_else(FieldRecipe::default, |c| c.recipe.clone());
    let rank = cfg.map_or(2, |c| c.boundary.rank()).max(2);
    let c = make_clutching_map(rank, d, recipe.rho_out)?;
    let grid = GridSpec {
        n3: n3.unwrap_or(recipe.grid3),
        nz: recipe.gridz,
        h_fd: recipe.h_fd,
        ..Default::default()
    };
    let report = integrate_degree_ball(&c, &grid)?;
    let oracle = preimage_degree(&c, default_regular_value())?;
    let mismatch = (oracle.degree != d).then(|| format!("preimage count {} differs from {d}", oracle.degree));
    if let Some(m) = &mismatch {
        eprintln!("{m}");
    }
    numeric_outcome(vec![report], keep_timing, mismatch)
}

pub fn charge(cfg: &RunConfig, n3: Option<usize>, keep_timing: bool) -> CliResult<Outcome> {
    let (field, _) = cfg.field()?;
    let report = integrate_ch_4d(&field, &cfg.grid(n3))?;
    numeric_outcome(vec![report], keep_timing, None)
}

// ---- verify ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckRow {
    fn new(check: impl Into<String>, value: f64, expected: f64, tolerance: f64) -> Self {
        CheckRow {
            check: check.into(),
            value,
            expected,
            tolerance,
            passed: (value - expected).abs() <= tolerance,
        }
    }

    fn from_report(r: &NumericReport) -> Self {
        CheckRow {
            check: r.quantity.clone(),
            value: r.numeric,
            expected: r.closed_form,
            tolerance: r.tolerance,
            passed: r.passed(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub checks: Vec<CheckRow>,
    pub reports: Vec<NumericReport>,
    pub all_passed: bool,
}

impl Document for VerifyOutput {
    fn table(&self) -> String {
        let mut s = format!(
            "{:<30} {:>20} {:>20} {:>10}  {}\n",
            "check", "value", "expected", "tolerance", "status"
        );
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{:<30} {:>20} {:>20} {:>10}  {}",
                c.check,
                sig(c.value),
                sig(c.expected),
                sig(c.tolerance),
                if c.passed { "pass" } else { "FAIL" }
            );
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(s, "{passed} of {} checks passed", self.checks.len());
        s
    }

    fn csv(&self) -> String {
        let mut s = String::from("check,value,expected,tolerance,passed\n");
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                c.check,
                sig(c.value),
                sig(c.expected),
                sig(c.tolerance),
                c.passed
            );
        }
        s
    }

    fn json(&self) -> CliResult<String> {
        to_json(self)
    }
}

/// Shifts at which the identity checks run: `t` itself and the midpoint of
/// every segment of one period.
fn sample_shifts(d: &BoundaryData, t: f64) -> CliResult<Vec<f64>> {
    let profile = rank_profile(d)?;
    let mut ts = vec![t];
    ts.extend(profile.segments.iter().map(|s| 0.5 * (s.t_lo + s.t_hi)));
    Ok(ts)
}

pub fn verify(cfg: &RunConfig, t: f64, n3: Option<usize>, keep_timing: bool) -> CliResult<Outcome> {
    let d = &cfg.boundary;
    // surfaces a non-Fredholm shift as exit code 2
    index_total(d, t)?;
    let mut checks = Vec::new();
    for (i, &s) in sample_shifts(d, t)?.iter().enumerate() {
        let label = if i == 0 { "t".to_string() } else { format!("segment {i}") };
        let eta = corollary_identity(d, s)?;
        checks.push(CheckRow::new(
            format!("corollary ({label})"),
            eta.index_via_corollary,
            eta.index_total as f64,
            1e-9,
        ));
        let ind = |d: &BoundaryData, s: f64| index_total(d, s).map(|b| b.total as f64);
        checks.push(CheckRow::new(
            format!("excision ({label})"),
            ind(&d.with_k0(d.k0 + 1), s)? - ind(d, s)?,
            -1.0,
            0.0,
        ));
        checks.push(CheckRow::new(
            format!("periodicity ({label})"),
            ind(d, s + d.mu0)?,
            ind(d, s)?,
            0.0,
        ));
    }
    let profile = rank_profile(d)?;
    let n = profile.segments.len();
    for (i, jp) in profile.jump_points.iter().enumerate() {
        let left = &profile.segments[(i + n - 1) % n];
        let right = &profile.segments[i];
        checks.push(CheckRow::new(
            format!("jump at {}", sig(jp.t)),
            (right.index - left.index) as f64,
            jp.jump as f64,
            0.0,
        ));
    }

    let (field, map) = cfg.field()?;
    let grid = cfg.grid(n3);
    let radius = default_sphere_radius(&field);
    let mut reports = Vec::new();
    for (j, _) in d.lines.iter().enumerate() {
        let mut r = integrate_c1_sphere(&field, j, radius, &grid)?;
        r.quantity = format!("c1_sphere[{j}]");
        reports.push(r);
    }
    let face = boundary_face_integral(&field, radius, &grid)?;
    let degree = match &map {
        Some(c) => Some(integrate_degree_ball(c, &grid)?),
        None => None,
    };
    let bulk = integrate_ch_4d(&field, &grid)?;
    let split = stokes_split(&bulk, &face, degree.as_ref());
    reports.push(face);
    reports.extend(degree);
    reports.push(bulk);
    reports.push(split);
    checks.extend(reports.iter().map(CheckRow::from_report));

    let all_passed = checks.iter().all(|c| c.passed);
    let mut shown = reports.clone();
    if !keep_timing {
        shown.iter_mut().for_each(strip_timing);
    }
    Ok(Outcome {
        doc: Box::new(VerifyOutput {
            checks,
            reports: shown,
            all_passed,
        }),
        code: if all_passed { 0 } else { 3 },
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ConfigFile;

    fn config_a() -> RunConfig {
        ConfigFile::parse(r#"{"mu0": 1, "k0": 1, "lines": [{"mu": 0.3, "k": 1}, {"mu": -0.3, "k": -1}]}"#)
            .unwrap()
            .validate()
            .unwrap()
    }

    #[test]
    fn index_examples() {
        let out = index(&config_a(), 0.0).unwrap();
        assert!(out.doc.table().contains("total         -2"));
        let out = index(&config_a(), 0.5).unwrap();
        assert!(out.doc.csv().contains("total,-1\n"));
    }

    #[test]
    fn fredholm_at_jump_point() {
        let out = fredholm(&config_a(), 0.3).unwrap();
        assert_eq!(out.code, 2);
        assert!(out.doc.table().starts_with("NOT Fredholm at t=0.3"));
        assert_eq!(fredholm(&config_a(), 0.0).unwrap().code, 0);
    }

    #[test]
    fn eta_example() {
        let out = eta(&config_a(), 0.0).unwrap();
        assert!(out.doc.table().contains("eta_bar_lim = 0.8\n"));
    }

    #[test]
    fn nahm_example() {
        let (out, segs) = nahm(&config_a(), Some(-0.5), Some(1.5)).unwrap();
        let ranks: Vec<i64> = segs.iter().map(|s| s.rank).collect();
        assert_eq!(ranks, vec![1, 2, 1, 2, 1]);
        assert!(out.doc.csv().starts_with("t_lo,t_hi,index,rank\n-0.5,-0.3,-1,1\n"));
        assert!(nahm(&config_a(), Some(1.0), Some(1.0)).is_err());
    }

    #[test]
    fn degree_example() {
        let out = degree(None, 2, Some(32), false).unwrap();
        assert_eq!(out.code, 0);
        assert!(out.doc.table().contains("(rounds to 2)"));
    }
}
