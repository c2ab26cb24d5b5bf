//! Quadrature of characteristic-class integrals.
//!
//! Every integrand here is smooth with compact support inside its domain,
//! so the plain midpoint rule converges at second order without boundary
//! corrections. Work is split into slabs that rayon evaluates in parallel.
//! Each slab is summed with Neumaier compensation and the slab totals are
//! combined in a fixed order, so results do not depend on the thread count.

mod integrals;

pub use integrals::{
    boundary_face_integral, chern_simons_consistency, default_sphere_radius, integrate_c1_sphere,
    integrate_ch_4d, integrate_ch_4d_oriented, integrate_degree_ball, stokes_split, Orientation,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Stencil;
use crate::format::sig;

/// Resolution of a quadrature run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Cells per axis of 3D grids; polar cells on spheres.
    pub n3: usize,
    /// Cells along the circle.
    pub nz: usize,
    /// Central-difference step for curvature and `dc`.
    pub h_fd: f64,
    /// Central-difference step on spheres, where the integrand is evaluated
    /// in closed-form patch gauge.
    pub sphere_h: f64,
    /// Half-width of the cube around the origin; `None` picks the natural
    /// domain of each integral.
    pub half_width: Option<f64>,
    #[serde(default)]
    pub stencil: Stencil,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n3: 48,
            nz: 32,
            h_fd: 1.0 / 96.0,
            sphere_h: 1e-5,
            half_width: None,
            stencil: Stencil::default(),
        }
    }
}

pub const MIN_RESOLUTION: usize = 8;

impl GridSpec {
    /// Default grid with `n3` cells per axis.
    pub fn with_n3(n3: usize) -> Self {
        GridSpec {
            n3,
            ..Default::default()
        }
    }

    /// Checks resolutions and that `h_fd` resolves the narrowest cutoff
    /// window.
    pub fn validate(&self, feature_width: f64) -> Result<()> {
        if self.n3 < MIN_RESOLUTION || self.nz < MIN_RESOLUTION {
            return Err(Error::Grid(format!(
                "resolutions must be at least {MIN_RESOLUTION}, got n3 = {}, nz = {}",
                self.n3, self.nz
            )));
        }
        if !(self.h_fd > 0.0 && self.h_fd < 0.5 * feature_width) {
            return Err(Error::Grid(format!(
                "h_fd = {} must lie in (0, {}) to resolve the cutoff windows",
                self.h_fd,
                0.5 * feature_width
            )));
        }
        if !(self.sphere_h > 0.0) {
            return Err(Error::Grid("sphere step must be positive".into()));
        }
        if let Some(w) = self.half_width {
            if !(w > 0.0) {
                return Err(Error::Grid(format!("half-width must be positive, got {w}")));
            }
        }
        Ok(())
    }
}

/// Grid data attached to a report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub n3: usize,
    pub nz: Option<usize>,
    pub h_fd: f64,
    pub stencil: Stencil,
}

/// One numeric quantity next to its closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ReportRepr", from = "ReportRepr")]
pub struct NumericReport {
    pub quantity: String,
    pub numeric: f64,
    pub closed_form: f64,
    pub tolerance: f64,
    pub grid: GridMeta,
    pub seconds: f64,
    /// Nearest integer, for integer-valued quantities.
    pub rounded: Option<i64>,
    /// Set when `numeric` is further than the tolerance from `rounded`.
    pub non_integral: Option<bool>,
    /// Named sub-results.
    pub parts: BTreeMap<String, f64>,
}

impl NumericReport {
    pub fn abs_error(&self) -> f64 {
        (self.numeric - self.closed_form).abs()
    }

    pub fn passed(&self) -> bool {
        self.abs_error() <= self.tolerance
    }

    pub const CSV_HEADER: &'static str = "quantity,numeric,closed_form,abs_error,n3,nz,h_fd,seconds";

    /// One row of the batch ledger.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.3}",
            self.quantity,
            sig(self.numeric),
            sig(self.closed_form),
            sig(self.abs_error()),
            self.grid.n3,
            self.grid.nz.map(|v| v.to_string()).unwrap_or_default(),
            sig(self.grid.h_fd),
            self.seconds
        )
    }

    /// Marks the report as integer-valued.
    pub(crate) fn with_rounding(mut self) -> Self {
        let r = self.numeric.round();
        self.rounded = Some(r as i64);
        self.non_integral = Some((self.numeric - r).abs() > self.tolerance);
        self
    }
}

/// Serialized form; `abs_error` and `passed` are derived on the way out and
/// ignored on the way in.
#[derive(Serialize, Deserialize)]
struct ReportRepr {
    quantity: String,
    numeric: f64,
    closed_form: f64,
    #[serde(default)]
    abs_error: f64,
    tolerance: f64,
    #[serde(default)]
    passed: bool,
    grid: GridMeta,
    seconds: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rounded: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    non_integral: Option<bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    parts: BTreeMap<String, f64>,
}

impl From<NumericReport> for ReportRepr {
    fn from(r: NumericReport) -> Self {
        ReportRepr {
            abs_error: r.abs_error(),
            passed: r.passed(),
            quantity: r.quantity,
            numeric: r.numeric,
            closed_form: r.closed_form,
            tolerance: r.tolerance,
            grid: r.grid,
            seconds: r.seconds,
            rounded: r.rounded,
            non_integral: r.non_integral,
            parts: r.parts,
        }
    }
}

impl From<ReportRepr> for NumericReport {
    fn from(r: ReportRepr) -> Self {
        NumericReport {
            quantity: r.quantity,
            numeric: r.numeric,
            closed_form: r.closed_form,
            tolerance: r.tolerance,
            grid: r.grid,
            seconds: r.seconds,
            rounded: r.rounded,
            non_integral: r.non_integral,
            parts: r.parts,
        }
    }
}

/// Neumaier's compensated sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::default();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}
