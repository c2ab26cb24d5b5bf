//! Curvature `F_ab = ∂_a𝔸_b − ∂_b𝔸_a + [𝔸_a, 𝔸_b]` by central differences.
//!
//! Coordinates are ordered `(z, x₁, x₂, x₃)`, which is also the positive
//! orientation of the 4-manifold.

use super::frame::{GlobalFrame, Hemisphere, Polar};
use super::{patch_name, FieldConfig, Potential, TwistSample};
use crate::error::{Error, Result};
use crate::linalg::CMat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gauge {
    /// The smooth frame over the whole ball.
    Global,
    /// Hemispherical patch picked by the sign of `x₃` at the stencil centre.
    /// Only valid in the product region.
    Patch,
}

/// Central-difference stencil with step `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stencil {
    /// `(f(x+h) − f(x−h)) / 2h`, error `O(h²)`.
    Second,
    /// `(−f(x+2h) + 8f(x+h) − 8f(x−h) + f(x−2h)) / 12h`, error `O(h⁴)`.
    #[default]
    Fourth,
}

impl Stencil {
    /// Offsets in units of `h` and their weights (before dividing by `h`).
    pub fn taps(self) -> &'static [(f64, f64)] {
        match self {
            Stencil::Second => &[(1.0, 0.5), (-1.0, -0.5)],
            Stencil::Fourth => &[
                (2.0, -1.0 / 12.0),
                (1.0, 8.0 / 12.0),
                (-1.0, -8.0 / 12.0),
                (-2.0, 1.0 / 12.0),
            ],
        }
    }

    /// Largest offset in units of `h`.
    pub fn reach(self) -> f64 {
        match self {
            Stencil::Second => 1.0,
            Stencil::Fourth => 2.0,
        }
    }

    pub fn order(self) -> u32 {
        match self {
            Stencil::Second => 2,
            Stencil::Fourth => 4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Curvature {
    pub f: [[CMat; 4]; 4],
}

impl Curvature {
    /// Coefficient of `dz∧dx₁∧dx₂∧dx₃` in `tr F∧F`:
    /// `2 tr(F₀₁F₂₃ − F₀₂F₁₃ + F₀₃F₁₂)`.
    pub fn chern_density(&self) -> f64 {
        let f = &self.f;
        let t = f[0][1].trace_mul(&f[2][3]) - f[0][2].trace_mul(&f[1][3]) + f[0][3].trace_mul(&f[1][2]);
        2.0 * t.re
    }

    /// Spatial 2-form component `f_ab` for `a, b ∈ {0, 1, 2}`.
    pub fn spatial(&self, a: usize, b: usize) -> &CMat {
        &self.f[a + 1][b + 1]
    }

    pub fn max_skew_defect(&self) -> f64 {
        self.f
            .iter()
            .flatten()
            .map(CMat::skew_defect)
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.f.iter().flatten().map(CMat::max_abs).fold(0.0, f64::max)
    }
}

/// Evaluates the curvature at `point = (z, x₁, x₂, x₃)` with step `h` and
/// the default stencil.
pub fn curvature_at(field: &FieldConfig, point: [f64; 4], h: f64, gauge: Gauge) -> Result<Curvature> {
    curvature_with(field, point, h, gauge, Stencil::default())
}

pub fn curvature_with(
    field: &FieldConfig,
    point: [f64; 4],
    h: f64,
    gauge: Gauge,
    stencil: Stencil,
) -> Result<Curvature> {
    if !(h > 0.0) {
        return Err(Error::Grid(format!("finite-difference step must be positive, got {h}")));
    }
    match gauge {
        Gauge::Global => {
            let frame = field.frame();
            Ok(curvature_global(field, &frame, point, h, stencil))
        }
        Gauge::Patch => curvature_patch(field, point, h, stencil),
    }
}

/// Curvature of an arbitrary potential `eval(z, x₁, x₂, x₃)`.
pub fn curvature_of(eval: impl Fn([f64; 4]) -> Potential, point: [f64; 4], h: f64, stencil: Stencil) -> Curvature {
    assemble(point, h, stencil, |p, _| eval(p))
}

pub(crate) fn curvature_global(
    field: &FieldConfig,
    frame: &GlobalFrame,
    point: [f64; 4],
    h: f64,
    stencil: Stencil,
) -> Curvature {
    assemble(point, h, stencil, |p, _| {
        field.potential_with(frame, p[0], [p[1], p[2], p[3]])
    })
}

/// Curvatures at `(z, x)` for each `z` in `zs`. The spatial stencil samples
/// are shared by every `z`; results match [`curvature_global`] bit for bit.
pub(crate) fn curvature_zline(
    field: &FieldConfig,
    frame: &GlobalFrame,
    x: [f64; 3],
    zs: &[f64],
    h: f64,
    stencil: Stencil,
) -> Vec<Curvature> {
    let centre = field.sample(frame, x);
    let taps: Vec<Vec<TwistSample>> = (0..3)
        .map(|a| {
            stencil
                .taps()
                .iter()
                .map(|&(offset, _)| {
                    let mut y = x;
                    y[a] += offset * h;
                    field.sample(frame, y)
                })
                .collect()
        })
        .collect();
    let w = |z: f64| field.twist.as_ref().map_or(0.0, |tw| tw.profile.value(z));
    zs.iter()
        .map(|&z| {
            let point = [z, x[0], x[1], x[2]];
            assemble(point, h, stencil, |p, probe| match probe {
                Probe::Centre => centre.blend(w(p[0])),
                Probe::Tap { axis: 0, .. } => centre.blend(w(p[0])),
                Probe::Tap { axis, tap } => taps[axis - 1][tap].blend(w(p[0])),
            })
        })
        .collect()
}

fn curvature_patch(field: &FieldConfig, point: [f64; 4], h: f64, stencil: Stencil) -> Result<Curvature> {
    let patch = if point[3] >= 0.0 {
        Hemisphere::North
    } else {
        Hemisphere::South
    };
    let geo = &field.geometry;
    for a in 1..4 {
        for s in [-1.0, 1.0] {
            let mut p = point;
            p[a] += s * stencil.reach() * h;
            let pol = Polar::new([p[1], p[2], p[3]]);
            let ok = match patch {
                Hemisphere::North => pol.theta <= geo.north_limit(),
                Hemisphere::South => pol.theta >= geo.south_limit(),
            };
            if !ok {
                return Err(Error::PatchBoundaryStencil {
                    point,
                    h,
                    patch: patch_name(patch),
                });
            }
        }
    }
    let mut err = None;
    let curv = assemble(point, h, stencil, |p, _| match field.patch_potential([p[1], p[2], p[3]], patch) {
        Ok(v) => v,
        Err(e) => {
            err.get_or_insert(e);
            Potential {
                comps: std::array::from_fn(|_| CMat::zeros(field.rank())),
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(curv),
    }
}

/// Which stencil point is being evaluated.
#[derive(Debug, Clone, Copy)]
enum Probe {
    Centre,
    Tap { axis: usize, tap: usize },
}

fn assemble(
    point: [f64; 4],
    h: f64,
    stencil: Stencil,
    mut eval: impl FnMut([f64; 4], Probe) -> Potential,
) -> Curvature {
    let centre = eval(point, Probe::Centre);
    let n = centre.comps[0].dim();
    // d[a][b] = ∂_a 𝔸_b
    let mut d: [[CMat; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| CMat::zeros(n)));
    for a in 0..4 {
        for (tap, &(offset, weight)) in stencil.taps().iter().enumerate() {
            let mut p = point;
            p[a] += offset * h;
            let v = eval(p, Probe::Tap { axis: a, tap });
            for b in 0..4 {
                d[a][b].axpy(weight / h, &v.comps[b]);
            }
        }
    }
    let mut f: [[CMat; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| CMat::zeros(n)));
    for a in 0..4 {
        for b in (a + 1)..4 {
            let v = &(&d[a][b] - &d[b][a]) + &centre.comps[a].commutator(&centre.comps[b]);
            f[b][a] = -&v;
            f[a][b] = v;
        }
    }
    Curvature { f }
}
