use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{GridMeta, GridSpec, Neumaier, NumericReport};
use crate::error::{Error, Result};
use crate::field::{curvature_with, ClutchingMap, FieldConfig, Gauge, SPHERE_ORIENTATION};
use crate::index::charge_closed_form;
use crate::linalg::{CMat, C64, I};

pub const SPHERE_TOLERANCE: f64 = 1e-6;
pub const DEGREE_TOLERANCE: f64 = 0.05;
pub const CH4D_RELATIVE_TOLERANCE: f64 = 0.01;

/// Ordering of the coordinates in the 4-form assembly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// `(dz, dx₁, dx₂, dx₃)`.
    Positive,
    /// `z` moved to the opposite orientation class.
    Reversed,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Reversed => -1.0,
        }
    }
}

/// Sphere radius used for boundary integrals: comfortably inside the
/// product region.
pub fn default_sphere_radius(field: &FieldConfig) -> f64 {
    field.geometry.r1 * 4.0 / 3.0
}

fn meta(grid: &GridSpec, nz: Option<usize>, h: f64) -> GridMeta {
    GridMeta { n3: grid.n3, nz, h_fd: h, stencil: grid.stencil }
}

/// `∮_{S²} F(M)` over the oriented sphere of radius `r`, where `M` is the
/// curvature 2-form evaluated on `(∂_u, ∂_φ)` with `u = cos θ`.
fn sphere_integral(
    field: &FieldConfig,
    r: f64,
    grid: &GridSpec,
    integrand: impl Fn(&CMat) -> C64 + Sync,
) -> Result<C64> {
    if r - grid.stencil.reach() * grid.sphere_h < field.geometry.r1 {
        return Err(Error::Geometry(format!(
            "sphere radius {r} must exceed the cutoff radius {} by the stencil step",
            field.geometry.r1
        )));
    }
    let nu = grid.n3;
    let nphi = 2 * grid.n3;
    let du = 2.0 / nu as f64;
    let dphi = 2.0 * PI / nphi as f64;
    let rows: Vec<Result<(Neumaier, Neumaier)>> = (0..nu)
        .into_par_iter()
        .map(|i| {
            let u = -1.0 + (i as f64 + 0.5) * du;
            let st = (1.0 - u * u).sqrt();
            let mut re = Neumaier::default();
            let mut im = Neumaier::default();
            for j in 0..nphi {
                let phi = (j as f64 + 0.5) * dphi;
                let (sp, cp) = phi.sin_cos();
                let x = [r * st * cp, r * st * sp, r * u];
                let du_x = [-r * u / st * cp, -r * u / st * sp, r];
                let dphi_x = [-r * st * sp, r * st * cp, 0.0];
                let curv = curvature_with(field, [0.0, x[0], x[1], x[2]], grid.sphere_h, Gauge::Patch, grid.stencil)?;
                let mut m = CMat::zeros(field.rank());
                for a in 0..3 {
                    for b in 0..3 {
                        let w = du_x[a] * dphi_x[b];
                        if a != b && w != 0.0 {
                            m.axpy(w, curv.spatial(a, b));
                        }
                    }
                }
                let v = integrand(&m);
                re.add(v.re);
                im.add(v.im);
            }
            Ok((re, im))
        })
        .collect();
    let mut re = Neumaier::default();
    let mut im = Neumaier::default();
    for row in rows {
        let (r_, i_) = row?;
        re.add(r_.total());
        im.add(i_.total());
    }
    // (u, φ) is inward-positive; the outward integral carries a minus sign
    let outward = -C64::new(re.total(), im.total()) * du * dphi;
    Ok(outward * SPHERE_ORIENTATION)
}

/// `(i/2π)∮ tr f_j` over the sphere of radius `r`.
pub fn integrate_c1_sphere(field: &FieldConfig, line: usize, r: f64, grid: &GridSpec) -> Result<NumericReport> {
    if line >= field.rank() {
        return Err(Error::Geometry(format!(
            "line {line} out of range for rank {}",
            field.rank()
        )));
    }
    let start = Instant::now();
    let total = sphere_integral(field, r, grid, |m| m[(line, line)])?;
    let numeric = (I / (2.0 * PI) * total).re;
    Ok(NumericReport {
        quantity: format!("c1_sphere[{line}]"),
        numeric,
        closed_form: field.boundary.lines[line].k as f64,
        tolerance: SPHERE_TOLERANCE,
        grid: meta(grid, None, grid.sphere_h),
        seconds: start.elapsed().as_secs_f64(),
        rounded: None,
        non_integral: None,
        parts: BTreeMap::new(),
    })
}

/// `−(1/8π²)(2π/mu0)∮ tr(2 f Φ∞)` over the sphere of radius `r`.
pub fn boundary_face_integral(field: &FieldConfig, r: f64, grid: &GridSpec) -> Result<NumericReport> {
    let start = Instant::now();
    let phi = field.higgs_infinity();
    let total = sphere_integral(field, r, grid, |m| m.trace_mul(&phi) * 2.0)?;
    let mu0 = field.boundary.mu0;
    let numeric = (-1.0 / (8.0 * PI * PI) * (2.0 * PI / mu0) * total).re;
    let closed_form = -field
        .boundary
        .lines
        .iter()
        .map(|l| l.mu * l.k as f64)
        .sum::<f64>()
        / mu0;
    Ok(NumericReport {
        quantity: "boundary_face".into(),
        numeric,
        closed_form,
        tolerance: SPHERE_TOLERANCE,
        grid: meta(grid, None, grid.sphere_h),
        seconds: start.elapsed().as_secs_f64(),
        rounded: None,
        non_integral: None,
        parts: BTreeMap::new(),
    })
}

/// `−(1/24π²)∫_{B³} tr(dc c⁻¹)³` by the midpoint rule, with `dc` taken by
/// central differences.
pub fn integrate_degree_ball(c: &ClutchingMap, grid: &GridSpec) -> Result<NumericReport> {
    grid.validate(c.support_radius - c.inner_radius)?;
    let start = Instant::now();
    let hw = grid.half_width.unwrap_or(c.support_radius + 0.05);
    let n = grid.n3;
    let dx = 2.0 * hw / n as f64;
    let h = grid.h_fd;
    let centre = |i: usize| -hw + (i as f64 + 0.5) * dx;
    let slabs: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = Neumaier::default();
            if c.is_trivial() {
                return 0.0;
            }
            for j in 0..n {
                for k in 0..n {
                    let x = [centre(i), centre(j), centre(k)];
                    if c.is_identity_at(x) {
                        continue;
                    }
                    let cd = c.eval(x).adjoint();
                    let r: [CMat; 3] = std::array::from_fn(|a| {
                        let mut dc = CMat::zeros(c.n);
                        for &(offset, weight) in grid.stencil.taps() {
                            let mut p = x;
                            p[a] += offset * h;
                            dc.axpy(weight / h, &c.eval(p));
                        }
                        &dc * &cd
                    });
                    acc.add(3.0 * r[0].trace_mul(&r[1].commutator(&r[2])).re);
                }
            }
            acc.total()
        })
        .collect();
    let sum: Neumaier = slabs.into_iter().collect();
    let numeric = -sum.total() * dx * dx * dx / (24.0 * PI * PI);
    Ok(NumericReport {
        quantity: "degree_ball".into(),
        numeric,
        closed_form: c.d as f64,
        tolerance: DEGREE_TOLERANCE,
        grid: meta(grid, None, h),
        seconds: start.elapsed().as_secs_f64(),
        rounded: None,
        non_integral: None,
        parts: BTreeMap::new(),
    }
    .with_rounding())
}

/// `−(1/8π²)∫ tr F∧F` over `[0, 2π/mu0] × B³` with the positive orientation.
pub fn integrate_ch_4d(field: &FieldConfig, grid: &GridSpec) -> Result<NumericReport> {
    integrate_ch_4d_oriented(field, grid, Orientation::Positive)
}

pub fn integrate_ch_4d_oriented(field: &FieldConfig, grid: &GridSpec, orientation: Orientation) -> Result<NumericReport> {
    let geo = &field.geometry;
    let mut feature = geo.r1 - geo.r_in;
    if let Some(tw) = &field.twist {
        feature = feature.min(tw.map.support_radius - tw.map.inner_radius);
    }
    grid.validate(feature)?;
    let start = Instant::now();
    let hw = grid.half_width.unwrap_or(geo.r1);
    let n = grid.n3;
    let nz = grid.nz;
    let dx = 2.0 * hw / n as f64;
    let length = field.period_length();
    let dz = length / nz as f64;
    let h = grid.h_fd;
    let frame = field.frame();
    let support = field
        .twist
        .as_ref()
        .filter(|t| !t.map.is_trivial())
        .map(|t| t.map.support_radius);
    let centre = |i: usize| -hw + (i as f64 + 0.5) * dx;
    let zs: Vec<f64> = (0..nz).map(|m| (m as f64 + 0.5) * dz).collect();

    let slabs: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = Neumaier::default();
            for j in 0..n {
                for k in 0..n {
                    let x = [centre(i), centre(j), centre(k)];
                    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
                    if r >= geo.r1 {
                        // product form: the density vanishes identically
                        continue;
                    }
                    let z_dependent = support.is_some_and(|s| r - grid.stencil.reach() * h < s);
                    if z_dependent {
                        for curv in crate::field::curvature_zline(field, &frame, x, &zs, h, grid.stencil) {
                            acc.add(curv.chern_density() * dz);
                        }
                    } else {
                        let curv = crate::field::curvature_global_at(field, &frame, [0.5 * dz, x[0], x[1], x[2]], h, grid.stencil);
                        acc.add(curv.chern_density() * length);
                    }
                }
            }
            acc.total()
        })
        .collect();
    let sum: Neumaier = slabs.into_iter().collect();
    let numeric = orientation.sign() * (-1.0 / (8.0 * PI * PI)) * sum.total() * dx * dx * dx;
    let closed_form = charge_closed_form(&field.boundary.with_k0(-field.twist_degree()));
    Ok(NumericReport {
        quantity: "ch_4d".into(),
        numeric,
        closed_form,
        tolerance: (CH4D_RELATIVE_TOLERANCE * closed_form.abs()).max(1e-10),
        grid: meta(grid, Some(nz), h),
        seconds: start.elapsed().as_secs_f64(),
        rounded: None,
        non_integral: None,
        parts: BTreeMap::new(),
    })
}

/// Checks the Stokes split `∫ch = deg c + (sphere face)` numerically. The
/// report's `numeric` is the 4D value and `closed_form` the sum of the two
/// face values; all three appear under `parts`.
pub fn chern_simons_consistency(field: &FieldConfig, c: Option<&ClutchingMap>, grid: &GridSpec) -> Result<NumericReport> {
    let start = Instant::now();
    let bulk = integrate_ch_4d(field, grid)?;
    let face = boundary_face_integral(field, default_sphere_radius(field), grid)?;
    let map = c.or(field.twist.as_ref().map(|t| &t.map));
    let degree = match map {
        Some(m) if !m.is_trivial() => Some(integrate_degree_ball(
            m,
            &GridSpec {
                half_width: None,
                ..*grid
            },
        )?),
        _ => None,
    };
    let mut report = stokes_split(&bulk, &face, degree.as_ref());
    report.seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Assembles the Stokes comparison from reports that were already computed.
/// `degree` is `None` for an untwisted field.
pub fn stokes_split(bulk: &NumericReport, face: &NumericReport, degree: Option<&NumericReport>) -> NumericReport {
    let deg_value = degree.map_or(0.0, |d| d.numeric);
    let mut parts = BTreeMap::new();
    parts.insert("ch_4d".to_string(), bulk.numeric);
    parts.insert("degree_ball".to_string(), deg_value);
    parts.insert("boundary_face".to_string(), face.numeric);
    let tolerance = bulk.tolerance + face.tolerance + degree.map_or(0.0, |d| d.tolerance);
    NumericReport {
        quantity: "chern_simons".into(),
        numeric: bulk.numeric,
        closed_form: deg_value + face.numeric,
        tolerance,
        grid: bulk.grid,
        seconds: bulk.seconds + face.seconds + degree.map_or(0.0, |d| d.seconds),
        rounded: None,
        non_integral: None,
        parts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::BoundaryData;
    use crate::field::{make_clutching_map, make_monopole_pullback};

    fn field(pairs: &[(f64, i64)]) -> FieldConfig {
        let d = BoundaryData::from_pairs(1.0, pairs, 0).unwrap();
        make_monopole_pullback(&d, 0.6).unwrap()
    }

    #[test]
    fn sphere_chern_numbers() {
        let f = field(&[(0.3, 1), (-0.1, -3), (0.2, 2), (0.4, 0)]);
        let g = GridSpec::with_n3(16);
        for j in 0..4 {
            let rep = integrate_c1_sphere(&f, j, 0.8, &g).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
        let flat = integrate_c1_sphere(&f, 3, 0.8, &g).unwrap();
        assert_eq!(flat.numeric, 0.0);
    }

    #[test]
    fn face_integral_examples() {
        let g = GridSpec::with_n3(16);
        let rep = boundary_face_integral(&field(&[(0.25, 2), (-0.25, -2)]), 0.8, &g).unwrap();
        assert!((rep.numeric + 1.0).abs() < 1e-6, "{rep:?}");
        let rep = boundary_face_integral(&field(&[(0.25, 0), (0.6, 0)]), 0.8, &g).unwrap();
        assert_eq!(rep.numeric, 0.0);
    }

    #[test]
    fn degree_of_identity_is_exactly_zero() {
        let c = make_clutching_map(2, 0, 0.45).unwrap();
        let rep = integrate_degree_ball(&c, &GridSpec::with_n3(16)).unwrap();
        assert_eq!(rep.numeric, 0.0);
    }

    #[test]
    fn coarse_degree_is_close() {
        let c = make_clutching_map(2, 1, 0.45).unwrap();
        let rep = integrate_degree_ball(&c, &GridSpec::with_n3(32)).unwrap();
        assert_eq!(rep.rounded, Some(1), "{rep:?}");
    }

    #[test]
    fn flat_field_has_no_charge() {
        let f = field(&[(0.25, 0), (0.6, 0)]);
        let rep = integrate_ch_4d(&f, &GridSpec::with_n3(12)).unwrap();
        assert!(rep.numeric.abs() < 1e-10);
    }

    #[test]
    fn orientation_flip_is_exact() {
        let f = field(&[(0.3, 1), (-0.3, -1)]);
        let g = GridSpec::with_n3(12);
        let a = integrate_ch_4d_oriented(&f, &g, Orientation::Positive).unwrap();
        let b = integrate_ch_4d_oriented(&f, &g, Orientation::Reversed).unwrap();
        assert_eq!(a.numeric, -b.numeric);
    }
}
