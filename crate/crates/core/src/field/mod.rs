//! Explicit smooth caloron fields on `[0, 2π/mu0] × B³`.
//!
//! The untwisted field is the `z`-independent pullback of a diagonal sum of
//! Dirac monopoles with Higgs field `diag(i·mu_j)`. Both are scaled by a radial
//! cutoff `χ(r)` that vanishes near the origin and equals one for `r ≥ R₁`.
//! A clutching map `c` of degree `d` is then glued in along `z` by
//!
//! ```text
//! A(z) = (1 − w(z)) A₀ + w(z) (c A₀ c⁻¹ − dc c⁻¹),
//! Φ(z) = (1 − w(z)) Φ₀ + w(z) c Φ₀ c⁻¹,
//! ```
//!
//! with `w` rising smoothly from 0 to 1 over the circle.

mod clutching;
mod curvature;
mod decay;
mod degree;
mod frame;
mod profile;

pub use clutching::{make_clutching_map, su2_coordinates, ClutchingJet, ClutchingMap};
pub use curvature::{curvature_at, curvature_of, curvature_with, Curvature, Gauge, Stencil};
pub(crate) use curvature::{curvature_global as curvature_global_at, curvature_zline};
pub use decay::{decay_report, DecayReport};
pub use degree::{default_regular_value, preimage_degree, PreimageCount, PreimageRoot};
pub use frame::{Hemisphere, SPHERE_ORIENTATION};
pub use profile::{smoothstep, smoothstep_deriv, Window};

use serde::{Deserialize, Serialize};

use crate::boundary::BoundaryData;
use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};
use clutching::norm3;
use frame::{patch_potential, GlobalFrame, Polar};

/// Radii and angles of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    /// Radius beyond which the field is in product form.
    pub r1: f64,
    /// Radius below which the monopole cutoff vanishes.
    pub r_in: f64,
    /// Polar-angle window of the frame homotopy, in radians.
    pub ramp_lo: f64,
    pub ramp_hi: f64,
    /// Width of the overlap band on either side of the equator, in radians.
    pub band: f64,
}

impl Default for Geometry {
    fn default() -> Self {
        Geometry::with_r1(0.6)
    }
}

impl Geometry {
    pub fn with_r1(r1: f64) -> Self {
        Geometry {
            r1,
            r_in: r1 / 3.0,
            ramp_lo: 30f64.to_radians(),
            ramp_hi: 150f64.to_radians(),
            band: 20f64.to_radians(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r1 > 0.0 && self.r_in > 0.0 && self.r_in < self.r1) {
            return Err(Error::Geometry(format!(
                "need 0 < r_in < r1, got r_in = {}, r1 = {}",
                self.r_in, self.r1
            )));
        }
        let half = std::f64::consts::FRAC_PI_2;
        if !(0.0 < self.ramp_lo && self.ramp_lo < self.ramp_hi && self.ramp_hi < std::f64::consts::PI) {
            return Err(Error::Geometry("frame ramp must satisfy 0 < lo < hi < π".into()));
        }
        if !(self.band > 0.0 && self.band < half) {
            return Err(Error::Geometry("overlap band must lie in (0, π/2)".into()));
        }
        Ok(())
    }

    pub fn cutoff(&self) -> Window {
        Window::new(self.r_in, self.r1)
    }

    /// Largest polar angle covered by the north patch.
    pub fn north_limit(&self) -> f64 {
        std::f64::consts::FRAC_PI_2 + self.band
    }

    /// Smallest polar angle covered by the south patch.
    pub fn south_limit(&self) -> f64 {
        std::f64::consts::FRAC_PI_2 - self.band
    }
}

/// The clutching map and the profile `w(z)` along the circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Twist {
    pub map: ClutchingMap,
    pub profile: Window,
}

/// A caloron field together with its recipe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub boundary: BoundaryData,
    pub geometry: Geometry,
    pub twist: Option<Twist>,
}

/// Components `(𝔸_z, 𝔸_1, 𝔸_2, 𝔸_3)` at one point; `𝔸_z = Φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    pub comps: [CMat; 4],
}

impl Potential {
    pub fn higgs(&self) -> &CMat {
        &self.comps[0]
    }

    pub fn spatial(&self, a: usize) -> &CMat {
        &self.comps[a + 1]
    }

    pub fn max_skew_defect(&self) -> f64 {
        self.comps.iter().map(CMat::skew_defect).fold(0.0, f64::max)
    }
}

/// The diagonal monopole pullback with Higgs field `χ(r)·diag(i·mu_j)`.
pub fn make_monopole_pullback(data: &BoundaryData, r1: f64) -> Result<FieldConfig> {
    let geometry = Geometry::with_r1(r1);
    geometry.validate()?;
    Ok(FieldConfig {
        boundary: data.clone(),
        geometry,
        twist: None,
    })
}

/// Glues `c` into `base` along the profile `w`, which must run from 0 to 1
/// over `[0, 2π/mu0]`.
pub fn make_twisted_caloron(base: &FieldConfig, c: &ClutchingMap, profile: Window) -> Result<FieldConfig> {
    if c.n != base.rank() {
        return Err(Error::Geometry(format!(
            "clutching map has rank {}, field has rank {}",
            c.n,
            base.rank()
        )));
    }
    if !(c.support_radius > 0.0 && c.support_radius < base.geometry.r1) {
        return Err(Error::SupportCollision {
            rho_out: c.support_radius,
            r1: base.geometry.r1,
        });
    }
    let length = base.period_length();
    if profile.lo < 0.0 || profile.hi > length {
        return Err(Error::Geometry(format!(
            "twist profile [{}, {}] leaves the circle [0, {length}]",
            profile.lo, profile.hi
        )));
    }
    Ok(FieldConfig {
        twist: Some(Twist {
            map: c.clone(),
            profile,
        }),
        ..base.clone()
    })
}

impl FieldConfig {
    pub fn rank(&self) -> usize {
        self.boundary.rank()
    }

    pub fn period_length(&self) -> f64 {
        self.boundary.period_length()
    }

    /// The full-circle profile `w(z) = smoothstep(z·mu0/2π)`.
    pub fn default_profile(&self) -> Window {
        Window::new(0.0, self.period_length())
    }

    pub fn twist_degree(&self) -> i64 {
        self.twist.as_ref().map_or(0, |t| t.map.d)
    }

    pub fn charges(&self) -> Vec<i64> {
        self.boundary.lines.iter().map(|l| l.k).collect()
    }

    /// `Φ∞ = diag(i·mu_j)`.
    pub fn higgs_infinity(&self) -> CMat {
        let diag: Vec<C64> = self
            .boundary
            .lines
            .iter()
            .map(|l| C64::new(0.0, l.mu))
            .collect();
        CMat::from_diag(&diag)
    }

    pub(crate) fn frame(&self) -> GlobalFrame {
        GlobalFrame::new(
            &self.charges(),
            self.higgs_infinity(),
            Window::new(self.geometry.ramp_lo, self.geometry.ramp_hi),
        )
    }

    /// Conjugates every component by a constant unitary `u`.
    pub fn conjugated(&self, u: &CMat) -> ConjugatedField<'_> {
        ConjugatedField { field: self, u: u.clone() }
    }

    /// Untwisted field in the global frame.
    fn base_potential(&self, frame: &GlobalFrame, x: [f64; 3]) -> Potential {
        let n = self.rank();
        let r = norm3(x);
        let chi = self.geometry.cutoff().value(r);
        if chi == 0.0 {
            return Potential {
                comps: std::array::from_fn(|_| CMat::zeros(n)),
            };
        }
        let (a, phi) = frame.fields(x);
        let [a1, a2, a3] = a;
        if chi == 1.0 {
            return Potential {
                comps: [phi, a1, a2, a3],
            };
        }
        Potential {
            comps: [phi.scale(chi), a1.scale(chi), a2.scale(chi), a3.scale(chi)],
        }
    }

    /// The field at `(z, x)` in the global frame.
    pub fn potential(&self, z: f64, x: [f64; 3]) -> Potential {
        self.potential_with(&self.frame(), z, x)
    }

    pub(crate) fn potential_with(&self, frame: &GlobalFrame, z: f64, x: [f64; 3]) -> Potential {
        let sample = self.sample(frame, x);
        let w = self.twist.as_ref().map_or(0.0, |tw| tw.profile.value(z));
        sample.blend(w)
    }

    /// Both ends of the interpolation at `x`; `z` enters only through `w(z)`.
    pub(crate) fn sample(&self, frame: &GlobalFrame, x: [f64; 3]) -> TwistSample {
        let base = self.base_potential(frame, x);
        let Some(tw) = &self.twist else {
            return TwistSample { base, twisted: None };
        };
        if tw.map.is_identity_at(x) {
            return TwistSample { base, twisted: None };
        }
        let jet = tw.map.jet(x);
        let cd = jet.value.adjoint();
        let twisted = Potential {
            comps: std::array::from_fn(|i| {
                let conj = base.comps[i].conjugate_by(&jet.value);
                if i == 0 {
                    conj
                } else {
                    &conj - &(&jet.partials[i - 1] * &cd)
                }
            }),
        };
        TwistSample {
            base,
            twisted: Some(twisted),
        }
    }

    /// The field at `x` in a hemispherical patch gauge. Only defined in the
    /// product region `r ≥ R₁`, where it is diagonal and `z`-independent.
    pub fn patch_potential(&self, x: [f64; 3], patch: Hemisphere) -> Result<Potential> {
        let pol = Polar::new(x);
        if pol.r < self.geometry.r1 {
            return Err(Error::Geometry(format!(
                "patch gauge is only used in the product region r >= {}, got r = {}",
                self.geometry.r1, pol.r
            )));
        }
        let inside = match patch {
            Hemisphere::North => pol.theta <= self.geometry.north_limit(),
            Hemisphere::South => pol.theta >= self.geometry.south_limit(),
        };
        if !inside {
            return Err(Error::PatchBoundaryStencil {
                point: [0.0, x[0], x[1], x[2]],
                h: 0.0,
                patch: patch_name(patch),
            });
        }
        let [a1, a2, a3] = patch_potential(&self.charges(), x, patch);
        Ok(Potential {
            comps: [self.higgs_infinity(), a1, a2, a3],
        })
    }

    /// Residuals of the two clutching equations at `x`:
    /// `A(L) − (cA(0)c⁻¹ − dc c⁻¹)` and `Φ(L) − cΦ(0)c⁻¹`, max-norm.
    pub fn clutching_residual(&self, x: [f64; 3]) -> (f64, f64) {
        let Some(tw) = &self.twist else {
            return (0.0, 0.0);
        };
        let frame = self.frame();
        let start = self.potential_with(&frame, 0.0, x);
        let end = self.potential_with(&frame, self.period_length(), x);
        let jet = tw.map.jet(x);
        let cd = jet.value.adjoint();
        let mut a_res = 0.0_f64;
        for i in 1..4 {
            let expect = &start.comps[i].conjugate_by(&jet.value) - &(&jet.partials[i - 1] * &cd);
            a_res = a_res.max((&end.comps[i] - &expect).max_abs());
        }
        let phi_res = (&end.comps[0] - &start.comps[0].conjugate_by(&jet.value)).max_abs();
        (a_res, phi_res)
    }
}

/// Untwisted and fully twisted field at one point.
#[derive(Debug, Clone)]
pub(crate) struct TwistSample {
    base: Potential,
    twisted: Option<Potential>,
}

impl TwistSample {
    /// `(1 − w)·base + w·twisted`.
    pub fn blend(&self, w: f64) -> Potential {
        let Some(tw) = &self.twisted else {
            return self.base.clone();
        };
        if w == 0.0 {
            return self.base.clone();
        }
        if w == 1.0 {
            return tw.clone();
        }
        Potential {
            comps: std::array::from_fn(|i| {
                let mut m = self.base.comps[i].scale(1.0 - w);
                m.axpy(w, &tw.comps[i]);
                m
            }),
        }
    }
}

pub(crate) fn patch_name(p: Hemisphere) -> &'static str {
    match p {
        Hemisphere::North => "north",
        Hemisphere::South => "south",
    }
}

/// A field conjugated by a constant unitary, for covariance checks.
pub struct ConjugatedField<'a> {
    field: &'a FieldConfig,
    u: CMat,
}

impl ConjugatedField<'_> {
    pub fn potential(&self, z: f64, x: [f64; 3]) -> Potential {
        let p = self.field.potential(z, x);
        Potential {
            comps: std::array::from_fn(|i| p.comps[i].conjugate_by(&self.u)),
        }
    }

    pub fn curvature(&self, point: [f64; 4], h: f64, stencil: Stencil) -> Curvature {
        curvature_of(|p| self.potential(p[0], [p[1], p[2], p[3]]), point, h, stencil)
    }
}
