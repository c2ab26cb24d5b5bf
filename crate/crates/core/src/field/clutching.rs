//! Clutching maps `B³ → U_n` of prescribed degree.
//!
//! The degree-one map is the hedgehog `q(x) = exp(iπ(1 − β(|x|)) x̂·σ)` with β
//! a smoothstep on `[ρ_in, ρ_out]`. At the origin the block is the constant
//! `−1`, and it is the identity outside the support ball. Raising to the
//! `d`-th power multiplies the angle by `d`, which gives degree `d`.

use serde::{Deserialize, Serialize};

use super::profile::Window;
use crate::error::{Error, Result};
use crate::linalg::{pauli_dot, su2_exp, CMat, C64, I};

/// Sign in the hedgehog exponent. Fixed so that `q` has degree +1 for the
/// orientation in which `−tr(g⁻¹dg)³` is positive.
pub(crate) const HEDGEHOG_SIGN: f64 = 1.0;

/// Fraction of `ρ_out` at which the profile starts to move.
pub const DEFAULT_INNER_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClutchingMap {
    pub n: usize,
    pub d: i64,
    pub support_radius: f64,
    pub inner_radius: f64,
}

/// Value and Cartesian partials of `c` at a point.
#[derive(Debug, Clone)]
pub struct ClutchingJet {
    pub value: CMat,
    pub partials: [CMat; 3],
}

pub fn make_clutching_map(n: usize, d: i64, rho_out: f64) -> Result<ClutchingMap> {
    if n < 2 && d != 0 {
        return Err(Error::RankTooSmall { rank: n, degree: d });
    }
    if n == 0 {
        return Err(Error::NoLines);
    }
    if !(rho_out > 0.0 && rho_out < 1.0) {
        return Err(Error::Geometry(format!(
            "clutching support radius {rho_out} must lie in (0, 1)"
        )));
    }
    Ok(ClutchingMap {
        n,
        d,
        support_radius: rho_out,
        inner_radius: DEFAULT_INNER_FRACTION * rho_out,
    })
}

impl ClutchingMap {
    fn profile(&self) -> Window {
        Window::new(self.inner_radius, self.support_radius)
    }

    pub fn is_trivial(&self) -> bool {
        self.d == 0
    }

    /// True where `c` is exactly the identity.
    pub fn is_identity_at(&self, x: [f64; 3]) -> bool {
        self.d == 0 || norm3(x) >= self.support_radius
    }

    /// The 2×2 block `q(x)^d`.
    pub fn block(&self, x: [f64; 3]) -> CMat {
        if self.is_identity_at(x) {
            return CMat::identity(2);
        }
        let rho = norm3(x);
        let angle = self.angle(rho);
        if rho < self.inner_radius {
            // constant ±1: sin(dπ) vanishes, keep it exact
            let c = if self.d % 2 == 0 { 1.0 } else { -1.0 };
            return CMat::identity(2).scale(c);
        }
        su2_exp(angle, unit(x, rho))
    }

    pub fn eval(&self, x: [f64; 3]) -> CMat {
        if self.is_identity_at(x) {
            return CMat::identity(self.n);
        }
        CMat::embed_2x2(self.n, 0, 1, &self.block(x))
    }

    /// `d·π(1 − β(ρ))` times the hedgehog sign.
    fn angle(&self, rho: f64) -> f64 {
        HEDGEHOG_SIGN * self.d as f64 * std::f64::consts::PI * (1.0 - self.profile().value(rho))
    }

    /// Analytic value and partial derivatives, embedded in `U_n`.
    pub fn jet(&self, x: [f64; 3]) -> ClutchingJet {
        let n = self.n;
        if self.is_identity_at(x) {
            return ClutchingJet {
                value: CMat::identity(n),
                partials: [CMat::zeros(n), CMat::zeros(n), CMat::zeros(n)],
            };
        }
        let rho = norm3(x);
        if rho < self.inner_radius {
            return ClutchingJet {
                value: self.eval(x),
                partials: [CMat::zeros(n), CMat::zeros(n), CMat::zeros(n)],
            };
        }
        let xh = unit(x, rho);
        let angle = self.angle(rho);
        let dangle =
            -HEDGEHOG_SIGN * self.d as f64 * std::f64::consts::PI * self.profile().deriv(rho);
        let (s, c) = angle.sin_cos();
        let sig = pauli_dot(xh);
        let partials = std::array::from_fn(|a| {
            // ∂_a[cos θ + i sin θ x̂·σ] with θ = angle(ρ), ∂_a ρ = x̂_a
            let dxh: [f64; 3] =
                std::array::from_fn(|b| ((a == b) as u8 as f64 - xh[a] * xh[b]) / rho);
            let mut blk = sig.scale_c(I * (c * dangle * xh[a]));
            blk += &pauli_dot(dxh).scale_c(I * s);
            blk[(0, 0)] += C64::new(-s * dangle * xh[a], 0.0);
            blk[(1, 1)] += C64::new(-s * dangle * xh[a], 0.0);
            CMat::embed_2x2_zero(n, 0, 1, &blk)
        });
        ClutchingJet {
            value: CMat::embed_2x2(n, 0, 1, &su2_exp(angle, xh)),
            partials,
        }
    }
}

/// Quaternion coordinates `(q0, q1, q2, q3)` of `U = q0 + i q·σ ∈ SU(2)`.
pub fn su2_coordinates(u: &CMat) -> [f64; 4] {
    [u[(0, 0)].re, u[(1, 0)].im, -u[(1, 0)].re, u[(0, 0)].im]
}

pub(crate) fn norm3(x: [f64; 3]) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

fn unit(x: [f64; 3], rho: f64) -> [f64; 3] {
    [x[0] / rho, x[1] / rho, x[2] / rho]
}
