//! Dirac monopole potentials and a global frame for their direct sum.
//!
//! Each line carries the charge-`k` Dirac potential in two hemispherical
//! patches. Over a ball the sum of lines only extends if the patch
//! transition `diag(e^{iψ_j φ})` is null-homotopic, which holds because
//! `Σ k_j = 0`. The frame `g(θ, φ)` runs through such a homotopy across a cone
//! `θ ∈ [θ_a, θ_b]`. It is the identity north of the cone and the transition
//! function south of it. The resulting potential is smooth on `R³ ∖ {0}` and
//! agrees with the north patch for `θ ≤ θ_a` and the south patch for `θ ≥ θ_b`.

use super::profile::Window;
use crate::linalg::{pauli, su2_exp, CMat, C64, I};

/// Orientation of the sphere at infinity relative to the outward normal of
/// the ball. The sphere is oriented as a factor of `∂X = S¹ × S²∞` with `X`
/// oriented by `(dz, dx₁, dx₂, dx₃)`, which is the inward one.
pub const SPHERE_ORIENTATION: f64 = -1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Hemisphere {
    North,
    South,
}

/// Spherical data of a point with `r > 0`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Polar {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    /// `∂θ/∂x_a` and `∂φ/∂x_a`.
    pub dtheta: [f64; 3],
    pub dphi: [f64; 3],
}

impl Polar {
    pub fn new(x: [f64; 3]) -> Self {
        let rho2 = x[0] * x[0] + x[1] * x[1];
        let r = (rho2 + x[2] * x[2]).sqrt();
        let rho = rho2.sqrt();
        let theta = rho.atan2(x[2]);
        let phi = x[1].atan2(x[0]);
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Polar {
            r,
            theta,
            phi,
            dtheta: [ct * cp / r, ct * sp / r, -st / r],
            dphi: if rho > 0.0 {
                [-x[1] / rho2, x[0] / rho2, 0.0]
            } else {
                [0.0; 3]
            },
        }
    }
}

/// Coefficient `C` with `a = C·k·(±1 − cos θ) dφ`, chosen so that
/// `(i/2π)∮ f = k` on the oriented sphere.
fn dirac_coefficient() -> C64 {
    // (k/2i) for the outward orientation
    C64::new(0.0, -0.5) * SPHERE_ORIENTATION
}

/// Cartesian components of the Dirac potential `C(±1 − cos θ)dφ` per unit
/// charge, in the given patch.
pub(crate) fn dirac_unit(x: [f64; 3], patch: Hemisphere) -> [C64; 3] {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let denom = match patch {
        Hemisphere::North => r * (r + x[2]),
        Hemisphere::South => -r * (r - x[2]),
    };
    let c = dirac_coefficient() / denom;
    [c * (-x[1]), c * x[0], C64::new(0.0, 0.0)]
}

/// Diagonal patch potential for the charges `k`.
pub(crate) fn patch_potential(ks: &[i64], x: [f64; 3], patch: Hemisphere) -> [CMat; 3] {
    let unit = dirac_unit(x, patch);
    std::array::from_fn(|a| {
        let diag: Vec<C64> = ks.iter().map(|&k| unit[a] * k as f64).collect();
        CMat::from_diag(&diag)
    })
}

/// Homotopy from the identity to the patch transition function.
#[derive(Debug, Clone)]
pub(crate) struct GlobalFrame {
    charges: Vec<i64>,
    higgs: CMat,
    /// Winding of the block on `(j, n−1)`.
    kappa: Vec<f64>,
    ramp: Window,
}

/// `g` and its partials in `s` and `φ`.
struct FrameJet {
    g: CMat,
    ds: CMat,
    dphi: CMat,
}

impl GlobalFrame {
    pub fn new(ks: &[i64], higgs: CMat, ramp: Window) -> Self {
        let n = ks.len();
        let kappa = ks[..n.saturating_sub(1)]
            .iter()
            .map(|&k| SPHERE_ORIENTATION * k as f64)
            .collect();
        GlobalFrame {
            charges: ks.to_vec(),
            higgs,
            kappa,
            ramp,
        }
    }

    /// 2×2 block `exp(−iκφσ₃/2)·exp(i(κφ/2) n̂(s)·σ)` and its partials, with
    /// `n̂(s) = (sin πs, 0, cos πs)`.
    fn block(kappa: f64, s: f64, phi: f64) -> [CMat; 3] {
        use std::f64::consts::PI;
        let half = 0.5 * kappa * phi;
        let nhat = [(PI * s).sin(), 0.0, (PI * s).cos()];
        let dn = [PI * (PI * s).cos(), 0.0, -PI * (PI * s).sin()];
        let p = su2_exp(-half, [0.0, 0.0, 1.0]);
        let q = su2_exp(half, nhat);
        let sig_n = crate::linalg::pauli_dot(nhat);
        let sig_dn = crate::linalg::pauli_dot(dn);
        let value = &p * &q;
        // ∂_s q = i sin(half) (∂_s n̂)·σ
        let ds = &p * &sig_dn.scale_c(I * half.sin());
        // ∂_φ(pq) = −(iκ/2)σ₃ pq + p (iκ/2)(n̂·σ) q
        let left = &pauli(2).scale_c(I * (-0.5 * kappa)) * &value;
        let right = &p * &(&sig_n.scale_c(I * (0.5 * kappa)) * &q);
        [value, ds, &left + &right]
    }

    fn jet(&self, s: f64, phi: f64) -> FrameJet {
        let m = self.kappa.len();
        let n = m + 1;
        let blocks: Vec<[CMat; 3]> = self
            .kappa
            .iter()
            .map(|&k| Self::block(k, s, phi))
            .collect();
        let emb = |j: usize, which: usize| -> CMat {
            if which == 0 {
                CMat::embed_2x2(n, j, n - 1, &blocks[j][0])
            } else {
                CMat::embed_2x2_zero(n, j, n - 1, &blocks[j][which])
            }
        };
        let mut g = CMat::identity(n);
        let mut ds = CMat::zeros(n);
        let mut dphi = CMat::zeros(n);
        // product rule over g = H_0 H_1 … H_{m−1}
        for j in 0..m {
            let h = emb(j, 0);
            ds = &(&ds * &h) + &(&g * &emb(j, 1));
            dphi = &(&dphi * &h) + &(&g * &emb(j, 2));
            g = &g * &h;
        }
        FrameJet { g, ds, dphi }
    }

    /// Spatial potential and Higgs field in the global frame, before radial
    /// cutoff.
    pub fn fields(&self, x: [f64; 3]) -> ([CMat; 3], CMat) {
        let ks = &self.charges;
        let phi_diag = &self.higgs;
        let pol = Polar::new(x);
        let s = self.ramp.value(pol.theta);
        if s <= 0.0 {
            return (patch_potential(ks, x, Hemisphere::North), phi_diag.clone());
        }
        if s >= 1.0 {
            return (patch_potential(ks, x, Hemisphere::South), phi_diag.clone());
        }
        let sdot = self.ramp.deriv(pol.theta);
        let jet = self.jet(s, pol.phi);
        let gd = jet.g.adjoint();
        let north = patch_potential(ks, x, Hemisphere::North);
        let a = std::array::from_fn(|c| {
            let dg = &jet.ds.scale(sdot * pol.dtheta[c]) + &jet.dphi.scale(pol.dphi[c]);
            &north[c].conjugate_by(&jet.g) - &(&dg * &gd)
        });
        (a, phi_diag.conjugate_by(&jet.g))
    }

    #[cfg(test)]
    fn value(&self, s: f64, phi: f64) -> CMat {
        self.jet(s, phi).g
    }
}
