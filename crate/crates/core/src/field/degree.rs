//! Degree of a clutching map by counting signed preimages.
//!
//! The 2×2 block of `c` extends to a map `S³ → SU(2) ≅ S³` since it is the
//! identity near the boundary of its support ball. For a regular value `y`,
//! the degree is the number of preimages counted with the sign of the
//! Jacobian. The target is oriented so that `−tr(g⁻¹dg)³` is a positive
//! volume form, which is the opposite of the quaternion orientation
//! `det[q, ∂₁q, ∂₂q, ∂₃q] > 0`.
//!
//! Roots are found by Newton iteration from a grid of seeds, with the
//! Jacobian taken by finite differences, so the oracle only uses evaluations
//! of `c`.

use serde::{Deserialize, Serialize};

use super::clutching::{norm3, su2_coordinates, ClutchingMap};
use crate::error::{Error, Result};

const SEEDS_PER_AXIS: usize = 14;
const NEWTON_STEPS: usize = 60;
const JACOBIAN_STEP: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PreimageRoot {
    pub x: [f64; 3],
    pub sign: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreimageCount {
    pub value: [f64; 4],
    pub roots: Vec<PreimageRoot>,
    pub degree: i64,
}

/// A fixed regular value away from `±1`.
pub fn default_regular_value() -> [f64; 4] {
    normalise([0.31, -0.52, 0.44, 0.65])
}

fn normalise(q: [f64; 4]) -> [f64; 4] {
    let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
    q.map(|v| v / n)
}

fn coords(c: &ClutchingMap, x: [f64; 3]) -> [f64; 4] {
    su2_coordinates(&c.block(x))
}

/// Signed preimage count of `y` under the block of `c`.
pub fn preimage_degree(c: &ClutchingMap, y: [f64; 4]) -> Result<PreimageCount> {
    let y = normalise(y);
    if (y[0] - 1.0).abs() < 1e-6 {
        return Err(Error::Geometry("the identity is not a regular value".into()));
    }
    let rho = c.support_radius;
    let mut roots: Vec<PreimageRoot> = Vec::new();
    if c.d != 0 {
        for i in 0..SEEDS_PER_AXIS {
            for j in 0..SEEDS_PER_AXIS {
                for k in 0..SEEDS_PER_AXIS {
                    let seed = [i, j, k].map(|m| rho * (2.0 * (m as f64 + 0.5) / SEEDS_PER_AXIS as f64 - 1.0));
                    if norm3(seed) >= rho {
                        continue;
                    }
                    let Some(x) = newton(c, y, seed) else { continue };
                    if roots.iter().any(|r| dist(r.x, x) < 1e-6) {
                        continue;
                    }
                    let sign = jacobian_sign(c, x);
                    if sign != 0 {
                        roots.push(PreimageRoot { x, sign });
                    }
                }
            }
        }
    }
    roots.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap_or(std::cmp::Ordering::Equal));
    let degree = roots.iter().map(|r| r.sign as i64).sum();
    Ok(PreimageCount { value: y, roots, degree })
}

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    norm3([a[0] - b[0], a[1] - b[1], a[2] - b[2]])
}

fn newton(c: &ClutchingMap, y: [f64; 4], mut x: [f64; 3]) -> Option<[f64; 3]> {
    for _ in 0..NEWTON_STEPS {
        let q = coords(c, x);
        let r = [q[1] - y[1], q[2] - y[2], q[3] - y[3]];
        let res = norm3(r);
        if res < 1e-13 {
            break;
        }
        let jac = vector_jacobian(c, x);
        let step = solve3(jac, r)?;
        for a in 0..3 {
            x[a] -= step[a];
        }
        if norm3(x) >= c.support_radius {
            return None;
        }
    }
    let q = coords(c, x);
    let res = norm3([q[1] - y[1], q[2] - y[2], q[3] - y[3]]);
    (res < 1e-10 && (q[0] - y[0]).abs() < 1e-6).then_some(x)
}

/// `∂(q₁, q₂, q₃)/∂(x₁, x₂, x₃)` by central differences, row = component.
fn vector_jacobian(c: &ClutchingMap, x: [f64; 3]) -> [[f64; 3]; 3] {
    let cols = partials(c, x);
    std::array::from_fn(|i| std::array::from_fn(|a| cols[a][i + 1]))
}

fn partials(c: &ClutchingMap, x: [f64; 3]) -> [[f64; 4]; 3] {
    std::array::from_fn(|a| {
        let mut xp = x;
        let mut xm = x;
        xp[a] += JACOBIAN_STEP;
        xm[a] -= JACOBIAN_STEP;
        let (p, m) = (coords(c, xp), coords(c, xm));
        std::array::from_fn(|i| (p[i] - m[i]) / (2.0 * JACOBIAN_STEP))
    })
}

fn jacobian_sign(c: &ClutchingMap, x: [f64; 3]) -> i32 {
    let q = coords(c, x);
    let d = partials(c, x);
    let m = [q, d[0], d[1], d[2]];
    let det = det4(m);
    if det.abs() < 1e-8 {
        0
    } else if det > 0.0 {
        -1
    } else {
        1
    }
}

fn solve3(m: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = det3(m);
    if det.abs() < 1e-14 {
        return None;
    }
    Some(std::array::from_fn(|i| {
        let mut mi = m;
        for r in 0..3 {
            mi[r][i] = b[r];
        }
        det3(mi) / det
    }))
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Determinant of the 4×4 matrix whose rows are the given vectors.
pub(crate) fn det4(m: [[f64; 4]; 4]) -> f64 {
    let mut acc = 0.0;
    for col in 0..4 {
        let minor: [[f64; 3]; 3] = std::array::from_fn(|r| {
            let row = &m[r + 1];
            let mut out = [0.0; 3];
            let mut k = 0;
            for (c, &v) in row.iter().enumerate() {
                if c != col {
                    out[k] = v;
                    k += 1;
                }
            }
            out
        });
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * m[0][col] * det3(minor);
    }
    acc
}
