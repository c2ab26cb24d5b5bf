//! Hurwitz zeta function by Euler–Maclaurin summation.
//!
//! `ζ(s, a) = Σ_{n≥0} (n + a)^{−s}`, continued analytically to `s ≠ 1`. The
//! first `m` terms are summed directly; the tail starting at `b = a + m` is
//!
//! ```text
//! b^{1−s}/(s−1) + b^{−s}/2 + Σ_{j=1}^{p} B_{2j}/(2j)! · s(s+1)…(s+2j−2) · b^{−s−2j+1}
//! ```

/// B₂, B₄, …, B₂₀.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Value plus the magnitude of the first omitted correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaEstimate {
    pub value: f64,
    pub error_bound: f64,
}

/// Euler–Maclaurin tail `Σ_{n≥0} (n + b)^{−s}` with `p` Bernoulli corrections.
pub fn hurwitz_tail(s: f64, b: f64, p: usize) -> ZetaEstimate {
    assert!(b > 0.0, "tail start must be positive");
    assert!(s != 1.0, "pole at s = 1");
    let p = p.min(BERNOULLI_EVEN.len() - 1);
    let mut value = b.powf(1.0 - s) / (s - 1.0) + 0.5 * b.powf(-s);
    // rising product s(s+1)…(s+2j−2) divided by (2j)!
    let mut coeff = s;
    let mut fact = 2.0;
    let mut next = 0.0;
    for (j, &bern) in BERNOULLI_EVEN.iter().enumerate().take(p + 1) {
        let term = bern / fact * coeff * b.powf(-s - (2 * j + 1) as f64);
        if j < p {
            value += term;
            coeff *= (s + (2 * j + 1) as f64) * (s + (2 * j + 2) as f64);
            fact *= ((2 * j + 3) * (2 * j + 4)) as f64;
        } else {
            next = term.abs();
        }
    }
    ZetaEstimate {
        value,
        error_bound: next,
    }
}

/// `ζ(s, a)` for `a > 0`, summing `m` terms directly before the tail.
pub fn hurwitz_zeta(s: f64, a: f64, m: usize) -> ZetaEstimate {
    assert!(a > 0.0, "Hurwitz parameter must be positive");
    let head: f64 = (0..m).map(|n| (n as f64 + a).powf(-s)).sum();
    let tail = hurwitz_tail(s, a + m as f64, 8);
    ZetaEstimate {
        value: head + tail.value,
        error_bound: tail.error_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn riemann_values() {
        let z2 = hurwitz_zeta(2.0, 1.0, 10);
        assert!((z2.value - PI * PI / 6.0).abs() < 1e-14, "{z2:?}");
        let z4 = hurwitz_zeta(4.0, 1.0, 10);
        assert!((z4.value - PI.powi(4) / 90.0).abs() < 1e-14);
        // ζ(0) = −1/2, ζ(−1) = −1/12
        assert!((hurwitz_zeta(0.0, 1.0, 10).value + 0.5).abs() < 1e-13);
        assert!((hurwitz_zeta(-1.0, 1.0, 10).value + 1.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn negative_integers_give_bernoulli_polynomials() {
        // ζ(0, a) = 1/2 − a,  ζ(−1, a) = −B₂(a)/2 = −(a² − a + 1/6)/2
        for &a in &[0.1, 0.25, 0.5, 0.9, 1.7] {
            let z0 = hurwitz_zeta(0.0, a, 12).value;
            assert!((z0 - (0.5 - a)).abs() < 1e-12, "a = {a}");
            let z1 = hurwitz_zeta(-1.0, a, 12).value;
            assert!((z1 + (a * a - a + 1.0 / 6.0) / 2.0).abs() < 1e-11, "a = {a}");
        }
    }

    #[test]
    fn half_integer_parameter() {
        // ζ(2, 1/2) = 3ζ(2) = π²/2
        let z = hurwitz_zeta(2.0, 0.5, 10);
        assert!((z.value - PI * PI / 2.0).abs() < 1e-13);
    }
}
