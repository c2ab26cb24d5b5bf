//! Quintic smoothstep cutoffs.

/// `6s⁵ − 15s⁴ + 10s³` on `[0, 1]`, clamped outside; first and second
/// derivatives vanish at both ends.
pub fn smoothstep(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else if s >= 1.0 {
        1.0
    } else {
        s * s * s * (s * (6.0 * s - 15.0) + 10.0)
    }
}

pub fn smoothstep_deriv(s: f64) -> f64 {
    if s <= 0.0 || s >= 1.0 {
        0.0
    } else {
        let t = s * (1.0 - s);
        30.0 * t * t
    }
}

/// Smoothstep rescaled to the window `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(hi > lo, "empty cutoff window");
        Window { lo, hi }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn value(&self, x: f64) -> f64 {
        smoothstep((x - self.lo) / self.width())
    }

    pub fn deriv(&self, x: f64) -> f64 {
        smoothstep_deriv((x - self.lo) / self.width()) / self.width()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_are_flat() {
        assert_eq!(smoothstep(0.0), 0.0);
        assert_eq!(smoothstep(1.0), 1.0);
        assert_eq!(smoothstep_deriv(0.0), 0.0);
        assert_eq!(smoothstep_deriv(1.0), 0.0);
        assert!((smoothstep(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_differences() {
        let w = Window::new(0.2, 0.6);
        for &x in &[0.25, 0.3, 0.41, 0.55] {
            let h = 1e-6;
            let fd = (w.value(x + h) - w.value(x - h)) / (2.0 * h);
            assert!((fd - w.deriv(x)).abs() < 1e-8);
        }
    }
}
