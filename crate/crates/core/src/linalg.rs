//! Small dense complex matrices.
//!
//! Gauge-field components are `n×n` skew-Hermitian matrices with `n` the
//! number of eigen-lines, usually 2 to 6. Storage is inline up to 4×4 so the
//! quadrature hot loops do not allocate.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use smallvec::{smallvec, SmallVec};

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    n: usize,
    data: SmallVec<[C64; 16]>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat {
            n,
            data: smallvec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Row-major construction.
    pub fn from_rows(n: usize, entries: &[C64]) -> Self {
        assert_eq!(entries.len(), n * n);
        CMat {
            n,
            data: SmallVec::from_slice(entries),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_mul(&self, other: &CMat) -> C64 {
        let n = self.n;
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    pub fn scale(&self, s: f64) -> Self {
        CMat {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_c(&self, s: C64) -> Self {
        CMat {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// `self + s·other`, in place.
    pub fn axpy(&mut self, s: f64, other: &CMat) {
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += b * s;
        }
    }

    pub fn commutator(&self, other: &CMat) -> Self {
        &(self * other) - &(other * self)
    }

    /// `u · self · u†`.
    pub fn conjugate_by(&self, u: &CMat) -> Self {
        &(u * self) * &u.adjoint()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖self + self†‖_max`; zero for skew-Hermitian matrices.
    pub fn skew_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self[(i, j)] + self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `‖self·self† − 1‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        (&(self * &self.adjoint()) - &CMat::identity(self.n)).max_abs()
    }

    /// Places a 2×2 block at rows/columns `(a, b)` of an `n×n` identity.
    pub fn embed_2x2(n: usize, a: usize, b: usize, block: &CMat) -> Self {
        debug_assert_eq!(block.n, 2);
        let mut m = CMat::identity(n);
        m[(a, a)] = block[(0, 0)];
        m[(a, b)] = block[(0, 1)];
        m[(b, a)] = block[(1, 0)];
        m[(b, b)] = block[(1, 1)];
        m
    }

    /// Like [`CMat::embed_2x2`] but with zeros outside the block (for
    /// derivatives).
    pub fn embed_2x2_zero(n: usize, a: usize, b: usize, block: &CMat) -> Self {
        let mut m = CMat::zeros(n);
        m[(a, a)] = block[(0, 0)];
        m[(a, b)] = block[(0, 1)];
        m[(b, a)] = block[(1, 0)];
        m[(b, b)] = block[(1, 1)];
        m
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl<'a> Mul<&'a CMat> for &'a CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        let n = self.n;
        debug_assert_eq!(n, rhs.n);
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a CMat> for &'a CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        CMat {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CMat> for &'a CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        CMat {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.scale(-1.0)
    }
}

impl AddAssign<&CMat> for CMat {
    fn add_assign(&mut self, rhs: &CMat) {
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a += b;
        }
    }
}

/// Pauli matrices.
pub fn pauli(a: usize) -> CMat {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    match a {
        0 => CMat::from_rows(2, &[o, l, l, o]),
        1 => CMat::from_rows(2, &[o, -I, I, o]),
        2 => CMat::from_rows(2, &[l, o, o, -l]),
        _ => panic!("Pauli index must be 0, 1 or 2"),
    }
}

/// `Σ_a v_a σ_a`.
pub fn pauli_dot(v: [f64; 3]) -> CMat {
    CMat::from_rows(
        2,
        &[
            C64::new(v[2], 0.0),
            C64::new(v[0], -v[1]),
            C64::new(v[0], v[1]),
            C64::new(-v[2], 0.0),
        ],
    )
}

impl Add<&CMat> for CMat {
    type Output = CMat;
    fn add(mut self, rhs: &CMat) -> CMat {
        self += rhs;
        self
    }
}

/// `cos α + i sin α (n·σ)` for a unit vector `n`.
pub fn su2_exp(alpha: f64, n: [f64; 3]) -> CMat {
    let (s, c) = alpha.sin_cos();
    let mut m = pauli_dot(n).scale_c(I * s);
    m[(0, 0)] += c;
    m[(1, 1)] += c;
    m
}
