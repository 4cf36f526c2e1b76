//! Legendre polynomials, normalised associated Legendre functions and
//! spherical harmonics at complex arguments.
//!
//! Associated functions are carried in reduced form
//! `Q_n^m(z) = Pbar_n^m(z) / (1 - z^2)^{m/2}`, which is a polynomial in `z`
//! and so needs no branch choice for `sin(theta)`.

use crate::cgeom::SphereC;
use num_complex::Complex64 as C64;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

/// Highest degree held by [`LegendreRecurrence::global`].
pub const GLOBAL_DEGREE: usize = 200;

/// Field the Legendre recurrences run over (real nodes or complex cosines).
pub trait Scalar: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Mul<f64, Output = Self> {
    fn from_f64(v: f64) -> Self;
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
}

impl Scalar for C64 {
    fn from_f64(v: f64) -> Self {
        C64::new(v, 0.0)
    }
}

#[inline]
pub fn tri(n: usize, m: usize) -> usize {
    n * (n + 1) / 2 + m
}

/// `P_0(z)..P_p(z)` by the three-term recurrence.
pub fn legendre_seq(z: C64, p: usize) -> Vec<C64> {
    let mut v = Vec::with_capacity(p + 1);
    v.push(C64::new(1.0, 0.0));
    if p >= 1 {
        v.push(z);
    }
    for n in 1..p {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * z * v[n] - nf * v[n - 1]) / (nf + 1.0);
        v.push(next);
    }
    v
}

/// Precomputed recurrence coefficients for `Q_n^m`, `0 <= m <= n <= p`.
#[derive(Debug, Clone)]
pub struct LegendreRecurrence {
    pub p: usize,
    diag: Vec<f64>,
    sub: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl LegendreRecurrence {
    pub fn new(p: usize) -> Self {
        let mut diag = vec![0.0; p + 1];
        diag[0] = (1.0 / (4.0 * PI)).sqrt();
        for m in 1..=p {
            diag[m] = -diag[m - 1] * ((2 * m + 1) as f64 / (2 * m) as f64).sqrt();
        }
        let sub = (0..=p).map(|m| ((2 * m + 3) as f64).sqrt()).collect();
        let mut a = vec![0.0; tri(p, p) + 1];
        let mut b = vec![0.0; tri(p, p) + 1];
        for n in 2..=p {
            for m in 0..n.saturating_sub(1) {
                let (nf, mf) = (n as f64, m as f64);
                a[tri(n, m)] = ((4.0 * nf * nf - 1.0) / (nf * nf - mf * mf)).sqrt();
                let n1 = nf - 1.0;
                b[tri(n, m)] = ((n1 * n1 - mf * mf) / (4.0 * n1 * n1 - 1.0)).sqrt();
            }
        }
        LegendreRecurrence { p, diag, sub, a, b }
    }

    /// Shared table large enough for every degree the library uses.
    pub fn global() -> &'static LegendreRecurrence {
        static TABLE: OnceLock<LegendreRecurrence> = OnceLock::new();
        TABLE.get_or_init(|| LegendreRecurrence::new(GLOBAL_DEGREE))
    }

    /// Reduced functions `Q_n^m(z)` into `q` (triangular layout).
    pub fn eval<T: Scalar>(&self, z: T, q: &mut [T]) {
        self.eval_to(z, self.p, q)
    }

    /// As [`eval`](Self::eval) but only up to degree `p <= self.p`.
    pub fn eval_to<T: Scalar>(&self, z: T, p: usize, q: &mut [T]) {
        assert!(p <= self.p);
        for m in 0..=p {
            let qmm = T::from_f64(self.diag[m]);
            q[tri(m, m)] = qmm;
            if m < p {
                q[tri(m + 1, m)] = z * qmm * self.sub[m];
            }
            for n in (m + 2)..=p {
                let k = tri(n, m);
                q[k] = (z * q[tri(n - 1, m)] - q[tri(n - 2, m)] * self.b[k]) * self.a[k];
            }
        }
    }

    /// Reduced functions and their `z`-derivatives.
    pub fn eval_with_derivative<T: Scalar>(&self, z: T, q: &mut [T], dq: &mut [T]) {
        self.eval_with_derivative_to(z, self.p, q, dq)
    }

    pub fn eval_with_derivative_to<T: Scalar>(&self, z: T, p: usize, q: &mut [T], dq: &mut [T]) {
        self.eval_to(z, p, q);
        for m in 0..=p {
            dq[tri(m, m)] = T::from_f64(0.0);
            if m < p {
                dq[tri(m + 1, m)] = q[tri(m, m)] * self.sub[m];
            }
            for n in (m + 2)..=p {
                let k = tri(n, m);
                dq[k] = (q[tri(n - 1, m)] + z * dq[tri(n - 1, m)] - dq[tri(n - 2, m)] * self.b[k]) * self.a[k];
            }
        }
    }
}

/// `Pbar_n^m` at one argument, with optional `theta`-derivatives.
#[derive(Debug, Clone)]
pub struct AssocLegendreTable {
    pub degree_max: usize,
    pub z: C64,
    /// `sqrt(1 - z^2)`, principal branch.
    pub s: C64,
    pub q: Vec<C64>,
    pub dq: Option<Vec<C64>>,
}

impl AssocLegendreTable {
    pub fn pbar(&self, n: usize, m: usize) -> C64 {
        self.q[tri(n, m)] * self.s.powu(m as u32)
    }

    pub fn reduced(&self, n: usize, m: usize) -> C64 {
        self.q[tri(n, m)]
    }

    /// `d/dθ Pbar_n^m(cos θ)` at `cos θ = z`.
    pub fn dtheta(&self, n: usize, m: usize) -> Option<C64> {
        let dq = self.dq.as_ref()?;
        let (q, d, s, z) = (self.q[tri(n, m)], dq[tri(n, m)], self.s, self.z);
        let sm = s.powu(m as u32);
        let mut v = -s * sm * d;
        if m > 0 {
            v += m as f64 * z * s.powu(m as u32 - 1) * q;
        }
        Some(v)
    }
}

pub fn assoc_legendre_norm(z: C64, p: usize, with_derivative: bool) -> AssocLegendreTable {
    let rec = LegendreRecurrence::new(p);
    let len = tri(p, p) + 1;
    let mut q = vec![C64::new(0.0, 0.0); len];
    let dq = if with_derivative {
        let mut dq = vec![C64::new(0.0, 0.0); len];
        rec.eval_with_derivative(z, &mut q, &mut dq);
        Some(dq)
    } else {
        rec.eval(z, &mut q);
        None
    };
    AssocLegendreTable { degree_max: p, z, s: (1.0 - z * z).sqrt(), q, dq }
}

/// Position of `(n, m)` in the `(p+1)^2` harmonic layout.
#[inline]
pub fn lm(n: usize, m: i64) -> usize {
    ((n * n + n) as i64 + m) as usize
}

/// All `Y_n^m`, `n <= p`, in the layout `n^2 + n + m`.
#[derive(Debug, Clone)]
pub struct YlmTable {
    pub p: usize,
    pub values: Vec<C64>,
}

impl YlmTable {
    pub fn get(&self, n: usize, m: i64) -> C64 {
        self.values[lm(n, m)]
    }
}

/// Spherical harmonics from `cos θ` and `w± = sin θ e^{±iφ}`.
pub fn ylm_from_parts(p: usize, cos_theta: C64, w_plus: C64, w_minus: C64, q: &mut [C64], out: &mut [C64]) {
    LegendreRecurrence::global().eval_to(cos_theta, p, q);
    let mut wp = C64::new(1.0, 0.0);
    let mut wm = C64::new(1.0, 0.0);
    for m in 0..=p {
        for n in m..=p {
            let c = (4.0 * PI / (2 * n + 1) as f64).sqrt() * q[tri(n, m)];
            let base = n * n + n;
            out[base + m] = c * wp;
            if m > 0 {
                out[base - m] = c * wm;
            }
        }
        wp *= w_plus;
        wm *= w_minus;
    }
}

pub fn ylm_table(p: usize, s: &SphereC) -> YlmTable {
    let mut q = vec![C64::new(0.0, 0.0); tri(p, p) + 1];
    let mut values = vec![C64::new(0.0, 0.0); (p + 1) * (p + 1)];
    ylm_from_parts(p, s.cos_theta, s.sin_theta * s.eip, s.sin_theta * s.eim, &mut q, &mut values);
    YlmTable { p, values }
}

/// `Y_n^m = sqrt((n-|m|)!/(n+|m|)!) P_n^{|m|}(cos θ) e^{imφ}`.
pub fn spherical_harmonic(n: usize, m: i64, s: &SphereC) -> C64 {
    assert!(m.unsigned_abs() as usize <= n);
    ylm_table(n, s).get(n, m)
}
