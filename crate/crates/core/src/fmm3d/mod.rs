//! 3-D expansions, translations and complex rotations for `1/ρ` and
//! `e^{iκρ}/ρ`.
//!
//! Coefficients of degree `n <= P` and order `|m| <= n` live in a flat array
//! at `n^2 + n + m`. Harmonics follow
//! `Y_n^m = sqrt((n-|m|)!/(n+|m|)!) P_n^{|m|}(cos θ) e^{imφ}`; they are formed
//! from `cos θ = x3/ρ` and `sin θ e^{±iφ} = (x1 ± i x2)/ρ`, so no azimuth is
//! ever extracted.

pub mod helm;
pub mod lap;
pub mod pas;
pub mod rotation;

pub use helm::*;
pub use lap::*;
pub use pas::*;
pub use rotation::*;

use crate::cgeom::{CVec3, C64};
use crate::error::{FmmError, Result};
use crate::specfun::legendre::{tri, ylm_from_parts};
use std::sync::OnceLock;

pub(crate) const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub(crate) const ONE: C64 = C64 { re: 1.0, im: 0.0 };

#[inline]
pub fn idx(n: usize, m: i64) -> usize {
    ((n * n + n) as i64 + m) as usize
}

#[inline]
pub fn ncoef(p: usize) -> usize {
    (p + 1) * (p + 1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel3 {
    Laplace,
    Helmholtz(f64),
}

impl Kernel3 {
    pub fn kappa(&self) -> Option<f64> {
        match self {
            Kernel3::Laplace => None,
            Kernel3::Helmholtz(k) => Some(*k),
        }
    }
}

macro_rules! expansion3 {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Debug, Clone, PartialEq)]
        pub struct $name {
            pub center: CVec3,
            pub p: usize,
            pub kernel: Kernel3,
            /// Length scale of the stored coefficients (Laplace only; 1 for Helmholtz).
            pub scale: f64,
            pub coeffs: Vec<C64>,
        }

        impl $name {
            pub fn zero(center: CVec3, p: usize, kernel: Kernel3, scale: f64) -> Self {
                $name { center, p, kernel, scale, coeffs: vec![ZERO; ncoef(p)] }
            }

            pub fn get(&self, n: usize, m: i64) -> C64 {
                self.coeffs[idx(n, m)]
            }

            pub fn peak(&self) -> f64 {
                self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
            }
        }
    };
}

expansion3!(Mpole3, "Outgoing expansion, valid outside a ball about `center`.");
expansion3!(Local3, "Incoming expansion, valid inside a ball about `center`.");

/// Complex radius and direction of an offset.
#[derive(Debug, Clone, Copy)]
pub struct SolidParts {
    pub rho: C64,
    pub cos_theta: C64,
    /// `(x1 + i x2)/ρ`.
    pub wp: C64,
    /// `(x1 - i x2)/ρ`.
    pub wm: C64,
}

pub fn solid_parts(d: CVec3) -> Result<SolidParts> {
    let rho = crate::cgeom::csqrt(d.dot_self());
    let m = d.modulus_norm();
    if m == 0.0 || rho.norm() < 1e-12 * m {
        return Err(FmmError::DegeneratePoint(format!("ρ vanishes at ({}, {}, {})", d.0[0], d.0[1], d.0[2])));
    }
    let inv = 1.0 / rho;
    let i = C64::i();
    Ok(SolidParts { rho, cos_theta: d.0[2] * inv, wp: (d.0[0] + i * d.0[1]) * inv, wm: (d.0[0] - i * d.0[1]) * inv })
}

pub(crate) fn is_zero(d: CVec3) -> bool {
    d.0.iter().all(|c| *c == ZERO)
}

/// `Y_n^m` for `n <= p` into `out` (length `(p+1)^2`); `scratch` needs `tri(p,p)+1`.
pub fn harmonics(p: usize, s: &SolidParts, scratch: &mut Vec<C64>, out: &mut [C64]) {
    scratch.resize(tri(p, p) + 1, ZERO);
    ylm_from_parts(p, s.cos_theta, s.wp, s.wm, scratch, out);
}

/// `i^k` for any integer `k`.
#[inline]
pub fn ipow(k: i64) -> C64 {
    match k.rem_euclid(4) {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

const LNF_MAX: usize = 1024;

/// `ln(n!)` from a shared table.
pub fn lnfact(n: usize) -> f64 {
    static T: OnceLock<Vec<f64>> = OnceLock::new();
    let t = T.get_or_init(|| {
        let mut v = vec![0.0; LNF_MAX + 1];
        for k in 2..=LNF_MAX {
            v[k] = v[k - 1] + (k as f64).ln();
        }
        v
    });
    t[n]
}

/// `A_n^m = (-1)^n / sqrt((n-m)!(n+m)!)`, kept as sign and log-magnitude.
#[derive(Debug, Clone)]
pub struct AnmTable {
    pub p: usize,
    ln: Vec<f64>,
}

impl AnmTable {
    pub fn new(p: usize) -> Self {
        let mut ln = vec![0.0; tri(p, p) + 1];
        for n in 0..=p {
            for m in 0..=n {
                ln[tri(n, m)] = -0.5 * (lnfact(n - m) + lnfact(n + m));
            }
        }
        AnmTable { p, ln }
    }

    pub fn ln_abs(&self, n: usize, m: i64) -> f64 {
        self.ln[tri(n, m.unsigned_abs() as usize)]
    }

    pub fn sign(n: usize) -> f64 {
        if n % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn value(&self, n: usize, m: i64) -> f64 {
        Self::sign(n) * self.ln_abs(n, m).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgeom::CVec;

    #[test]
    fn anm_basics() {
        let a = AnmTable::new(90);
        assert_eq!(a.value(0, 0), 1.0);
        assert!((a.value(3, 1) + 1.0 / (2.0f64 * 24.0).sqrt()).abs() < 1e-15);
        for n in 0..=90 {
            for m in 0..=n as i64 {
                assert_eq!(a.value(n, m), a.value(n, -m));
            }
        }
        assert!(a.value(90, 90).is_finite() && a.value(90, 90) != 0.0);
    }

    #[test]
    fn ipow_cycle() {
        assert_eq!(ipow(-1), C64::new(0.0, -1.0));
        assert_eq!(ipow(6), C64::new(-1.0, 0.0));
    }

    #[test]
    fn solid_parts_rejects_isotropic() {
        let d = CVec::new([C64::new(1.0, 0.0), C64::new(0.0, 1.0), ZERO]);
        assert!(solid_parts(d).is_err());
        let axis = solid_parts(CVec::from_real([0.0, 0.0, -2.0])).unwrap();
        assert_eq!(axis.rho, C64::new(2.0, 0.0));
        assert_eq!(axis.cos_theta, C64::new(-1.0, 0.0));
    }
}
