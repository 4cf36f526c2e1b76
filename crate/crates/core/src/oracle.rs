//! Brute-force sums, the relative-error metric, and benchmark geometries.
//!
//! Kernels are the unscaled ones of the N-body sums: `log r`, `H_0^(1)(κr)`,
//! `1/ρ` and `e^{iκρ}/ρ`. Physical Green's functions differ by the constants
//! `-1/2π`, `i/4`, `1/4π` and `1/4π`, which callers must reapply.

use crate::cgeom::{csqrt, CVec, CVec2, CVec3, C64};
use crate::error::{FmmError, Result};
use crate::specfun::{erfc_real, hankel_h0};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel {
    Lap2d,
    Helm2d(f64),
    Lap3d,
    Helm3d(f64),
}

impl Kernel {
    pub fn dim(&self) -> usize {
        match self {
            Kernel::Lap2d | Kernel::Helm2d(_) => 2,
            _ => 3,
        }
    }

    pub fn kappa(&self) -> Option<f64> {
        match self {
            Kernel::Helm2d(k) | Kernel::Helm3d(k) => Some(*k),
            _ => None,
        }
    }

    pub fn is_helmholtz(&self) -> bool {
        self.kappa().is_some()
    }

    pub fn name(&self) -> &'static str {
        match self {
            Kernel::Lap2d => "lap2d",
            Kernel::Helm2d(_) => "helm2d",
            Kernel::Lap3d => "lap3d",
            Kernel::Helm3d(_) => "helm3d",
        }
    }

    /// Kernel from its name, with the wavenumber required for Helmholtz.
    pub fn parse(name: &str, kappa: Option<f64>) -> Result<Kernel> {
        let need = |k: Option<f64>| match k {
            Some(k) if k > 0.0 && k.is_finite() => Ok(k),
            _ => Err(FmmError::InvalidInput(format!("{name} needs a positive wavenumber"))),
        };
        match name {
            "lap2d" => Ok(Kernel::Lap2d),
            "lap3d" => Ok(Kernel::Lap3d),
            "helm2d" => Ok(Kernel::Helm2d(need(kappa)?)),
            "helm3d" => Ok(Kernel::Helm3d(need(kappa)?)),
            _ => Err(FmmError::InvalidInput(format!("unknown kernel {name}"))),
        }
    }

    /// Kernel value between two points of dimension `D`.
    #[inline]
    pub fn value<const D: usize>(&self, x: &CVec<D>, y: &CVec<D>) -> Result<C64> {
        if D != self.dim() {
            return Err(FmmError::InvalidInput(format!("{} kernel with {D}-D points", self.name())));
        }
        let (mut s, mut m2) = (C64::new(0.0, 0.0), 0.0);
        for k in 0..D {
            let d = x.0[k] - y.0[k];
            s += d * d;
            m2 += d.norm_sqr();
        }
        // |r| <= 1e-12 |x - y|, including x = y
        if !(s.norm() > 1e-24 * m2) {
            return Err(FmmError::DegeneratePoint(format!("complex distance vanishes between {x:?} and {y:?}")));
        }
        Ok(match *self {
            Kernel::Lap2d => 0.5 * s.ln(),
            Kernel::Helm2d(k) => hankel_h0(k * csqrt(s))?,
            Kernel::Lap3d => 1.0 / csqrt(s),
            Kernel::Helm3d(k) => {
                let r = csqrt(s);
                (C64::i() * k * r).exp() / r
            }
        })
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kernel {
    type Err = FmmError;
    /// Names only; Helmholtz parses with `κ = 1` and is usually overridden.
    fn from_str(s: &str) -> Result<Kernel> {
        Kernel::parse(s, Some(1.0))
    }
}

/// `u(x_i) = Σ_j G(x_i, y_j) σ_j` with an optional excluded source per target.
fn direct_impl<const D: usize>(kernel: Kernel, sources: &[CVec<D>], charges: &[C64], targets: &[(CVec<D>, Option<usize>)]) -> Result<Vec<C64>> {
    if sources.len() != charges.len() {
        return Err(FmmError::InvalidInput(format!("{} sources but {} charges", sources.len(), charges.len())));
    }
    targets
        .par_iter()
        .enumerate()
        .map(|(i, (x, skip))| {
            let mut u = C64::new(0.0, 0.0);
            for (j, (y, q)) in sources.iter().zip(charges).enumerate() {
                if Some(j) == *skip {
                    continue;
                }
                if x == y {
                    return Err(FmmError::CoincidentPoints(j, i));
                }
                u += kernel.value(x, y)? * q;
            }
            Ok(u)
        })
        .collect()
}

/// Exact double loop. When `targets` is the same slice as `sources`, the
/// self term `i = j` is excluded.
pub fn direct_eval<const D: usize>(kernel: Kernel, sources: &[CVec<D>], charges: &[C64], targets: &[CVec<D>]) -> Result<Vec<C64>> {
    let alias = std::ptr::eq(sources, targets);
    let t: Vec<(CVec<D>, Option<usize>)> = targets.iter().enumerate().map(|(i, x)| (*x, alias.then_some(i))).collect();
    direct_impl(kernel, sources, charges, &t)
}

/// Self-interaction sum at a subset of the points (excluding each target's own term).
pub fn direct_eval_subset<const D: usize>(kernel: Kernel, points: &[CVec<D>], charges: &[C64], which: &[usize]) -> Result<Vec<C64>> {
    let t: Vec<(CVec<D>, Option<usize>)> = which.iter().map(|&i| (points[i], Some(i))).collect();
    direct_impl(kernel, points, charges, &t)
}

/// `‖u - u0‖ / (‖u0‖ + ‖σ‖)`.
pub fn rel_error(u: &[C64], u0: &[C64], sigma: &[C64]) -> f64 {
    assert_eq!(u.len(), u0.len());
    let n2 = |v: &mut dyn Iterator<Item = f64>| v.map(|x| x * x).sum::<f64>().sqrt();
    let num = n2(&mut u.iter().zip(u0).map(|(a, b)| (a - b).norm()));
    num / (n2(&mut u0.iter().map(|a| a.norm())) + n2(&mut sigma.iter().map(|a| a.norm())))
}

/// The metric on a subset `which` of an `N`-vector: the charge norm is
/// scaled by `sqrt(|which| / N)` so a uniform error gives the same value
/// as on the full vector.
pub fn rel_error_subset(u: &[C64], u0_subset: &[C64], sigma: &[C64], which: &[usize]) -> f64 {
    let us: Vec<C64> = which.iter().map(|&i| u[i]).collect();
    let s = (which.len() as f64 / sigma.len() as f64).sqrt();
    let scaled: Vec<C64> = sigma.iter().map(|q| q * s).collect();
    rel_error(&us, u0_subset, &scaled)
}

pub fn xi(t: f64) -> f64 {
    0.5 * (t * erfc_real(t) - (-t * t / 2.0).exp() / std::f64::consts::PI.sqrt())
}

pub fn psi(a: f64, b: f64, t0: f64, t: f64) -> f64 {
    a * (xi(b * (t + t0)) - xi(b * (t - t0)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WobbleParams {
    pub a: f64,
    pub b: f64,
    pub t0: f64,
}

impl WobbleParams {
    pub const CURVE: WobbleParams = WobbleParams { a: 1.0 / 20.0, b: 3.0, t0: 13.0 };
    pub const SURFACE: WobbleParams = WobbleParams { a: 0.2, b: 0.75, t0: 12.0 };

    pub fn psi(&self, t: f64) -> f64 {
        psi(self.a, self.b, self.t0, t)
    }

    pub fn validate(&self) -> Result<()> {
        if [self.a, self.b, self.t0].iter().all(|v| *v > 0.0 && v.is_finite()) {
            Ok(())
        } else {
            Err(FmmError::InvalidInput(format!("wobble parameters must be positive: {self:?}")))
        }
    }
}

/// Parameter half-range of the planar curve. It holds the whole ramp of
/// `ψ` (which is flat beyond `|t| = 14`); `|γ_2| < 4e-6` outside it.
pub const CURVE_T_MAX: f64 = 15.0;

pub fn curve_height(t: f64) -> f64 {
    2.0 * (-t * t / 16.0).exp() * (8.0 * t).cos() * (1.0 - (erfc_real(2.0 * (t - 6.0)) + erfc_real(2.0 * (t + 6.0))))
}

/// `N` points of the deformed planar curve at equispaced parameters.
pub fn gen_wobble2d(n: usize) -> Vec<CVec2> {
    gen_wobble2d_with(n, WobbleParams::CURVE)
}

pub fn gen_wobble2d_with(n: usize, p: WobbleParams) -> Vec<CVec2> {
    let h = 2.0 * CURVE_T_MAX / n as f64;
    (0..n)
        .map(|j| {
            let t = -CURVE_T_MAX + (j as f64 + 0.5) * h;
            CVec::new([C64::new(t, p.psi(t)), C64::new(curve_height(t), 0.0)])
        })
        .collect()
}

pub fn surface_uv(t1: f64, t2: f64) -> (f64, f64) {
    let e = 0.5 * (-(t1 * t1 + t2 * t2) / 300.0).exp();
    (t1 - t1 * e, t2 - t2 * e)
}

pub fn surface_height(u: f64, v: f64) -> f64 {
    (-(u * u + v * v) / 8.0).exp() * ((1.9 * u + 0.95 * v).cos() + (u + 1.55 * v).sin())
}

/// `N` points of the deformed surface on a tensor grid over `[-25, 25]^2`
/// (the last row may be partial).
pub fn gen_wobble3d(n: usize) -> Vec<CVec3> {
    gen_wobble3d_with(n, WobbleParams::SURFACE)
}

pub fn gen_wobble3d_with(n: usize, p: WobbleParams) -> Vec<CVec3> {
    let m = (n as f64).sqrt().ceil().max(1.0) as usize;
    let h = 50.0 / m as f64;
    (0..n)
        .map(|j| {
            let (t1, t2) = (-25.0 + ((j % m) as f64 + 0.5) * h, -25.0 + ((j / m) as f64 + 0.5) * h);
            let (u, v) = surface_uv(t1, t2);
            CVec::new([C64::new(u, p.psi(u)), C64::new(v, p.psi(v)), C64::new(surface_height(u, v), 0.0)])
        })
        .collect()
}

/// Uniform points in the unit cube with `Im x = lip · s(Re x)` for a fixed
/// smooth `s` of unit Lipschitz constant.
pub fn gen_uniform<const D: usize>(n: usize, lip: f64, seed: u64) -> Vec<CVec<D>> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let re: [f64; D] = std::array::from_fn(|_| rng.gen_range(0.0..1.0));
            let s = (0..D).map(|d| (2.0 * re[d] + d as f64).sin()).sum::<f64>() / (2.0 * (D as f64).sqrt());
            let im: [f64; D] = std::array::from_fn(|d| lip * s * if d % 2 == 0 { 1.0 } else { -1.0 } / (D as f64).sqrt());
            CVec::from_parts(re, im)
        })
        .collect()
}

/// Standard complex Gaussian charges (`E|σ|^2 = 1`).
pub fn gaussian_charges(n: usize, seed: u64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (0..n)
        .map(|_| {
            let (a, b): (f64, f64) = (StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng));
            C64::new(a * s, b * s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgeom::estimate_lipschitz;
    use crate::specfun::testdata::{KERNEL_PAIRS, WOBBLE};

    #[test]
    fn kernels_match_multiprecision() {
        for (x, y, lap3, helm3, lap2, helm2) in KERNEL_PAIRS {
            let (x3, y3) = (CVec::new(*x), CVec::new(*y));
            let (x2, y2) = (CVec::new([x[0], x[1]]), CVec::new([y[0], y[1]]));
            let cases = [
                (Kernel::Lap3d.value(&x3, &y3).unwrap(), *lap3),
                (Kernel::Helm3d(1.3).value(&x3, &y3).unwrap(), *helm3),
                (Kernel::Lap2d.value(&x2, &y2).unwrap(), *lap2),
                (Kernel::Helm2d(1.3).value(&x2, &y2).unwrap(), *helm2),
            ];
            for (k, (got, want)) in cases.iter().enumerate() {
                assert!((got - want).norm() <= 1e-13 * want.norm().max(1.0), "kernel {k}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn single_pair_and_cancellation() {
        let x = CVec::from_real([0.0, 0.0, 0.0]);
        let y = CVec::from_real([3.0, 4.0, 0.0]);
        let u = direct_eval(Kernel::Lap3d, &[y], &[C64::new(1.0, 0.0)], &[x]).unwrap();
        assert_eq!(u[0], C64::new(0.2, 0.0));
        let ys = [CVec::from_real([1.0, 0.0, 0.0]), CVec::from_real([-1.0, 0.0, 0.0])];
        let q = [C64::new(1.0, 0.0), C64::new(-1.0, 0.0)];
        let u = direct_eval(Kernel::Lap3d, &ys, &q, &[CVec::from_real([0.0, 2.0, 0.5])]).unwrap();
        assert!(u[0].norm() < 1e-16);
    }

    #[test]
    fn aliasing_and_coincidence() {
        let pts = gen_uniform::<2>(5, 0.1, 1);
        let q = gaussian_charges(5, 2);
        let u = direct_eval(Kernel::Lap2d, &pts, &q, &pts).unwrap();
        let copy = pts.clone();
        assert!(matches!(direct_eval(Kernel::Lap2d, &pts, &q, &copy), Err(FmmError::CoincidentPoints(0, 0))));
        let sub = direct_eval_subset(Kernel::Lap2d, &pts, &q, &[3, 1]).unwrap();
        assert_eq!(sub, vec![u[3], u[1]]);
    }

    #[test]
    fn relative_error_metric() {
        let u0 = vec![C64::new(1.0, 2.0), C64::new(-0.5, 0.0)];
        assert_eq!(rel_error(&u0, &u0, &u0), 0.0);
        let zero = vec![C64::new(0.0, 0.0); 3];
        let sigma = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
        let u = vec![C64::new(1e-3, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
        assert!((rel_error(&u, &zero, &sigma) - 1e-3).abs() < 1e-18);
    }

    #[test]
    fn wobble_profiles_match_reference() {
        for &(t, psi2, psi3, g2) in WOBBLE {
            assert!((WobbleParams::CURVE.psi(t) - psi2).abs() < 1e-13, "ψ2({t})");
            assert!((WobbleParams::SURFACE.psi(t) - psi3).abs() < 1e-13, "ψ3({t})");
            assert!((curve_height(t) - g2).abs() < 1e-13, "γ2({t})");
        }
    }

    #[test]
    fn generated_clouds_are_admissible() {
        let c = gen_wobble2d(4000);
        assert!(c.iter().all(|p| p.0[1].im == 0.0));
        let l2 = estimate_lipschitz(&c).unwrap();
        assert!(l2 < 0.3592, "{l2}");
        let s = gen_wobble3d(4000);
        assert_eq!(s.len(), 4000);
        assert!(s.iter().all(|p| p.0[2].im == 0.0));
        let l3 = estimate_lipschitz(&s).unwrap();
        assert!(l3 < 0.3671, "{l3}");
        assert!(l3 > 0.1270, "surface needs k = 2: {l3}");
    }

    #[test]
    fn surface_centre_and_symmetry() {
        let (u, v) = surface_uv(0.0, 0.0);
        assert_eq!((u, v), (0.0, 0.0));
        assert_eq!(surface_height(0.0, 0.0), 1.0);
        let (a, b) = surface_uv(3.0, -7.0);
        let (c, d) = surface_uv(-3.0, 7.0);
        assert_eq!((a, b), (-c, -d));
    }

    #[test]
    fn charges_are_seeded_and_unit_variance() {
        let a = gaussian_charges(20_000, 9);
        assert_eq!(a, gaussian_charges(20_000, 9));
        let m = a.iter().map(|q| q.norm_sqr()).sum::<f64>() / a.len() as f64;
        assert!((m - 1.0).abs() < 0.05);
    }
}
