//! Complex points, their polar/spherical views, and the admissibility
//! predicates used to pick the separation parameter `k`.

use crate::error::{FmmError, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::ops::{Add, Sub};

pub type C64 = Complex64;

/// A point in `C^D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVec<const D: usize>(pub [C64; D]);

pub type CVec2 = CVec<2>;
pub type CVec3 = CVec<3>;

impl<const D: usize> CVec<D> {
    pub fn new(c: [C64; D]) -> Self {
        CVec(c)
    }

    pub fn from_real(x: [f64; D]) -> Self {
        CVec(x.map(|v| C64::new(v, 0.0)))
    }

    pub fn from_parts(re: [f64; D], im: [f64; D]) -> Self {
        let mut c = [C64::new(0.0, 0.0); D];
        for i in 0..D {
            c[i] = C64::new(re[i], im[i]);
        }
        CVec(c)
    }

    pub fn re(&self) -> [f64; D] {
        self.0.map(|v| v.re)
    }

    pub fn im(&self) -> [f64; D] {
        self.0.map(|v| v.im)
    }

    /// Sum of squares without conjugation.
    pub fn dot_self(&self) -> C64 {
        self.0.iter().map(|v| v * v).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Sum of component moduli.
    pub fn modulus_norm(&self) -> f64 {
        self.0.iter().map(|v| v.norm()).sum()
    }
}

impl<const D: usize> Add for CVec<D> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut c = self.0;
        for i in 0..D {
            c[i] += o.0[i];
        }
        CVec(c)
    }
}

impl<const D: usize> Sub for CVec<D> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut c = self.0;
        for i in 0..D {
            c[i] -= o.0[i];
        }
        CVec(c)
    }
}

/// Complex polar coordinates: `r*eip = x1 + i x2`, `r*eim = x1 - i x2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarC {
    pub r: C64,
    pub eip: C64,
    pub eim: C64,
}

/// Complex spherical coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereC {
    pub rho: C64,
    pub cos_theta: C64,
    pub sin_theta: C64,
    pub eip: C64,
    pub eim: C64,
}

impl SphereC {
    pub fn to_cartesian(&self) -> CVec3 {
        let s = self.rho * self.sin_theta;
        let cphi = (self.eip + self.eim) * 0.5;
        let sphi = (self.eip - self.eim) * C64::new(0.0, -0.5);
        CVec([s * cphi, s * sphi, self.rho * self.cos_theta])
    }
}

pub fn to_polar(x: CVec2) -> Result<PolarC> {
    let [x1, x2] = x.0;
    let i = C64::i();
    let z = x1 + i * x2;
    let zeta = x1 - i * x2;
    let scale = x1.norm() + x2.norm();
    if scale == 0.0 {
        return Err(FmmError::DegeneratePoint("polar coordinates of the origin".into()));
    }
    let r = csqrt(z * zeta);
    if r.norm() < 1e-12 * scale {
        return Err(FmmError::DegeneratePoint(format!("r = {r} at ({x1}, {x2})")));
    }
    Ok(PolarC { r, eip: z / r, eim: zeta / r })
}

pub fn to_spherical(x: CVec3) -> Result<SphereC> {
    let [x1, x2, x3] = x.0;
    let scale = x.modulus_norm();
    let rho = csqrt(x.dot_self());
    if scale == 0.0 || rho.norm() < 1e-12 * scale {
        return Err(FmmError::DegeneratePoint(format!("rho = {rho} at {x:?}")));
    }
    let cos_theta = x3 / rho;
    let one = C64::new(1.0, 0.0);
    if x1 == C64::new(0.0, 0.0) && x2 == C64::new(0.0, 0.0) {
        return Ok(SphereC { rho, cos_theta, sin_theta: C64::new(0.0, 0.0), eip: one, eim: one });
    }
    let q = csqrt(x1 * x1 + x2 * x2);
    if q.norm() < 1e-12 * (x1.norm() + x2.norm()) {
        return Err(FmmError::DegeneratePoint(format!("isotropic azimuth at {x:?}")));
    }
    let i = C64::i();
    Ok(SphereC { rho, cos_theta, sin_theta: q / rho, eip: (x1 + i * x2) / q, eim: (x1 - i * x2) / q })
}

pub fn complex_distance<const D: usize>(x: &CVec<D>, y: &CVec<D>) -> C64 {
    csqrt((*x - *y).dot_self())
}

/// Principal square root by the algebraic formula; several times faster
/// than the polar route and just as accurate.
#[inline]
pub fn csqrt(z: C64) -> C64 {
    if z.re == 0.0 && z.im == 0.0 {
        return C64::new(0.0, z.im);
    }
    let t = ((z.norm() + z.re.abs()) * 0.5).sqrt();
    if z.re >= 0.0 {
        C64::new(t, z.im / (2.0 * t))
    } else {
        C64::new(z.im.abs() / (2.0 * t), t.copysign(z.im))
    }
}

fn real_gap<const D: usize>(a: &CVec<D>, b: &CVec<D>) -> (f64, f64) {
    let mut dr = 0.0;
    let mut di = 0.0;
    for k in 0..D {
        dr += (a.0[k].re - b.0[k].re).powi(2);
        di += (a.0[k].im - b.0[k].im).powi(2);
    }
    (dr.sqrt(), di.sqrt())
}

fn pair_ratio<const D: usize>(pts: &[CVec<D>], i: usize, j: usize) -> Result<Option<f64>> {
    let (dr, di) = real_gap(&pts[i], &pts[j]);
    if dr == 0.0 {
        if di == 0.0 {
            return Ok(None);
        }
        return Err(FmmError::DuplicateRealParts(i.min(j), i.max(j)));
    }
    Ok(Some(di / dr))
}

/// Lower bound on the Lipschitz constant of the map `Re p -> Im p`.
///
/// Exact over all pairs for at most 4096 points. Larger clouds use each
/// point's nearest real-part neighbour plus `64 N` random pairs.
pub fn estimate_lipschitz<const D: usize>(points: &[CVec<D>]) -> Result<f64> {
    let n = points.len();
    if n < 2 {
        return Err(FmmError::InvalidInput("need at least two points".into()));
    }
    let mut best = 0.0f64;
    if n <= 4096 {
        for i in 0..n {
            for j in (i + 1)..n {
                if let Some(r) = pair_ratio(points, i, j)? {
                    best = best.max(r);
                }
            }
        }
        return Ok(best);
    }

    for (i, j) in nearest_pairs(points) {
        if let Some(r) = pair_ratio(points, i, j)? {
            best = best.max(r);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_11f5);
    for _ in 0..64 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i != j {
            if let Some(r) = pair_ratio(points, i, j)? {
                best = best.max(r);
            }
        }
    }
    Ok(best)
}

// Nearest neighbour of every point among its own and adjacent grid cells.
fn nearest_pairs<const D: usize>(points: &[CVec<D>]) -> Vec<(usize, usize)> {
    let n = points.len();
    let mut lo = [f64::INFINITY; D];
    let mut hi = [f64::NEG_INFINITY; D];
    for p in points {
        for k in 0..D {
            lo[k] = lo[k].min(p.0[k].re);
            hi[k] = hi[k].max(p.0[k].re);
        }
    }
    let extent = (0..D).map(|k| hi[k] - lo[k]).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    // Aim for a handful of points per occupied cell on curves and surfaces.
    let cell = extent / (n as f64).powf(1.0 / (D as f64 - 1.0).max(1.0)).max(1.0) * 2.0;
    let key = |p: &CVec<D>| -> [i64; D] {
        let mut c = [0i64; D];
        for k in 0..D {
            c[k] = ((p.0[k].re - lo[k]) / cell).floor() as i64;
        }
        c
    };
    let mut grid: HashMap<[i64; D], Vec<usize>> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        grid.entry(key(p)).or_default().push(i);
    }
    let mut out = Vec::with_capacity(n);
    let nbr = 3usize.pow(D as u32);
    for (i, p) in points.iter().enumerate() {
        let c = key(p);
        let mut best: Option<(f64, usize)> = None;
        for code in 0..nbr {
            let mut cc = c;
            let mut t = code;
            for k in 0..D {
                cc[k] += (t % 3) as i64 - 1;
                t /= 3;
            }
            if let Some(list) = grid.get(&cc) {
                for &j in list {
                    if j == i {
                        continue;
                    }
                    let (dr, _) = real_gap(p, &points[j]);
                    if best.map_or(true, |(d, _)| dr < d) {
                        best = Some((dr, j));
                    }
                }
            }
        }
        if let Some((_, j)) = best {
            out.push((i, j));
        }
    }
    out
}

pub const K1_THRESHOLD_2D: f64 = 0.3592;
pub const K2_THRESHOLD_2D: f64 = 0.5590;
pub const K1_THRESHOLD_3D: f64 = 0.1270;
pub const K2_THRESHOLD_3D: f64 = 0.3671;

/// Smallest separation parameter `k` whose convergence guarantee covers `lipschitz`.
pub fn admissible_k(lipschitz: f64, dim: usize) -> Result<u8> {
    if !(lipschitz >= 0.0) {
        return Err(FmmError::InvalidInput(format!("Lipschitz constant {lipschitz} is negative or NaN")));
    }
    let (t1, t2) = match dim {
        2 => (K1_THRESHOLD_2D, K2_THRESHOLD_2D),
        3 => (K1_THRESHOLD_3D, K2_THRESHOLD_3D),
        _ => return Err(FmmError::InvalidInput(format!("dimension {dim}"))),
    };
    if lipschitz < t1 {
        Ok(1)
    } else if lipschitz < t2 {
        Ok(2)
    } else {
        Err(FmmError::LipschitzTooLarge { lipschitz, bound: t2, dim })
    }
}

/// Largest admissible Lipschitz constant in 3-D at separation ratio `c`.
pub fn z_c(c: f64) -> f64 {
    let c2 = c * c;
    (c2 + 5.0 - (12.0 * c2 + 24.0).sqrt()) / (c2 - 1.0)
}

/// Convergence-rate constant of the 3-D expansions.
pub fn c_l(lipschitz: f64) -> f64 {
    let l = lipschitz;
    (l * l + 10.0 * l + 1.0).sqrt() / (1.0 - l)
}

/// Whether targets at real distance `c * r` from an expansion of real radius
/// `r` are guaranteed to converge under Lipschitz constant `lipschitz`.
pub fn separation_admissible(c: f64, lipschitz: f64, dim: usize) -> bool {
    if c <= 1.0 {
        return false;
    }
    match dim {
        2 => lipschitz < (c - 1.0) / (c + 1.0),
        _ => lipschitz < z_c(c),
    }
}

/// The graph assumption `Im x = psi(Re x)` with Lipschitz constant `lipschitz`.
pub struct ConstraintProfile {
    pub dimension: usize,
    pub lipschitz: f64,
    pub psi: Option<Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>>,
}

impl ConstraintProfile {
    pub fn new(dimension: usize, lipschitz: f64) -> Result<Self> {
        if !(dimension == 2 || dimension == 3) {
            return Err(FmmError::InvalidInput(format!("dimension {dimension}")));
        }
        if !(0.0..1.0).contains(&lipschitz) {
            return Err(FmmError::InvalidInput(format!("Lipschitz constant {lipschitz} outside [0, 1)")));
        }
        Ok(ConstraintProfile { dimension, lipschitz, psi: None })
    }

    pub fn with_psi(mut self, psi: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        self.psi = Some(Box::new(psi));
        self
    }

    /// Complex point `t + i psi(t)`, if `psi` is known.
    pub fn lift(&self, t: &[f64]) -> Option<Vec<C64>> {
        let psi = self.psi.as_ref()?;
        let im = psi(t);
        Some(t.iter().zip(im).map(|(&a, b)| C64::new(a, b)).collect())
    }
}
