//! 3-D Laplace expansions for `1/ρ`.
//!
//! Multipole: `u = Σ M_n^m Y_n^m(x)/ρ^{n+1}` with `M_n^m = Σ ρ_y^n Y_n^{-m}(y) σ`.
//! Local: `u = Σ L_n^m ρ^n Y_n^m(x)` with `L_n^m = Σ Y_n^{-m}(y)/ρ_y^{n+1} σ`.
//! Stored coefficients are `M_n^m / s^n` and `L_n^m s^n`.

use super::{harmonics, idx, ipow, is_zero, ncoef, solid_parts, AnmTable, Kernel3, Local3, Mpole3, ONE, ZERO};
use crate::cgeom::{CVec, CVec3, C64};
use crate::error::{FmmError, Result};
use std::sync::Arc;

pub(crate) fn check(sources: usize, charges: usize) -> Result<()> {
    if sources != charges {
        return Err(FmmError::InvalidInput(format!("{sources} sources but {charges} charges")));
    }
    Ok(())
}

fn powers(x: C64, p: usize) -> Vec<C64> {
    let mut v = Vec::with_capacity(p + 1);
    let mut a = ONE;
    for _ in 0..=p {
        v.push(a);
        a *= x;
    }
    v
}

pub fn p2m_lap3_add(e: &mut Mpole3, sources: &[CVec3], charges: &[C64]) -> Result<()> {
    check(sources.len(), charges.len())?;
    let p = e.p;
    let mut y = vec![ZERO; ncoef(p)];
    let mut scratch = Vec::new();
    for (src, &q) in sources.iter().zip(charges) {
        let d = *src - e.center;
        if is_zero(d) {
            e.coeffs[0] += q;
            continue;
        }
        let sp = solid_parts(d)?;
        harmonics(p, &sp, &mut scratch, &mut y);
        let t = sp.rho / e.scale;
        let mut f = q;
        for n in 0..=p {
            for m in -(n as i64)..=n as i64 {
                e.coeffs[idx(n, m)] += f * y[idx(n, -m)];
            }
            f *= t;
        }
    }
    Ok(())
}

fn default_scale(points: &[CVec3], center: CVec3) -> f64 {
    let s = points.iter().map(|y| (*y - center).modulus_norm()).fold(0.0, f64::max);
    if s > 0.0 {
        s
    } else {
        1.0
    }
}

pub fn p2m_lap3(sources: &[CVec3], charges: &[C64], center: CVec3, p: usize) -> Result<Mpole3> {
    let mut e = Mpole3::zero(center, p, Kernel3::Laplace, default_scale(sources, center));
    p2m_lap3_add(&mut e, sources, charges)?;
    Ok(e)
}

pub fn m2p_lap3(e: &Mpole3, x: CVec3) -> Result<C64> {
    let sp = solid_parts(x - e.center)?;
    let mut y = vec![ZERO; ncoef(e.p)];
    harmonics(e.p, &sp, &mut Vec::new(), &mut y);
    let t = e.scale / sp.rho;
    let mut f = 1.0 / sp.rho;
    let mut u = ZERO;
    for n in 0..=e.p {
        let mut s = ZERO;
        for m in -(n as i64)..=n as i64 {
            s += e.coeffs[idx(n, m)] * y[idx(n, m)];
        }
        u += s * f;
        f *= t;
    }
    Ok(u)
}

pub fn p2l_lap3_add(e: &mut Local3, sources: &[CVec3], charges: &[C64]) -> Result<()> {
    check(sources.len(), charges.len())?;
    let p = e.p;
    let mut y = vec![ZERO; ncoef(p)];
    let mut scratch = Vec::new();
    for (src, &q) in sources.iter().zip(charges) {
        let sp = solid_parts(*src - e.center)?;
        harmonics(p, &sp, &mut scratch, &mut y);
        let t = e.scale / sp.rho;
        let mut f = q / sp.rho;
        for n in 0..=p {
            for m in -(n as i64)..=n as i64 {
                e.coeffs[idx(n, m)] += f * y[idx(n, -m)];
            }
            f *= t;
        }
    }
    Ok(())
}

pub fn p2l_lap3(sources: &[CVec3], charges: &[C64], center: CVec3, p: usize) -> Result<Local3> {
    let mut e = Local3::zero(center, p, Kernel3::Laplace, 1.0);
    p2l_lap3_add(&mut e, sources, charges)?;
    Ok(e)
}

pub fn l2p_lap3(e: &Local3, x: CVec3) -> Result<C64> {
    let d = x - e.center;
    if is_zero(d) {
        return Ok(e.coeffs[0]);
    }
    let sp = solid_parts(d)?;
    let mut y = vec![ZERO; ncoef(e.p)];
    harmonics(e.p, &sp, &mut Vec::new(), &mut y);
    let t = sp.rho / e.scale;
    let mut f = ONE;
    let mut u = ZERO;
    for n in 0..=e.p {
        let mut s = ZERO;
        for m in -(n as i64)..=n as i64 {
            s += e.coeffs[idx(n, m)] * y[idx(n, m)];
        }
        u += s * f;
        f *= t;
    }
    Ok(u)
}

// Coefficients with the storage scale removed.
fn unscaled(c: &[C64], p: usize, scale: f64, multipole: bool) -> Vec<C64> {
    let mut out = c.to_vec();
    let mut f = 1.0;
    for n in 0..=p {
        for m in -(n as i64)..=n as i64 {
            out[idx(n, m)] = if multipole { c[idx(n, m)] * f } else { c[idx(n, m)] / f };
        }
        f *= scale;
    }
    out
}

fn rescaled(c: Vec<C64>, p: usize, scale: f64, multipole: bool) -> Vec<C64> {
    let mut out = c;
    let mut f = 1.0;
    for n in 0..=p {
        for m in -(n as i64)..=n as i64 {
            let v = out[idx(n, m)];
            out[idx(n, m)] = if multipole { v / f } else { v * f };
        }
        f *= scale;
    }
    out
}

/// Multipole re-centred at `new_center` by the direct double sum (`O(P^4)`).
pub fn m2m_lap3_general(src: &Mpole3, new_center: CVec3, p_out: usize, scale: f64) -> Result<Mpole3> {
    let o = unscaled(&src.coeffs, src.p, src.scale, true);
    let x0 = src.center - new_center;
    let mut out = vec![ZERO; ncoef(p_out)];
    if is_zero(x0) {
        for n in 0..=p_out.min(src.p) {
            for m in -(n as i64)..=n as i64 {
                out[idx(n, m)] = o[idx(n, m)];
            }
        }
    } else {
        let a = AnmTable::new(p_out);
        let sp = solid_parts(x0)?;
        let mut y = vec![ZERO; ncoef(p_out)];
        harmonics(p_out, &sp, &mut Vec::new(), &mut y);
        let rp = powers(sp.rho, p_out);
        for j in 0..=p_out {
            for k in -(j as i64)..=j as i64 {
                let mut acc = ZERO;
                for n in 0..=j {
                    if j - n > src.p {
                        continue;
                    }
                    let jn = (j - n) as i64;
                    for m in -(n as i64)..=n as i64 {
                        if (k - m).abs() > jn {
                            continue;
                        }
                        let w = (a.ln_abs(n, m) + a.ln_abs(j - n, k - m) - a.ln_abs(j, k)).exp();
                        let ph = ipow(k.abs() - m.abs() - (k - m).abs());
                        acc += o[idx(j - n, k - m)] * ph * w * rp[n] * y[idx(n, -m)];
                    }
                }
                out[idx(j, k)] = acc;
            }
        }
    }
    Ok(Mpole3 { center: new_center, p: p_out, kernel: Kernel3::Laplace, scale, coeffs: rescaled(out, p_out, scale, true) })
}

/// Multipole to local about `local_center` by the direct double sum.
pub fn m2l_lap3_general(src: &Mpole3, local_center: CVec3, p_out: usize, scale: f64) -> Result<Local3> {
    let o = unscaled(&src.coeffs, src.p, src.scale, true);
    let x0 = src.center - local_center;
    let sp = solid_parts(x0)?;
    let pt = src.p + p_out;
    let a = AnmTable::new(pt);
    let mut y = vec![ZERO; ncoef(pt)];
    harmonics(pt, &sp, &mut Vec::new(), &mut y);
    let inv = powers(1.0 / sp.rho, pt + 1);
    let mut out = vec![ZERO; ncoef(p_out)];
    for j in 0..=p_out {
        for k in -(j as i64)..=j as i64 {
            let mut acc = ZERO;
            for n in 0..=src.p {
                let sgn = AnmTable::sign(n);
                for m in -(n as i64)..=n as i64 {
                    let w = (a.ln_abs(n, m) + a.ln_abs(j, k) - a.ln_abs(j + n, m - k)).exp();
                    let ph = ipow((k - m).abs() - k.abs() - m.abs());
                    acc += o[idx(n, m)] * ph * (sgn * w) * y[idx(j + n, m - k)] * inv[j + n + 1];
                }
            }
            out[idx(j, k)] = acc;
        }
    }
    Ok(Local3 { center: local_center, p: p_out, kernel: Kernel3::Laplace, scale, coeffs: rescaled(out, p_out, scale, false) })
}

/// Local expansion re-centred at `new_center`; exact finite sums.
pub fn l2l_lap3_general(src: &Local3, new_center: CVec3, scale: f64) -> Result<Local3> {
    let p = src.p;
    let o = unscaled(&src.coeffs, p, src.scale, false);
    let x0 = src.center - new_center;
    let mut out = vec![ZERO; ncoef(p)];
    if is_zero(x0) {
        out.copy_from_slice(&o);
    } else {
        let a = AnmTable::new(p);
        let sp = solid_parts(x0)?;
        let mut y = vec![ZERO; ncoef(p)];
        harmonics(p, &sp, &mut Vec::new(), &mut y);
        let rp = powers(sp.rho, p);
        for j in 0..=p {
            for k in -(j as i64)..=j as i64 {
                let mut acc = ZERO;
                for n in j..=p {
                    let nj = (n - j) as i64;
                    let sgn = AnmTable::sign(n + j);
                    for m in -(n as i64)..=n as i64 {
                        if (m - k).abs() > nj {
                            continue;
                        }
                        let w = (a.ln_abs(n - j, m - k) + a.ln_abs(j, k) - a.ln_abs(n, m)).exp();
                        let ph = ipow(m.abs() - (m - k).abs() - k.abs());
                        acc += o[idx(n, m)] * ph * (sgn * w) * y[idx(n - j, m - k)] * rp[n - j];
                    }
                }
                out[idx(j, k)] = acc;
            }
        }
    }
    Ok(Local3 { center: new_center, p, kernel: Kernel3::Laplace, scale, coeffs: rescaled(out, p, scale, false) })
}

/// Weights of the coaxial (z-axis) Laplace translations, degree `<= p`.
#[derive(Debug, Clone)]
pub struct LapZPlan {
    pub p: usize,
    m2m: Vec<f64>,
    m2l: Vec<f64>,
    l2l: Vec<f64>,
}

impl LapZPlan {
    pub fn new(p: usize) -> Self {
        let a = AnmTable::new(2 * p);
        let len = (p + 1) * (p + 1) * (p + 1);
        let (mut m2m, mut m2l, mut l2l) = (vec![0.0; len], vec![0.0; len], vec![0.0; len]);
        let at = |j: usize, n: usize, k: usize| (j * (p + 1) + n) * (p + 1) + k;
        for j in 0..=p {
            for n in 0..=p {
                for k in 0..=j.min(n) {
                    let ki = k as i64;
                    // (-1)^{k+n} A_n^k A_j^k / A_{j+n}^0
                    let s = AnmTable::sign(k + n);
                    m2l[at(j, n, k)] = s * (a.ln_abs(n, ki) + a.ln_abs(j, ki) - a.ln_abs(j + n, 0)).exp();
                }
                for k in 0..=j {
                    let ki = k as i64;
                    // A_n^0 A_{j-n}^k / A_j^k, n = power of the shift
                    if n + k <= j {
                        m2m[at(j, n, k)] = (a.ln_abs(n, 0) + a.ln_abs(j - n, ki) - a.ln_abs(j, ki)).exp();
                    }
                    // A_{n-j}^0 A_j^k / ((-1)^{n+j} A_n^k), n >= j
                    if n >= j {
                        l2l[at(j, n, k)] = AnmTable::sign(n + j) * (a.ln_abs(n - j, 0) + a.ln_abs(j, ki) - a.ln_abs(n, ki)).exp();
                    }
                }
            }
        }
        LapZPlan { p, m2m, m2l, l2l }
    }

    /// Shared plan for degree `p`, built once per process.
    pub fn shared(p: usize) -> Arc<LapZPlan> {
        use std::collections::HashMap;
        use std::sync::{Mutex, OnceLock};
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<LapZPlan>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut g = cache.lock().unwrap_or_else(|e| e.into_inner());
        g.entry(p).or_insert_with(|| Arc::new(LapZPlan::new(p))).clone()
    }

    #[inline]
    fn at(&self, j: usize, n: usize, k: usize) -> usize {
        (j * (self.p + 1) + n) * (self.p + 1) + k
    }

    /// Multipole about `(0,0,d)` to multipole about the origin.
    pub fn m2m(&self, inp: &[C64], p_in: usize, s_in: f64, d: C64, out: &mut [C64], p_out: usize, s_out: f64) {
        let pr = powers(C64::new(s_in / s_out, 0.0), p_in);
        let pd = powers(d / s_out, p_out);
        for j in 0..=p_out {
            for k in -(j as i64)..=j as i64 {
                let ka = k.unsigned_abs() as usize;
                let mut acc = ZERO;
                for n in 0..=(j - ka) {
                    let jn = j - n;
                    if jn > p_in {
                        continue;
                    }
                    acc += inp[idx(jn, k)] * pr[jn] * pd[n] * self.m2m[self.at(j, n, ka)];
                }
                out[idx(j, k)] += acc;
            }
        }
    }

    /// Multipole about `(0,0,d)` to local about the origin.
    pub fn m2l(&self, inp: &[C64], p_in: usize, s_in: f64, d: C64, out: &mut [C64], p_out: usize, s_out: f64) {
        let rho = (d * d).sqrt();
        let pa = powers(s_in / d, p_in);
        let pb = powers(s_out / d, p_out);
        let irho = 1.0 / rho;
        for j in 0..=p_out {
            for k in -(j as i64)..=j as i64 {
                let ka = k.unsigned_abs() as usize;
                let mut acc = ZERO;
                for n in ka..=p_in {
                    acc += inp[idx(n, k)] * pa[n] * self.m2l[self.at(j, n, ka)];
                }
                out[idx(j, k)] += acc * pb[j] * irho;
            }
        }
    }

    /// Local about `(0,0,d)` to local about the origin.
    pub fn l2l(&self, inp: &[C64], p_in: usize, s_in: f64, d: C64, out: &mut [C64], p_out: usize, s_out: f64) {
        let pd = powers(d / s_in, p_in);
        let pr = powers(C64::new(s_out / s_in, 0.0), p_out);
        for j in 0..=p_out.min(p_in) {
            for k in -(j as i64)..=j as i64 {
                let ka = k.unsigned_abs() as usize;
                let mut acc = ZERO;
                for n in j..=p_in {
                    acc += inp[idx(n, k)] * pd[n - j] * self.l2l[self.at(j, n, ka)];
                }
                out[idx(j, k)] += acc * pr[j];
            }
        }
    }
}

fn zvec(d: C64) -> CVec3 {
    CVec::new([ZERO, ZERO, d])
}

/// Shift a multipole by `d` along z: the new centre is `center - (0,0,d)`.
pub fn m2m_lap3_z(e: &Mpole3, d: C64, p_out: usize, scale: f64) -> Mpole3 {
    let plan = LapZPlan::new(e.p.max(p_out));
    let mut out = Mpole3::zero(e.center - zvec(d), p_out, Kernel3::Laplace, scale);
    plan.m2m(&e.coeffs, e.p, e.scale, d, &mut out.coeffs, p_out, scale);
    out
}

/// Local expansion at `center - (0,0,d)` of a multipole at `center`.
pub fn m2l_lap3_z(e: &Mpole3, d: C64, p_out: usize, scale: f64) -> Local3 {
    let plan = LapZPlan::new(e.p.max(p_out));
    let mut out = Local3::zero(e.center - zvec(d), p_out, Kernel3::Laplace, scale);
    plan.m2l(&e.coeffs, e.p, e.scale, d, &mut out.coeffs, p_out, scale);
    out
}

pub fn l2l_lap3_z(e: &Local3, d: C64, scale: f64) -> Local3 {
    let plan = LapZPlan::new(e.p);
    let mut out = Local3::zero(e.center - zvec(d), e.p, Kernel3::Laplace, scale);
    plan.l2l(&e.coeffs, e.p, e.scale, d, &mut out.coeffs, e.p, scale);
    out
}
