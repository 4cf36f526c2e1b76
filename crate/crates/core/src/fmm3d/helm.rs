//! Expansions of `e^{iκρ}/ρ` and their translations.
//!
//! Stored coefficients omit the common factor `iκ` of the addition theorem:
//! a multipole evaluates as `iκ Σ M_n^m h_n(κρ) Y_n^m` and a local as
//! `iκ Σ L_n^m j_n(κρ) Y_n^m`. Coaxial translations sample the field on a
//! sphere at Gauss-Legendre latitudes and project back order by order, using
//! value and radial derivative together so that a zero of the radial
//! function never enters a denominator.

use super::lap::check;
use super::pas::point_and_shoot;
use super::{harmonics, idx, is_zero, ncoef, solid_parts, Kernel3, Local3, Mpole3, ZERO};
use crate::cgeom::{CVec, CVec3, C64};
use crate::error::{FmmError, Result};
use crate::specfun::legendre::{tri, LegendreRecurrence};
use crate::specfun::{gauss_legendre, sph_seq, sph_with_derivative, SphKind};
use std::f64::consts::PI;

fn kappa_of(k: Kernel3) -> Result<f64> {
    match k {
        Kernel3::Helmholtz(kappa) if kappa > 0.0 => Ok(kappa),
        k => Err(FmmError::InvalidInput(format!("expected a Helmholtz expansion with κ > 0, got {k:?}"))),
    }
}

fn form_add(coeffs: &mut [C64], p: usize, kappa: f64, center: CVec3, kind: SphKind, sources: &[CVec3], charges: &[C64]) -> Result<()> {
    check(sources.len(), charges.len())?;
    let mut y = vec![ZERO; ncoef(p)];
    let mut scratch = Vec::new();
    for (src, &q) in sources.iter().zip(charges) {
        let d = *src - center;
        if is_zero(d) {
            if kind == SphKind::H {
                return Err(FmmError::SeparationViolated("source at the centre of a local expansion".into()));
            }
            coeffs[0] += q;
            continue;
        }
        let sp = solid_parts(d)?;
        harmonics(p, &sp, &mut scratch, &mut y);
        let rad = sph_seq(kind, kappa * sp.rho, p)?.values;
        for n in 0..=p {
            let f = q * rad[n] * (2 * n + 1) as f64;
            for m in -(n as i64)..=n as i64 {
                coeffs[idx(n, m)] += f * y[idx(n, -m)];
            }
        }
    }
    if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(FmmError::Overflow("Helmholtz expansion coefficients".into()));
    }
    Ok(())
}

fn evaluate(coeffs: &[C64], p: usize, kappa: f64, d: CVec3, kind: SphKind) -> Result<C64> {
    let ik = C64::new(0.0, kappa);
    if is_zero(d) && kind == SphKind::J {
        return Ok(ik * coeffs[0]);
    }
    let sp = solid_parts(d)?;
    let mut y = vec![ZERO; ncoef(p)];
    harmonics(p, &sp, &mut Vec::new(), &mut y);
    let rad = sph_seq(kind, kappa * sp.rho, p)?.values;
    let mut u = ZERO;
    for n in 0..=p {
        let mut s = ZERO;
        for m in -(n as i64)..=n as i64 {
            s += coeffs[idx(n, m)] * y[idx(n, m)];
        }
        u += s * rad[n];
    }
    let u = ik * u;
    if !(u.re.is_finite() && u.im.is_finite()) {
        return Err(FmmError::Overflow("Helmholtz expansion evaluation".into()));
    }
    Ok(u)
}

pub fn p2m_helm3_add(e: &mut Mpole3, sources: &[CVec3], charges: &[C64]) -> Result<()> {
    let kappa = kappa_of(e.kernel)?;
    form_add(&mut e.coeffs, e.p, kappa, e.center, SphKind::J, sources, charges)
}

pub fn p2m_helm3(sources: &[CVec3], charges: &[C64], center: CVec3, p: usize, kappa: f64) -> Result<Mpole3> {
    let mut e = Mpole3::zero(center, p, Kernel3::Helmholtz(kappa), 1.0);
    p2m_helm3_add(&mut e, sources, charges)?;
    Ok(e)
}

pub fn m2p_helm3(e: &Mpole3, x: CVec3) -> Result<C64> {
    evaluate(&e.coeffs, e.p, kappa_of(e.kernel)?, x - e.center, SphKind::H)
}

pub fn p2l_helm3_add(e: &mut Local3, sources: &[CVec3], charges: &[C64]) -> Result<()> {
    let kappa = kappa_of(e.kernel)?;
    form_add(&mut e.coeffs, e.p, kappa, e.center, SphKind::H, sources, charges)
}

pub fn p2l_helm3(sources: &[CVec3], charges: &[C64], center: CVec3, p: usize, kappa: f64) -> Result<Local3> {
    let mut e = Local3::zero(center, p, Kernel3::Helmholtz(kappa), 1.0);
    p2l_helm3_add(&mut e, sources, charges)?;
    Ok(e)
}

pub fn l2p_helm3(e: &Local3, x: CVec3) -> Result<C64> {
    evaluate(&e.coeffs, e.p, kappa_of(e.kernel)?, x - e.center, SphKind::J)
}

/// `sqrt(4π/(2n+1))`, the factor between `Y_n^m` and the reduced `Q_n^m`.
fn knorm(p: usize) -> Vec<f64> {
    (0..=p).map(|n| (4.0 * PI / (2 * n + 1) as f64).sqrt()).collect()
}

/// Number of Gauss-Legendre latitudes for a coaxial translation.
pub fn n_quad(p_in: usize, p_out: usize) -> usize {
    ((2.5 * p_in.max(p_out) as f64) as usize).max(p_out + 1).max(2)
}

/// Coaxial translation of coefficients centred at `(0,0,d)` (radial basis
/// `rin`) into coefficients about the origin (radial basis `rout`), by
/// projection on the sphere of radius `rho_e`.
#[allow(clippy::too_many_arguments)]
pub fn coaxial_helm3(inp: &[C64], p_in: usize, kappa: f64, d: C64, rin: SphKind, rout: SphKind, p_out: usize, rho_e: f64) -> Result<Vec<C64>> {
    if !(rho_e > 0.0 && rho_e.is_finite()) {
        return Err(FmmError::InvalidInput(format!("projection radius {rho_e}")));
    }
    let nq = n_quad(p_in, p_out);
    let (xs, ws) = gauss_legendre(nq);
    let rec = LegendreRecurrence::global();
    let kn = knorm(p_in.max(p_out));
    let pm = p_in.min(p_out);
    let width = 2 * pm + 1;
    // f[j * width + (m + pm)], g likewise
    let mut f = vec![ZERO; nq * width];
    let mut g = vec![ZERO; nq * width];
    let nt = tri(p_in, p_in) + 1;
    let (mut q, mut dq) = (vec![ZERO; nt], vec![ZERO; nt]);
    let mut wpow = vec![ZERO; p_in + 2];
    for (j, &t0) in xs.iter().enumerate() {
        let s0 = (1.0 - t0 * t0).max(0.0).sqrt();
        let y1 = C64::new(rho_e * s0, 0.0);
        let y3 = rho_e * t0 - d;
        let r = (y1 * y1 + y3 * y3).sqrt();
        if r.norm() < 1e-12 * (rho_e + d.norm()) {
            return Err(FmmError::SeparationViolated("projection sphere passes through the source centre".into()));
        }
        let (t, w) = (y3 / r, y1 / r);
        let r_rho = (y1 * s0 + y3 * t0) / r;
        let dt = (t0 - t * r_rho) / r;
        let dw = (s0 - w * r_rho) / r;
        rec.eval_with_derivative_to(t, p_in, &mut q, &mut dq);
        let (rad, drad) = sph_with_derivative(rin, kappa * r, p_in)?;
        wpow[0] = C64::new(1.0, 0.0);
        for m in 1..=p_in + 1 {
            wpow[m] = wpow[m - 1] * w;
        }
        for ma in 0..=pm {
            let (mut fp, mut fm, mut gp, mut gm) = (ZERO, ZERO, ZERO, ZERO);
            for n in ma..=p_in {
                let k = tri(n, ma);
                let ang = kn[n] * q[k] * wpow[ma];
                let mut dang = kn[n] * dq[k] * dt * wpow[ma];
                if ma > 0 {
                    dang += kn[n] * q[k] * ma as f64 * wpow[ma - 1] * dw;
                }
                let b = rad[n] * ang;
                let db = kappa * drad[n] * r_rho * ang + rad[n] * dang;
                let (cp, cm) = (inp[idx(n, ma as i64)], inp[idx(n, -(ma as i64))]);
                fp += cp * b;
                gp += cp * db;
                fm += cm * b;
                gm += cm * db;
            }
            let row = j * width;
            f[row + pm + ma] = fp;
            g[row + pm + ma] = gp;
            f[row + pm - ma] = fm;
            g[row + pm - ma] = gm;
        }
    }
    let (a, da) = sph_with_derivative(rout, C64::new(kappa * rho_e, 0.0), p_out)?;
    let ntr = tri(p_out, p_out) + 1;
    let mut qr = vec![0.0f64; ntr];
    let mut out = vec![ZERO; ncoef(p_out)];
    let mut fh = vec![ZERO; width];
    let mut gh = vec![ZERO; width];
    let mut acc_f = vec![vec![ZERO; width]; p_out + 1];
    let mut acc_g = vec![vec![ZERO; width]; p_out + 1];
    for (j, (&t0, &wj)) in xs.iter().zip(&ws).enumerate() {
        let s0 = (1.0 - t0 * t0).max(0.0).sqrt();
        rec.eval_to(t0, p_out, &mut qr);
        fh.copy_from_slice(&f[j * width..(j + 1) * width]);
        gh.copy_from_slice(&g[j * width..(j + 1) * width]);
        let mut sm = 1.0;
        for ma in 0..=pm {
            for n in ma..=p_out {
                let yv = wj * kn[n] * qr[tri(n, ma)] * sm;
                acc_f[n][pm + ma] += yv * fh[pm + ma];
                acc_g[n][pm + ma] += yv * gh[pm + ma];
                if ma > 0 {
                    acc_f[n][pm - ma] += yv * fh[pm - ma];
                    acc_g[n][pm - ma] += yv * gh[pm - ma];
                }
            }
            sm *= s0;
        }
    }
    for n in 0..=p_out {
        let an = a[n];
        let bn = kappa * da[n];
        let mu = an.norm().max(bn.norm());
        if !(mu > 1e-290 && mu.is_finite()) {
            return Err(FmmError::IllConditionedProjection(n));
        }
        let (an, bn) = (an / mu, bn / mu);
        let den = (an.norm_sqr() + bn.norm_sqr()) * mu;
        let half = (2 * n + 1) as f64 / 2.0;
        let top = n.min(pm) as i64;
        for m in -top..=top {
            let k = (m + pm as i64) as usize;
            out[idx(n, m)] = half * (an.conj() * acc_f[n][k] + bn.conj() * acc_g[n][k]) / den;
        }
    }
    Ok(out)
}

fn resized(c: &[C64], p_in: usize, p_out: usize) -> Vec<C64> {
    let mut out = vec![ZERO; ncoef(p_out)];
    let k = ncoef(p_in.min(p_out));
    out[..k].copy_from_slice(&c[..k]);
    out
}

fn zvec(d: C64) -> CVec3 {
    CVec::new([ZERO, ZERO, d])
}

/// Multipole shifted by `d` along z (new centre `center - (0,0,d)`);
/// `rho_e` must exceed the radius enclosing the sources about the new centre.
pub fn m2m_helm3_z(e: &Mpole3, d: C64, p_out: usize, rho_e: f64) -> Result<Mpole3> {
    let kappa = kappa_of(e.kernel)?;
    let coeffs = if d == ZERO { resized(&e.coeffs, e.p, p_out) } else { coaxial_helm3(&e.coeffs, e.p, kappa, d, SphKind::H, SphKind::H, p_out, rho_e)? };
    Ok(Mpole3 { center: e.center - zvec(d), p: p_out, kernel: e.kernel, scale: 1.0, coeffs })
}

/// Local expansion about `center - (0,0,d)`; `rho_e` is the radius where the
/// local expansion will be used.
pub fn m2l_helm3_z(e: &Mpole3, d: C64, p_out: usize, rho_e: f64) -> Result<Local3> {
    let kappa = kappa_of(e.kernel)?;
    if d == ZERO {
        return Err(FmmError::SeparationViolated("multipole and local centres coincide".into()));
    }
    let coeffs = coaxial_helm3(&e.coeffs, e.p, kappa, d, SphKind::H, SphKind::J, p_out, rho_e)?;
    Ok(Local3 { center: e.center - zvec(d), p: p_out, kernel: e.kernel, scale: 1.0, coeffs })
}

pub fn l2l_helm3_z(e: &Local3, d: C64, p_out: usize, rho_e: f64) -> Result<Local3> {
    let kappa = kappa_of(e.kernel)?;
    let coeffs = if d == ZERO { resized(&e.coeffs, e.p, p_out) } else { coaxial_helm3(&e.coeffs, e.p, kappa, d, SphKind::J, SphKind::J, p_out, rho_e)? };
    Ok(Local3 { center: e.center - zvec(d), p: p_out, kernel: e.kernel, scale: 1.0, coeffs })
}

fn pas(c: &[C64], p_in: usize, kappa: f64, d: CVec3, rin: SphKind, rout: SphKind, p_out: usize, rho_e: f64) -> Result<Vec<C64>> {
    point_and_shoot(c, p_in, d, p_out, |a, rho| coaxial_helm3(a, p_in, kappa, rho, rin, rout, p_out, rho_e))
}

pub fn m2m_helm3_pas(e: &Mpole3, new_center: CVec3, p_out: usize, rho_e: f64) -> Result<Mpole3> {
    let kappa = kappa_of(e.kernel)?;
    let d = e.center - new_center;
    let coeffs = if is_zero(d) { resized(&e.coeffs, e.p, p_out) } else { pas(&e.coeffs, e.p, kappa, d, SphKind::H, SphKind::H, p_out, rho_e)? };
    Ok(Mpole3 { center: new_center, p: p_out, kernel: e.kernel, scale: 1.0, coeffs })
}

pub fn m2l_helm3_pas(e: &Mpole3, local_center: CVec3, p_out: usize, rho_e: f64) -> Result<Local3> {
    let kappa = kappa_of(e.kernel)?;
    let d = e.center - local_center;
    if is_zero(d) {
        return Err(FmmError::SeparationViolated("multipole and local centres coincide".into()));
    }
    let coeffs = pas(&e.coeffs, e.p, kappa, d, SphKind::H, SphKind::J, p_out, rho_e)?;
    Ok(Local3 { center: local_center, p: p_out, kernel: e.kernel, scale: 1.0, coeffs })
}

pub fn l2l_helm3_pas(e: &Local3, new_center: CVec3, p_out: usize, rho_e: f64) -> Result<Local3> {
    let kappa = kappa_of(e.kernel)?;
    let d = e.center - new_center;
    let coeffs = if is_zero(d) { resized(&e.coeffs, e.p, p_out) } else { pas(&e.coeffs, e.p, kappa, d, SphKind::J, SphKind::J, p_out, rho_e)? };
    Ok(Local3 { center: new_center, p: p_out, kernel: e.kernel, scale: 1.0, coeffs })
}

/// Reference translation (`O(P^4)`): samples an arbitrary field on two
/// full spheres about `center` and projects onto `iκ R_n(κρ) Y_n^m`, with
/// `R = rout`. Independent of rotations and coaxial formulas.
pub fn reproject_helm3<F>(field: F, center: CVec3, kappa: f64, rout: SphKind, p_out: usize, radii: [f64; 2]) -> Result<Vec<C64>>
where
    F: Fn(CVec3) -> Result<C64>,
{
    let nt = p_out + 2;
    let nphi = 2 * p_out + 3;
    let (xs, ws) = gauss_legendre(nt);
    let ik = C64::new(0.0, kappa);
    let mut num = vec![ZERO; ncoef(p_out)];
    let mut den = vec![0.0; p_out + 1];
    let mut y = vec![ZERO; ncoef(p_out)];
    let mut scratch = Vec::new();
    for &r in &radii {
        let a = sph_seq(rout, C64::new(kappa * r, 0.0), p_out)?.values;
        let mut proj = vec![ZERO; ncoef(p_out)];
        for (&t, &w) in xs.iter().zip(&ws) {
            let s = (1.0 - t * t).sqrt();
            for k in 0..nphi {
                let phi = 2.0 * PI * k as f64 / nphi as f64;
                let u = [s * phi.cos(), s * phi.sin(), t];
                let x = center + CVec::from_real(u.map(|v| v * r));
                let val = field(x)? / ik;
                let sp = solid_parts(CVec::from_real(u))?;
                harmonics(p_out, &sp, &mut scratch, &mut y);
                let wt = w * 2.0 * PI / nphi as f64;
                for n in 0..=p_out {
                    for m in -(n as i64)..=n as i64 {
                        proj[idx(n, m)] += wt * val * y[idx(n, -m)];
                    }
                }
            }
        }
        for n in 0..=p_out {
            let f = (2 * n + 1) as f64 / (4.0 * PI);
            for m in -(n as i64)..=n as i64 {
                num[idx(n, m)] += a[n].conj() * proj[idx(n, m)] * f;
            }
            den[n] += a[n].norm_sqr();
        }
    }
    for n in 0..=p_out {
        for m in -(n as i64)..=n as i64 {
            num[idx(n, m)] /= den[n];
        }
    }
    Ok(num)
}
