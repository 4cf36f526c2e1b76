//! Spherical Bessel `j_n` and spherical Hankel `h_n^(1)` sequences.

use crate::error::{FmmError, Result};
use num_complex::Complex64 as C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphKind {
    J,
    H,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphSeq {
    pub order_max: usize,
    pub values: Vec<C64>,
}

impl SphSeq {
    /// Derivatives `f_n'(z)` from `f_n' = f_{n-1} - (n+1) f_n / z`.
    pub fn derivatives(&self, z: C64) -> Vec<C64> {
        let v = &self.values;
        let mut d = Vec::with_capacity(v.len());
        if z == C64::new(0.0, 0.0) {
            // Only j_1'(0) = 1/3 survives at the origin.
            for n in 0..v.len() {
                d.push(C64::new(if n == 1 { 1.0 / 3.0 } else { 0.0 }, 0.0));
            }
            return d;
        }
        for n in 0..v.len() {
            if n == 0 {
                // f_0' = -f_1, which needs one order beyond the table when p = 0.
                d.push(if v.len() > 1 { -v[1] } else { C64::new(f64::NAN, 0.0) });
            } else {
                d.push(v[n - 1] - (n as f64 + 1.0) * v[n] / z);
            }
        }
        d
    }
}

pub fn sph_seq(kind: SphKind, z: C64, p: usize) -> Result<SphSeq> {
    let values = match kind {
        SphKind::J => sph_j(z, p)?,
        SphKind::H => sph_h(z, p)?,
    };
    Ok(SphSeq { order_max: p, values })
}

/// Values and derivatives of orders `0..=p`.
pub fn sph_with_derivative(kind: SphKind, z: C64, p: usize) -> Result<(Vec<C64>, Vec<C64>)> {
    let s = sph_seq(kind, z, p + 1)?;
    let mut d = s.derivatives(z);
    let mut v = s.values;
    v.truncate(p + 1);
    d.truncate(p + 1);
    Ok((v, d))
}

fn sph_h(z: C64, p: usize) -> Result<Vec<C64>> {
    if z == C64::new(0.0, 0.0) {
        return Err(FmmError::InvalidInput("spherical Hankel function at zero".into()));
    }
    let e = (C64::i() * z).exp();
    let mut v = Vec::with_capacity(p + 1);
    v.push(-C64::i() * e / z);
    if p >= 1 {
        v.push(-e * (z + C64::i()) / (z * z));
    }
    let zinv = 1.0 / z;
    for n in 1..p {
        let next = (2 * n + 1) as f64 * zinv * v[n] - v[n - 1];
        if !(next.re.is_finite() && next.im.is_finite()) {
            return Err(FmmError::Overflow(format!("h_{}({z})", n + 1)));
        }
        v.push(next);
    }
    Ok(v)
}

fn sph_j(z: C64, p: usize) -> Result<Vec<C64>> {
    let mut v = vec![C64::new(0.0, 0.0); p + 1];
    if z == C64::new(0.0, 0.0) {
        v[0] = C64::new(1.0, 0.0);
        return Ok(v);
    }
    let az = z.norm();
    let m = (p as f64).max(az);
    let start = (m + 20.0 + (40.0 * m).sqrt()) as usize + 1;
    let zinv = 1.0 / z;
    let mut fkp1 = C64::new(0.0, 0.0);
    let mut fk = C64::new(1e-30, 0.0);
    let mut f1 = C64::new(0.0, 0.0);
    for k in (1..=start).rev() {
        if k <= p {
            v[k] = fk;
        }
        if k == 1 {
            f1 = fk;
        }
        let fkm1 = (2 * k + 1) as f64 * zinv * fk - fkp1;
        fkp1 = fk;
        fk = fkm1;
        if fk.norm() > 1e100 {
            fk /= 1e100;
            fkp1 /= 1e100;
            f1 /= 1e100;
            for x in v.iter_mut().skip(k) {
                *x /= 1e100;
            }
        }
    }
    v[0] = fk;
    let j0 = if az < 1e-3 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0 - z2 * z2 * z2 / 5040.0
    } else {
        z.sin() / z
    };
    let scale = if az < 1.0 {
        j0 / fk
    } else {
        let j1 = z.sin() / (z * z) - z.cos() / z;
        if j1.norm() > j0.norm() {
            j1 / f1
        } else {
            j0 / fk
        }
    };
    if !(scale.re.is_finite() && scale.im.is_finite()) {
        return Err(FmmError::Overflow(format!("j_n({z}) normalisation")));
    }
    for x in v.iter_mut() {
        *x *= scale;
    }
    Ok(v)
}
