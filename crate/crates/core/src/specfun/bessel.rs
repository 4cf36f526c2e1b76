//! Cylindrical Bessel `J_n` and Hankel `H_n^(1)` sequences.

use crate::error::{FmmError, Result};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const RESCALE: f64 = 1e100;

/// Values of order `0..=order_max`; negative orders follow by reflection.
#[derive(Debug, Clone, PartialEq)]
pub struct CylSeq {
    pub order_max: usize,
    pub values: Vec<C64>,
}

impl CylSeq {
    /// Value at signed order `n`, using `F_{-n} = (-1)^n F_n`.
    pub fn get(&self, n: i64) -> C64 {
        let v = self.values[n.unsigned_abs() as usize];
        if n < 0 && n % 2 != 0 {
            -v
        } else {
            v
        }
    }
}

fn miller_start(p: usize, az: f64) -> usize {
    let m = (p as f64).max(az);
    let s = m + 20.0 + (40.0 * m).sqrt();
    (s as usize + 1) & !1
}

/// `J_0..J_p` by downward recurrence, normalised against the generating
/// function `e^{∓iz} = J_0 + 2 Σ (∓i)^k J_k`.
pub fn bessel_j_seq(z: C64, p: usize) -> Result<CylSeq> {
    let mut values = vec![C64::new(0.0, 0.0); p + 1];
    if z == C64::new(0.0, 0.0) {
        values[0] = C64::new(1.0, 0.0);
        return Ok(CylSeq { order_max: p, values });
    }
    let start = miller_start(p, z.norm());
    // Im z >= 0 uses e^{-iz}, which is the larger of the two exponentials.
    let (s, target) = if z.im >= 0.0 {
        (C64::new(0.0, -1.0), (-C64::i() * z).exp())
    } else {
        (C64::new(0.0, 1.0), (C64::i() * z).exp())
    };
    let zinv = 1.0 / z;
    let mut fkp1 = C64::new(0.0, 0.0);
    let mut fk = C64::new(1e-30, 0.0);
    let mut sum = C64::new(0.0, 0.0);
    // s^k for the current k, tracked by its residue mod 4.
    let spow = |k: usize| match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => s,
        2 => C64::new(-1.0, 0.0),
        _ => -s,
    };
    for k in (1..=start).rev() {
        if k <= p {
            values[k] = fk;
        }
        sum += 2.0 * spow(k) * fk;
        let fkm1 = 2.0 * k as f64 * zinv * fk - fkp1;
        fkp1 = fk;
        fk = fkm1;
        if fk.norm() > RESCALE {
            fk /= RESCALE;
            fkp1 /= RESCALE;
            sum /= RESCALE;
            for v in values.iter_mut().skip(k) {
                *v /= RESCALE;
            }
        }
    }
    values[0] = fk;
    sum += fk;
    let scale = target / sum;
    if !scale.re.is_finite() || !scale.im.is_finite() {
        return Err(FmmError::Overflow(format!("J_n({z}) normalisation")));
    }
    for v in values.iter_mut() {
        *v *= scale;
    }
    Ok(CylSeq { order_max: p, values })
}

// Large-argument expansion of H_nu^(1), nu in {0, 1}.
fn hankel_asymptotic(z: C64, nu: f64) -> C64 {
    let mu = 4.0 * nu * nu;
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let a = (mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf);
        term *= C64::i() * a / z;
        let t = term.norm();
        if t > prev || t < 1e-17 * sum.norm() {
            if t < prev {
                sum += term;
            }
            break;
        }
        sum += term;
        prev = t;
    }
    let phase = z - (nu * 0.5 + 0.25) * PI;
    (2.0 / (PI * z)).sqrt() * (C64::i() * phase).exp() * sum
}

// Steed's continued fraction for H_0^(1)'/H_0^(1), upper half plane.
fn cf2_h0(z: C64) -> Result<C64> {
    let tiny = C64::new(1e-100, 0.0);
    let mut f = tiny;
    let mut c = f;
    let mut d = C64::new(0.0, 0.0);
    for k in 1..100_000 {
        let kf = k as f64;
        let a = C64::new((kf - 0.5).powi(2), 0.0);
        let b = 2.0 * (z + C64::new(0.0, kf));
        d = b + a * d;
        if d.norm() == 0.0 {
            d = tiny;
        }
        c = b + a / c;
        if c.norm() == 0.0 {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-15 {
            return Ok(C64::new(-0.5, 0.0) / z + C64::i() + C64::i() / z * f);
        }
    }
    Err(FmmError::Overflow(format!("continued fraction for H_0({z}) did not converge")))
}

// Y_0 from the Neumann series in even-order J, then Y_1 by the Wronskian.
fn y01_neumann(z: C64) -> Result<(C64, C64, C64, C64)> {
    let kmax = miller_start(8, z.norm()).max(40);
    let j = bessel_j_seq(z, 2 * kmax)?;
    let mut s = C64::new(0.0, 0.0);
    for k in (1..=kmax).rev() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * j.values[2 * k] / k as f64;
    }
    let (j0, j1) = (j.values[0], j.values[1]);
    let y0 = 2.0 / PI * (((z / 2.0).ln() + EULER_GAMMA) * j0 - 2.0 * s);
    let y1 = (j1 * y0 - 2.0 / (PI * z)) / j0;
    Ok((j0, j1, y0, y1))
}

fn h01(z: C64) -> Result<(C64, C64)> {
    let az = z.norm();
    if az >= 17.0 {
        return Ok((hankel_asymptotic(z, 0.0), hankel_asymptotic(z, 1.0)));
    }
    if az >= 2.0 {
        if z.im >= 0.0 {
            let g = cf2_h0(z)?;
            let j = bessel_j_seq(z, 1)?;
            let h0 = 2.0 * C64::i() / (PI * z * (g * j.values[0] + j.values[1]));
            return Ok((h0, -g * h0));
        }
        // H^(1)(z) = conj(2 J(conj z) - H^(1)(conj z)) for real order.
        let w = z.conj();
        let (h0w, h1w) = h01(w)?;
        let j = bessel_j_seq(w, 1)?;
        return Ok(((2.0 * j.values[0] - h0w).conj(), (2.0 * j.values[1] - h1w).conj()));
    }
    let (j0, j1, y0, y1) = y01_neumann(z)?;
    Ok((j0 + C64::i() * y0, j1 + C64::i() * y1))
}

/// `H_0^(1)(z)` alone. The ascending series is used for `|z| < 4` below
/// `Im z = 1`; higher up `H_0` decays like `e^{-Im z}` while `J_0` and `Y_0`
/// grow, so the sum `J_0 + i Y_0` would cancel.
pub fn hankel_h0(z: C64) -> Result<C64> {
    if z == C64::new(0.0, 0.0) {
        return Err(FmmError::InvalidInput("Hankel function at zero".into()));
    }
    if z.norm() >= 4.0 || z.im >= 1.0 {
        return Ok(h01(z)?.0);
    }
    let t = -0.25 * z * z;
    let (mut term, mut harm) = (C64::new(1.0, 0.0), 0.0);
    let (mut j0, mut s) = (term, C64::new(0.0, 0.0));
    for k in 1..60 {
        let kf = k as f64;
        term *= t / (kf * kf);
        harm += 1.0 / kf;
        j0 += term;
        s += harm * term;
        if term.norm() * harm < 1e-17 * j0.norm().max(s.norm()) {
            break;
        }
    }
    let y0 = 2.0 / PI * (((z / 2.0).ln() + EULER_GAMMA) * j0 - s);
    Ok(j0 + C64::i() * y0)
}

/// `H_0^(1)..H_p^(1)`: closed-form seeds, then upward recurrence.
pub fn hankel_h1_seq(z: C64, p: usize) -> Result<CylSeq> {
    if z == C64::new(0.0, 0.0) {
        return Err(FmmError::InvalidInput("Hankel function at zero".into()));
    }
    let (h0, h1) = h01(z)?;
    let mut values = Vec::with_capacity(p + 1);
    values.push(h0);
    if p >= 1 {
        values.push(h1);
    }
    let zinv = 1.0 / z;
    for n in 1..p {
        let next = 2.0 * n as f64 * zinv * values[n] - values[n - 1];
        if !(next.re.is_finite() && next.im.is_finite()) {
            return Err(FmmError::Overflow(format!("H_{}({z})", n + 1)));
        }
        values.push(next);
    }
    Ok(CylSeq { order_max: p, values })
}
