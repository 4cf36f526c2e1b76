//! 2-D Laplace expansions for the kernel `log r`.
//!
//! With `z = x1 + i x2` and `ζ = x1 - i x2`, `r^n e^{∓inφ}` is `ζ^n` / `z^n`,
//! so every coefficient and basis function is a plain power and no angles are
//! formed. Coefficients are stored nondimensionalised: multipole `M_n / s^n`,
//! local `L_n s^n`, with `s` the expansion's `scale`.

use super::{log_r, zeta_pair};
use crate::cgeom::{CVec2, C64};
use crate::error::{FmmError, Result};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, PartialEq)]
pub struct MpoleLap2 {
    pub center: CVec2,
    pub p: usize,
    pub scale: f64,
    pub m0: C64,
    /// `M_n^+ / s^n` at index `n`; index 0 unused.
    pub mp: Vec<C64>,
    /// `M_n^- / s^n` at index `n`; index 0 unused.
    pub mm: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalLap2 {
    pub center: CVec2,
    pub p: usize,
    pub scale: f64,
    pub l0: C64,
    /// `L_n^+ s^n`, paired with the basis `z^n`.
    pub lp: Vec<C64>,
    /// `L_n^- s^n`, paired with the basis `ζ^n`.
    pub lm: Vec<C64>,
}

impl MpoleLap2 {
    pub fn zero(center: CVec2, p: usize, scale: f64) -> Self {
        MpoleLap2 { center, p, scale, m0: ZERO, mp: vec![ZERO; p + 1], mm: vec![ZERO; p + 1] }
    }

    /// Unscaled `M_n^+`.
    pub fn plus(&self, n: usize) -> C64 {
        self.mp[n] * self.scale.powi(n as i32)
    }

    pub fn minus(&self, n: usize) -> C64 {
        self.mm[n] * self.scale.powi(n as i32)
    }

    pub fn peak(&self) -> f64 {
        self.mp.iter().chain(&self.mm).map(|c| c.norm()).fold(self.m0.norm(), f64::max)
    }
}

impl LocalLap2 {
    pub fn zero(center: CVec2, p: usize, scale: f64) -> Self {
        LocalLap2 { center, p, scale, l0: ZERO, lp: vec![ZERO; p + 1], lm: vec![ZERO; p + 1] }
    }

    pub fn plus(&self, n: usize) -> C64 {
        self.lp[n] / self.scale.powi(n as i32)
    }

    pub fn minus(&self, n: usize) -> C64 {
        self.lm[n] / self.scale.powi(n as i32)
    }

    pub fn peak(&self) -> f64 {
        self.lp.iter().chain(&self.lm).map(|c| c.norm()).fold(self.l0.norm(), f64::max)
    }
}

fn check_len(sources: usize, charges: usize) -> Result<()> {
    if sources != charges {
        return Err(FmmError::InvalidInput(format!("{sources} sources but {charges} charges")));
    }
    Ok(())
}

// Modulus of the largest real offset, used as a default scale.
fn default_scale(points: &[CVec2], center: CVec2) -> f64 {
    let s = points.iter().map(|y| (*y - center).modulus_norm()).fold(0.0, f64::max);
    if s > 0.0 {
        s
    } else {
        1.0
    }
}

pub fn p2m_lap2_add(e: &mut MpoleLap2, sources: &[CVec2], charges: &[C64]) -> Result<()> {
    check_len(sources.len(), charges.len())?;
    let inv = 1.0 / e.scale;
    for (y, &q) in sources.iter().zip(charges) {
        let (z, zeta) = zeta_pair(*y - e.center);
        let (z, zeta) = (z * inv, zeta * inv);
        e.m0 += q;
        let (mut zp, mut wp) = (q, q);
        for n in 1..=e.p {
            zp *= zeta;
            wp *= z;
            let f = -0.5 / n as f64;
            e.mp[n] += f * zp;
            e.mm[n] += f * wp;
        }
    }
    Ok(())
}

/// Multipole expansion of charges about `center`.
pub fn p2m_lap2(sources: &[CVec2], charges: &[C64], center: CVec2, p: usize) -> Result<MpoleLap2> {
    let mut e = MpoleLap2::zero(center, p, default_scale(sources, center));
    p2m_lap2_add(&mut e, sources, charges)?;
    Ok(e)
}

// Σ_{n=1}^{p} a_n w^n by Horner.
fn horner(a: &[C64], w: C64) -> C64 {
    let mut acc = ZERO;
    for c in a[1..].iter().rev() {
        acc = (acc + c) * w;
    }
    acc
}

pub fn m2p_lap2(e: &MpoleLap2, x: CVec2) -> Result<C64> {
    let d = x - e.center;
    let (z, zeta) = zeta_pair(d);
    let lr = log_r(d)?;
    let s = e.scale;
    Ok(e.m0 * lr + horner(&e.mp, s / zeta) + horner(&e.mm, s / z))
}

pub fn p2l_lap2_add(e: &mut LocalLap2, sources: &[CVec2], charges: &[C64]) -> Result<()> {
    check_len(sources.len(), charges.len())?;
    for (y, &q) in sources.iter().zip(charges) {
        let d = *y - e.center;
        let (z, zeta) = zeta_pair(d);
        e.l0 += q * log_r(d)?;
        let (iz, izeta) = (e.scale / z, e.scale / zeta);
        let (mut zp, mut wp) = (q, q);
        for n in 1..=e.p {
            zp *= iz;
            wp *= izeta;
            let f = -0.5 / n as f64;
            e.lp[n] += f * zp;
            e.lm[n] += f * wp;
        }
    }
    Ok(())
}

/// Local expansion about `center` of charges that lie outside its disk.
pub fn p2l_lap2(sources: &[CVec2], charges: &[C64], center: CVec2, p: usize) -> Result<LocalLap2> {
    let mut e = LocalLap2::zero(center, p, 1.0);
    p2l_lap2_add(&mut e, sources, charges)?;
    Ok(e)
}

pub fn l2p_lap2(e: &LocalLap2, x: CVec2) -> C64 {
    let (z, zeta) = zeta_pair(x - e.center);
    let inv = 1.0 / e.scale;
    e.l0 + horner(&e.lp, z * inv) + horner(&e.lm, zeta * inv)
}

/// Accumulate `src` re-centred at `dst.center` into `dst`.
pub fn m2m_lap2_add(src: &MpoleLap2, dst: &mut MpoleLap2) {
    let (z0, zeta0) = zeta_pair(src.center - dst.center);
    let inv = 1.0 / dst.scale;
    let (z0, zeta0) = (z0 * inv, zeta0 * inv);
    let ratio = src.scale * inv;
    let p_in = src.p;
    // Old coefficients rescaled to the new scale: M_n / s'^n.
    let mut rp = vec![ZERO; p_in + 1];
    let mut rm = vec![ZERO; p_in + 1];
    let mut f = 1.0;
    for n in 1..=p_in {
        f *= ratio;
        rp[n] = src.mp[n] * f;
        rm[n] = src.mm[n] * f;
    }
    dst.m0 += src.m0;
    // Powers of the shift, 0..=p.
    let p = dst.p;
    let mut pz = vec![C64::new(1.0, 0.0); p + 1];
    let mut pw = vec![C64::new(1.0, 0.0); p + 1];
    for k in 1..=p {
        pz[k] = pz[k - 1] * z0;
        pw[k] = pw[k - 1] * zeta0;
    }
    for k in 1..=p {
        let mut ap = -src.m0 * pw[k] / (2 * k) as f64;
        let mut am = -src.m0 * pz[k] / (2 * k) as f64;
        // C(k-1, n-1), updated along n.
        let mut b = 1.0;
        for n in 1..=k.min(p_in) {
            ap += b * pw[k - n] * rp[n];
            am += b * pz[k - n] * rm[n];
            b *= (k - n) as f64 / n as f64;
        }
        dst.mp[k] += ap;
        dst.mm[k] += am;
    }
}

pub fn m2m_lap2(src: &MpoleLap2, new_center: CVec2, p_out: usize, scale: f64) -> MpoleLap2 {
    let mut dst = MpoleLap2::zero(new_center, p_out, scale);
    m2m_lap2_add(src, &mut dst);
    dst
}

/// Accumulate the local expansion of `src` about `dst.center` into `dst`.
/// Inner sums are truncated at the source order.
pub fn m2l_lap2_add(src: &MpoleLap2, dst: &mut LocalLap2) -> Result<()> {
    let d0 = src.center - dst.center;
    let (z0, zeta0) = zeta_pair(d0);
    let lr0 = log_r(d0)?;
    let p_in = src.p;
    let p = dst.p;
    // t = s/z0 (source side), u = s'/z0 (target side).
    let (tz, tw) = (src.scale / z0, src.scale / zeta0);
    let (uz, uw) = (dst.scale / z0, dst.scale / zeta0);
    let mut az = vec![ZERO; p_in + 1];
    let mut aw = vec![ZERO; p_in + 1];
    let (mut fz, mut fw) = (C64::new(1.0, 0.0), C64::new(1.0, 0.0));
    let mut l0 = src.m0 * lr0;
    for n in 1..=p_in {
        fz *= -tz;
        fw *= -tw;
        // (-1)^n M_n^- / z0^n and (-1)^n M_n^+ / ζ0^n.
        az[n] = src.mm[n] * fz;
        aw[n] = src.mp[n] * fw;
        l0 += az[n] + aw[n];
    }
    dst.l0 += l0;
    let (mut gz, mut gw) = (C64::new(1.0, 0.0), C64::new(1.0, 0.0));
    for k in 1..=p {
        gz *= uz;
        gw *= uw;
        let mut sp = -src.m0 / (2 * k) as f64;
        let mut sm = sp;
        // C(n+k-1, k) at n = 1 is 1.
        let mut b = 1.0;
        for n in 1..=p_in {
            sp += b * az[n];
            sm += b * aw[n];
            b *= (n + k) as f64 / n as f64;
        }
        dst.lp[k] += sp * gz;
        dst.lm[k] += sm * gw;
    }
    Ok(())
}

pub fn m2l_lap2(src: &MpoleLap2, local_center: CVec2, p_out: usize, scale: f64) -> Result<LocalLap2> {
    let mut dst = LocalLap2::zero(local_center, p_out, scale);
    m2l_lap2_add(src, &mut dst)?;
    Ok(dst)
}

/// Exact re-expansion of a local expansion about `dst.center`.
pub fn l2l_lap2_add(src: &LocalLap2, dst: &mut LocalLap2) {
    let (z0, zeta0) = zeta_pair(src.center - dst.center);
    let p_in = src.p;
    // Work in src scale: a = -z0/s, then convert powers of the new scale.
    let (a, b) = (-z0 / src.scale, -zeta0 / src.scale);
    let mut pa = vec![C64::new(1.0, 0.0); p_in + 1];
    let mut pb = vec![C64::new(1.0, 0.0); p_in + 1];
    for k in 1..=p_in {
        pa[k] = pa[k - 1] * a;
        pb[k] = pb[k - 1] * b;
    }
    let mut l0 = src.l0;
    for n in 1..=p_in {
        l0 += src.lp[n] * pa[n] + src.lm[n] * pb[n];
    }
    dst.l0 += l0;
    let ratio = dst.scale / src.scale;
    let mut f = 1.0;
    for k in 1..=dst.p.min(p_in) {
        f *= ratio;
        let (mut sp, mut sm) = (ZERO, ZERO);
        // C(n, k), starting from C(k, k) = 1.
        let mut c = 1.0;
        for n in k..=p_in {
            sp += c * pa[n - k] * src.lp[n];
            sm += c * pb[n - k] * src.lm[n];
            c *= (n + 1) as f64 / (n + 1 - k) as f64;
        }
        dst.lp[k] += sp * f;
        dst.lm[k] += sm * f;
    }
}

pub fn l2l_lap2(src: &LocalLap2, new_center: CVec2, scale: f64) -> LocalLap2 {
    let mut dst = LocalLap2::zero(new_center, src.p, scale);
    l2l_lap2_add(src, &mut dst);
    dst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgeom::CVec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn direct(src: &[CVec2], q: &[C64], x: CVec2) -> C64 {
        src.iter().zip(q).map(|(y, s)| s * log_r(x - *y).unwrap()).sum()
    }

    // Points near `center` with imaginary parts 0.2 * (real offset) rotated.
    fn cluster(rng: &mut ChaCha8Rng, center: [f64; 2], r: f64, n: usize, lip: f64) -> (Vec<CVec2>, Vec<C64>) {
        let pts = (0..n)
            .map(|_| {
                let a = rng.gen_range(0.0..std::f64::consts::TAU);
                let rr = r * rng.gen::<f64>().sqrt();
                let re = [center[0] + rr * a.cos(), center[1] + rr * a.sin()];
                CVec::from_parts(re, [lip * re[0].sin(), lip * re[1].cos()])
            })
            .collect();
        let q = (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        (pts, q)
    }

    #[test]
    fn charge_at_center() {
        let e = p2m_lap2(&[CVec::from_real([0.0, 0.0])], &[c(2.0, 1.0)], CVec::from_real([0.0, 0.0]), 6).unwrap();
        assert_eq!(e.m0, c(2.0, 1.0));
        assert!(e.mp.iter().chain(&e.mm).all(|v| *v == ZERO));
    }

    #[test]
    fn dipole_coefficients() {
        let src = [CVec::from_real([0.1, 0.0]), CVec::from_real([-0.1, 0.0])];
        let e = p2m_lap2(&src, &[c(1.0, 0.0), c(-1.0, 0.0)], CVec::from_real([0.0, 0.0]), 3).unwrap();
        assert_eq!(e.m0, ZERO);
        // -(1/2)(0.1 - (-0.1)) = -0.1.
        assert!((e.plus(1) - c(-0.1, 0.0)).norm() < 1e-15);
        assert!((e.minus(1) - c(-0.1, 0.0)).norm() < 1e-15);
        assert!(e.plus(2).norm() < 1e-16);
    }

    #[test]
    fn monopole_far_value() {
        let e = p2m_lap2(&[CVec::from_real([0.0, 0.0])], &[c(1.0, 0.0)], CVec::from_real([0.0, 0.0]), 4).unwrap();
        let u = m2p_lap2(&e, CVec::from_real([2.0, 0.0])).unwrap();
        assert!((u - 2f64.ln()).norm() < 1e-15);
    }

    #[test]
    fn local_single_source() {
        let e = p2l_lap2(&[CVec::from_real([2.0, 0.0])], &[c(1.0, 0.0)], CVec::from_real([0.0, 0.0]), 5).unwrap();
        assert!((e.l0 - 2f64.ln()).norm() < 1e-15);
        assert!((l2p_lap2(&e, CVec::from_real([0.0, 0.0])) - 2f64.ln()).norm() < 1e-15);
    }

    #[test]
    fn real_data_conjugate_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (pts, _) = cluster(&mut rng, [0.0, 0.0], 1.0, 30, 0.0);
        let q: Vec<C64> = (0..30).map(|_| c(rng.gen_range(-1.0..1.0), 0.0)).collect();
        let e = p2m_lap2(&pts, &q, CVec::from_real([0.0, 0.0]), 12).unwrap();
        for n in 1..=12 {
            assert!((e.mm[n] - e.mp[n].conj()).norm() < 1e-13);
        }
        let l = p2l_lap2(&pts, &q, CVec::from_real([4.0, 1.0]), 12).unwrap();
        for n in 1..=12 {
            assert!((l.lm[n] - l.lp[n].conj()).norm() < 1e-13 * l.lp[n].norm().max(1e-3));
        }
    }

    #[test]
    fn multipole_and_local_converge() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (pts, q) = cluster(&mut rng, [0.0, 0.0], 1.0, 40, 0.1);
        let ctr = CVec::from_real([0.0, 0.0]);
        let e = p2m_lap2(&pts, &q, ctr, 30).unwrap();
        let x = CVec::from_parts([3.0, 1.0], [0.1 * 3f64.sin(), 0.1 * 1f64.cos()]);
        let want = direct(&pts, &q, x);
        assert!((m2p_lap2(&e, x).unwrap() - want).norm() < 1e-9 * want.norm().max(1.0));
        // Local about a far centre, evaluated near it.
        let (far, fq) = cluster(&mut rng, [5.0, 0.0], 1.0, 40, 0.1);
        let l = p2l_lap2(&far, &fq, ctr, 30).unwrap();
        let x = CVec::from_parts([0.3, -0.2], [0.1 * 0.3f64.sin(), 0.1 * (-0.2f64).cos()]);
        let want = direct(&far, &fq, x);
        assert!((l2p_lap2(&l, x) - want).norm() < 1e-9 * want.norm().max(1.0));
    }

    #[test]
    fn m2m_zero_shift_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (pts, q) = cluster(&mut rng, [0.0, 0.0], 1.0, 10, 0.1);
        let e = p2m_lap2(&pts, &q, CVec::from_real([0.0, 0.0]), 10).unwrap();
        let f = m2m_lap2(&e, e.center, 10, e.scale);
        for n in 1..=10 {
            assert!((f.mp[n] - e.mp[n]).norm() < 1e-15 && (f.mm[n] - e.mm[n]).norm() < 1e-15);
        }
    }

    #[test]
    fn m2m_matches_direct_formation() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (pts, q) = cluster(&mut rng, [0.3, 0.2], 0.4, 20, 0.1);
        let old = CVec::from_parts([0.3, 0.2], [0.02, 0.01]);
        let new = CVec::from_parts([0.0, 0.0], [0.0, 0.03]);
        let e = p2m_lap2(&pts, &q, old, 20).unwrap();
        let shifted = m2m_lap2(&e, new, 20, 1.0);
        let fresh = p2m_lap2(&pts, &q, new, 20).unwrap();
        // Exact for the first P terms: each output degree only sees degrees <= k.
        for n in 1..=20 {
            let scale = fresh.plus(n).norm().max(1e-14);
            assert!((shifted.plus(n) - fresh.plus(n)).norm() < 1e-12 * scale.max(1.0), "n={n}");
            assert!((shifted.minus(n) - fresh.minus(n)).norm() < 1e-12 * scale.max(1.0));
        }
    }

    #[test]
    fn m2m_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (pts, q) = cluster(&mut rng, [0.0, 0.0], 0.5, 20, 0.1);
        let e = p2m_lap2(&pts, &q, CVec::from_real([0.0, 0.0]), 16).unwrap();
        let a = CVec::from_parts([0.2, 0.1], [0.01, 0.0]);
        let b = CVec::from_parts([-0.3, 0.4], [0.0, 0.02]);
        let two = m2m_lap2(&m2m_lap2(&e, a, 16, 1.0), b, 16, 2.0);
        let one = m2m_lap2(&e, b, 16, 2.0);
        for n in 1..=16 {
            assert!((two.mp[n] - one.mp[n]).norm() < 1e-12 * one.mp[n].norm().max(1.0));
        }
    }

    #[test]
    fn m2l_monopole_reading() {
        let e = p2m_lap2(&[CVec::from_real([3.0, 4.0])], &[c(1.0, 0.0)], CVec::from_real([3.0, 4.0]), 5).unwrap();
        let l = m2l_lap2(&e, CVec::from_real([0.0, 0.0]), 5, 1.0).unwrap();
        assert!((l.l0 - 5f64.ln()).norm() < 1e-15);
        let (z0, w0) = (c(3.0, 4.0), c(3.0, -4.0));
        for k in 1..=5 {
            assert!((l.plus(k) + 1.0 / (2.0 * k as f64 * z0.powi(k as i32))).norm() < 1e-15);
            assert!((l.minus(k) + 1.0 / (2.0 * k as f64 * w0.powi(k as i32))).norm() < 1e-15);
        }
    }

    #[test]
    fn m2l_end_to_end() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (pts, q) = cluster(&mut rng, [4.0, 0.5], 0.7, 30, 0.15);
        let mc = CVec::from_parts([4.0, 0.5], [0.15 * 4f64.sin(), 0.15 * 0.5f64.cos()]);
        let lc = CVec::from_parts([0.0, 0.0], [0.0, 0.15]);
        let e = p2m_lap2(&pts, &q, mc, 40).unwrap();
        let l = m2l_lap2(&e, lc, 40, 0.7).unwrap();
        for _ in 0..10 {
            let re = [rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)];
            let x = CVec::from_parts(re, [0.15 * re[0].sin(), 0.15 * re[1].cos()]);
            let want = direct(&pts, &q, x);
            assert!((l2p_lap2(&l, x) - want).norm() < 1e-10 * want.norm().max(1.0));
        }
    }

    #[test]
    fn l2l_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (far, q) = cluster(&mut rng, [6.0, -1.0], 1.0, 20, 0.1);
        let l = p2l_lap2(&far, &q, CVec::from_real([0.0, 0.0]), 20).unwrap();
        let nc = CVec::from_parts([0.4, -0.3], [0.02, 0.01]);
        let m = l2l_lap2(&l, nc, 0.5);
        assert!((l2l_lap2(&l, l.center, l.scale).lp[3] - l.lp[3]).norm() < 1e-15);
        for _ in 0..10 {
            let x = CVec::from_parts([rng.gen_range(0.0..0.8), rng.gen_range(-0.6..0.0)], [0.01, 0.0]);
            let (a, b) = (l2p_lap2(&l, x), l2p_lap2(&m, x));
            assert!((a - b).norm() < 1e-13 * a.norm().max(1.0));
        }
    }

    #[test]
    fn l2l_triangular() {
        let mut l = LocalLap2::zero(CVec::from_real([0.0, 0.0]), 6, 1.0);
        l.lp[4] = c(1.0, 0.0);
        let m = l2l_lap2(&l, CVec::from_real([0.3, 0.1]), 1.0);
        assert!(m.lp[5] == ZERO && m.lp[6] == ZERO);
        assert!(m.lp[4] != ZERO && m.lp[1] != ZERO);
        assert!(m.lm.iter().all(|v| *v == ZERO));
    }

    #[test]
    fn scale_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let (pts, q) = cluster(&mut rng, [0.0, 0.0], 1.0, 20, 0.1);
        let ctr = CVec::from_real([0.0, 0.0]);
        let x = CVec::from_real([3.0, -2.0]);
        let mut a = MpoleLap2::zero(ctr, 20, 1.0);
        let mut b = MpoleLap2::zero(ctr, 20, 0.01);
        p2m_lap2_add(&mut a, &pts, &q).unwrap();
        p2m_lap2_add(&mut b, &pts, &q).unwrap();
        let (ua, ub) = (m2p_lap2(&a, x).unwrap(), m2p_lap2(&b, x).unwrap());
        assert!((ua - ub).norm() < 1e-12 * ua.norm());
    }

    #[test]
    fn isotropic_target_rejected() {
        let e = MpoleLap2::zero(CVec::from_real([0.0, 0.0]), 3, 1.0);
        let x = CVec::new([c(1.0, 0.0), c(0.0, 1.0)]);
        assert!(matches!(m2p_lap2(&e, x), Err(FmmError::DegeneratePoint(_))));
    }
}
