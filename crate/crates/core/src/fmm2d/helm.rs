//! 2-D Helmholtz expansions for the kernel `H_0^(1)(κ r)`.
//!
//! Multipole: `u(x) = Σ_n M_n H_n(κ r_x) e^{inφ_x}`, `M_n = Σ J_n(κ r_y) e^{-inφ_y} σ`.
//! Local: `u(x) = Σ_n L_n J_n(κ r_x) e^{inφ_x}`, `L_n = Σ H_n(κ r_y) e^{-inφ_y} σ`.
//! Coefficients are stored unscaled, indexed `-P..=P`.

use crate::cgeom::{to_polar, CVec2, PolarC, C64};
use crate::error::{FmmError, Result};
use crate::specfun::{bessel_j_seq, hankel_h1_seq, CylSeq};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

macro_rules! helm2_expansion {
    ($name:ident) => {
        #[derive(Debug, Clone, PartialEq)]
        pub struct $name {
            pub center: CVec2,
            pub p: usize,
            pub kappa: f64,
            /// Coefficient of order `n` at index `n + p`.
            pub coeffs: Vec<C64>,
        }

        impl $name {
            pub fn zero(center: CVec2, p: usize, kappa: f64) -> Self {
                $name { center, p, kappa, coeffs: vec![ZERO; 2 * p + 1] }
            }

            pub fn get(&self, n: i64) -> C64 {
                self.coeffs[(n + self.p as i64) as usize]
            }

            pub fn peak(&self) -> f64 {
                self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
            }
        }
    };
}

helm2_expansion!(MpoleHelm2);
helm2_expansion!(LocalHelm2);

fn is_zero(d: CVec2) -> bool {
    d.0.iter().all(|c| *c == ZERO)
}

// `e^{inφ}` for n in -p..=p, at index n + p.
fn phase_table(pc: &PolarC, p: usize, sign: f64) -> Vec<C64> {
    let (up, down) = if sign > 0.0 { (pc.eip, pc.eim) } else { (pc.eim, pc.eip) };
    let mut t = vec![C64::new(1.0, 0.0); 2 * p + 1];
    for n in 1..=p {
        t[p + n] = t[p + n - 1] * up;
        t[p - n] = t[p - n + 1] * down;
    }
    t
}

fn signed(seq: &CylSeq, n: i64) -> C64 {
    seq.get(n)
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(FmmError::InvalidInput(format!("wavenumber must be positive, got {kappa}")));
    }
    Ok(())
}

pub fn p2m_helm2_add(e: &mut MpoleHelm2, sources: &[CVec2], charges: &[C64]) -> Result<()> {
    if sources.len() != charges.len() {
        return Err(FmmError::InvalidInput("sources and charges differ in length".into()));
    }
    let p = e.p;
    for (y, &q) in sources.iter().zip(charges) {
        let d = *y - e.center;
        if is_zero(d) {
            e.coeffs[p] += q;
            continue;
        }
        let pc = to_polar(d)?;
        let j = bessel_j_seq(e.kappa * pc.r, p)?;
        let ph = phase_table(&pc, p, -1.0);
        for n in -(p as i64)..=p as i64 {
            let k = (n + p as i64) as usize;
            e.coeffs[k] += signed(&j, n) * ph[k] * q;
        }
    }
    Ok(())
}

pub fn p2m_helm2(sources: &[CVec2], charges: &[C64], center: CVec2, p: usize, kappa: f64) -> Result<MpoleHelm2> {
    check_kappa(kappa)?;
    let mut e = MpoleHelm2::zero(center, p, kappa);
    p2m_helm2_add(&mut e, sources, charges)?;
    Ok(e)
}

pub fn m2p_helm2(e: &MpoleHelm2, x: CVec2) -> Result<C64> {
    let pc = to_polar(x - e.center)?;
    let h = hankel_h1_seq(e.kappa * pc.r, e.p)?;
    let ph = phase_table(&pc, e.p, 1.0);
    let p = e.p as i64;
    Ok((-p..=p).map(|n| e.coeffs[(n + p) as usize] * signed(&h, n) * ph[(n + p) as usize]).sum())
}

pub fn p2l_helm2_add(e: &mut LocalHelm2, sources: &[CVec2], charges: &[C64]) -> Result<()> {
    if sources.len() != charges.len() {
        return Err(FmmError::InvalidInput("sources and charges differ in length".into()));
    }
    let p = e.p;
    for (y, &q) in sources.iter().zip(charges) {
        let pc = to_polar(*y - e.center)?;
        let h = hankel_h1_seq(e.kappa * pc.r, p)?;
        let ph = phase_table(&pc, p, -1.0);
        for n in -(p as i64)..=p as i64 {
            let k = (n + p as i64) as usize;
            e.coeffs[k] += signed(&h, n) * ph[k] * q;
        }
    }
    Ok(())
}

pub fn p2l_helm2(sources: &[CVec2], charges: &[C64], center: CVec2, p: usize, kappa: f64) -> Result<LocalHelm2> {
    check_kappa(kappa)?;
    let mut e = LocalHelm2::zero(center, p, kappa);
    p2l_helm2_add(&mut e, sources, charges)?;
    Ok(e)
}

pub fn l2p_helm2(e: &LocalHelm2, x: CVec2) -> Result<C64> {
    let d = x - e.center;
    if is_zero(d) {
        return Ok(e.get(0));
    }
    let pc = to_polar(d)?;
    let j = bessel_j_seq(e.kappa * pc.r, e.p)?;
    let ph = phase_table(&pc, e.p, 1.0);
    let p = e.p as i64;
    Ok((-p..=p).map(|n| e.coeffs[(n + p) as usize] * signed(&j, n) * ph[(n + p) as usize]).sum())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Radial {
    J,
    H,
}

// out_m += Σ_n X_{m-n}(κ r0) e^{-i(m-n)φ0} c_n with d0 = (old centre) - (new centre).
fn translate(c: &[C64], p_in: usize, out: &mut [C64], p_out: usize, d0: CVec2, kappa: f64, kind: Radial) -> Result<()> {
    let pmax = p_in + p_out;
    let t: Vec<C64> = if is_zero(d0) {
        if kind == Radial::H {
            return Err(FmmError::SeparationViolated("multipole-to-local shift of zero length".into()));
        }
        let mut t = vec![ZERO; 2 * pmax + 1];
        t[pmax] = C64::new(1.0, 0.0);
        t
    } else {
        let pc = to_polar(d0)?;
        let seq = match kind {
            Radial::J => bessel_j_seq(kappa * pc.r, pmax)?,
            Radial::H => hankel_h1_seq(kappa * pc.r, pmax)?,
        };
        let ph = phase_table(&pc, pmax, -1.0);
        (-(pmax as i64)..=pmax as i64).map(|k| signed(&seq, k) * ph[(k + pmax as i64) as usize]).collect()
    };
    let (pi, po, pm) = (p_in as i64, p_out as i64, pmax as i64);
    for m in -po..=po {
        let mut acc = ZERO;
        for n in -pi..=pi {
            acc += t[(m - n + pm) as usize] * c[(n + pi) as usize];
        }
        out[(m + po) as usize] += acc;
    }
    Ok(())
}

pub fn m2m_helm2_add(src: &MpoleHelm2, dst: &mut MpoleHelm2) -> Result<()> {
    translate(&src.coeffs, src.p, &mut dst.coeffs, dst.p, src.center - dst.center, src.kappa, Radial::J)
}

pub fn m2m_helm2(src: &MpoleHelm2, new_center: CVec2, p_out: usize) -> Result<MpoleHelm2> {
    let mut dst = MpoleHelm2::zero(new_center, p_out, src.kappa);
    m2m_helm2_add(src, &mut dst)?;
    Ok(dst)
}

pub fn m2l_helm2_add(src: &MpoleHelm2, dst: &mut LocalHelm2) -> Result<()> {
    translate(&src.coeffs, src.p, &mut dst.coeffs, dst.p, src.center - dst.center, src.kappa, Radial::H)
}

pub fn m2l_helm2(src: &MpoleHelm2, local_center: CVec2, p_out: usize) -> Result<LocalHelm2> {
    let mut dst = LocalHelm2::zero(local_center, p_out, src.kappa);
    m2l_helm2_add(src, &mut dst)?;
    Ok(dst)
}

pub fn l2l_helm2_add(src: &LocalHelm2, dst: &mut LocalHelm2) -> Result<()> {
    translate(&src.coeffs, src.p, &mut dst.coeffs, dst.p, src.center - dst.center, src.kappa, Radial::J)
}

pub fn l2l_helm2(src: &LocalHelm2, new_center: CVec2, p_out: usize) -> Result<LocalHelm2> {
    let mut dst = LocalHelm2::zero(new_center, p_out, src.kappa);
    l2l_helm2_add(src, &mut dst)?;
    Ok(dst)
}
