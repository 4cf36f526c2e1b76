//! Point-and-shoot translations: rotate so the shift lies on the z axis,
//! translate coaxially, rotate back.
//!
//! With `d = c_old - c_new`, the frame rotation is `R = R_z(β) R_y(-α)` where
//! `R e_z = d/ρ`. When `d1^2 + d2^2` is nearly zero relative to `|d|^2` (a
//! shift close to the axis, or along an isotropic-looking pair such as
//! `(1, i, ·)`) a fixed quarter-turn is applied first so the rotation angles
//! stay well defined.

use super::{is_zero, lap::LapZPlan, ncoef, rot_y_coeffs, rot_y_quarter, rot_z_coeffs, Kernel3, Local3, Mpole3, ONE, ZERO};
use crate::cgeom::{CVec, CVec3, C64};
use crate::error::{FmmError, Result};

/// Real pre-rotation `P` applied before the main rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pre {
    None,
    /// `P = R_y(π/2)`, sends the z axis to `-x`.
    Y,
    /// `P = R_z(π/2) R_y(π/2)`, sends the z axis to `-y`.
    ZY,
}

impl Pre {
    fn apply_t(self, d: CVec3) -> CVec3 {
        let [a, b, c] = d.0;
        match self {
            Pre::None => d,
            Pre::Y => CVec::new([c, b, -a]),
            // R_y(π/2)^T R_z(π/2)^T d = R_y^T (b, -a, c)
            Pre::ZY => CVec::new([c, -a, -b]),
        }
    }

    fn forward(self, c: Vec<C64>, p: usize) -> Vec<C64> {
        match self {
            Pre::None => c,
            Pre::Y => rot_y_quarter(&c, p, true),
            Pre::ZY => {
                let mut c = c;
                rot_z_coeffs(&mut c, p, ZERO, ONE);
                rot_y_quarter(&c, p, true)
            }
        }
    }

    fn backward(self, c: Vec<C64>, p: usize) -> Vec<C64> {
        match self {
            Pre::None => c,
            Pre::Y => rot_y_quarter(&c, p, false),
            Pre::ZY => {
                let mut c = rot_y_quarter(&c, p, false);
                rot_z_coeffs(&mut c, p, ZERO, -ONE);
                c
            }
        }
    }
}

/// Geometry of one point-and-shoot step.
#[derive(Debug, Clone, Copy)]
pub struct ShootFrame {
    pre: Pre,
    /// Coaxial shift length `ρ = sqrt(d·d)`.
    pub rho: C64,
    cos_b: C64,
    sin_b: C64,
    cos_a: C64,
    sin_a: C64,
}

impl ShootFrame {
    /// Frame for the shift `d = c_old - c_new`; `d` must be nonzero.
    pub fn new(d: CVec3) -> Result<Self> {
        let m2 = d.0.iter().map(|c| c.norm_sqr()).sum::<f64>();
        let rho = d.dot_self().sqrt();
        if m2 == 0.0 || rho.norm_sqr() < 1e-24 * m2 {
            return Err(FmmError::DegeneratePoint(format!("shift ({}, {}, {}) has vanishing length", d.0[0], d.0[1], d.0[2])));
        }
        // pick the frame in which the transverse part is best conditioned
        let mut best = (Pre::None, d, -1.0);
        for pre in [Pre::None, Pre::Y, Pre::ZY] {
            let dp = pre.apply_t(d);
            let q2 = dp.0[0] * dp.0[0] + dp.0[1] * dp.0[1];
            let score = q2.norm() / m2;
            // prefer no pre-rotation unless it is genuinely close to degenerate
            let score = if pre == Pre::None && score >= 0.25 { f64::INFINITY } else { score };
            if score > best.2 {
                best = (pre, dp, score);
            }
        }
        let (pre, dp, _) = best;
        let q2 = dp.0[0] * dp.0[0] + dp.0[1] * dp.0[1];
        let (cos_b, sin_b, q) = if q2.norm() <= 1e-30 * m2 {
            (ONE, ZERO, ZERO)
        } else {
            let q = q2.sqrt();
            (dp.0[0] / q, dp.0[1] / q, q)
        };
        Ok(ShootFrame { pre, rho, cos_b, sin_b, cos_a: dp.0[2] / rho, sin_a: q / rho })
    }

    /// Coefficients in the frame where the shift is `(0, 0, ρ)`.
    pub fn to_axis(&self, c: &[C64], p: usize) -> Vec<C64> {
        let mut c = self.pre.forward(c[..ncoef(p)].to_vec(), p);
        rot_z_coeffs(&mut c, p, self.cos_b, self.sin_b);
        rot_y_coeffs(&c, p, self.cos_a, -self.sin_a)
    }

    /// Inverse of [`ShootFrame::to_axis`].
    pub fn from_axis(&self, c: &[C64], p: usize) -> Vec<C64> {
        let mut c = rot_y_coeffs(c, p, self.cos_a, self.sin_a);
        rot_z_coeffs(&mut c, p, self.cos_b, -self.sin_b);
        self.pre.backward(c, p)
    }
}

/// Translate by `d = c_old - c_new` with a coaxial operator `shift(coeffs, ρ)`
/// that returns `(p_out+1)^2` coefficients.
pub fn point_and_shoot<F>(c: &[C64], p_in: usize, d: CVec3, p_out: usize, shift: F) -> Result<Vec<C64>>
where
    F: FnOnce(&[C64], C64) -> Result<Vec<C64>>,
{
    let f = ShootFrame::new(d)?;
    let a = f.to_axis(c, p_in);
    let b = shift(&a, f.rho)?;
    debug_assert_eq!(b.len(), ncoef(p_out));
    Ok(f.from_axis(&b, p_out))
}

fn lap(e: Kernel3) -> Result<()> {
    match e {
        Kernel3::Laplace => Ok(()),
        k => Err(FmmError::InvalidInput(format!("expected a Laplace expansion, got {k:?}"))),
    }
}

/// Multipole to multipole about `new_center`, `O(P^3)`.
pub fn m2m_lap3_pas(e: &Mpole3, new_center: CVec3, p_out: usize, scale: f64) -> Result<Mpole3> {
    lap(e.kernel)?;
    let d = e.center - new_center;
    let plan = LapZPlan::shared(e.p.max(p_out));
    let shift = |c: &[C64], rho: C64| {
        let mut out = vec![ZERO; ncoef(p_out)];
        plan.m2m(c, e.p, e.scale, rho, &mut out, p_out, scale);
        Ok(out)
    };
    let coeffs = if is_zero(d) { shift(&e.coeffs, ZERO)? } else { point_and_shoot(&e.coeffs, e.p, d, p_out, shift)? };
    Ok(Mpole3 { center: new_center, p: p_out, kernel: Kernel3::Laplace, scale, coeffs })
}

/// Multipole to local about `local_center`, `O(P^3)`.
pub fn m2l_lap3_pas(e: &Mpole3, local_center: CVec3, p_out: usize, scale: f64) -> Result<Local3> {
    lap(e.kernel)?;
    let d = e.center - local_center;
    if is_zero(d) {
        return Err(FmmError::SeparationViolated("multipole and local centres coincide".into()));
    }
    let plan = LapZPlan::shared(e.p.max(p_out));
    let coeffs = point_and_shoot(&e.coeffs, e.p, d, p_out, |c, rho| {
        let mut out = vec![ZERO; ncoef(p_out)];
        plan.m2l(c, e.p, e.scale, rho, &mut out, p_out, scale);
        Ok(out)
    })?;
    Ok(Local3 { center: local_center, p: p_out, kernel: Kernel3::Laplace, scale, coeffs })
}

/// Local to local about `new_center`, `O(P^3)`.
pub fn l2l_lap3_pas(e: &Local3, new_center: CVec3, scale: f64) -> Result<Local3> {
    lap(e.kernel)?;
    let d = e.center - new_center;
    let p = e.p;
    let plan = LapZPlan::shared(p);
    let shift = |c: &[C64], rho: C64| {
        let mut out = vec![ZERO; ncoef(p)];
        plan.l2l(c, p, e.scale, rho, &mut out, p, scale);
        Ok(out)
    };
    let coeffs = if is_zero(d) { shift(&e.coeffs, ZERO)? } else { point_and_shoot(&e.coeffs, p, d, p, shift)? };
    Ok(Local3 { center: new_center, p, kernel: Kernel3::Laplace, scale, coeffs })
}
