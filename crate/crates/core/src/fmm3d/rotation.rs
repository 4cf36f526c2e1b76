//! Rotations of harmonic expansions by complex angles.
//!
//! Both rotations return the coefficients of `G(y) = F(R y)`, where `F` is the
//! input expansion, so that evaluating `G` at `R^T x` reproduces `F(x)`.
//! `R_z(β)` is the usual rotation about z and
//! `R_y(α) = [[cos α, 0, -sin α], [0, 1, 0], [sin α, 0, cos α]]`.

use super::{idx, ncoef, Local3, Mpole3, ONE, ZERO};
use crate::cgeom::C64;
use crate::specfun::legendre::{tri, LegendreRecurrence};
use crate::specfun::WignerDTable;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// Multiply order `m` by `e^{imβ}`, given `cos β` and `sin β`.
pub fn rot_z_coeffs(c: &mut [C64], p: usize, cos_b: C64, sin_b: C64) {
    let i = C64::i();
    let (up, down) = (cos_b + i * sin_b, cos_b - i * sin_b);
    let (mut fu, mut fd) = (ONE, ONE);
    for m in 1..=p {
        fu *= up;
        fd *= down;
        for n in m..=p {
            c[idx(n, m as i64)] *= fu;
            c[idx(n, -(m as i64))] *= fd;
        }
    }
}

thread_local! {
    static FFTS: RefCell<(FftPlanner<f64>, HashMap<usize, Arc<dyn Fft<f64>>>)> = RefCell::new((FftPlanner::new(), HashMap::new()));
}

fn forward_fft(len: usize) -> Arc<dyn Fft<f64>> {
    FFTS.with(|f| {
        let mut f = f.borrow_mut();
        if let Some(p) = f.1.get(&len) {
            return p.clone();
        }
        let plan = f.0.plan_fft_forward(len);
        f.1.insert(len, plan.clone());
        plan
    })
}

/// Samples and projection weights for one y-rotation.
///
/// The rotated field is sampled on the equator of the new frame at
/// `φ_j = 2πj/(2P+1)`, both in value and in `∂θ`; each coefficient is then
/// recovered from whichever of `Pbar_n^m(0)`, `∂θ Pbar_n^m(0)` is nonzero,
/// combined in least squares so no division by zero can occur.
#[derive(Debug, Clone)]
pub struct RotationPlan {
    pub p: usize,
    pub cos_a: C64,
    pub sin_a: C64,
    q: Vec<C64>,
    dq: Vec<C64>,
    wp: Vec<C64>,
    wm: Vec<C64>,
    a0: Vec<f64>,
    b0: Vec<f64>,
}

impl RotationPlan {
    pub fn new(p: usize, cos_a: C64, sin_a: C64) -> Self {
        let rec = LegendreRecurrence::global();
        let nt = tri(p, p) + 1;
        let ng = 2 * p + 1;
        let mut q = vec![ZERO; ng * nt];
        let mut dq = vec![ZERO; ng * nt];
        let mut wp = vec![ZERO; ng * (p + 1)];
        let mut wm = vec![ZERO; ng * (p + 1)];
        let i = C64::i();
        for j in 0..ng {
            let phi = std::f64::consts::TAU * j as f64 / ng as f64;
            let (c, s) = (phi.cos(), phi.sin());
            let x3 = sin_a * c;
            rec.eval_with_derivative_to(x3, p, &mut q[j * nt..(j + 1) * nt], &mut dq[j * nt..(j + 1) * nt]);
            let (up, dn) = (cos_a * c + i * s, cos_a * c - i * s);
            let (mut a, mut b) = (ONE, ONE);
            for m in 0..=p {
                wp[j * (p + 1) + m] = a;
                wm[j * (p + 1) + m] = b;
                a *= up;
                b *= dn;
            }
        }
        let mut q0 = vec![0.0; nt];
        let mut dq0 = vec![0.0; nt];
        rec.eval_with_derivative_to(0.0f64, p, &mut q0, &mut dq0);
        let b0 = dq0.iter().map(|v| -v).collect();
        RotationPlan { p, cos_a, sin_a, q, dq, wp, wm, a0: q0, b0 }
    }

    /// Coefficients of `G(y) = F(R_y(α) y)`, shells `0..=p_use` (`p_use <= p`).
    pub fn apply(&self, c: &[C64], p_use: usize) -> Vec<C64> {
        assert!(p_use <= self.p);
        let p = self.p;
        let ng = 2 * p + 1;
        let nt = tri(p, p) + 1;
        let fft = forward_fft(ng);
        let mut out = vec![ZERO; ncoef(p_use)];
        let mut f = vec![ZERO; ng];
        let mut g = vec![ZERO; ng];
        let mut scratch = vec![ZERO; fft.get_inplace_scratch_len()];
        let (ca, sa) = (self.cos_a, self.sin_a);
        for n in 0..=p_use {
            let ni = n as i64;
            for j in 0..ng {
                let qj = &self.q[j * nt..];
                let dqj = &self.dq[j * nt..];
                let wp = &self.wp[j * (p + 1)..];
                let wm = &self.wm[j * (p + 1)..];
                let (mut fv, mut gv) = (ZERO, ZERO);
                for m in -ni..=ni {
                    let ma = m.unsigned_abs() as usize;
                    let w = if m >= 0 { wp } else { wm };
                    let (qq, dd) = (qj[tri(n, ma)], dqj[tri(n, ma)]);
                    let cm = c[idx(n, m)];
                    fv += cm * qq * w[ma];
                    let mut dv = -ca * dd * w[ma];
                    if ma > 0 {
                        dv += qq * ma as f64 * w[ma - 1] * sa;
                    }
                    gv += cm * dv;
                }
                f[j] = fv;
                g[j] = gv;
            }
            fft.process_with_scratch(&mut f, &mut scratch);
            fft.process_with_scratch(&mut g, &mut scratch);
            for m in -ni..=ni {
                let k = m.rem_euclid(ng as i64) as usize;
                let ma = m.unsigned_abs() as usize;
                let (a, b) = (self.a0[tri(n, ma)], self.b0[tri(n, ma)]);
                out[idx(n, m)] = (a * f[k] + b * g[k]) / ((a * a + b * b) * ng as f64);
            }
        }
        out
    }
}

/// `y`-rotation of coefficients through the FFT projection.
pub fn rot_y_fft(c: &[C64], p: usize, cos_a: C64, sin_a: C64) -> Vec<C64> {
    RotationPlan::new(p, cos_a, sin_a).apply(c, p)
}

/// Real matrices of the quarter turns `R_y(±π/2)`, one `(2n+1)^2` block per
/// degree (row `m'`, column `m`).
struct QuarterTurns {
    nmax: usize,
    plus: Vec<f64>,
    minus: Vec<f64>,
    offs: Vec<usize>,
}

impl QuarterTurns {
    fn build(nmax: usize) -> Self {
        let mut offs = Vec::with_capacity(nmax + 2);
        offs.push(0);
        for n in 0..=nmax {
            offs.push(offs[n] + (2 * n + 1) * (2 * n + 1));
        }
        let mut blocks = [vec![0.0; offs[nmax + 1]], vec![0.0; offs[nmax + 1]]];
        for (sign, store) in [1.0, -1.0].into_iter().zip(blocks.iter_mut()) {
            // a unit coefficient in column m of every degree at once
            let plan = RotationPlan::new(nmax, ZERO, C64::new(sign, 0.0));
            for m in -(nmax as i64)..=nmax as i64 {
                let lo = m.unsigned_abs() as usize;
                let mut e = vec![ZERO; ncoef(nmax)];
                for n in lo..=nmax {
                    e[idx(n, m)] = ONE;
                }
                let col = plan.apply(&e, nmax);
                for n in lo..=nmax {
                    let (w, ni) = (2 * n + 1, n as i64);
                    for mp in -ni..=ni {
                        store[offs[n] + (mp + ni) as usize * w + (m + ni) as usize] = col[idx(n, mp)].re;
                    }
                }
            }
        }
        let [plus, minus] = blocks;
        QuarterTurns { nmax, plus, minus, offs }
    }

    fn apply(&self, plus: bool, c: &[C64], p: usize) -> Vec<C64> {
        let blocks = if plus { &self.plus } else { &self.minus };
        let mut out = vec![ZERO; ncoef(p)];
        for n in 0..=p {
            let w = 2 * n + 1;
            let b = &blocks[self.offs[n]..self.offs[n + 1]];
            let cin = &c[n * n..n * n + w];
            for (r, o) in out[n * n..n * n + w].iter_mut().enumerate() {
                let row = &b[r * w..(r + 1) * w];
                let (mut re, mut im) = (0.0, 0.0);
                for (a, v) in row.iter().zip(cin) {
                    re += a * v.re;
                    im += a * v.im;
                }
                *o = C64::new(re, im);
            }
        }
        out
    }
}

static QUARTER_TURNS: RwLock<Option<Arc<QuarterTurns>>> = RwLock::new(None);

fn quarter_turns(p: usize) -> Arc<QuarterTurns> {
    if let Some(q) = QUARTER_TURNS.read().unwrap().as_ref() {
        if q.nmax >= p {
            return q.clone();
        }
    }
    let mut slot = QUARTER_TURNS.write().unwrap();
    if let Some(q) = slot.as_ref() {
        if q.nmax >= p {
            return q.clone();
        }
    }
    let q = Arc::new(QuarterTurns::build(p.div_ceil(16) * 16));
    *slot = Some(q.clone());
    q
}

/// `R_y(π/2)` (`plus`) or `R_y(-π/2)`.
pub fn rot_y_quarter(c: &[C64], p: usize, plus: bool) -> Vec<C64> {
    quarter_turns(p).apply(plus, c, p)
}

/// `y`-rotation by a complex angle, written as
/// `R_y(α) = R_z(π/2) R_y(π/2) R_z(α) R_y(-π/2) R_z(-π/2)` so only the
/// diagonal `R_z(α)` depends on `α`; the quarter turns are cached real
/// matrices. `O(P^3)` with a small constant.
pub fn rot_y_coeffs(c: &[C64], p: usize, cos_a: C64, sin_a: C64) -> Vec<C64> {
    let qt = quarter_turns(p);
    let mut x = c[..ncoef(p)].to_vec();
    rot_z_coeffs(&mut x, p, ZERO, ONE);
    let mut x = qt.apply(true, &x, p);
    rot_z_coeffs(&mut x, p, cos_a, sin_a);
    let mut x = qt.apply(false, &x, p);
    rot_z_coeffs(&mut x, p, ZERO, -ONE);
    x
}

/// Reference `y`-rotation by explicit Wigner-d matrices (`O(P^4)`).
///
/// Our harmonics satisfy `Y_n^{-m} = conj(Y_n^m)` on the real sphere rather
/// than carrying `(-1)^m`, hence the sign `ε_m` on negative orders.
pub fn rot_y_wigner(c: &[C64], p: usize, alpha: C64) -> Vec<C64> {
    let eps = |k: i64| if k < 0 && k % 2 != 0 { -1.0 } else { 1.0 };
    let mut out = vec![ZERO; ncoef(p)];
    for n in 0..=p {
        let d = WignerDTable::new(n, alpha);
        let ni = n as i64;
        for mp in -ni..=ni {
            out[idx(n, mp)] = (-ni..=ni).map(|m| eps(m) * eps(mp) * d.get(mp, m) * c[idx(n, m)]).sum();
        }
    }
    out
}

macro_rules! rot_wrappers {
    ($t:ty, $z:ident, $y:ident) => {
        pub fn $z(e: &$t, cos_b: C64, sin_b: C64) -> $t {
            let mut out = e.clone();
            rot_z_coeffs(&mut out.coeffs, e.p, cos_b, sin_b);
            out
        }

        pub fn $y(e: &$t, cos_a: C64, sin_a: C64) -> $t {
            let mut out = e.clone();
            out.coeffs = rot_y_fft(&e.coeffs, e.p, cos_a, sin_a);
            out
        }
    };
}

rot_wrappers!(Mpole3, rot_z_mpole, rot_y_fft_mpole);
rot_wrappers!(Local3, rot_z_local, rot_y_fft_local);
