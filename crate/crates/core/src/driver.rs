//! The adaptive FMM: tree, per-level term counts, and the eight passes.
//!
//! Every pass pulls into the box it writes (a box's expansion has exactly one
//! writer) and sums its inputs in list order, so results do not depend on the
//! number of worker threads.

use crate::cgeom::{admissible_k, estimate_lipschitz, CVec, CVec2, CVec3, C64, K1_THRESHOLD_2D, K1_THRESHOLD_3D};
use crate::error::{FmmError, Result};
use crate::fmm2d::{
    l2l_helm2_add, l2l_lap2_add, l2p_helm2, l2p_lap2, m2l_helm2_add, m2l_lap2_add, m2m_helm2_add, m2m_lap2_add, m2p_helm2, m2p_lap2, p2l_helm2_add,
    p2l_lap2_add, p2m_helm2_add, p2m_lap2_add, LocalHelm2, LocalLap2, MpoleHelm2, MpoleLap2,
};
use crate::fmm3d::{
    l2l_helm3_pas, l2l_lap3_pas, l2p_helm3, l2p_lap3, m2l_helm3_pas, m2l_lap3_pas, m2m_helm3_pas, m2m_lap3_pas, m2p_helm3, m2p_lap3, p2l_helm3_add,
    p2l_lap3_add, p2m_helm3_add, p2m_lap3_add, Kernel3, Local3, Mpole3,
};
use crate::oracle::Kernel;
use crate::specfun::{bessel_j_seq, hankel_h1_seq, sph_seq, SphKind};
use crate::tree::{InteractionLists, Tree, TreeConfig};
use rayon::prelude::*;
use std::f64::consts::PI;
/// Wall clock for the report. The browser target has no monotonic clock
/// in std, so timings read zero there.
#[derive(Clone, Copy)]
struct Instant(#[cfg(not(target_arch = "wasm32"))] std::time::Instant);

impl Instant {
    fn now() -> Self {
        #[cfg(not(target_arch = "wasm32"))]
        return Instant(std::time::Instant::now());
        #[cfg(target_arch = "wasm32")]
        Instant()
    }

    fn elapsed_secs(&self) -> f64 {
        #[cfg(not(target_arch = "wasm32"))]
        return self.0.elapsed().as_secs_f64();
        #[cfg(target_arch = "wasm32")]
        0.0
    }
}

/// Largest expansion order the driver will use at any level.
pub const P_CAP: usize = 64;

/// Wavelengths across the root box beyond which Helmholtz M2L needs `k = 2`.
pub const HELM3D_K2_WAVELENGTHS: f64 = 25.0;
pub const HELM2D_K2_WAVELENGTHS: f64 = 150.0;

#[derive(Debug, Clone, PartialEq)]
pub struct FmmConfig {
    pub kernel: Kernel,
    pub eps: f64,
    pub k_override: Option<u8>,
    pub lipschitz_hint: Option<f64>,
    /// Accumulation is always ordered; the flag is kept for callers that
    /// record it alongside results.
    pub deterministic: bool,
    /// Leaf capacity; the dimension default when absent.
    pub leaf_size: Option<usize>,
}

impl FmmConfig {
    pub fn new(kernel: Kernel, eps: f64) -> Self {
        FmmConfig { kernel, eps, k_override: None, lipschitz_hint: None, deterministic: true, leaf_size: None }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1e-14..=1e-1).contains(&self.eps) {
            return Err(FmmError::InvalidInput(format!("tolerance {} outside [1e-14, 1e-1]", self.eps)));
        }
        if let Some(k) = self.kernel.kappa() {
            if !(k > 0.0 && k.is_finite()) {
                return Err(FmmError::InvalidInput(format!("wavenumber {k} must be positive")));
            }
        }
        if let Some(k) = self.k_override {
            if !(1..=2).contains(&k) {
                return Err(FmmError::InvalidInput(format!("k = {k}; only 1 and 2 are supported")));
            }
        }
        if let Some(l) = self.lipschitz_hint {
            if !(l >= 0.0) {
                return Err(FmmError::InvalidInput(format!("Lipschitz hint {l}")));
            }
        }
        if self.leaf_size == Some(0) {
            return Err(FmmError::InvalidInput("leaf size must be positive".into()));
        }
        Ok(())
    }
}

/// Expansion order per tree level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermPlan {
    pub k: u8,
    pub p: Vec<usize>,
    /// Coarsest level whose expansions are used; orders above it are
    /// informational and may be capped.
    pub first_active: usize,
}

impl TermPlan {
    pub fn max_p(&self) -> usize {
        self.p[self.first_active.min(self.p.len() - 1)..].iter().copied().max().unwrap_or(0)
    }
}

/// Size of the truncation term of order `n` for boxes of width `w`:
/// `(r/R)^n` for Laplace, `|H_n(κR) J_n(κr)|` in 2-D and
/// `(2n+1) κR |h_n(κR) j_n(κr)|` in 3-D, with `R = (k + 1/2) w` and `r` the
/// half-diagonal. The 3-D Helmholtz factor makes the low-frequency limit
/// agree with Laplace. Returns values for orders `0..=nmax`.
pub fn term_sizes(kernel: Kernel, k: u8, w: f64, nmax: usize) -> Result<Vec<f64>> {
    let dim = kernel.dim();
    let big_r = (0.5 + k as f64) * w;
    let r = (dim as f64).sqrt() / 2.0 * w;
    let z = |x: f64| C64::new(x, 0.0);
    Ok(match kernel {
        Kernel::Lap2d | Kernel::Lap3d => (0..=nmax).map(|n| (r / big_r).powi(n as i32)).collect(),
        Kernel::Helm2d(kappa) => {
            let h = hankel_h1_seq(z(kappa * big_r), nmax)?;
            let j = bessel_j_seq(z(kappa * r), nmax)?;
            (0..=nmax).map(|n| (h.values[n] * j.values[n]).norm()).collect()
        }
        Kernel::Helm3d(kappa) => {
            let h = sph_seq(SphKind::H, z(kappa * big_r), nmax)?;
            let j = sph_seq(SphKind::J, z(kappa * r), nmax)?;
            (0..=nmax).map(|n| (2 * n + 1) as f64 * kappa * big_r * (h.values[n] * j.values[n]).norm()).collect()
        }
    })
}

/// Smallest order past which every term stays below `eps` for width `w`.
pub fn terms_for_width(kernel: Kernel, k: u8, eps: f64, w: f64) -> Result<usize> {
    let dim = kernel.dim() as f64;
    let ratio = (dim.sqrt() / 2.0) / (0.5 + k as f64);
    // below the turning point n ≈ κR the Bessel products oscillate, so the
    // scan starts past it and must see the tail settle
    let turning = kernel.kappa().map_or(0.0, |kappa| kappa * (0.5 + k as f64) * w);
    let lap_guess = (eps.ln() / ratio.ln()).ceil().max(1.0) as usize;
    let mut nmax = lap_guess + turning.ceil() as usize + 8;
    loop {
        let t = term_sizes(kernel, k, w, nmax)?;
        let last_big = t.iter().rposition(|&v| !(v <= eps));
        let n = last_big.map_or(0, |i| i + 1);
        if n + 4 <= nmax {
            return Ok(n.max(1));
        }
        if nmax > 4 * P_CAP {
            return Ok(n);
        }
        nmax *= 2;
    }
}

/// Orders for levels `0..=depth` of a tree with root width `root_width`.
/// Levels at or below `first_active` that need more than [`P_CAP`] raise
/// `TermLimitExceeded`.
pub fn plan_terms_for(kernel: Kernel, eps: f64, k: u8, root_width: f64, depth: usize, first_active: usize) -> Result<TermPlan> {
    let mut p = Vec::with_capacity(depth + 1);
    for level in 0..=depth {
        let w = root_width / (1u64 << level) as f64;
        let n = match kernel {
            // scale free: compute once
            Kernel::Lap2d | Kernel::Lap3d if level > 0 => p[0],
            _ => terms_for_width(kernel, k, eps, w)?,
        };
        if n > P_CAP && level >= first_active {
            return Err(FmmError::TermLimitExceeded { level, needed: n, cap: P_CAP });
        }
        p.push(n.min(P_CAP));
    }
    Ok(TermPlan { k, p, first_active })
}

pub fn plan_terms<const D: usize>(cfg: &FmmConfig, tree: &Tree<D>, lists: &InteractionLists) -> Result<TermPlan> {
    let first = first_active_level(tree, lists).unwrap_or(tree.depth() + 1);
    plan_terms_for(cfg.kernel, cfg.eps, tree.cfg.k, tree.root_width, tree.depth(), first)
}

/// Coarsest level holding a box that takes part in a far-field interaction.
fn first_active_level<const D: usize>(tree: &Tree<D>, lists: &InteractionLists) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut see = |l: usize| best = Some(best.map_or(l, |b: usize| b.min(l)));
    for b in 0..tree.boxes.len() {
        if !lists.list2[b].is_empty() || !lists.list4[b].is_empty() {
            see(tree.boxes[b].level);
        }
        for &a in &lists.list3[b] {
            see(tree.boxes[a].level);
        }
    }
    best
}

/// Separation parameter: the Lipschitz rule, raised to `k = 2` for large
/// Helmholtz problems, unless overridden (an override must itself be
/// admissible).
pub fn choose_k(cfg: &FmmConfig, lipschitz: f64, root_width: f64) -> Result<u8> {
    let dim = cfg.kernel.dim();
    let needed = admissible_k(lipschitz, dim)?;
    if let Some(k) = cfg.k_override {
        if k < needed {
            let bound = if dim == 2 { K1_THRESHOLD_2D } else { K1_THRESHOLD_3D };
            return Err(FmmError::LipschitzTooLarge { lipschitz, bound, dim });
        }
        return Ok(k);
    }
    let wavelengths = cfg.kernel.kappa().map_or(0.0, |kappa| kappa * root_width / (2.0 * PI));
    let cancel = match cfg.kernel {
        Kernel::Helm3d(_) => wavelengths > HELM3D_K2_WAVELENGTHS,
        Kernel::Helm2d(_) => wavelengths > HELM2D_K2_WAVELENGTHS,
        _ => false,
    };
    Ok(if cancel { 2 } else { needed })
}

pub const STEP_NAMES: [&str; 8] = ["p2m", "m2m", "list1", "m2l", "m2p", "p2l", "l2l", "l2p"];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FmmReport {
    pub kernel: String,
    pub n_sources: usize,
    pub n_targets: usize,
    pub lipschitz: f64,
    pub k: u8,
    pub eps: f64,
    pub setup_seconds: f64,
    /// Wall time of steps (1) to (8).
    pub step_seconds: [f64; 8],
    pub n_boxes: usize,
    pub n_leaves: usize,
    pub depth: usize,
    pub root_width: f64,
    pub p_per_level: Vec<usize>,
    pub first_active_level: usize,
    pub peak_coefficient: f64,
}

impl FmmReport {
    pub fn total_seconds(&self) -> f64 {
        self.setup_seconds + self.step_seconds.iter().sum::<f64>()
    }

    pub fn p_max(&self) -> usize {
        self.p_per_level.get(self.first_active_level..).and_then(|s| s.iter().copied().max()).unwrap_or(0)
    }

    /// `key=value` pairs in a fixed order.
    pub fn key_values(&self) -> Vec<(String, String)> {
        let mut kv = vec![
            ("kernel".to_string(), self.kernel.clone()),
            ("n_sources".into(), self.n_sources.to_string()),
            ("n_targets".into(), self.n_targets.to_string()),
            ("eps".into(), format!("{:e}", self.eps)),
            ("lipschitz".into(), format!("{:.6}", self.lipschitz)),
            ("k".into(), self.k.to_string()),
            ("boxes".into(), self.n_boxes.to_string()),
            ("leaves".into(), self.n_leaves.to_string()),
            ("depth".into(), self.depth.to_string()),
            ("root_width".into(), format!("{:.6}", self.root_width)),
            ("first_active_level".into(), self.first_active_level.to_string()),
            ("p_per_level".into(), self.p_per_level.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")),
            ("peak_coefficient".into(), format!("{:e}", self.peak_coefficient)),
            ("t_setup".into(), format!("{:.6}", self.setup_seconds)),
        ];
        for (name, t) in STEP_NAMES.iter().zip(self.step_seconds) {
            kv.push((format!("t_{name}"), format!("{t:.6}")));
        }
        kv.push(("t_total".into(), format!("{:.6}", self.total_seconds())));
        kv
    }
}

/// Expansion kernels plugged into the common passes. Every `*_add` writes
/// into an expansion whose centre, order and scale are already set.
trait Ops<const D: usize>: Sync {
    type M: Send + Sync;
    type L: Send + Sync;
    fn new_m(&self, c: CVec<D>, p: usize, w: f64) -> Self::M;
    fn new_l(&self, c: CVec<D>, p: usize, w: f64) -> Self::L;
    fn p2m(&self, m: &mut Self::M, y: &[CVec<D>], q: &[C64]) -> Result<()>;
    fn m2m(&self, child: &Self::M, parent: &mut Self::M, w_parent: f64) -> Result<()>;
    fn m2l(&self, src: &Self::M, dst: &mut Self::L, w: f64) -> Result<()>;
    fn l2l(&self, parent: &Self::L, child: &mut Self::L, w_child: f64) -> Result<()>;
    fn p2l(&self, l: &mut Self::L, y: &[CVec<D>], q: &[C64]) -> Result<()>;
    fn m2p(&self, m: &Self::M, x: CVec<D>) -> Result<C64>;
    fn l2p(&self, l: &Self::L, x: CVec<D>) -> Result<C64>;
    fn peak_m(&self, m: &Self::M) -> f64;
    fn peak_l(&self, l: &Self::L) -> f64;
}

struct Lap2;
struct Helm2(f64);
struct Lap3;
struct Helm3 {
    kappa: f64,
    k: u8,
}

impl Ops<2> for Lap2 {
    type M = MpoleLap2;
    type L = LocalLap2;
    fn new_m(&self, c: CVec2, p: usize, w: f64) -> MpoleLap2 {
        MpoleLap2::zero(c, p, w)
    }
    fn new_l(&self, c: CVec2, p: usize, w: f64) -> LocalLap2 {
        LocalLap2::zero(c, p, w)
    }
    fn p2m(&self, m: &mut MpoleLap2, y: &[CVec2], q: &[C64]) -> Result<()> {
        p2m_lap2_add(m, y, q)
    }
    fn m2m(&self, child: &MpoleLap2, parent: &mut MpoleLap2, _: f64) -> Result<()> {
        m2m_lap2_add(child, parent);
        Ok(())
    }
    fn m2l(&self, src: &MpoleLap2, dst: &mut LocalLap2, _: f64) -> Result<()> {
        m2l_lap2_add(src, dst)
    }
    fn l2l(&self, parent: &LocalLap2, child: &mut LocalLap2, _: f64) -> Result<()> {
        l2l_lap2_add(parent, child);
        Ok(())
    }
    fn p2l(&self, l: &mut LocalLap2, y: &[CVec2], q: &[C64]) -> Result<()> {
        p2l_lap2_add(l, y, q)
    }
    fn m2p(&self, m: &MpoleLap2, x: CVec2) -> Result<C64> {
        m2p_lap2(m, x)
    }
    fn l2p(&self, l: &LocalLap2, x: CVec2) -> Result<C64> {
        Ok(l2p_lap2(l, x))
    }
    fn peak_m(&self, m: &MpoleLap2) -> f64 {
        m.peak()
    }
    fn peak_l(&self, l: &LocalLap2) -> f64 {
        l.peak()
    }
}

impl Ops<2> for Helm2 {
    type M = MpoleHelm2;
    type L = LocalHelm2;
    fn new_m(&self, c: CVec2, p: usize, _: f64) -> MpoleHelm2 {
        MpoleHelm2::zero(c, p, self.0)
    }
    fn new_l(&self, c: CVec2, p: usize, _: f64) -> LocalHelm2 {
        LocalHelm2::zero(c, p, self.0)
    }
    fn p2m(&self, m: &mut MpoleHelm2, y: &[CVec2], q: &[C64]) -> Result<()> {
        p2m_helm2_add(m, y, q)
    }
    fn m2m(&self, child: &MpoleHelm2, parent: &mut MpoleHelm2, _: f64) -> Result<()> {
        m2m_helm2_add(child, parent)
    }
    fn m2l(&self, src: &MpoleHelm2, dst: &mut LocalHelm2, _: f64) -> Result<()> {
        m2l_helm2_add(src, dst)
    }
    fn l2l(&self, parent: &LocalHelm2, child: &mut LocalHelm2, _: f64) -> Result<()> {
        l2l_helm2_add(parent, child)
    }
    fn p2l(&self, l: &mut LocalHelm2, y: &[CVec2], q: &[C64]) -> Result<()> {
        p2l_helm2_add(l, y, q)
    }
    fn m2p(&self, m: &MpoleHelm2, x: CVec2) -> Result<C64> {
        m2p_helm2(m, x)
    }
    fn l2p(&self, l: &LocalHelm2, x: CVec2) -> Result<C64> {
        l2p_helm2(l, x)
    }
    fn peak_m(&self, m: &MpoleHelm2) -> f64 {
        m.peak()
    }
    fn peak_l(&self, l: &LocalHelm2) -> f64 {
        l.peak()
    }
}

fn add_into(dst: &mut [C64], src: &[C64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += s;
    }
}

impl Ops<3> for Lap3 {
    type M = Mpole3;
    type L = Local3;
    fn new_m(&self, c: CVec3, p: usize, w: f64) -> Mpole3 {
        Mpole3::zero(c, p, Kernel3::Laplace, w)
    }
    fn new_l(&self, c: CVec3, p: usize, w: f64) -> Local3 {
        Local3::zero(c, p, Kernel3::Laplace, w)
    }
    fn p2m(&self, m: &mut Mpole3, y: &[CVec3], q: &[C64]) -> Result<()> {
        p2m_lap3_add(m, y, q)
    }
    fn m2m(&self, child: &Mpole3, parent: &mut Mpole3, _: f64) -> Result<()> {
        let t = m2m_lap3_pas(child, parent.center, parent.p, parent.scale)?;
        add_into(&mut parent.coeffs, &t.coeffs);
        Ok(())
    }
    fn m2l(&self, src: &Mpole3, dst: &mut Local3, _: f64) -> Result<()> {
        let t = m2l_lap3_pas(src, dst.center, dst.p, dst.scale)?;
        add_into(&mut dst.coeffs, &t.coeffs);
        Ok(())
    }
    fn l2l(&self, parent: &Local3, child: &mut Local3, _: f64) -> Result<()> {
        let t = l2l_lap3_pas(parent, child.center, child.scale)?;
        add_into(&mut child.coeffs, &t.coeffs);
        Ok(())
    }
    fn p2l(&self, l: &mut Local3, y: &[CVec3], q: &[C64]) -> Result<()> {
        p2l_lap3_add(l, y, q)
    }
    fn m2p(&self, m: &Mpole3, x: CVec3) -> Result<C64> {
        m2p_lap3(m, x)
    }
    fn l2p(&self, l: &Local3, x: CVec3) -> Result<C64> {
        l2p_lap3(l, x)
    }
    fn peak_m(&self, m: &Mpole3) -> f64 {
        m.peak()
    }
    fn peak_l(&self, l: &Local3) -> f64 {
        l.peak()
    }
}

const HALF_DIAG_3D: f64 = 0.866_025_403_784_438_6;

// Projection radii: where each translated expansion is later used.
impl Ops<3> for Helm3 {
    type M = Mpole3;
    type L = Local3;
    fn new_m(&self, c: CVec3, p: usize, _: f64) -> Mpole3 {
        Mpole3::zero(c, p, Kernel3::Helmholtz(self.kappa), 1.0)
    }
    fn new_l(&self, c: CVec3, p: usize, _: f64) -> Local3 {
        Local3::zero(c, p, Kernel3::Helmholtz(self.kappa), 1.0)
    }
    fn p2m(&self, m: &mut Mpole3, y: &[CVec3], q: &[C64]) -> Result<()> {
        p2m_helm3_add(m, y, q)
    }
    fn m2m(&self, child: &Mpole3, parent: &mut Mpole3, w_parent: f64) -> Result<()> {
        let t = m2m_helm3_pas(child, parent.center, parent.p, (0.5 + self.k as f64) * w_parent)?;
        add_into(&mut parent.coeffs, &t.coeffs);
        Ok(())
    }
    fn m2l(&self, src: &Mpole3, dst: &mut Local3, w: f64) -> Result<()> {
        let t = m2l_helm3_pas(src, dst.center, dst.p, HALF_DIAG_3D * w)?;
        add_into(&mut dst.coeffs, &t.coeffs);
        Ok(())
    }
    fn l2l(&self, parent: &Local3, child: &mut Local3, w_child: f64) -> Result<()> {
        let t = l2l_helm3_pas(parent, child.center, child.p, HALF_DIAG_3D * w_child)?;
        add_into(&mut child.coeffs, &t.coeffs);
        Ok(())
    }
    fn p2l(&self, l: &mut Local3, y: &[CVec3], q: &[C64]) -> Result<()> {
        p2l_helm3_add(l, y, q)
    }
    fn m2p(&self, m: &Mpole3, x: CVec3) -> Result<C64> {
        m2p_helm3(m, x)
    }
    fn l2p(&self, l: &Local3, x: CVec3) -> Result<C64> {
        l2p_helm3(l, x)
    }
    fn peak_m(&self, m: &Mpole3) -> f64 {
        m.peak()
    }
    fn peak_l(&self, l: &Local3) -> f64 {
        l.peak()
    }
}

/// Sources and targets in tree order, with per-box ranges.
struct Layout<const D: usize> {
    alias: bool,
    src: Vec<CVec<D>>,
    q: Vec<C64>,
    src_id: Vec<usize>,
    tgt: Vec<CVec<D>>,
    tgt_id: Vec<usize>,
    src_rng: Vec<(usize, usize)>,
    tgt_rng: Vec<(usize, usize)>,
}

impl<const D: usize> Layout<D> {
    fn new(tree: &Tree<D>, sources: &[CVec<D>], charges: &[C64], targets: &[CVec<D>], alias: bool) -> Self {
        let ns = sources.len();
        let fwd = &tree.perm.forward;
        let (mut src, mut q, mut src_id, mut tgt, mut tgt_id) = (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
        // prefix counts over tree positions
        let mut ps = Vec::with_capacity(fwd.len() + 1);
        let mut pt = Vec::with_capacity(fwd.len() + 1);
        ps.push(0);
        pt.push(0);
        for &u in fwd {
            if u < ns {
                src.push(sources[u]);
                q.push(charges[u]);
                src_id.push(u);
            }
            if alias && u < ns {
                tgt.push(targets[u]);
                tgt_id.push(u);
            } else if !alias && u >= ns {
                tgt.push(targets[u - ns]);
                tgt_id.push(u - ns);
            }
            ps.push(src.len());
            pt.push(tgt.len());
        }
        let src_rng = tree.boxes.iter().map(|b| (ps[b.start], ps[b.end])).collect();
        let tgt_rng = tree.boxes.iter().map(|b| (pt[b.start], pt[b.end])).collect();
        Layout { alias, src, q, src_id, tgt, tgt_id, src_rng, tgt_rng }
    }

    fn has_src(&self, b: usize) -> bool {
        self.src_rng[b].1 > self.src_rng[b].0
    }

    fn has_tgt(&self, b: usize) -> bool {
        self.tgt_rng[b].1 > self.tgt_rng[b].0
    }

    fn sources(&self, b: usize) -> (&[CVec<D>], &[C64]) {
        let (s, e) = self.src_rng[b];
        (&self.src[s..e], &self.q[s..e])
    }
}

fn timed<T>(slot: &mut f64, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let t = Instant::now();
    let r = f();
    *slot = t.elapsed_secs();
    r
}

fn collect_some<T: Send>(n: usize, items: Vec<(usize, T)>) -> Vec<Option<T>> {
    let mut out: Vec<Option<T>> = (0..n).map(|_| None).collect();
    for (b, v) in items {
        out[b] = Some(v);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn run<const D: usize, O: Ops<D>>(ops: &O, kernel: Kernel, tree: &Tree<D>, lists: &InteractionLists, plan: &TermPlan, lay: &Layout<D>, report: &mut FmmReport) -> Result<Vec<C64>> {
    let nb = tree.boxes.len();
    let boxes = &tree.boxes;
    let levels = tree.levels();
    let active = plan.first_active;
    let leaves: Vec<usize> = tree.leaves().map(|b| b.id).collect();
    let pof = |b: usize| plan.p[boxes[b].level];
    let mut u = vec![C64::new(0.0, 0.0); lay.tgt.len()];
    let mut steps = [0.0; 8];

    // (1) leaf multipoles
    let mut mp: Vec<Option<O::M>> = timed(&mut steps[0], || {
        let items: Result<Vec<(usize, O::M)>> = leaves
            .par_iter()
            .filter(|&&b| boxes[b].level >= active && lay.has_src(b))
            .map(|&b| {
                let mut m = ops.new_m(boxes[b].ccenter, pof(b), boxes[b].width);
                let (y, q) = lay.sources(b);
                ops.p2m(&mut m, y, q)?;
                Ok((b, m))
            })
            .collect();
        Ok(collect_some(nb, items?))
    })?;

    // (2) upward pass
    timed(&mut steps[1], || {
        for level in (active..levels.len()).rev() {
            let items: Result<Vec<(usize, O::M)>> = levels[level]
                .par_iter()
                .filter(|&&b| !boxes[b].is_leaf() && lay.has_src(b))
                .map(|&b| {
                    let mut m = ops.new_m(boxes[b].ccenter, pof(b), boxes[b].width);
                    for &c in &boxes[b].children {
                        if let Some(cm) = &mp[c] {
                            ops.m2m(cm, &mut m, boxes[b].width)?;
                        }
                    }
                    Ok((b, m))
                })
                .collect();
            for (b, m) in items? {
                mp[b] = Some(m);
            }
        }
        Ok(())
    })?;

    let tgt_leaves: Vec<usize> = leaves.iter().copied().filter(|&b| lay.has_tgt(b)).collect();

    // (3) near field
    let near: Vec<Vec<C64>> = timed(&mut steps[2], || {
        tgt_leaves
            .par_iter()
            .map(|&b| {
                let (ts, te) = lay.tgt_rng[b];
                let mut acc = vec![C64::new(0.0, 0.0); te - ts];
                for &a in &lists.list1[b] {
                    let (ss, se) = lay.src_rng[a];
                    for (i, slot) in acc.iter_mut().enumerate() {
                        let x = &lay.tgt[ts + i];
                        let xi = lay.tgt_id[ts + i];
                        let mut s = C64::new(0.0, 0.0);
                        for j in ss..se {
                            let y = &lay.src[j];
                            if x == y {
                                if lay.alias && lay.src_id[j] == xi {
                                    continue;
                                }
                                return Err(FmmError::CoincidentPoints(lay.src_id[j], xi));
                            }
                            s += kernel.value(x, y)? * lay.q[j];
                        }
                        *slot += s;
                    }
                }
                Ok(acc)
            })
            .collect()
    })?;
    scatter(&mut u, &tgt_leaves, lay, near);

    // (4) far field into locals
    let mut lo: Vec<Option<O::L>> = timed(&mut steps[3], || {
        let items: Result<Vec<(usize, O::L)>> = (0..nb)
            .into_par_iter()
            .filter(|&b| lay.has_tgt(b) && lists.list2[b].iter().any(|&a| mp[a].is_some()))
            .map(|b| {
                let mut l = ops.new_l(boxes[b].ccenter, pof(b), boxes[b].width);
                for &a in &lists.list2[b] {
                    if let Some(m) = &mp[a] {
                        ops.m2l(m, &mut l, boxes[b].width)?;
                    }
                }
                Ok((b, l))
            })
            .collect();
        Ok(collect_some(nb, items?))
    })?;

    // (5) multipoles of list-3 boxes at targets
    let far3: Vec<Vec<C64>> = timed(&mut steps[4], || {
        tgt_leaves
            .par_iter()
            .map(|&b| {
                let (ts, te) = lay.tgt_rng[b];
                let mut acc = vec![C64::new(0.0, 0.0); te - ts];
                for &a in &lists.list3[b] {
                    if let Some(m) = &mp[a] {
                        for (i, slot) in acc.iter_mut().enumerate() {
                            *slot += ops.m2p(m, lay.tgt[ts + i])?;
                        }
                    }
                }
                Ok(acc)
            })
            .collect()
    })?;
    scatter(&mut u, &tgt_leaves, lay, far3);

    // (6) list-4 sources into locals
    timed(&mut steps[5], || {
        lo.par_iter_mut().enumerate().try_for_each(|(b, slot)| {
            if !lay.has_tgt(b) || !lists.list4[b].iter().any(|&c| lay.has_src(c)) {
                return Ok(());
            }
            let l = slot.get_or_insert_with(|| ops.new_l(boxes[b].ccenter, pof(b), boxes[b].width));
            for &c in &lists.list4[b] {
                let (y, q) = lay.sources(c);
                if !y.is_empty() {
                    ops.p2l(l, y, q)?;
                }
            }
            Ok(())
        })
    })?;

    // (7) downward pass
    timed(&mut steps[6], || {
        for level in active.max(1)..levels.len() {
            let ids: Vec<usize> = levels[level].iter().copied().filter(|&b| lay.has_tgt(b) && lo[boxes[b].parent.unwrap()].is_some()).collect();
            let mut mine: Vec<(usize, Option<O::L>)> = ids.into_iter().map(|b| (b, lo[b].take())).collect();
            mine.par_iter_mut().try_for_each(|(b, slot)| {
                let b = *b;
                let parent = lo[boxes[b].parent.unwrap()].as_ref().unwrap();
                let l = slot.get_or_insert_with(|| ops.new_l(boxes[b].ccenter, pof(b), boxes[b].width));
                ops.l2l(parent, l, boxes[b].width)
            })?;
            for (b, l) in mine {
                lo[b] = l;
            }
        }
        Ok(())
    })?;

    // (8) locals at targets
    let far: Vec<Vec<C64>> = timed(&mut steps[7], || {
        tgt_leaves
            .par_iter()
            .map(|&b| {
                let (ts, te) = lay.tgt_rng[b];
                match &lo[b] {
                    Some(l) => (ts..te).map(|i| ops.l2p(l, lay.tgt[i])).collect(),
                    None => Ok(vec![C64::new(0.0, 0.0); te - ts]),
                }
            })
            .collect()
    })?;
    scatter(&mut u, &tgt_leaves, lay, far);

    let peak_m = mp.iter().flatten().map(|m| ops.peak_m(m)).fold(0.0, f64::max);
    let peak_l = lo.iter().flatten().map(|l| ops.peak_l(l)).fold(0.0, f64::max);
    report.peak_coefficient = peak_m.max(peak_l);
    report.step_seconds = steps;
    if !report.peak_coefficient.is_finite() || u.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(FmmError::Overflow("expansion coefficients or potentials".into()));
    }
    let mut out = vec![C64::new(0.0, 0.0); lay.tgt.len()];
    for (i, v) in u.into_iter().enumerate() {
        out[lay.tgt_id[i]] = v;
    }
    Ok(out)
}

fn scatter<const D: usize>(u: &mut [C64], leaves: &[usize], lay: &Layout<D>, parts: Vec<Vec<C64>>) {
    for (&b, part) in leaves.iter().zip(parts) {
        let ts = lay.tgt_rng[b].0;
        for (i, v) in part.into_iter().enumerate() {
            u[ts + i] += v;
        }
    }
}

/// `u(x_i) = Σ_j G(x_i, y_j) σ_j` at every target. When `targets` is the
/// same slice as `sources`, the self term is excluded.
pub fn evaluate<const D: usize>(sources: &[CVec<D>], charges: &[C64], targets: &[CVec<D>], cfg: &FmmConfig) -> Result<(Vec<C64>, FmmReport)> {
    cfg.validate()?;
    if D != cfg.kernel.dim() {
        return Err(FmmError::InvalidInput(format!("{} kernel with {D}-D points", cfg.kernel)));
    }
    if sources.len() != charges.len() {
        return Err(FmmError::InvalidInput(format!("{} sources but {} charges", sources.len(), charges.len())));
    }
    let start = Instant::now();
    let alias = std::ptr::eq(sources, targets);
    let mut report = FmmReport { kernel: cfg.kernel.name().to_string(), n_sources: sources.len(), n_targets: targets.len(), eps: cfg.eps, ..Default::default() };
    if targets.is_empty() {
        return Ok((Vec::new(), report));
    }
    if sources.is_empty() {
        return Ok((vec![C64::new(0.0, 0.0); targets.len()], report));
    }
    let union: Vec<CVec<D>> = if alias { sources.to_vec() } else { sources.iter().chain(targets).copied().collect() };
    let lipschitz = match cfg.lipschitz_hint {
        Some(l) => l,
        None if union.len() >= 2 => estimate_lipschitz(&union)?,
        None => 0.0,
    };
    report.lipschitz = lipschitz;
    // root width only depends on the real bounding box
    let span = (0..D)
        .map(|d| {
            let it = union.iter().map(|p| p.0[d].re);
            it.clone().fold(f64::NEG_INFINITY, f64::max) - it.fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    let k = choose_k(cfg, lipschitz, span)?;
    let mut tcfg = TreeConfig::default_for(D);
    tcfg.k = k;
    if let Some(n) = cfg.leaf_size {
        tcfg.max_pts_per_leaf = n;
    }
    let tree = Tree::build(&union, tcfg)?;
    let lists = tree.build_lists();
    let plan = plan_terms(cfg, &tree, &lists)?;
    let lay = Layout::new(&tree, sources, charges, targets, alias);
    report.k = k;
    report.n_boxes = tree.boxes.len();
    report.n_leaves = tree.leaves().count();
    report.depth = tree.depth();
    report.root_width = tree.root_width;
    report.p_per_level = plan.p.clone();
    report.first_active_level = plan.first_active;
    report.setup_seconds = start.elapsed_secs();
    let u = run_kernel(cfg.kernel, k, &tree, &lists, &plan, &lay, &mut report)?;
    Ok((u, report))
}

fn run_kernel<const D: usize>(kernel: Kernel, k: u8, tree: &Tree<D>, lists: &InteractionLists, plan: &TermPlan, lay: &Layout<D>, report: &mut FmmReport) -> Result<Vec<C64>> {
    // const-generic D is fixed by the kernel check in `evaluate`; the casts
    // below only reinterpret `Tree<D>` as the same type at D = 2 or 3
    use std::any::Any;
    let tree_any = tree as &dyn Any;
    let lay_any = lay as &dyn Any;
    match kernel {
        Kernel::Lap2d | Kernel::Helm2d(_) => {
            let (t, l) = (tree_any.downcast_ref::<Tree<2>>().unwrap(), lay_any.downcast_ref::<Layout<2>>().unwrap());
            match kernel {
                Kernel::Helm2d(kappa) => run(&Helm2(kappa), kernel, t, lists, plan, l, report),
                _ => run(&Lap2, kernel, t, lists, plan, l, report),
            }
        }
        Kernel::Lap3d | Kernel::Helm3d(_) => {
            let (t, l) = (tree_any.downcast_ref::<Tree<3>>().unwrap(), lay_any.downcast_ref::<Layout<3>>().unwrap());
            match kernel {
                Kernel::Helm3d(kappa) => run(&Helm3 { kappa, k }, kernel, t, lists, plan, l, report),
                _ => run(&Lap3, kernel, t, lists, plan, l, report),
            }
        }
    }
}
