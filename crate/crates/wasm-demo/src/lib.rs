//! Browser demo: sample the wobbly curve, measure a complexified distance,
//! and compare an FMM sum with the direct sum on the curve.
//!
//! The exported functions are thin wrappers over plain Rust ones so the
//! crate also builds and tests natively.

use cfmm::cgeom::complex_distance;
use cfmm::oracle::{direct_eval, gaussian_charges, gen_wobble2d, rel_error};
use cfmm::{evaluate, CVec, FmmConfig, Kernel, C64};
use wasm_bindgen::prelude::*;

/// `[Re x, Im x, y]` triples for `n` points of the curve: the real curve
/// `(t, y(t))` with the first coordinate pushed off into the complex plane.
pub fn curve_samples(n: usize) -> Vec<f64> {
    gen_wobble2d(n).iter().flat_map(|p| [p.0[0].re, p.0[0].im, p.0[1].re]).collect()
}

/// Complexified distance between two 2-D or 3-D points given as
/// interleaved `(re, im)` coordinates; returns `[re, im]`.
pub fn distance(x: &[f64], y: &[f64]) -> Result<[f64; 2], String> {
    let z = |v: &[f64]| v.chunks_exact(2).map(|c| C64::new(c[0], c[1])).collect::<Vec<_>>();
    let (x, y) = (z(x), z(y));
    let r = match (x.len(), y.len()) {
        (2, 2) => complex_distance(&CVec::<2>::new([x[0], x[1]]), &CVec::new([y[0], y[1]])),
        (3, 3) => complex_distance(&CVec::<3>::new([x[0], x[1], x[2]]), &CVec::new([y[0], y[1], y[2]])),
        _ => return Err("points need 4 or 6 numbers each".into()),
    };
    Ok([r.re, r.im])
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub relerr: f64,
    pub k: u8,
    pub p_max: usize,
    pub depth: usize,
}

/// FMM against direct summation on `n` points of the curve.
pub fn compare(kernel: &str, wavenumber: f64, n: usize, eps: f64) -> Result<Comparison, String> {
    let kappa = (wavenumber > 0.0).then_some(wavenumber);
    let kernel = Kernel::parse(kernel, kappa).map_err(|e| e.to_string())?;
    if kernel.dim() != 2 {
        return Err("the demo runs the 2-D kernels".into());
    }
    if !(1..=20_000).contains(&n) {
        return Err("n must lie in 1..=20000".into());
    }
    let pts = gen_wobble2d(n);
    let q = gaussian_charges(n, 1);
    let (u, rep) = evaluate(&pts, &q, &pts, &FmmConfig::new(kernel, eps)).map_err(|e| e.to_string())?;
    let u0 = direct_eval(kernel, &pts, &q, &pts).map_err(|e| e.to_string())?;
    Ok(Comparison { relerr: rel_error(&u, &u0, &q), k: rep.k, p_max: rep.p_max(), depth: rep.depth })
}

#[wasm_bindgen(js_name = curveSamples)]
pub fn curve_samples_js(n: usize) -> Vec<f64> {
    curve_samples(n)
}

#[wasm_bindgen(js_name = complexDistance)]
pub fn distance_js(x: Vec<f64>, y: Vec<f64>) -> Result<Vec<f64>, JsError> {
    distance(&x, &y).map(|r| r.to_vec()).map_err(|e| JsError::new(&e))
}

/// `[relerr, k, P_max, depth]`.
#[wasm_bindgen(js_name = compareWithDirect)]
pub fn compare_js(kernel: &str, wavenumber: f64, n: usize, eps: f64) -> Result<Vec<f64>, JsError> {
    let c = compare(kernel, wavenumber, n, eps).map_err(|e| JsError::new(&e))?;
    Ok(vec![c.relerr, c.k as f64, c.p_max as f64, c.depth as f64])
}
