//! 2-D expansions and translations for `log r` and `H_0^(1)(κ r)`.

pub mod helm;
pub mod lap;

pub use helm::*;
pub use lap::*;

use crate::cgeom::{CVec2, C64};
use crate::error::{FmmError, Result};

/// `(x1 + i x2, x1 - i x2)` for complex `x1, x2`.
#[inline]
pub fn zeta_pair(d: CVec2) -> (C64, C64) {
    let i = C64::i();
    (d.0[0] + i * d.0[1], d.0[0] - i * d.0[1])
}

/// `log r = ½ Log(x1² + x2²)`, principal branch.
pub fn log_r(d: CVec2) -> Result<C64> {
    let w = d.dot_self();
    let m = d.modulus_norm();
    if w.norm() <= 1e-24 * m * m || m == 0.0 {
        return Err(FmmError::DegeneratePoint(format!("log r at ({}, {})", d.0[0], d.0[1])));
    }
    Ok(0.5 * w.ln())
}
