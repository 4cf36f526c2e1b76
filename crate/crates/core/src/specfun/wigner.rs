//! Wigner small-d matrices at complex angle, by the explicit finite sum.
//!
//! Only meant as an independent reference for the rotation operators at
//! moderate degree; the alternating sum loses digits as `n` grows.

use super::ln_factorial;
use num_complex::Complex64 as C64;

/// `d^n_{m', m}(beta)` with `cos(beta/2)`, `sin(beta/2)` taken from the
/// complex half angle.
pub fn wigner_d(n: usize, mp: i64, m: i64, beta: C64) -> C64 {
    let nn = n as i64;
    assert!(mp.abs() <= nn && m.abs() <= nn);
    let c = (beta * 0.5).cos();
    let s = (beta * 0.5).sin();
    let pre = 0.5
        * (ln_factorial((nn + mp) as usize)
            + ln_factorial((nn - mp) as usize)
            + ln_factorial((nn + m) as usize)
            + ln_factorial((nn - m) as usize));
    let lo = 0.max(m - mp);
    let hi = (nn + m).min(nn - mp);
    let mut sum = C64::new(0.0, 0.0);
    for k in lo..=hi {
        let den = ln_factorial((nn + m - k) as usize)
            + ln_factorial(k as usize)
            + ln_factorial((mp - m + k) as usize)
            + ln_factorial((nn - mp - k) as usize);
        let sign = if (mp - m + k) % 2 == 0 { 1.0 } else { -1.0 };
        let mag = (pre - den).exp();
        sum += sign * mag * c.powi((2 * nn + m - mp - 2 * k) as i32) * s.powi((mp - m + 2 * k) as i32);
    }
    sum
}

/// All `d^n_{m', m}(beta)` for one degree.
#[derive(Debug, Clone)]
pub struct WignerDTable {
    pub n: usize,
    pub values: Vec<C64>,
}

impl WignerDTable {
    pub fn new(n: usize, beta: C64) -> Self {
        let nn = n as i64;
        let mut values = Vec::with_capacity((2 * n + 1) * (2 * n + 1));
        for mp in -nn..=nn {
            for m in -nn..=nn {
                values.push(wigner_d(n, mp, m, beta));
            }
        }
        WignerDTable { n, values }
    }

    pub fn get(&self, mp: i64, m: i64) -> C64 {
        let nn = self.n as i64;
        self.values[((mp + nn) * (2 * nn + 1) + (m + nn)) as usize]
    }
}
