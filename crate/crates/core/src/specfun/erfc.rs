//! Complementary error function on the real line.

/// `erfc(x)`; thin wrapper so the geometry code has one import point.
pub fn erfc_real(x: f64) -> f64 {
    libm::erfc(x)
}
