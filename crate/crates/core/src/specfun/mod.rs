//! Special functions of complex argument.

pub mod bessel;
pub mod erfc;
pub mod legendre;
pub mod quadrature;
pub mod spherical;
pub mod wigner;

pub use bessel::{bessel_j_seq, hankel_h0, hankel_h1_seq, CylSeq};
pub use erfc::erfc_real;
pub use legendre::{assoc_legendre_norm, legendre_seq, spherical_harmonic, AssocLegendreTable, YlmTable};
pub use quadrature::gauss_legendre;
pub use spherical::{sph_seq, sph_with_derivative, SphKind, SphSeq};
pub use wigner::{wigner_d, WignerDTable};

/// `ln(n!)` for moderate `n`, exact summation below 171.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

#[cfg(test)]
pub(crate) mod testdata;
