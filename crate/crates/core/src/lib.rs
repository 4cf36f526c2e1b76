pub mod cgeom;
pub mod driver;
pub mod error;
pub mod fmm2d;
pub mod fmm3d;
pub mod oracle;
pub mod specfun;
pub mod tree;

pub use cgeom::{CVec, CVec2, CVec3, C64};
pub use error::{FmmError, Result};
pub use driver::{evaluate, FmmConfig, FmmReport};
pub use oracle::Kernel;
