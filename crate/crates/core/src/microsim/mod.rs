//! Finite-N microscopic model: hard-sphere configurations in a periodic box,
//! a truncated set of transverse field modes, the symmetrized dynamical
//! matrix and density scans of its smallest eigenvalue.

pub mod dynamics;
pub mod eigen;
pub mod modes;
pub mod sampling;
pub mod scan;

pub use dynamics::{assemble_dynamical_matrix, DynamicalMatrix, MAX_DIMENSION};
pub use eigen::{full_spectrum, min_eigenvalue};
pub use modes::{build_mode_basis, Mode, ModeBasis, Parity};
pub use sampling::{
    equilibrate, minimum_image, packing_fraction, pair_correlation, sample_configuration, task_seed, Configuration,
    MAX_PACKING_FRACTION,
};
pub use scan::{stability_scan, DensityPoint, ScanParams, StabilityReport, Threshold};
