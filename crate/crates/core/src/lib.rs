//! Numerical range and numerical radius of dense complex matrices, sector
//! classification of accretive, dissipative and sectorial matrices, and a
//! catalog of numerical-radius inequalities for products and Hadamard
//! products that can be evaluated and fuzzed.
//!
//! ```
//! use numrad::{numerical_radius, ComplexMatrix};
//!
//! let x = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap();
//! let y = ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[2.0, 0.0]]).unwrap();
//! assert!((numerical_radius(&x) - 1.0).abs() < 1e-8);
//! assert!((numerical_radius(&(&x * &y)) - 4.0).abs() < 1e-8);
//! ```

pub mod bounds;
pub mod error;
pub mod fuzz;
pub mod golden;
pub mod matcore;
pub mod nrange;
pub mod randgen;
pub mod sector;

pub use bounds::{catalog, evaluate, verify_all, BoundReport, BoundSpec, EvalOptions};
pub use error::{Error, Result};
pub use fuzz::{fuzz_all, fuzz_bound, FuzzConfig, FuzzSummary};
pub use matcore::{cartesian_decompose, hadamard, hermitian_eig, operator_norm, ComplexMatrix, SpectralDecomposition};
pub use nrange::{numerical_radius, radius_lower_bound_sample, range_boundary, support_value, RangeBoundary};
pub use randgen::{generate, GenSpec, Generated, MatrixClass};
pub use sector::{
    accretive_sector_index, block_psd_certificate, in_class, is_accretive, is_accretive_dissipative,
    is_positive_definite, optimal_rotation, PsdCertificate, SectorClassification,
};

pub use num_complex::Complex64;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/numerical-range.md")]
    mod numerical_range {}
    #[doc = include_str!("../../../book/src/sectors.md")]
    mod sectors {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/fuzzing.md")]
    mod fuzzing {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
