//! Exact intersection numbers, line-bundle cohomology, stability verdicts and
//! moduli counts for rank 2 and rank 3 bundles on `P³` built from a smooth
//! surface `S ⊂ P³` that contains a line.
//!
//! All arithmetic is exact. Integer parameters are bounded by
//! [`PARAM_LIMIT`] in absolute value.

pub mod arith;
pub mod bundle;
pub mod cohomology;
pub mod error;
pub mod lattice;
pub mod moduli;
pub mod verify;

pub use arith::{count_binom, poly_binom, ExactRational, Rational, PARAM_LIMIT};
pub use bundle::{BundleSpec, Status, Verdict};
pub use cohomology::CohomologyDims;
pub use error::{Error, Result};
pub use lattice::{ChernData, DivisorClass, SurfaceClass};
pub use moduli::{IntRange, ModuliReport};
