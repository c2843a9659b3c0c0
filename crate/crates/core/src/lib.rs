//! Prime-wheel geometry, digital-root algebra and the quasi-prime
//! multiplication grid ("Q-grid"), with a staged primality test and
//! grid-based factorization checked against a classical sieve.
//!
//! Module map:
//!
//! - [`numerics`]: digital roots, triplet classes, the Fibonacci digital-root
//!   cycle and `6m`-sided wheel residues.
//! - [`qgrid`]: the axis sequence `5, 7, 11, 13, ...`, grid products,
//!   membership search and the diagonal digital-root cycle.
//! - [`pipeline`]: the staged prefilter, primality verdicts, factor search
//!   and survivor density.
//! - [`oracle`]: odd-only sieve, trial division and range verification.
//! - [`shell`]: command-line front end, report rendering, benchmark harness
//!   and the SVG wheel emitter.

pub mod error;
pub mod numerics;
pub mod oracle;
pub mod pipeline;
pub mod qgrid;
pub mod shell;

pub use error::{Error, Result, MAX_INPUT};
pub use numerics::{DigitalRoot, TripletClass, WheelConfig, WheelPosition};
pub use oracle::{MismatchReport, PrimeTable};
pub use pipeline::{
    DensityReport, FactorPair, Factorization, FilterStage, FilterVerdict, PrimalityKind,
    PrimalityVerdict, SearchStrategy, Stage, Witness,
};
pub use qgrid::{AxisIndex, GridCoordinate, QuasiPrimeTag, Region};
