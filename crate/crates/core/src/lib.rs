//! Wave and particle quantifiers for qudit density matrices.
//!
//! The crate computes Hilbert-Schmidt, Wigner-Yanase and l1 coherences,
//! the matching predictabilities, and the trade-off and complementarity
//! bounds that tie them together. [`verify`] checks those bounds on random
//! Ginibre states and Werner-type families, and runs numerical spot checks
//! of the axioms each quantifier should satisfy.
//!
//! ```
//! use qduality::measures::Measure;
//! use qduality::states::werner_ququart;
//!
//! let rho = werner_ququart(1.0, 0.5).unwrap();
//! let c = Measure::Chs.evaluate(&rho).unwrap();
//! let p = Measure::PhsLinear.evaluate(&rho).unwrap();
//! assert!((c + p - 0.75).abs() < 1e-12);
//! ```

pub mod cli;
pub mod error;
pub mod gellmann;
pub mod linalg;
pub mod measures;
pub mod rng;
pub mod states;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use measures::Measure;
pub use states::DensityMatrix;
