//! Exact counting and classification of planar lattice walks.
//!
//! ```
//! use stepwalk::classify::classify_finite;
//! use stepwalk::enumerate::count_walks;
//! use stepwalk::{ConstraintSpec, LatticePoint, StepSet};
//!
//! let en = StepSet::from_pairs(&[(1, 0), (0, 1)])?;
//! let n = count_walks(&en, LatticePoint::new(3, 2), &ConstraintSpec::FullPlane, None)?;
//! assert_eq!(n.to_string(), "10");
//!
//! let below = count_walks(&en, LatticePoint::new(4, 4), &ConstraintSpec::BelowDiagonal, None)?;
//! assert_eq!(below.to_string(), "14");
//!
//! let report = classify_finite(&en)?;
//! assert!(report.lc.holds);
//! # Ok::<(), stepwalk::Error>(())
//! ```

pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod geom;
pub mod graph;
pub mod job;
pub mod quad;
pub mod oeis;
mod serde_big;
pub mod stepset;
pub mod verify;
pub mod walk;

pub use error::{Error, Result};
pub use geom::LatticePoint;
pub use stepset::{ConstraintSpec, Family, StepSet, StepSetSpec, Truncation};
pub use walk::Walk;
