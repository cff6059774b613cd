//! Spectral invariants of filtered chain complexes over Z/2.
//!
//! A [`FilteredComplex`] carries two filtrations: generator values, which
//! drive the spectral numbers σ and the truncations `C^ν`, and generator
//! degrees, which drive the spectral sequence of the extended complex
//! `R ⊗ C` over a truncated graded ring ([`RingModel`]).
//!
//! ```
//! use spectral_invariants::{builtin, expr, higher, Execution};
//!
//! let c = builtin::s2xs4();
//! let class = expr::parse_class(&c, "a*p4").unwrap();
//! let v = higher::higher(&c, 2, &class, Execution::default()).unwrap();
//! assert_eq!(v.c_bar, Some(2.1));
//! ```

pub mod builtin;
pub mod complex;
pub mod error;
pub mod expr;
pub mod format;
pub mod gf2;
pub mod higher;
pub mod homology;
mod par;
pub mod report;
pub mod ring;
pub mod spectral;
pub mod validation;

pub use complex::{ChainElement, ChainTerm, DifferentialEntry, FilteredComplex, Generator, TotalComplex};
pub use error::{Error, Result};
pub use homology::{ActionTable, FilteredHomology, HomologyClass, InvariantValue};
pub use par::Execution;
pub use ring::{RingElement, RingModel};
pub use spectral::{PageClass, SpectralPage};
pub use validation::{ValidationReport, Violation};
