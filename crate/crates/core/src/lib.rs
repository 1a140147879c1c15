//! Exact computation with monomial ideals: canonical generators, products,
//! powers, intersections, irreducible and primary decompositions, symbolic
//! powers, and executable classification checks for support-2 ideals.

pub mod decomposition;
pub mod error;
pub mod fuzz;
pub mod graph;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod support2;
pub mod symbolic;
pub mod theorems;

pub use decomposition::{Decomposition, IrreducibleComponent, PrimeSummary, PrimeSupport};
pub use error::{Error, Result};
pub use graph::{SimpleGraph, WhiskerStructure};
pub use ideal::MonomialIdeal;
pub use monomial::{Exp, Monomial};
pub use support2::{EdgeProfile, Polarization, StandardWeighting, Support2Profile};
pub use symbolic::SimisVerdict;
