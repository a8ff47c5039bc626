//! Cores, resolutions and homotopy classification of the simplicial
//! complexes `R(I)` attached to square-free monomial ideals, with graph
//! specializations (independence and dominance complexes) and an exact
//! integer homology oracle.

pub mod analysis;
pub mod complexes;
pub mod covers;
pub mod error;
pub mod formats;
pub mod gen;
pub mod graphs;
pub mod homology;
pub mod ideals;
pub mod polynomial;
pub mod resolution;
pub mod snf;
pub mod verify;

pub use analysis::{analyze, AnalysisOptions, Budgets, IdealAnalysis};
pub use complexes::{CollapseCheck, CollapseStep, SimplicialComplex, DEFAULT_MAX_FACES};
pub use error::{Error, Result};
pub use graphs::Graph;
pub use homology::{Chain, HomologyProfile};
pub use ideals::{MonomialIdeal, SquareFreeMonomial, Universe, VariableUniverse};
pub use polynomial::{MultigradedPolynomial, UnivariatePolynomial};
pub use resolution::{classify, Classification, Resolution, Verdict};
