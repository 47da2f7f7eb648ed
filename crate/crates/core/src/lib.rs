//! Combinatorics of stable A-graphs and their contractions, expected
//! dimensions of strata of rational curves on complete intersections, and
//! finite-field experiments on lines through points of hypersurfaces.

pub mod agraph;
pub mod contraction;
pub mod hyperlines;
pub mod strata;

pub use agraph::{canonical_form, AGraph, CanonicalForm, GraphError, GraphJson};
pub use contraction::{Contraction, ContractionError, ContractionSet, WitnessChain};
pub use hyperlines::{FiniteField, Form, HyperError};
pub use strata::{StrataError, Stratum, TargetDescriptor};
