//! Lines on hypersurfaces over finite fields: the fiber of lines through a
//! point, flatness audits and codimension checks.

mod audit;
mod fiber;
pub mod field;
mod form;
mod projective;

use thiserror::Error;

pub use audit::{
    codim_formulas, flatness_audit, in_degenerate_locus, is_singular_point, lines_match_fiber, matrix_rank,
    quadric_rank, sample_tuple, singular_points, tuple_audit, CodimFormulas, FieldInfo, FlatnessOptions,
    FlatnessReport, PointAudit, TupleOptions, TupleReport, Verdict,
};
pub use fiber::{
    decompose_at_point, dimension_estimate, direction, fiber_points, in_point_chart, lines_through_point,
    vanishes_on_line, DimensionEstimate,
};
pub use field::{Elem, FiniteField};
pub use form::{monomials, Exponent, Form, FormJson, TermJson};
pub use projective::{check_budget, normalize, point_at, point_count, points, Line, Point, DEFAULT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("term {exponent:?} is not of degree {degree}")]
    NotHomogeneous { degree: u32, exponent: Vec<u32> },
    #[error("expected {expected} variables, found {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("point {0:?} is not on the hypersurface")]
    PointNotOnHypersurface(Point),
    #[error("degree {d} is outside 1..=n-1 for n = {n}")]
    DegreeOutOfRange { n: usize, d: u32 },
    #[error("scan of {points} points exceeds the budget of {budget}")]
    FieldTooLarge { points: u64, budget: u64 },
}
