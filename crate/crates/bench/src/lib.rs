//! Fixtures shared by the benchmarks.

use ratcurves::agraph::{path_sigma, star, tau};
use ratcurves::{AGraph, FiniteField, Form};

/// A spread of stable graphs: points, paths and stars of a few sizes.
pub fn graphs() -> Vec<AGraph> {
    let mut out = Vec::new();
    for e in 1..=8 {
        out.push(tau(2, e).unwrap());
        out.push(path_sigma(e).unwrap());
    }
    for k in 3..=7 {
        out.push(star(&vec![1; k], 0).unwrap());
        out.push(star(&vec![2; k], 1).unwrap());
    }
    out
}

/// x0 x3 - x1 x2 over F_p.
pub fn smooth_quadric(field: &FiniteField) -> Form {
    Form::from_int_terms(field, 4, 2, &[(&[1, 0, 0, 1], 1), (&[0, 1, 1, 0], -1)]).unwrap()
}
