//! Finite-field audits of the pointed-line fibers and of tuples of forms.
//!
//! Reports are evidence from point counts over finite fields, not proofs
//! about general complex hypersurfaces.

use std::collections::BTreeSet;

use num_integer::binomial;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::fiber::{decompose_at_point, dimension_estimate, direction, fiber_points, lines_through_point};
use super::field::{Elem, FiniteField};
use super::form::Form;
use super::projective::{Point, DEFAULT_BUDGET};
use super::HyperError;

const EVIDENCE_NOTE: &str = "finite-field point counts; evidence only, not a proof over the complex numbers";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldInfo {
    pub p: u32,
    pub k: u32,
}

impl From<&FiniteField> for FieldInfo {
    fn from(f: &FiniteField) -> Self {
        FieldInfo { p: f.characteristic(), k: f.degree() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlatnessOptions {
    /// Largest extension degree used by the dimension estimate.
    pub k_max: u32,
    /// How many points (in enumeration order) get the line-scan cross-check.
    pub cross_check: usize,
    pub budget: u64,
}

impl Default for FlatnessOptions {
    fn default() -> Self {
        FlatnessOptions { k_max: 2, cross_check: usize::MAX, budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointAudit {
    pub point: Point,
    pub fiber_dim: i64,
    pub fiber_counts: Vec<u64>,
    pub verdict: Verdict,
    /// Whether the line directions equal the rational fiber points, when checked.
    pub cross_check: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatnessReport {
    pub field: FieldInfo,
    pub n: usize,
    pub d: u32,
    pub expected_fiber_dim: i64,
    pub k_max: u32,
    pub points: Vec<PointAudit>,
    pub failures: Vec<Point>,
    pub cross_check_failures: Vec<Point>,
    pub verdict: Verdict,
    pub note: &'static str,
}

/// Directions of the rational lines through `p` against the rational zeros of
/// the decomposition at `p`.
pub fn lines_match_fiber(field: &FiniteField, phi: &Form, p: &[Elem], budget: u64) -> Result<bool, HyperError> {
    let parts = decompose_at_point(field, phi, p)?;
    let from_lines: BTreeSet<Point> = lines_through_point(field, phi, p, budget)?
        .iter()
        .map(|l| {
            let other = l.points(field).into_iter().find(|y| y.as_slice() != p).expect("a line has two points");
            direction(field, p, &other).expect("distinct from p")
        })
        .collect();
    let from_fiber: BTreeSet<Point> = fiber_points(field, &parts, phi.nvars() - 1, budget)?.into_iter().collect();
    Ok(from_lines == from_fiber)
}

/// Estimates the fiber dimension at every rational point of `V(phi)` ⊂ P^n
/// and compares it with n - d - 1.
pub fn flatness_audit(field: &FiniteField, phi: &Form, opts: FlatnessOptions) -> Result<FlatnessReport, HyperError> {
    let n = phi.nvars().saturating_sub(1);
    let d = phi.degree();
    if d < 1 || d as usize > n.saturating_sub(1) {
        return Err(HyperError::DegreeOutOfRange { n, d });
    }
    let expected = n as i64 - d as i64 - 1;
    let xs = fiber_points(field, std::slice::from_ref(phi), n + 1, opts.budget)?;
    let points = xs
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let parts = decompose_at_point(field, phi, p)?;
            let est = dimension_estimate(field, &parts, n, opts.k_max, opts.budget)?;
            let cross_check =
                if i < opts.cross_check { Some(lines_match_fiber(field, phi, p, opts.budget)?) } else { None };
            Ok(PointAudit {
                point: p.clone(),
                fiber_dim: est.dim,
                fiber_counts: est.counts,
                verdict: Verdict::from_bool(est.dim == expected),
                cross_check,
            })
        })
        .collect::<Result<Vec<_>, HyperError>>()?;
    let failures: Vec<Point> = points.iter().filter(|a| a.verdict == Verdict::Fail).map(|a| a.point.clone()).collect();
    let cross_check_failures: Vec<Point> =
        points.iter().filter(|a| a.cross_check == Some(false)).map(|a| a.point.clone()).collect();
    Ok(FlatnessReport {
        field: field.into(),
        n,
        d,
        expected_fiber_dim: expected,
        k_max: opts.k_max,
        verdict: Verdict::from_bool(failures.is_empty() && cross_check_failures.is_empty()),
        points,
        failures,
        cross_check_failures,
        note: EVIDENCE_NOTE,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodimFormulas {
    /// C(n - 1 + j, n - 1).
    pub delta_codim: u64,
    /// C(n, d + 1).
    pub by_codim: u64,
    /// Whether C(n, d + 1) > n - 1.
    pub by_exceeds: bool,
}

pub fn codim_formulas(n: u64, d: u64, j: u64) -> CodimFormulas {
    let by_codim = binomial(n, d + 1);
    CodimFormulas { delta_codim: binomial(n - 1 + j, n - 1), by_codim, by_exceeds: by_codim + 1 > n }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TupleOptions {
    pub k_max: u32,
    pub budget: u64,
    /// Largest membership fraction that still passes.
    pub max_fraction: f64,
}

impl Default for TupleOptions {
    fn default() -> Self {
        TupleOptions { k_max: 1, budget: DEFAULT_BUDGET, max_fraction: 0.01 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TupleReport {
    pub field: FieldInfo,
    pub n: usize,
    pub d: u32,
    pub samples: usize,
    pub seed: u64,
    /// Tuples with intersection dimension above n - d - 1.
    pub members: usize,
    pub fraction: f64,
    pub max_fraction: f64,
    pub verdict: Verdict,
    pub note: &'static str,
}

/// Nonzero forms of degrees 1..=d in n variables from a per-sample stream.
pub fn sample_tuple(field: &FiniteField, n: usize, d: u32, seed: u64, index: u64) -> Vec<Form> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    (1..=d).map(|deg| Form::random_nonzero(field, n, deg, &mut rng)).collect()
}

/// Whether `V(forms)` ⊂ P^{n-1} has dimension above n - d - 1.
pub fn in_degenerate_locus(field: &FiniteField, forms: &[Form], n: usize, k_max: u32, budget: u64) -> Result<bool, HyperError> {
    let est = dimension_estimate(field, forms, n, k_max, budget)?;
    Ok(est.dim > n as i64 - forms.len() as i64 - 1)
}

pub fn tuple_audit(
    n: usize,
    d: u32,
    field: &FiniteField,
    samples: usize,
    seed: u64,
    opts: TupleOptions,
) -> Result<TupleReport, HyperError> {
    if d < 1 || d as usize > n.saturating_sub(1) {
        return Err(HyperError::DegreeOutOfRange { n, d });
    }
    let flags = (0..samples as u64)
        .into_par_iter()
        .map(|i| in_degenerate_locus(field, &sample_tuple(field, n, d, seed, i), n, opts.k_max, opts.budget))
        .collect::<Result<Vec<bool>, HyperError>>()?;
    let members = flags.iter().filter(|&&m| m).count();
    let fraction = if samples == 0 { 0.0 } else { members as f64 / samples as f64 };
    Ok(TupleReport {
        field: field.into(),
        n,
        d,
        samples,
        seed,
        members,
        fraction,
        max_fraction: opts.max_fraction,
        verdict: Verdict::from_bool(fraction <= opts.max_fraction),
        note: EVIDENCE_NOTE,
    })
}

/// Whether every partial derivative of `phi` vanishes at `p`.
pub fn is_singular_point(field: &FiniteField, phi: &Form, p: &[Elem]) -> bool {
    phi.eval(field, p) == 0 && (0..phi.nvars()).all(|i| phi.partial(field, i).eval(field, p) == 0)
}

pub fn singular_points(field: &FiniteField, phi: &Form, budget: u64) -> Result<Vec<Point>, HyperError> {
    let mut forms = vec![phi.clone()];
    forms.extend((0..phi.nvars()).map(|i| phi.partial(field, i)));
    fiber_points(field, &forms, phi.nvars(), budget)
}

/// Rank of the symmetric matrix of a quadratic form in odd characteristic.
pub fn quadric_rank(field: &FiniteField, phi: &Form) -> Result<usize, HyperError> {
    if phi.degree() != 2 || field.characteristic() == 2 {
        return Err(HyperError::InvalidParameter("quadric rank needs a degree-2 form in odd characteristic".into()));
    }
    let m = phi.nvars();
    let half = field.inv(2).expect("odd characteristic");
    let mut a = vec![vec![0; m]; m];
    for (e, &c) in phi.terms() {
        let idx: Vec<usize> = (0..m).filter(|&i| e[i] > 0).collect();
        match idx.as_slice() {
            [i] => a[*i][*i] = c,
            [i, j] => {
                a[*i][*j] = field.mul(c, half);
                a[*j][*i] = field.mul(c, half);
            }
            _ => unreachable!("degree-2 monomial"),
        }
    }
    Ok(matrix_rank(field, a))
}

pub fn matrix_rank(field: &FiniteField, mut a: Vec<Vec<Elem>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, r);
        let inv = field.inv(a[rank][c]).expect("nonzero pivot");
        let pivot_row: Vec<Elem> = a[rank].iter().map(|&x| field.mul(x, inv)).collect();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        a[rank] = pivot_row;
        rank += 1;
    }
    rank
}
