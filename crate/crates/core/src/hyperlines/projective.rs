//! Points and lines of projective space over a finite field.

use serde::Serialize;

use super::field::{Elem, FiniteField};
use super::HyperError;

/// Homogeneous coordinates scaled so the first nonzero one is 1.
pub type Point = Vec<Elem>;

/// Default cap on the number of points a single scan may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Scales `v` so its first nonzero coordinate is 1; `None` for the zero vector.
pub fn normalize(field: &FiniteField, v: &[Elem]) -> Option<Point> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let s = field.inv(lead).expect("nonzero");
    Some(v.iter().map(|&x| field.mul(x, s)).collect())
}

/// |P^{nvars-1}(F_q)|, saturating.
pub fn point_count(q: u32, nvars: usize) -> u64 {
    let q = q as u64;
    (0..nvars).fold(0u64, |acc, _| acc.saturating_mul(q).saturating_add(1))
}

pub fn check_budget(q: u32, nvars: usize, budget: u64) -> Result<u64, HyperError> {
    let n = point_count(q, nvars);
    if n > budget {
        return Err(HyperError::FieldTooLarge { points: n, budget });
    }
    Ok(n)
}

/// The `idx`-th normalized point in the order: leading position first, then
/// the trailing coordinates as a base-q number.
pub fn point_at(q: u32, nvars: usize, mut idx: u64) -> Point {
    let mut x = vec![0; nvars];
    for lead in 0..nvars {
        let block = (q as u64).pow((nvars - 1 - lead) as u32);
        if idx < block {
            x[lead] = 1;
            for c in (lead + 1..nvars).rev() {
                x[c] = (idx % q as u64) as Elem;
                idx /= q as u64;
            }
            return x;
        }
        idx -= block;
    }
    panic!("point index out of range");
}

pub fn points(field: &FiniteField, nvars: usize) -> impl Iterator<Item = Point> + '_ {
    let q = field.order();
    (0..point_count(q, nvars)).map(move |i| point_at(q, nvars, i))
}

/// A line, stored as the reduced row-echelon basis of its 2-dim subspace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Line {
    pub rows: [Point; 2],
}

fn pivot(v: &[Elem]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

/// `a -= c * b`
fn axpy(field: &FiniteField, a: &mut [Elem], c: Elem, b: &[Elem]) {
    for (x, &y) in a.iter_mut().zip(b) {
        *x = field.sub(*x, field.mul(c, y));
    }
}

impl Line {
    /// The line spanned by two points, or `None` if they coincide.
    pub fn through(field: &FiniteField, a: &[Elem], b: &[Elem]) -> Option<Line> {
        let mut r0 = normalize(field, a)?;
        let mut r1 = b.to_vec();
        let p0 = pivot(&r0)?;
        let c = r1[p0];
        axpy(field, &mut r1, c, &r0);
        let mut r1 = normalize(field, &r1)?;
        let mut p1 = pivot(&r1).expect("nonzero");
        if p1 < p0 {
            std::mem::swap(&mut r0, &mut r1);
            p1 = p0;
        }
        let c = r0[p1];
        axpy(field, &mut r0, c, &r1);
        Some(Line { rows: [r0, r1] })
    }

    pub fn contains(&self, field: &FiniteField, x: &[Elem]) -> bool {
        let mut v = x.to_vec();
        for r in &self.rows {
            let c = v[pivot(r).expect("basis rows are nonzero")];
            axpy(field, &mut v, c, r);
        }
        v.iter().all(|&c| c == 0)
    }

    /// The q + 1 rational points, normalized.
    pub fn points(&self, field: &FiniteField) -> Vec<Point> {
        let [r0, r1] = &self.rows;
        let mut out = vec![r1.clone()];
        for t in field.elements() {
            out.push(r0.iter().zip(r1).map(|(&a, &b)| field.add(a, field.mul(t, b))).collect());
        }
        out
    }
}
