//! Lines through a point of a hypersurface and the equations cutting out
//! their directions.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::field::{Elem, FiniteField};
use super::form::Form;
use super::projective::{check_budget, normalize, point_at, points, Line, Point};
use super::HyperError;

/// Change of coordinates sending `[0:…:0:1]` to `p`: the columns are the
/// standard vectors other than p's pivot, then p itself.
fn chart(p: &[Elem]) -> (usize, Vec<usize>, Vec<Vec<Elem>>) {
    let n1 = p.len();
    let piv = p.iter().position(|&x| x != 0).expect("nonzero point");
    let others: Vec<usize> = (0..n1).filter(|&i| i != piv).collect();
    let mut cols: Vec<Vec<Elem>> = others
        .iter()
        .map(|&i| {
            let mut e = vec![0; n1];
            e[i] = 1;
            e
        })
        .collect();
    cols.push(p.to_vec());
    (piv, others, cols)
}

fn on_hypersurface(field: &FiniteField, phi: &Form, p: &[Elem]) -> Result<Point, HyperError> {
    if p.len() != phi.nvars() {
        return Err(HyperError::WrongArity { expected: phi.nvars(), found: p.len() });
    }
    let p = normalize(field, p).ok_or_else(|| HyperError::InvalidParameter("the zero vector is not a point".into()))?;
    if phi.eval(field, &p) != 0 {
        return Err(HyperError::PointNotOnHypersurface(p));
    }
    Ok(p)
}

/// Φ written in the coordinates where `p` is the last basis vector.
pub fn in_point_chart(field: &FiniteField, phi: &Form, p: &[Elem]) -> Form {
    phi.substitute(field, &chart(p).2)
}

/// `[Φ_1, …, Φ_d]` with `Φ = Σ_j Φ_j · x_n^{d-j}` after moving `p` to
/// `[0:…:0:1]`. Their common zeros in P^{n-1} are the directions of lines
/// through `p` inside `V(Φ)`.
pub fn decompose_at_point(field: &FiniteField, phi: &Form, p: &[Elem]) -> Result<Vec<Form>, HyperError> {
    let p = on_hypersurface(field, phi, p)?;
    let psi = in_point_chart(field, phi, &p);
    let (n, d) = (phi.nvars() - 1, phi.degree());
    (1..=d)
        .map(|j| {
            let terms = psi
                .terms()
                .iter()
                .filter(|(e, _)| e[n] == d - j)
                .map(|(e, &c)| (e[..n].to_vec(), c));
            Form::from_terms(field, n, j, terms)
        })
        .collect()
}

/// Direction of the line from `p` to `y` in the chart at `p`.
pub fn direction(field: &FiniteField, p: &[Elem], y: &[Elem]) -> Option<Point> {
    let (piv, others, _) = chart(p);
    let zn = y[piv];
    let z: Vec<Elem> = others.iter().map(|&i| field.sub(y[i], field.mul(zn, p[i]))).collect();
    normalize(field, &z)
}

/// Whether `phi` vanishes on the whole line: on d + 1 of its points when the
/// line has that many, otherwise by restricting symbolically.
pub fn vanishes_on_line(field: &FiniteField, phi: &Form, line: &Line) -> bool {
    let needed = phi.degree() as usize + 1;
    if field.order() as usize + 1 >= needed {
        line.points(field).iter().take(needed).all(|x| phi.eval(field, x) == 0)
    } else {
        phi.substitute(field, &line.rows).is_zero()
    }
}

/// All lines through `p` contained in `V(phi)`, by scanning every other point.
pub fn lines_through_point(field: &FiniteField, phi: &Form, p: &[Elem], budget: u64) -> Result<Vec<Line>, HyperError> {
    let p = on_hypersurface(field, phi, p)?;
    check_budget(field.order(), phi.nvars(), budget)?;
    let candidates: BTreeSet<Line> = points(field, phi.nvars()).filter_map(|y| Line::through(field, &p, &y)).collect();
    Ok(candidates.into_par_iter().filter(|l| vanishes_on_line(field, phi, l)).collect::<Vec<_>>())
}

fn check_arity(forms: &[Form], nvars: usize) -> Result<(), HyperError> {
    match forms.iter().find(|f| f.nvars() != nvars) {
        Some(f) => Err(HyperError::WrongArity { expected: nvars, found: f.nvars() }),
        None => Ok(()),
    }
}

/// Common zeros of `forms` in P^{nvars-1}(F), in enumeration order.
pub fn fiber_points(field: &FiniteField, forms: &[Form], nvars: usize, budget: u64) -> Result<Vec<Point>, HyperError> {
    check_arity(forms, nvars)?;
    let total = check_budget(field.order(), nvars, budget)?;
    let q = field.order();
    Ok((0..total)
        .into_par_iter()
        .map(|i| point_at(q, nvars, i))
        .filter(|x| forms.iter().all(|f| f.eval(field, x) == 0))
        .collect())
}

/// Drops zero forms and cuts down by linear ones: a nonzero linear form is
/// solved for one variable and the rest are pulled back along that
/// parametrization, which preserves the projective zero set.
fn eliminate_linear(field: &FiniteField, forms: &[Form], nvars: usize) -> (Vec<Form>, usize) {
    let mut forms: Vec<Form> = forms.iter().filter(|f| !f.is_zero()).cloned().collect();
    let mut nvars = nvars;
    while let Some(k) = forms.iter().position(|f| f.degree() == 1) {
        let l = forms.swap_remove(k);
        let coef: Vec<Elem> = (0..nvars)
            .map(|i| {
                let mut e = vec![0; nvars];
                e[i] = 1;
                l.coefficient(&e)
            })
            .collect();
        let piv = coef.iter().position(|&c| c != 0).expect("nonzero linear form");
        let scale = field.neg(field.inv(coef[piv]).expect("nonzero"));
        let cols: Vec<Vec<Elem>> = (0..nvars)
            .filter(|&j| j != piv)
            .map(|j| {
                let mut v = vec![0; nvars];
                v[j] = 1;
                v[piv] = field.mul(scale, coef[j]);
                v
            })
            .collect();
        nvars -= 1;
        forms = forms.iter().map(|f| f.substitute(field, &cols)).filter(|f| !f.is_zero()).collect();
    }
    (forms, nvars)
}

fn count_zeros(field: &FiniteField, forms: &[Form], nvars: usize, budget: u64) -> Result<u64, HyperError> {
    let (forms, nvars) = eliminate_linear(field, forms, nvars);
    if nvars == 0 {
        return Ok(0);
    }
    let total = check_budget(field.order(), nvars, budget)?;
    let q = field.order();
    Ok((0..total)
        .into_par_iter()
        .filter(|&i| {
            let x = point_at(q, nvars, i);
            forms.iter().all(|f| f.eval(field, &x) == 0)
        })
        .count() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionEstimate {
    /// Zero counts over F_{q^k} for k = 1..=k_max.
    pub counts: Vec<u64>,
    /// round(log N / log q^k) at k = k_max, or -1 when there are no zeros.
    pub dim: i64,
}

/// Estimates the dimension of `V(forms)` ⊂ P^{nvars-1} from point counts over
/// extensions of the coefficient field. A heuristic: small fields can
/// misreport, e.g. when components are defined only over larger fields.
pub fn dimension_estimate(
    field: &FiniteField,
    forms: &[Form],
    nvars: usize,
    k_max: u32,
    budget: u64,
) -> Result<DimensionEstimate, HyperError> {
    if !(1..=3).contains(&k_max) {
        return Err(HyperError::InvalidParameter(format!("k_max = {k_max} is outside 1..=3")));
    }
    check_arity(forms, nvars)?;
    let mut counts = Vec::with_capacity(k_max as usize);
    let mut order = 1u64;
    for k in 1..=k_max {
        let ext = FiniteField::new(field.characteristic(), field.degree() * k)?;
        let embed = ext.embedding_from(field)?;
        let lifted: Vec<Form> = forms.iter().map(|f| f.map_coefficients(&ext, |c| embed[c as usize])).collect();
        counts.push(count_zeros(&ext, &lifted, nvars, budget)?);
        order = ext.order() as u64;
    }
    let last = *counts.last().expect("k_max ≥ 1");
    let dim = if counts.iter().all(|&c| c == 0) { -1 } else { ((last as f64).ln() / (order as f64).ln()).round() as i64 };
    Ok(DimensionEstimate { counts, dim })
}
