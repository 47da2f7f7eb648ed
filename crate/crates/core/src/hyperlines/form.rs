//! Sparse homogeneous polynomials over a finite field.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::field::{Elem, FiniteField};
use super::HyperError;

pub type Exponent = Vec<u32>;

/// A homogeneous form of degree `degree` in `nvars` variables. Only nonzero
/// coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Form {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, Elem>,
}

/// All exponent vectors of length `nvars` summing to `degree`, in
/// lexicographic order.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Exponent> {
    fn go(prefix: &mut Vec<u32>, left: usize, rest: u32, out: &mut Vec<Exponent>) {
        if left == 1 {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=rest).rev() {
            prefix.push(a);
            go(prefix, left - 1, rest - a, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        go(&mut Vec::new(), nvars, degree, &mut out);
    } else if degree == 0 {
        out.push(Vec::new());
    }
    out
}

impl Form {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Form { nvars, degree, terms: BTreeMap::new() }
    }

    /// The variable `x_i` as a linear form.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Form { nvars, degree: 1, terms: BTreeMap::from([(e, 1)]) }
    }

    pub fn from_terms(
        field: &FiniteField,
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Exponent, Elem)>,
    ) -> Result<Self, HyperError> {
        let mut f = Form::zero(nvars, degree);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(HyperError::WrongArity { expected: nvars, found: e.len() });
            }
            if e.iter().sum::<u32>() != degree {
                return Err(HyperError::NotHomogeneous { degree, exponent: e });
            }
            f.add_term(field, e, c);
        }
        Ok(f)
    }

    /// Builds from integer coefficients, reduced into the prime subfield.
    pub fn from_int_terms(field: &FiniteField, nvars: usize, degree: u32, terms: &[(&[u32], i64)]) -> Result<Self, HyperError> {
        Self::from_terms(field, nvars, degree, terms.iter().map(|&(e, c)| (e.to_vec(), field.from_int(c))))
    }

    /// Uniformly random coefficients on every monomial.
    pub fn random(field: &FiniteField, nvars: usize, degree: u32, rng: &mut impl Rng) -> Self {
        let terms = monomials(nvars, degree).into_iter().map(|e| (e, rng.random_range(0..field.order())));
        Self::from_terms(field, nvars, degree, terms).expect("monomials are homogeneous")
    }

    /// Uniformly random among nonzero forms.
    pub fn random_nonzero(field: &FiniteField, nvars: usize, degree: u32, rng: &mut impl Rng) -> Self {
        loop {
            let f = Self::random(field, nvars, degree, rng);
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// A random nonzero form determined by `seed`.
    pub fn random_seeded(field: &FiniteField, nvars: usize, degree: u32, seed: u64) -> Self {
        Self::random_nonzero(field, nvars, degree, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> Elem {
        self.terms.get(e).copied().unwrap_or(0)
    }

    fn add_term(&mut self, field: &FiniteField, e: Exponent, c: Elem) {
        let s = field.add(self.coefficient(&e), c);
        if s == 0 {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, s);
        }
    }

    pub fn add(&self, field: &FiniteField, other: &Form) -> Form {
        assert_eq!((self.nvars, self.degree), (other.nvars, other.degree), "forms must match");
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(field, e.clone(), c);
        }
        out
    }

    pub fn scale(&self, field: &FiniteField, c: Elem) -> Form {
        let mut out = Form::zero(self.nvars, self.degree);
        for (e, &a) in &self.terms {
            out.add_term(field, e.clone(), field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, field: &FiniteField, other: &Form) -> Form {
        assert_eq!(self.nvars, other.nvars, "forms must share variables");
        let mut out = Form::zero(self.nvars, self.degree + other.degree);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(field, e, field.mul(ca, cb));
            }
        }
        out
    }

    pub fn eval(&self, field: &FiniteField, x: &[Elem]) -> Elem {
        assert_eq!(x.len(), self.nvars, "point has the wrong number of coordinates");
        self.terms.iter().fold(0, |acc, (e, &c)| {
            let m = e.iter().zip(x).fold(c, |m, (&a, &xi)| field.mul(m, field.pow(xi, a)));
            field.add(acc, m)
        })
    }

    /// Φ(M y): `columns[j]` is the image of `y_j`, so `x_i = Σ_j columns[j][i] y_j`.
    pub fn substitute(&self, field: &FiniteField, columns: &[Vec<Elem>]) -> Form {
        let m = columns.len();
        let images: Vec<Form> = (0..self.nvars)
            .map(|i| {
                let terms = (0..m).map(|j| {
                    let mut e = vec![0; m];
                    e[j] = 1;
                    (e, columns[j][i])
                });
                Form::from_terms(field, m, 1, terms).expect("linear")
            })
            .collect();
        let mut out = Form::zero(m, self.degree);
        for (e, &c) in &self.terms {
            let mut acc = Form::from_terms(field, m, 0, [(vec![0; m], c)]).expect("constant");
            for (i, &a) in e.iter().enumerate() {
                for _ in 0..a {
                    acc = acc.mul(field, &images[i]);
                }
            }
            out = out.add(field, &acc);
        }
        out
    }

    pub fn partial(&self, field: &FiniteField, i: usize) -> Form {
        let mut out = Form::zero(self.nvars, self.degree.saturating_sub(1));
        for (e, &c) in &self.terms {
            if e[i] > 0 {
                let mut d = e.clone();
                d[i] -= 1;
                out.add_term(field, d, field.mul(c, field.from_int(e[i] as i64)));
            }
        }
        out
    }

    /// Applies a coefficient map, e.g. an embedding into an extension field.
    pub fn map_coefficients(&self, field: &FiniteField, map: impl Fn(Elem) -> Elem) -> Form {
        let mut out = Form::zero(self.nvars, self.degree);
        for (e, &c) in &self.terms {
            out.add_term(field, e.clone(), map(c));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: i64,
}

/// `{"nvars":int,"degree":int,"terms":[{"exp":[ints],"coef":int}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub nvars: usize,
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

impl FormJson {
    /// Coefficients are read as integers mod the characteristic.
    pub fn to_form(&self, field: &FiniteField) -> Result<Form, HyperError> {
        Form::from_terms(field, self.nvars, self.degree, self.terms.iter().map(|t| (t.exp.clone(), field.from_int(t.coef))))
    }

    /// Fails for coefficients outside the prime subfield.
    pub fn from_form(field: &FiniteField, f: &Form) -> Result<Self, HyperError> {
        let terms = f
            .terms
            .iter()
            .map(|(e, &c)| {
                field
                    .to_signed(c)
                    .map(|coef| TermJson { exp: e.clone(), coef })
                    .ok_or_else(|| HyperError::InvalidField(format!("coefficient {c} is not in the prime field")))
            })
            .collect::<Result<_, _>>()?;
        Ok(FormJson { nvars: f.nvars, degree: f.degree, terms })
    }
}
