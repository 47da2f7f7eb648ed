//! Finite fields GF(p^k).
//!
//! An element is stored as the integer whose base-p digits are its
//! coefficients in the power basis of the modulus, so the prime subfield is
//! `0..p` and integers embed by reduction mod p. Multiplication and inversion
//! go through discrete log tables built from a primitive modulus.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::HyperError;

pub type Elem = u32;

/// Largest field order accepted.
pub const MAX_ORDER: u64 = 1 << 24;
/// Largest characteristic accepted.
pub const MAX_CHARACTERISTIC: u32 = 31;
/// Addition is tabulated up to this order.
const ADD_TABLE_ORDER: u32 = 1024;

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low coefficient first, length k + 1.
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    add: Option<Vec<Elem>>,
    neg: Vec<Elem>,
}

#[derive(Clone)]
pub struct FiniteField(Arc<Tables>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.k, self.0.modulus)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn digits(mut x: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Powers of t modulo `modulus` if t generates the whole unit group.
fn primitive_powers(modulus: &[u32], p: u32, k: u32, q: u32) -> Option<Vec<Elem>> {
    let k = k as usize;
    let mut cur = vec![0u32; k];
    cur[0] = 1;
    let mut exp = Vec::with_capacity(q as usize - 1);
    for i in 0..q - 1 {
        let code = undigits(&cur, p);
        if i > 0 && code == 1 {
            return None;
        }
        exp.push(code);
        // cur *= t
        let top = cur[k - 1];
        for j in (1..k).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        for j in 0..k {
            cur[j] = (cur[j] + (p - top) * modulus[j]) % p;
        }
    }
    (undigits(&cur, p) == 1).then_some(exp)
}

impl Tables {
    fn build(p: u32, k: u32) -> Result<Tables, HyperError> {
        if !is_prime(p) || p > MAX_CHARACTERISTIC {
            return Err(HyperError::InvalidField(format!("characteristic {p} is not a prime ≤ {MAX_CHARACTERISTIC}")));
        }
        let order = (p as u64).checked_pow(k).filter(|&q| k >= 1 && q <= MAX_ORDER);
        let Some(q) = order.map(|q| q as u32) else {
            return Err(HyperError::InvalidField(format!("GF({p}^{k}) is outside 1 ≤ k and q ≤ {MAX_ORDER}")));
        };
        // First primitive monic modulus in lexicographic order of the low coefficients.
        let (modulus, exp) = (0..q)
            .filter(|c| c % p != 0)
            .find_map(|c| {
                let mut m = digits(c, p, k);
                m.push(1);
                primitive_powers(&m, p, k, q).map(|e| (m, e))
            })
            .expect("a primitive polynomial exists in every degree");
        let mut log = vec![0u32; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        let neg: Vec<Elem> =
            (0..q).map(|x| undigits(&digits(x, p, k).iter().map(|&d| (p - d) % p).collect::<Vec<_>>(), p)).collect();
        let mut t = Tables { p, k, q, modulus, exp, log, add: None, neg };
        if q <= ADD_TABLE_ORDER {
            let mut add = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = t.add_digits(a, b);
                }
            }
            t.add = Some(add);
        }
        Ok(t)
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let (p, mut out, mut scale) = (self.p, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    }
}

impl FiniteField {
    /// GF(p^k), shared through a process-wide cache.
    pub fn new(p: u32, k: u32) -> Result<Self, HyperError> {
        static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FiniteField>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().expect("field cache").get(&(p, k)) {
            return Ok(f.clone());
        }
        let f = FiniteField(Arc::new(Tables::build(p, k)?));
        cache.lock().expect("field cache").insert((p, k), f.clone());
        Ok(f)
    }

    pub fn prime(p: u32) -> Result<Self, HyperError> {
        Self::new(p, 1)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.0.q
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, x: i64) -> Elem {
        x.rem_euclid(self.0.p as i64) as Elem
    }

    /// Signed representative in (-p/2, p/2] of a prime-subfield element.
    pub fn to_signed(&self, x: Elem) -> Option<i64> {
        let p = self.0.p as i64;
        (x < self.0.p).then(|| if 2 * x as i64 > p { x as i64 - p } else { x as i64 })
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let t = &self.0;
        if t.k == 1 {
            return (a + b) % t.p;
        }
        match &t.add {
            Some(table) => table[(a * t.q + b) as usize],
            None => t.add_digits(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.0;
        let s = t.log[a as usize] + t.log[b as usize];
        let n = t.q - 1;
        t.exp[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let t = &self.0;
        let l = t.log[a as usize];
        Some(t.exp[((t.q - 1 - l) % (t.q - 1)) as usize])
    }

    pub fn pow(&self, a: Elem, e: u32) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &self.0;
        let l = (t.log[a as usize] as u64 * e as u64) % (t.q as u64 - 1);
        t.exp[l as usize]
    }

    /// The element t^i (t the class of the variable).
    pub fn generator_power(&self, i: u32) -> Elem {
        self.0.exp[(i % (self.0.q - 1)) as usize]
    }

    /// Embeds `sub` into `self` when its degree divides ours. Returns the
    /// image of every element of `sub`, indexed by element.
    pub fn embedding_from(&self, sub: &FiniteField) -> Result<Vec<Elem>, HyperError> {
        if sub.characteristic() != self.characteristic() || self.degree() % sub.degree() != 0 {
            return Err(HyperError::InvalidField(format!("{sub:?} does not embed in {self:?}")));
        }
        if sub.degree() == 1 {
            return Ok(sub.elements().collect());
        }
        // Least root of sub's modulus, found by evaluating at every element.
        let m = sub.modulus();
        let root = self
            .elements()
            .find(|&x| m.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c)) == 0)
            .expect("an irreducible polynomial splits in the extension");
        let (p, k) = (sub.characteristic(), sub.degree());
        Ok(sub
            .elements()
            .map(|a| {
                digits(a, p, k)
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (i, &c)| self.add(acc, self.mul(c, self.pow(root, i as u32))))
            })
            .collect())
    }
}

/// Whether a polynomial over GF(p) (low coefficient first) is irreducible,
/// by trial division by every monic polynomial of degree up to half.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 || poly[deg] == 0 {
        return false;
    }
    for dd in 1..=deg / 2 {
        for c in 0..(p as u64).pow(dd as u32) {
            let mut divisor = digits(c as u32, p, dd as u32);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().expect("non-empty");
        let shift = r.len() - 1 - db;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - lead) * c % p) % p;
        }
        r.pop();
    }
    r
}
