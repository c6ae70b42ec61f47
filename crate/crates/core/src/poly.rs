//! Exponents, supports, complex-coefficient polynomials and systems.
//!
//! A [`Support`] is a finite, duplicate-free set of exponent vectors with a
//! fixed canonical ordering (ascending lexicographic). All matrix indexing in
//! the crate is derived from that ordering, so it must never change.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Exponent vector of a monomial: n nonnegative integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    pub fn zero(dim: usize) -> Self {
        Exponent(vec![0; dim])
    }

    /// Standard basis vector e_l (0-based l).
    pub fn unit(dim: usize, l: usize) -> Self {
        let mut e = vec![0; dim];
        e[l] = 1;
        Exponent(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.dim(), other.dim());
        Exponent(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Concatenation, used for Cartesian products of supports.
    pub fn concat(&self, other: &Exponent) -> Exponent {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        Exponent(e)
    }

    /// z^alpha with the convention 0^0 = 1.
    pub fn eval(&self, z: &[C64]) -> C64 {
        let mut acc = C64::new(1.0, 0.0);
        for (&a, &zl) in self.0.iter().zip(z.iter()) {
            acc *= cpow(zl, a);
        }
        acc
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// z^k by repeated squaring; 0^0 = 1.
pub(crate) fn cpow(z: C64, k: u32) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    let mut base = z;
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    acc
}

/// Finite duplicate-free set of exponents in a fixed (lexicographic) order.
#[derive(Clone)]
pub struct Support {
    exps: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
    dim: usize,
}

impl Support {
    /// Builds a support from arbitrary exponents: deduplicates and sorts.
    pub fn new<I: IntoIterator<Item = Exponent>>(dim: usize, exps: I) -> Result<Self> {
        let mut v: Vec<Exponent> = Vec::new();
        for e in exps {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: e.dim(),
                });
            }
            v.push(e);
        }
        v.sort_unstable();
        v.dedup();
        let index = v.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Ok(Support {
            exps: v,
            index,
            dim,
        })
    }

    pub fn from_rows(dim: usize, rows: &[Vec<u32>]) -> Result<Self> {
        Support::new(dim, rows.iter().map(|r| Exponent::new(r.clone())))
    }

    /// The support {0}.
    pub fn origin(dim: usize) -> Self {
        Support::new(dim, [Exponent::zero(dim)]).expect("origin support")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn get(&self, i: usize) -> &Exponent {
        &self.exps[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Exponent> {
        self.exps.iter()
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    /// Position of `e` in the fixed order.
    pub fn position(&self, e: &Exponent) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        self.index.contains_key(e)
    }

    pub fn is_subset_of(&self, other: &Support) -> bool {
        self.exps.iter().all(|e| other.contains(e))
    }

    pub fn union(&self, other: &Support) -> Result<Support> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Support::new(self.dim, self.exps.iter().chain(other.iter()).cloned())
    }

    /// Set difference self \ other, order preserved.
    pub fn difference(&self, other: &Support) -> Support {
        let exps: Vec<Exponent> = self
            .exps
            .iter()
            .filter(|e| !other.contains(e))
            .cloned()
            .collect();
        Support::new(self.dim, exps).expect("difference keeps dimension")
    }
}

impl PartialEq for Support {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.exps == other.exps
    }
}
impl Eq for Support {}

impl fmt::Debug for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Support(dim={}, {:?})", self.dim, self.exps)
    }
}

/// Row vector (z^alpha : alpha in E) in E's fixed order.
pub fn monomial_vector(z: &[C64], e: &Support) -> Result<Vec<C64>> {
    if z.len() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            got: z.len(),
        });
    }
    Ok(e.iter().map(|a| a.eval(z)).collect())
}

/// Sparse complex-coefficient polynomial; no zero coefficient is stored.
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    terms: BTreeMap<Exponent, C64>,
    dim: usize,
}

impl Polynomial {
    pub fn new<I: IntoIterator<Item = (Exponent, C64)>>(dim: usize, terms: I) -> Result<Self> {
        let mut map: BTreeMap<Exponent, C64> = BTreeMap::new();
        for (e, c) in terms {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: e.dim(),
                });
            }
            *map.entry(e).or_insert_with(|| C64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| *c != C64::new(0.0, 0.0));
        Ok(Polynomial { terms: map, dim })
    }

    /// Convenience constructor from (exponent row, re, im) triples.
    pub fn from_terms(dim: usize, terms: &[(Vec<u32>, f64, f64)]) -> Result<Self> {
        Polynomial::new(
            dim,
            terms
                .iter()
                .map(|(e, re, im)| (Exponent::new(e.clone()), C64::new(*re, *im))),
        )
    }

    pub fn constant(dim: usize, c: C64) -> Self {
        Polynomial::new(dim, [(Exponent::zero(dim), c)]).expect("constant")
    }

    pub fn monomial(dim: usize, e: Exponent, c: C64) -> Result<Self> {
        Polynomial::new(dim, [(e, c)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> C64 {
        self.terms
            .get(e)
            .copied()
            .unwrap_or_else(|| C64::new(0.0, 0.0))
    }

    pub fn support(&self) -> Support {
        Support::new(self.dim, self.terms.keys().cloned()).expect("support of polynomial")
    }

    pub fn evaluate(&self, z: &[C64]) -> Result<C64> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        let mut acc = C64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            acc += c * e.eval(z);
        }
        Ok(acc)
    }

    pub fn scale(&self, c: C64) -> Polynomial {
        Polynomial::new(self.dim, self.terms.iter().map(|(e, v)| (e.clone(), v * c)))
            .expect("scale keeps dimension")
    }

    /// x^beta * self.
    pub fn mul_monomial(&self, beta: &Exponent) -> Result<Polynomial> {
        if beta.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: beta.dim(),
            });
        }
        Polynomial::new(self.dim, self.terms.iter().map(|(e, c)| (e.add(beta), *c)))
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Polynomial::new(
            self.dim,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, c)| (e.clone(), *c)),
        )
    }

    /// Coefficient-level product (term convolution).
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut terms: Vec<(Exponent, C64)> =
            Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                terms.push((a.add(b), ca * cb));
            }
        }
        Polynomial::new(self.dim, terms)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Polynomial(dim={}, {} terms)",
            self.dim,
            self.terms.len()
        )
    }
}

/// Tuple of s >= 1 polynomials sharing one ambient dimension.
#[derive(Clone, Debug)]
pub struct PolySystem {
    polys: Vec<Polynomial>,
    dim: usize,
}

impl PolySystem {
    pub fn new(polys: Vec<Polynomial>) -> Result<Self> {
        let dim = polys.first().ok_or(Error::EmptySystem)?.dim();
        for p in &polys {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        Ok(PolySystem { polys, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn get(&self, i: usize) -> &Polynomial {
        &self.polys[i]
    }

    pub fn supports(&self) -> Vec<Support> {
        self.polys.iter().map(|p| p.support()).collect()
    }
}

/// Averaged relative residual of a candidate root.
///
/// (1/s) * sum_i |f_i(z)| / (sum_{alpha in A_i} |c_{i,alpha} z^alpha| + 1)
pub fn backward_error(f: &PolySystem, z: &[C64]) -> Result<f64> {
    if z.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: z.len(),
        });
    }
    let mut total = 0.0;
    for p in f.polys() {
        let mut num = C64::new(0.0, 0.0);
        let mut den = 1.0;
        for (e, c) in p.terms() {
            let t = c * e.eval(z);
            num += t;
            den += t.norm();
        }
        total += num.norm() / den;
    }
    Ok(total / f.len() as f64)
}

/// Coefficient distribution for random polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffDist {
    /// Real standard normal coefficients.
    RealNormal,
    /// Complex standard normal: independent N(0, 1/2) real and imaginary parts.
    ComplexNormal,
}

pub(crate) fn draw_coeff<R: Rng + ?Sized>(rng: &mut R, dist: CoeffDist) -> C64 {
    match dist {
        CoeffDist::RealNormal => {
            let x: f64 = StandardNormal.sample(rng);
            C64::new(x, 0.0)
        }
        CoeffDist::ComplexNormal => {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im) / 2.0_f64.sqrt()
        }
    }
}

/// Random polynomial with support exactly `a` and i.i.d. coefficients.
///
/// An exactly-zero draw is resampled so the stored support equals `a`.
pub fn random_polynomial<R: Rng + ?Sized>(
    a: &Support,
    rng: &mut R,
    dist: CoeffDist,
) -> Result<Polynomial> {
    if a.is_empty() {
        return Err(Error::EmptySupport);
    }
    let mut terms = Vec::with_capacity(a.len());
    for e in a.iter() {
        let mut c = draw_coeff(rng, dist);
        while c == C64::new(0.0, 0.0) {
            c = draw_coeff(rng, dist);
        }
        terms.push((e.clone(), c));
    }
    Polynomial::new(a.dim(), terms)
}
