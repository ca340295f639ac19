//! `V = sum_{i in D} wedge^i sl(m+n)` with wedge monomials as basis and exact
//! torus weights attached to each of them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use super::lie::{SlBasis, Torus};
use super::RepError;
use crate::exactalg::{format_rational, Matrix, Rational};
use crate::group::GroupElement;

/// Finitely supported vector. Keys are basis labels of the owning module:
/// monomial bitmasks for wedge representations, ladder indices for irreducibles.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepVector {
    terms: BTreeMap<u64, Rational>,
}

impl RepVector {
    pub fn zero() -> Self {
        RepVector::default()
    }

    pub fn basis(key: u64) -> Self {
        RepVector::from_terms([(key, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, Rational)>) -> Self {
        let mut v = RepVector::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, key: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<u64, Rational> {
        &self.terms
    }

    pub fn coeff(&self, key: u64) -> Rational {
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied()
    }

    pub fn plus(&self, other: &RepVector) -> RepVector {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn minus(&self, other: &RepVector) -> RepVector {
        self.plus(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> RepVector {
        RepVector::from_terms(self.terms.iter().map(|(k, x)| (*k, x * c)))
    }

    /// Terms whose key satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(u64) -> bool) -> RepVector {
        RepVector { terms: self.terms.iter().filter(|(k, _)| keep(**k)).map(|(k, c)| (*k, c.clone())).collect() }
    }
}

/// An `SL(d)`-module with a weight grading under one or more diagonal tori.
pub trait GradedModule {
    /// Weight of basis label `key` under torus number `torus`.
    fn weight(&self, key: u64, torus: usize) -> i64;
    /// Number of tori in the grading.
    fn torus_count(&self) -> usize;

    /// `v^lambda`: the component of weight `lambda`.
    fn weight_component(&self, v: &RepVector, torus: usize, lambda: i64) -> RepVector {
        v.filter(|k| self.weight(k, torus) == lambda)
    }

    fn lambda_max(&self, v: &RepVector, torus: usize) -> Result<i64, RepError> {
        v.support().map(|k| self.weight(k, torus)).max().ok_or(RepError::ZeroVector)
    }

    fn lambda_min(&self, v: &RepVector, torus: usize) -> Result<i64, RepError> {
        v.support().map(|k| self.weight(k, torus)).min().ok_or(RepError::ZeroVector)
    }

    /// `v^max`.
    fn max_component(&self, v: &RepVector, torus: usize) -> Result<RepVector, RepError> {
        let top = self.lambda_max(v, torus)?;
        Ok(self.weight_component(v, torus, top))
    }
}

#[derive(Clone, Debug)]
pub struct WeightGradedRep {
    m: usize,
    n: usize,
    degrees: BTreeSet<usize>,
    lie: SlBasis,
    tori: Vec<Torus>,
    /// `element_weights[t][b]`: weight of Lie basis element `b` under torus `t`.
    element_weights: Vec<Vec<i64>>,
    /// `k` when `n = k m` and the tori `A_1..A_k` follow `A`.
    blocks: Option<usize>,
}

/// Full direct sums are allowed up to this `m + n`.
pub const FULL_SUM_LIMIT: usize = 4;
/// Single wedge degrees are allowed up to this `m + n`.
pub const SINGLE_DEGREE_LIMIT: usize = 5;

pub fn build_rep(m: usize, n: usize, degrees: &[usize]) -> Result<WeightGradedRep, RepError> {
    let d = m + n;
    if m == 0 || n == 0 {
        return Err(RepError::ShapeMismatch("m and n must be positive".into()));
    }
    let dim_g = d * d - 1;
    let degrees: BTreeSet<usize> = degrees.iter().copied().collect();
    if degrees.is_empty() || degrees.iter().any(|&k| k == 0 || k > dim_g) {
        return Err(RepError::InvalidDegree(format!("degrees must lie in 1..={dim_g}")));
    }
    let within = d <= FULL_SUM_LIMIT || (d <= SINGLE_DEGREE_LIMIT && degrees.len() == 1);
    if !within {
        return Err(RepError::DimensionBudgetExceeded(format!(
            "m+n = {d} with {} degree(s); limit is {FULL_SUM_LIMIT} for sums, {SINGLE_DEGREE_LIMIT} for one degree",
            degrees.len()
        )));
    }
    let lie = SlBasis::new(d);
    let mut tori = vec![Torus::flow(m, n)];
    let blocks = (n % m == 0).then_some(n / m);
    if let Some(k) = blocks {
        tori.extend((1..=k).map(|i| Torus::block(m, k, i)));
    }
    let element_weights = tori.iter().map(|t| (0..lie.len()).map(|b| lie.weight(b, t)).collect()).collect();
    Ok(WeightGradedRep { m, n, degrees, lie, tori, element_weights, blocks })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Next bitmask with the same popcount (numeric order = colex order).
fn next_mask(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

impl WeightGradedRep {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.m + self.n
    }

    pub fn lie(&self) -> &SlBasis {
        &self.lie
    }

    pub fn degrees(&self) -> &BTreeSet<usize> {
        &self.degrees
    }

    pub fn tori(&self) -> &[Torus] {
        &self.tori
    }

    /// `k` for the block grading `(A_1, ..., A_k)`.
    pub fn block_count(&self) -> Option<usize> {
        self.blocks
    }

    pub fn dim(&self) -> usize {
        self.degrees.iter().map(|&k| binomial(self.lie.len(), k)).sum()
    }

    /// Basis labels in index order: by degree, then colex within a degree.
    pub fn basis(&self) -> impl Iterator<Item = u64> + '_ {
        let top = 1u64 << self.lie.len();
        self.degrees.iter().flat_map(move |&k| {
            std::iter::successors(Some((1u64 << k) - 1), move |&x| Some(next_mask(x))).take_while(move |&x| x < top)
        })
    }

    pub fn contains(&self, key: u64) -> bool {
        key >> self.lie.len() == 0 && self.degrees.contains(&(key.count_ones() as usize))
    }

    /// Position of a monomial in `basis()`.
    pub fn index_of(&self, key: u64) -> Option<usize> {
        if !self.contains(key) {
            return None;
        }
        let k = key.count_ones() as usize;
        let offset: usize = self.degrees.range(..k).map(|&j| binomial(self.lie.len(), j)).sum();
        let rank: usize = bits(key).enumerate().map(|(i, b)| binomial(b, i + 1)).sum();
        Some(offset + rank)
    }

    /// Weight vector under `(A_1, ..., A_k)`.
    pub fn block_weights(&self, key: u64) -> Result<Vec<i64>, RepError> {
        let k = self.blocks.ok_or(RepError::GradingMissing)?;
        Ok((1..=k).map(|t| self.weight(key, t)).collect())
    }

    /// Weight under an arbitrary diagonal torus.
    pub fn weight_under(&self, key: u64, torus: &Torus) -> i64 {
        bits(key).map(|b| self.lie.weight(b, torus)).sum()
    }

    /// Sparse `(index, coefficient)` pairs.
    pub fn serialize_vector(&self, v: &RepVector) -> Vec<(usize, String)> {
        let mut out: Vec<(usize, String)> = v
            .terms()
            .iter()
            .filter_map(|(k, c)| Some((self.index_of(*k)?, format_rational(c))))
            .collect();
        out.sort();
        out
    }

    pub fn label(&self, key: u64) -> String {
        let names: Vec<String> = bits(key)
            .map(|b| match self.lie.element(b) {
                super::lie::BasisElement::Root(i, j) => format!("E{i}{j}"),
                super::lie::BasisElement::Cartan(i) => format!("H{i}"),
            })
            .collect();
        names.join("^")
    }

    /// Columns of `Ad(g)` restricted to the basis elements in `needed`.
    fn adjoint_images(&self, g: &Matrix<Rational>, ginv: &Matrix<Rational>, needed: u64) -> Vec<Vec<(usize, Rational)>> {
        (0..self.lie.len())
            .map(|b| {
                if needed >> b & 1 == 0 {
                    Vec::new()
                } else {
                    let conj = &(g * &self.lie.matrix(b)) * ginv;
                    self.lie.coordinates(&conj)
                }
            })
            .collect()
    }

    /// `(wedge Ad)(g) v`.
    pub fn act_matrix(&self, g: &Matrix<Rational>, v: &RepVector) -> Result<RepVector, RepError> {
        let d = self.d();
        if g.rows() != d || g.cols() != d {
            return Err(RepError::ShapeMismatch(format!("group element must be {d}x{d}")));
        }
        if let Some(k) = v.support().find(|k| !self.contains(*k)) {
            return Err(RepError::ShapeMismatch(format!("basis label {k:#b} is not in this representation")));
        }
        let ginv = g.inverse().map_err(|e| RepError::ShapeMismatch(e.to_string()))?;
        let needed = v.support().fold(0u64, |acc, k| acc | k);
        let images = self.adjoint_images(g, &ginv, needed);
        let mut out = RepVector::zero();
        for (key, c) in v.terms() {
            for (mask, coeff) in wedge_images(*key, &images) {
                out.add_term(mask, coeff * c);
            }
        }
        Ok(out)
    }

    pub fn act(&self, g: &GroupElement, v: &RepVector) -> Result<RepVector, RepError> {
        self.act_matrix(g.matrix(), v)
    }
}

impl GradedModule for WeightGradedRep {
    fn weight(&self, key: u64, torus: usize) -> i64 {
        bits(key).map(|b| self.element_weights[torus][b]).sum()
    }

    fn torus_count(&self) -> usize {
        self.tori.len()
    }
}

/// Set bit positions in increasing order.
pub(crate) fn bits(mut key: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if key == 0 {
            None
        } else {
            let b = key.trailing_zeros() as usize;
            key &= key - 1;
            Some(b)
        }
    })
}

/// Expands `img(b_1) ^ img(b_2) ^ ...` for the bits of `key` in increasing order.
fn wedge_images(key: u64, images: &[Vec<(usize, Rational)>]) -> HashMap<u64, Rational> {
    let mut cur: HashMap<u64, Rational> = HashMap::from([(0u64, Rational::one())]);
    for b in bits(key) {
        let mut next: HashMap<u64, Rational> = HashMap::new();
        for (set, c) in &cur {
            for (j, a) in &images[b] {
                let bit = 1u64 << j;
                if set & bit != 0 {
                    continue;
                }
                // moving e_j left past the larger indices already present
                let above = (set >> (j + 1)).count_ones();
                let term = if above % 2 == 0 { c * a } else { -(c * a) };
                let slot = next.entry(set | bit).or_insert_with(Rational::zero);
                *slot += term;
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    cur
}

/// The irreducible `SL(2)`-module of dimension `r + 1` on binary forms of degree `r`,
/// basis `w_i = x^{r-i} y^i` of weight `r - 2i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Irrep {
    pub r: usize,
}

impl Sl2Irrep {
    pub fn with_dim(dim: usize) -> Self {
        assert!(dim >= 1);
        Sl2Irrep { r: dim - 1 }
    }

    pub fn dim(&self) -> usize {
        self.r + 1
    }

    /// `g = [[a, b], [c, d]]` acts by `x -> a x + c y`, `y -> b x + d y`.
    pub fn act(&self, abcd: [&Rational; 4], v: &RepVector) -> RepVector {
        let [a, b, c, d] = abcd;
        let lin_x = [a.clone(), c.clone()];
        let lin_y = [b.clone(), d.clone()];
        let mut out = RepVector::zero();
        for (key, coeff) in v.terms() {
            let i = *key as usize;
            // coefficients indexed by the power of y
            let mut poly = vec![coeff.clone()];
            for _ in 0..self.r - i {
                poly = mul_linear(&poly, &lin_x);
            }
            for _ in 0..i {
                poly = mul_linear(&poly, &lin_y);
            }
            for (j, cj) in poly.into_iter().enumerate() {
                out.add_term(j as u64, cj);
            }
        }
        out
    }
}

fn mul_linear(p: &[Rational], lin: &[Rational; 2]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i] += c * &lin[0];
        out[i + 1] += c * &lin[1];
    }
    out
}

impl GradedModule for Sl2Irrep {
    fn weight(&self, key: u64, _torus: usize) -> i64 {
        self.r as i64 - 2 * key as i64
    }

    fn torus_count(&self) -> usize {
        1
    }
}
