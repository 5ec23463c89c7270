//! Exact integer multivariate polynomials and truncated power series in
//! `λ_1, ..., λ_m`, and the product-expansion identity
//!
//! ```text
//! Π_α (1 - λ^α)^{n_α} = Σ_{J ⊆ [m]} (1 - χ(K_J)) λ^J
//! ```
//!
//! whose exponents `n_α` are the multigraded dimensions of `N_K`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::complexes::FlagComplex;
use crate::error::{Error, Result};

/// Default total-degree truncation.
pub const DEFAULT_MAX_DEGREE: u32 = 8;

pub type Exponent = Vec<u32>;

pub fn total_degree(alpha: &[u32]) -> u32 {
    alpha.iter().sum()
}

/// Integer polynomial in `nvars` variables. When `max_degree` is set the
/// value is a power series known modulo total degree `max_degree + 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    max_degree: Option<u32>,
    terms: BTreeMap<Exponent, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, max_degree: Option<u32>) -> Self {
        MultiPoly {
            nvars,
            max_degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, max_degree: Option<u32>) -> Self {
        let mut p = MultiPoly::zero(nvars, max_degree);
        p.add_term(vec![0; nvars], BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.max_degree
    }

    /// Adds `coeff · λ^alpha`, dropping it beyond the truncation.
    pub fn add_term(&mut self, alpha: Exponent, coeff: BigInt) {
        assert_eq!(alpha.len(), self.nvars, "exponent length");
        if coeff.is_zero() || self.max_degree.is_some_and(|d| total_degree(&alpha) > d) {
            return;
        }
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, alpha: &[u32]) -> BigInt {
        self.terms.get(alpha).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree with a nonzero coefficient.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|a| total_degree(a)).max()
    }

    pub fn truncate(&self, max_degree: u32) -> Self {
        let d = self.max_degree.map_or(max_degree, |d| d.min(max_degree));
        let mut out = MultiPoly::zero(self.nvars, Some(d));
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    fn combined_truncation(&self, other: &Self) -> Option<u32> {
        match (self.max_degree, other.max_degree) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars, self.combined_truncation(other));
        for (a, c) in self.terms.iter().chain(&other.terms) {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars, self.combined_truncation(other));
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c.clone());
        }
        for (a, c) in &other.terms {
            out.add_term(a.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars, self.combined_truncation(other));
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let e: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, c * d);
            }
        }
        out
    }

    /// Image under `λ_1 = ... = λ_m = x`.
    pub fn single_variable(&self) -> Self {
        let mut out = MultiPoly::zero(1, self.max_degree);
        for (a, c) in &self.terms {
            out.add_term(vec![total_degree(a)], c.clone());
        }
        out
    }

    /// Coefficients of the single-variable image, indexed by degree.
    pub fn univariate_coeffs(&self) -> Vec<BigInt> {
        let top = self.degree().unwrap_or(0) as usize;
        let mut out = vec![BigInt::zero(); top + 1];
        for (a, c) in &self.terms {
            out[total_degree(a) as usize] += c;
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exponent> = self.terms.keys().collect();
        keys.sort_by(|a, b| total_degree(a).cmp(&total_degree(b)).then(b.cmp(a)));
        for (k, alpha) in keys.into_iter().enumerate() {
            let c = &self.terms[alpha];
            let mono = monomial_string(alpha);
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}{mono}")?,
            }
        }
        if let Some(d) = self.max_degree {
            write!(f, " + O(deg {})", d + 1)?;
        }
        Ok(())
    }
}

fn monomial_string(alpha: &[u32]) -> String {
    if alpha.len() == 1 {
        return match alpha[0] {
            0 => String::new(),
            1 => "x".into(),
            e => format!("x^{e}"),
        };
    }
    let parts: Vec<String> = alpha
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("l{}", i + 1)
            } else {
                format!("l{}^{}", i + 1, e)
            }
        })
        .collect();
    parts.join("*")
}

/// Dimensions `n_α` keyed by multidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable {
    pub nvars: usize,
    pub max_degree: u32,
    pub n: BTreeMap<Exponent, u64>,
}

impl DimTable {
    pub fn new(nvars: usize, max_degree: u32) -> Self {
        DimTable {
            nvars,
            max_degree,
            n: BTreeMap::new(),
        }
    }

    pub fn get(&self, alpha: &[u32]) -> u64 {
        self.n.get(alpha).copied().unwrap_or(0)
    }

    /// Sets `n_α`, keeping only nonzero entries.
    pub fn set(&mut self, alpha: Exponent, value: u64) {
        if value == 0 {
            self.n.remove(&alpha);
        } else {
            self.n.insert(alpha, value);
        }
    }

    /// `n_k = Σ_{|α| = k} n_α` for `k = 0..=max_degree`.
    pub fn totals(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.max_degree as usize + 1];
        for (a, &v) in &self.n {
            let d = total_degree(a) as usize;
            if d < out.len() {
                out[d] += v;
            }
        }
        out
    }

    /// Aggregation onto one variable.
    pub fn single_variable(&self) -> DimTable {
        let mut out = DimTable::new(1, self.max_degree);
        for (k, v) in self.totals().into_iter().enumerate() {
            out.set(vec![k as u32], v);
        }
        out
    }
}

/// Dense coefficient table over every monomial of total degree `<= max_degree`,
/// ordered by total degree.
struct DenseSeries {
    exps: Vec<Exponent>,
    pos: HashMap<Exponent, usize>,
    coeffs: Vec<BigInt>,
}

impl DenseSeries {
    fn new(nvars: usize, max_degree: u32) -> Self {
        let mut exps = Vec::new();
        for d in 0..=max_degree {
            let mut cur = vec![0u32; nvars];
            compositions(d, 0, &mut cur, &mut exps);
        }
        let pos = exps
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let coeffs = vec![BigInt::zero(); exps.len()];
        DenseSeries { exps, pos, coeffs }
    }

    fn from_poly(p: &MultiPoly, max_degree: u32) -> Self {
        let mut s = DenseSeries::new(p.nvars, max_degree);
        for (a, c) in &p.terms {
            if let Some(&i) = s.pos.get(a) {
                s.coeffs[i] = c.clone();
            }
        }
        s
    }

    fn shifted_index(&self, i: usize, alpha: &[u32]) -> Option<usize> {
        let e = &self.exps[i];
        if e.iter().zip(alpha).any(|(x, y)| x < y) {
            return None;
        }
        let diff: Exponent = e.iter().zip(alpha).map(|(x, y)| x - y).collect();
        self.pos.get(&diff).copied()
    }

    /// Multiplies in place by `1 / (1 - λ^α)`.
    fn divide_by_factor(&mut self, alpha: &[u32]) {
        for i in 0..self.exps.len() {
            if let Some(j) = self.shifted_index(i, alpha) {
                let (lo, hi) = self.coeffs.split_at_mut(i);
                hi[0] += &lo[j];
            }
        }
    }

    /// Multiplies in place by `(1 - λ^α)`.
    fn multiply_by_factor(&mut self, alpha: &[u32]) {
        for i in (0..self.exps.len()).rev() {
            if let Some(j) = self.shifted_index(i, alpha) {
                let (lo, hi) = self.coeffs.split_at_mut(i);
                hi[0] -= &lo[j];
            }
        }
    }

    fn into_poly(self, nvars: usize, max_degree: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars, Some(max_degree));
        for (e, c) in self.exps.into_iter().zip(self.coeffs) {
            out.add_term(e, c);
        }
        out
    }
}

fn compositions(rest: u32, idx: usize, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
    if idx + 1 == cur.len() {
        cur[idx] = rest;
        out.push(cur.clone());
        cur[idx] = 0;
        return;
    }
    if cur.is_empty() {
        if rest == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for v in (0..=rest).rev() {
        cur[idx] = v;
        compositions(rest - v, idx + 1, cur, out);
    }
    cur[idx] = 0;
}

/// `Σ_{J ⊆ [m]} (1 - χ(K_J)) λ^J`, an exact square-free polynomial.
pub fn rhs_poly(k: &FlagComplex) -> MultiPoly {
    let mut p = MultiPoly::zero(k.m(), None);
    for set in k.subsets() {
        let e = k.euler_term(set).expect("subset of [m]");
        p.add_term(set.multidegree(k.m()), BigInt::from(e));
    }
    p
}

/// The unique table with `Π_{|α| <= D} (1 - λ^α)^{n_α} ≡ P` modulo total
/// degree `D + 1`, extracted degree by degree.
pub fn extract_exponents(p: &MultiPoly, max_degree: u32) -> Result<DimTable> {
    let nvars = p.nvars();
    if p.coeff(&vec![0; nvars]) != BigInt::one() {
        return Err(Error::Input(
            "series extraction needs constant term 1".into(),
        ));
    }
    let mut rest = DenseSeries::from_poly(p, max_degree);
    let mut table = DimTable::new(nvars, max_degree);
    let mut start = 1;
    for d in 1..=max_degree {
        let end = rest
            .exps
            .iter()
            .skip(start)
            .position(|e| total_degree(e) > d)
            .map_or(rest.exps.len(), |k| start + k);
        let mut found = Vec::new();
        for i in start..end {
            let c = &rest.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let n = -c;
            if n.is_negative() {
                return Err(Error::IdentityViolated {
                    alpha: rest.exps[i].clone(),
                    value: n.to_string(),
                });
            }
            let n = n
                .to_u64()
                .ok_or_else(|| Error::Inconsistent(format!("exponent {n} does not fit in u64")))?;
            found.push((rest.exps[i].clone(), n));
        }
        for (alpha, n) in found {
            for _ in 0..n {
                rest.divide_by_factor(&alpha);
            }
            table.set(alpha, n);
        }
        start = end;
    }
    Ok(table)
}

/// Re-expands `Π (1 - λ^α)^{n_α}` modulo total degree `D + 1`.
pub fn product_expansion(dims: &DimTable, max_degree: u32) -> MultiPoly {
    let mut s = DenseSeries::new(dims.nvars, max_degree);
    s.coeffs[0] = BigInt::one();
    for (alpha, &n) in &dims.n {
        if total_degree(alpha) <= max_degree {
            for _ in 0..n {
                s.multiply_by_factor(alpha);
            }
        }
    }
    s.into_poly(dims.nvars, max_degree)
}

/// Graded dimensions of the free Lie algebra on generators of the given
/// multidegrees, from the inverse `1 - Σ_g λ^{deg g}` of its enveloping
/// algebra's Hilbert series.
pub fn free_lie_series(nvars: usize, generators: &[Exponent], max_degree: u32) -> Result<DimTable> {
    let mut p = MultiPoly::one(nvars, None);
    for g in generators {
        if g.len() != nvars {
            return Err(Error::Input("generator degrees differ in length".into()));
        }
        if total_degree(g) < 2 {
            return Err(Error::Input(format!(
                "generator multidegree {g:?} has total degree below 2"
            )));
        }
        p.add_term(g.clone(), -BigInt::one());
    }
    extract_exponents(&p, max_degree)
}

/// Hilbert series `Π (1 - λ^α)^{-n_α}` of the symmetric algebra, i.e. the
/// PBW prediction for the enveloping algebra.
pub fn pbw_series(dims: &DimTable, max_degree: u32) -> MultiPoly {
    let mut s = DenseSeries::new(dims.nvars, max_degree);
    s.coeffs[0] = BigInt::one();
    for (alpha, &n) in &dims.n {
        if total_degree(alpha) <= max_degree && total_degree(alpha) > 0 {
            for _ in 0..n {
                s.divide_by_factor(alpha);
            }
        }
    }
    s.into_poly(dims.nvars, max_degree)
}
