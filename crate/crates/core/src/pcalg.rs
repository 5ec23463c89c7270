//! Partially commutative associative algebras over GF(2) on generators
//! `x_1, ..., x_m`, with `x_i x_j = x_j x_i` for every edge `{i, j}`:
//!
//! * `Enveloping`: the enveloping algebra `A = U(L_K)`;
//! * `SquareZero`: `B`, which also imposes `x_i^2 = 0`;
//! * `SquarePi`: `F_2[π]<u>` with `u_i^2 = π u_i` and `π` central of degree 1,
//!   the associated graded ring of the 2-adic Magnus filtration on the group
//!   ring of `RC_K` (see [`crate::coxeter`]).
//!
//! Basis words are lexicographically least representatives of trace-monoid
//! classes. Coefficients are GF(2), so an element is a set of words.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::complexes::FlagComplex;
use crate::error::{Error, Result};
use crate::gf2::{BitRow, Gf2Basis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Enveloping,
    SquareZero,
    SquarePi,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    complex: FlagComplex,
    kind: AlgebraKind,
}

/// Basis word `π^pi · x_{letters[0]} ... x_{letters[n-1]}`. Letters are
/// 1-based. `pi` is always 0 outside `SquarePi`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TraceWord {
    pub pi: u32,
    pub letters: Vec<u8>,
}

impl TraceWord {
    pub fn empty() -> Self {
        TraceWord::default()
    }

    /// Total degree, counting `π` as 1.
    pub fn degree(&self) -> u32 {
        self.pi + self.letters.len() as u32
    }

    pub fn multidegree(&self, m: usize) -> Vec<u32> {
        let mut out = vec![0; m];
        for &l in &self.letters {
            out[l as usize - 1] += 1;
        }
        out
    }
}

impl fmt::Debug for TraceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TraceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi == 0 && self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        match self.pi {
            0 => {}
            1 => parts.push("pi".to_string()),
            p => parts.push(format!("pi^{p}")),
        }
        parts.extend(self.letters.iter().map(|l| format!("x{l}")));
        write!(f, "{}", parts.join("*"))
    }
}

impl AlgebraSpec {
    pub fn new(complex: FlagComplex, kind: AlgebraKind) -> Arc<Self> {
        Arc::new(AlgebraSpec { complex, kind })
    }

    pub fn enveloping(complex: &FlagComplex) -> Arc<Self> {
        Self::new(complex.clone(), AlgebraKind::Enveloping)
    }

    pub fn square_zero(complex: &FlagComplex) -> Arc<Self> {
        Self::new(complex.clone(), AlgebraKind::SquareZero)
    }

    pub fn square_pi(complex: &FlagComplex) -> Arc<Self> {
        Self::new(complex.clone(), AlgebraKind::SquarePi)
    }

    pub fn complex(&self) -> &FlagComplex {
        &self.complex
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn m(&self) -> usize {
        self.complex.m()
    }

    #[inline]
    pub fn commutes(&self, a: u8, b: u8) -> bool {
        a != b && self.complex.is_edge(a as usize, b as usize)
    }

    fn check_letters(&self, letters: &[u8]) -> Result<()> {
        for &l in letters {
            if l == 0 || l as usize > self.m() {
                return Err(Error::VertexOutOfRange {
                    vertex: l as usize,
                    m: self.m(),
                });
            }
        }
        Ok(())
    }

    /// Normal form of a word; `None` is the zero class.
    pub fn normal_form(&self, letters: &[u8]) -> Result<Option<TraceWord>> {
        self.check_letters(letters)?;
        Ok(self.reduce(0, letters.to_vec()))
    }

    /// Normal form of `π^pi · letters` for validated letters.
    pub(crate) fn reduce(&self, mut pi: u32, mut letters: Vec<u8>) -> Option<TraceWord> {
        if self.kind != AlgebraKind::Enveloping {
            while let Some(q) = self.square_position(&letters) {
                if self.kind == AlgebraKind::SquareZero {
                    return None;
                }
                letters.remove(q);
                pi += 1;
            }
        }
        Some(TraceWord {
            pi,
            letters: self.lex_least(&letters),
        })
    }

    /// Position of the second letter of a pair `i ... i` whose in-between
    /// letters all commute with `i`, i.e. a pair that can be made adjacent.
    fn square_position(&self, letters: &[u8]) -> Option<usize> {
        for q in 1..letters.len() {
            let a = letters[q];
            for p in (0..q).rev() {
                let b = letters[p];
                if b == a {
                    return Some(q);
                }
                if !self.commutes(a, b) {
                    break;
                }
            }
        }
        None
    }

    /// Lexicographically least word in the swap class: repeatedly take the
    /// smallest letter that commutes with every letter before it.
    pub fn lex_least(&self, letters: &[u8]) -> Vec<u8> {
        let mut rest: Vec<u8> = letters.to_vec();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best: Option<usize> = None;
            for p in 0..rest.len() {
                let a = rest[p];
                if best.is_some_and(|b| rest[b] <= a) {
                    continue;
                }
                if rest[..p].iter().all(|&b| self.commutes(a, b)) {
                    best = Some(p);
                }
            }
            let p = best.expect("first letter is always available");
            out.push(rest.remove(p));
        }
        out
    }

    /// All normal-form words with letter multiset `alpha` (and `π^0`).
    pub fn multidegree_basis(&self, alpha: &[u32]) -> Vec<TraceWord> {
        assert_eq!(alpha.len(), self.m(), "multidegree length");
        let mut remaining = alpha.to_vec();
        let total: u32 = alpha.iter().sum();
        let mut word = Vec::with_capacity(total as usize);
        let mut out = Vec::new();
        self.extend_basis(&mut remaining, &mut word, total as usize, &mut out);
        out
    }

    fn extend_basis(
        &self,
        remaining: &mut [u32],
        word: &mut Vec<u8>,
        total: usize,
        out: &mut Vec<TraceWord>,
    ) {
        if word.len() == total {
            out.push(TraceWord {
                pi: 0,
                letters: word.clone(),
            });
            return;
        }
        for a in 1..=self.m() as u8 {
            if remaining[a as usize - 1] == 0 || !self.can_append(word, a) {
                continue;
            }
            remaining[a as usize - 1] -= 1;
            word.push(a);
            self.extend_basis(remaining, word, total, out);
            word.pop();
            remaining[a as usize - 1] += 1;
        }
    }

    /// `word · a` stays a normal form iff every letter of the maximal suffix
    /// commuting with `a` is smaller than `a`, and, when squares vanish, that
    /// suffix is not preceded by another `a`.
    fn can_append(&self, word: &[u8], a: u8) -> bool {
        for &b in word.iter().rev() {
            if b == a {
                return self.kind == AlgebraKind::Enveloping;
            }
            if !self.commutes(a, b) {
                return true;
            }
            if b > a {
                return false;
            }
        }
        true
    }
}

/// GF(2) combination of basis words, optionally known only up to a total
/// degree.
#[derive(Clone)]
pub struct AlgElem {
    spec: Arc<AlgebraSpec>,
    terms: BTreeSet<TraceWord>,
    truncation: Option<u32>,
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec)
            && self.truncation == other.truncation
            && self.terms == other.terms
    }
}

impl Eq for AlgElem {}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut words: Vec<&TraceWord> = self.terms.iter().collect();
        words.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.cmp(b)));
        let parts: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl AlgElem {
    pub fn zero(spec: &Arc<AlgebraSpec>, truncation: Option<u32>) -> Self {
        AlgElem {
            spec: spec.clone(),
            terms: BTreeSet::new(),
            truncation,
        }
    }

    pub fn one(spec: &Arc<AlgebraSpec>, truncation: Option<u32>) -> Self {
        let mut e = AlgElem::zero(spec, truncation);
        e.toggle(TraceWord::empty());
        e
    }

    /// The generator `x_i`.
    pub fn generator(spec: &Arc<AlgebraSpec>, i: usize, truncation: Option<u32>) -> Result<Self> {
        Self::from_word(spec, &[i as u8], truncation)
    }

    /// The image of `π` (only meaningful for `SquarePi`).
    pub fn pi(spec: &Arc<AlgebraSpec>, truncation: Option<u32>) -> Result<Self> {
        if spec.kind != AlgebraKind::SquarePi {
            return Err(Error::Domain(
                "pi exists only in the SquarePi algebra".into(),
            ));
        }
        let mut e = AlgElem::zero(spec, truncation);
        e.toggle(TraceWord {
            pi: 1,
            letters: Vec::new(),
        });
        Ok(e)
    }

    pub fn from_word(
        spec: &Arc<AlgebraSpec>,
        letters: &[u8],
        truncation: Option<u32>,
    ) -> Result<Self> {
        let mut e = AlgElem::zero(spec, truncation);
        if let Some(w) = spec.normal_form(letters)? {
            e.toggle(w);
        }
        Ok(e)
    }

    /// Builds an element from arbitrary (not necessarily normal) words.
    pub fn from_words<'a, I>(
        spec: &Arc<AlgebraSpec>,
        words: I,
        truncation: Option<u32>,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [u8]>,
    {
        let mut e = AlgElem::zero(spec, truncation);
        for w in words {
            if let Some(w) = spec.normal_form(w)? {
                e.toggle(w);
            }
        }
        Ok(e)
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn terms(&self) -> &BTreeSet<TraceWord> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds one basis word (GF(2): adding twice cancels). Words above the
    /// truncation are dropped.
    pub fn toggle(&mut self, word: TraceWord) {
        if self.truncation.is_some_and(|d| word.degree() > d) {
            return;
        }
        if !self.terms.remove(&word) {
            self.terms.insert(word);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !(Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec) {
            return Err(Error::SpecMismatch);
        }
        if self.truncation != other.truncation {
            return Err(Error::TruncationMismatch(self.truncation, other.truncation));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.check_compatible(other)?;
        for w in &other.terms {
            self.toggle(w.clone());
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = AlgElem::zero(&self.spec, self.truncation);
        let limit = self.truncation;
        for a in &self.terms {
            for b in &other.terms {
                if limit.is_some_and(|d| a.degree() + b.degree() > d) {
                    continue;
                }
                let mut letters = Vec::with_capacity(a.letters.len() + b.letters.len());
                letters.extend_from_slice(&a.letters);
                letters.extend_from_slice(&b.letters);
                if let Some(w) = self.spec.reduce(a.pi + b.pi, letters) {
                    out.toggle(w);
                }
            }
        }
        Ok(out)
    }

    /// Product with an explicit truncation, dropping words above `degree`.
    pub fn mul_truncated(&self, other: &Self, degree: u32) -> Result<Self> {
        let mut out = self.mul(other)?;
        out.terms.retain(|w| w.degree() <= degree);
        Ok(out)
    }

    /// `ab + ba`, the commutator over GF(2).
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let mut ab = self.mul(other)?;
        ab.add_assign(&other.mul(self)?)?;
        Ok(ab)
    }

    /// Part of total degree exactly `k`.
    pub fn component(&self, k: u32) -> Self {
        let mut out = AlgElem::zero(&self.spec, self.truncation);
        out.terms = self
            .terms
            .iter()
            .filter(|w| w.degree() == k)
            .cloned()
            .collect();
        out
    }

    /// Lowest total degree present.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.iter().map(TraceWord::degree).min()
    }

    /// Same element with a different truncation tag, dropping words above it.
    pub fn with_truncation(&self, truncation: Option<u32>) -> Self {
        let mut out = AlgElem::zero(&self.spec, truncation);
        for w in &self.terms {
            out.toggle(w.clone());
        }
        out
    }
}

/// Keeps, in order, the elements independent of those before them.
/// Returns the indices of the kept elements.
pub fn independent_subset(elems: &[AlgElem]) -> Vec<usize> {
    let mut columns: HashMap<&TraceWord, usize> = HashMap::new();
    for e in elems {
        for w in e.terms() {
            let n = columns.len();
            columns.entry(w).or_insert(n);
        }
    }
    let mut basis = Gf2Basis::new(columns.len());
    let mut kept = Vec::new();
    for (k, e) in elems.iter().enumerate() {
        let row = BitRow::from_indices(columns.len(), e.terms().iter().map(|w| columns[w]));
        if basis.insert(row) {
            kept.push(k);
        }
    }
    kept
}

/// GF(2) rank of a family of elements.
pub fn rank(elems: &[AlgElem]) -> usize {
    independent_subset(elems).len()
}

/// Coordinates of algebra elements with respect to a fixed list of words.
#[derive(Clone, Debug)]
pub struct WordIndex {
    index: HashMap<TraceWord, usize>,
}

impl WordIndex {
    pub fn new(words: Vec<TraceWord>) -> Self {
        WordIndex {
            index: words.into_iter().enumerate().map(|(k, w)| (w, k)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// `None` if the element has a word outside the index.
    pub fn row(&self, e: &AlgElem) -> Option<BitRow> {
        let mut row = BitRow::zeros(self.len());
        for w in e.terms() {
            row.flip(*self.index.get(w)?);
        }
        Some(row)
    }
}
