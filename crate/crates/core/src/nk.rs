//! Lie polynomials over GF(2), their evaluation in `A = U(L_K)`, rewriting
//! of nested commutators without repeats, and the Lie subalgebra
//! `N_K ⊂ L_K` generated by the GPTW generators.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::complexes::{CommIndex, FlagComplex, VertexSet};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gf2::Gf2Basis;
use crate::pcalg::{AlgElem, AlgebraSpec, TraceWord, WordIndex};
use crate::series::{total_degree, DimTable, Exponent};

/// Default cap on the number of basis words of one multidegree component.
pub const DEFAULT_COLUMN_CAP: usize = 20_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Leaf {
    /// The generator `μ_i`.
    Mu(u8),
    /// A named nested commutator `c(J \ j, j)` on the `μ_i`.
    Nested(CommIndex),
}

impl Leaf {
    pub fn multidegree(self, m: usize) -> Exponent {
        match self {
            Leaf::Mu(i) => {
                let mut e = vec![0; m];
                e[i as usize - 1] = 1;
                e
            }
            Leaf::Nested(c) => c.multidegree(m),
        }
    }

    pub fn degree(self) -> usize {
        match self {
            Leaf::Mu(_) => 1,
            Leaf::Nested(c) => c.degree(),
        }
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf::Mu(i) => write!(f, "g{i}"),
            Leaf::Nested(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Debug for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A binary bracket tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieTree {
    Leaf(Leaf),
    Bracket(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    pub fn mu(i: usize) -> Self {
        LieTree::Leaf(Leaf::Mu(i as u8))
    }

    pub fn symbol(c: CommIndex) -> Self {
        LieTree::Leaf(Leaf::Nested(c))
    }

    pub fn bracket(a: LieTree, b: LieTree) -> Self {
        LieTree::Bracket(Box::new(a), Box::new(b))
    }

    /// `[μ_{l_1}, [μ_{l_2}, ... [μ_{l_{n-1}}, μ_{l_n}]...]]`.
    pub fn nested(letters: &[usize]) -> Self {
        assert!(!letters.is_empty(), "nested commutator needs a letter");
        let (&last, outer) = letters.split_last().expect("nonempty");
        outer.iter().rev().fold(LieTree::mu(last), |acc, &i| {
            LieTree::bracket(LieTree::mu(i), acc)
        })
    }

    /// Letters of a right-normed tree over `μ` leaves.
    pub fn nested_letters(&self) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                LieTree::Leaf(Leaf::Mu(i)) => {
                    out.push(*i as usize);
                    return Some(out);
                }
                LieTree::Leaf(Leaf::Nested(_)) => return None,
                LieTree::Bracket(a, b) => match **a {
                    LieTree::Leaf(Leaf::Mu(i)) => {
                        out.push(i as usize);
                        cur = b;
                    }
                    _ => return None,
                },
            }
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            LieTree::Leaf(l) => l.degree(),
            LieTree::Bracket(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn multidegree(&self, m: usize) -> Exponent {
        match self {
            LieTree::Leaf(l) => l.multidegree(m),
            LieTree::Bracket(a, b) => {
                let mut e = a.multidegree(m);
                for (x, y) in e.iter_mut().zip(b.multidegree(m)) {
                    *x += y;
                }
                e
            }
        }
    }

    pub fn leaves(&self) -> Vec<Leaf> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Leaf>) {
        match self {
            LieTree::Leaf(l) => out.push(*l),
            LieTree::Bracket(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }
}

impl fmt::Display for LieTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieTree::Leaf(l) => write!(f, "{l}"),
            LieTree::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

impl fmt::Debug for LieTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Formal GF(2) sum of bracket trees; identical trees cancel.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiePoly {
    terms: BTreeSet<LieTree>,
}

impl LiePoly {
    pub fn zero() -> Self {
        LiePoly::default()
    }

    pub fn from_tree(t: LieTree) -> Self {
        let mut p = LiePoly::zero();
        p.toggle(t);
        p
    }

    pub fn toggle(&mut self, t: LieTree) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn add_assign(&mut self, other: &LiePoly) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }

    pub fn add(&self, other: &LiePoly) -> LiePoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Bilinear formal bracket; `[s, s]` terms are dropped.
    pub fn bracket(&self, other: &LiePoly) -> LiePoly {
        let mut out = LiePoly::zero();
        for a in &self.terms {
            for b in &other.terms {
                if a != b {
                    out.toggle(LieTree::bracket(a.clone(), b.clone()));
                }
            }
        }
        out
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

    pub fn terms(&self) -> impl Iterator<Item = &LieTree> {
        self.terms.iter()
    }

    /// Common multidegree of all terms, or `None` when empty or mixed.
    pub fn multidegree(&self, m: usize) -> Option<Exponent> {
        let mut it = self.terms.iter().map(|t| t.multidegree(m));
        let first = it.next()?;
        it.all(|e| e == first).then_some(first)
    }
}

impl FromIterator<LieTree> for LiePoly {
    fn from_iter<I: IntoIterator<Item = LieTree>>(iter: I) -> Self {
        let mut p = LiePoly::zero();
        for t in iter {
            p.toggle(t);
        }
        p
    }
}

impl fmt::Display for LiePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LiePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Image of a tree under `μ_i ↦ x_i`, brackets becoming commutators.
pub fn eval_tree(t: &LieTree, spec: &Arc<AlgebraSpec>) -> Result<AlgElem> {
    match t {
        LieTree::Leaf(Leaf::Mu(i)) => AlgElem::generator(spec, *i as usize, None),
        LieTree::Leaf(Leaf::Nested(c)) => eval_tree(&LieTree::nested(&c.letters()), spec),
        LieTree::Bracket(a, b) => eval_tree(a, spec)?.commutator(&eval_tree(b, spec)?),
    }
}

pub fn eval_lie(p: &LiePoly, spec: &Arc<AlgebraSpec>) -> Result<AlgElem> {
    let mut out = AlgElem::zero(spec, None);
    for t in p.terms() {
        out.add_assign(&eval_tree(t, spec)?)?;
    }
    Ok(out)
}

/// `c_V(P, x) = [μ_{p_1}, [μ_{p_2}, ... [μ_{p_s}, x]...]]` for the letters
/// `p_1, ..., p_s` of `prefix`.
pub fn apply_nested(prefix: &[usize], x: &LiePoly) -> LiePoly {
    prefix.iter().rev().fold(x.clone(), |acc, &i| {
        LiePoly::from_tree(LieTree::mu(i)).bracket(&acc)
    })
}

/// Expansion of `c_V(I, [x, y])` as `Σ_{I = A ⊔ B} [c_V(A, x), c_V(B, y)]`.
/// `positions` are 1-based ascending positions into `v`.
pub fn expand_c(positions: &[usize], x: &LiePoly, y: &LiePoly, v: &[usize]) -> Result<LiePoly> {
    for w in positions.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::Contract("positions must be ascending".into()));
        }
    }
    if positions.iter().any(|&p| p == 0 || p > v.len()) {
        return Err(Error::Contract("position outside the sequence".into()));
    }
    let letters: Vec<usize> = positions.iter().map(|&p| v[p - 1]).collect();
    let mut out = LiePoly::zero();
    for mask in 0u32..(1 << letters.len()) {
        let pick = |bit: u32| -> Vec<usize> {
            letters
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == bit)
                .map(|(_, &l)| l)
                .collect()
        };
        let (a, b) = (pick(1), pick(0));
        out.add_assign(&apply_nested(&a, x).bracket(&apply_nested(&b, y)));
    }
    Ok(out)
}

/// Rewrites a nested commutator without repeats as a Lie polynomial on
/// right-normed commutators `[μ_{t_1}, [... [μ_{t_s}, μ_i]...]]` with
/// `t_1 < ... < t_s > i`.
pub fn order_nested(t: &LieTree) -> Result<LiePoly> {
    let letters = t
        .nested_letters()
        .ok_or_else(|| Error::Contract(format!("{t} is not a nested commutator on generators")))?;
    let distinct: BTreeSet<usize> = letters.iter().copied().collect();
    if distinct.len() != letters.len() {
        return Err(Error::Contract(format!("{t} has a repeated letter")));
    }
    if letters.len() < 2 {
        return Ok(LiePoly::from_tree(t.clone()));
    }
    Ok(order_sequence(&letters))
}

fn order_sequence(seq: &[usize]) -> LiePoly {
    let n = seq.len();
    if n == 2 {
        let (a, b) = (seq[0].max(seq[1]), seq[0].min(seq[1]));
        return LiePoly::from_tree(LieTree::nested(&[a, b]));
    }
    let mut s = seq.to_vec();
    let mut out = LiePoly::zero();
    if s[n - 2] < s[n - 1] {
        s.swap(n - 2, n - 1);
    }
    let k = n - 2;
    // bubble sort of the outer letters; each swap costs a shorter correction
    loop {
        let mut swapped = false;
        for t in 0..k.saturating_sub(1) {
            if s[t] > s[t + 1] {
                out.add_assign(&swap_correction(&s[..t], s[t], s[t + 1], &s[t + 2..]));
                s.swap(t, t + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    if k >= 1 && s[k - 1] > s[k] {
        let prefix = &s[..k - 1];
        let (top, mid, j) = (s[k - 1], s[k], s[k + 1]);
        let mut first = prefix.to_vec();
        first.extend([j, top, mid]);
        let mut second = prefix.to_vec();
        second.extend([mid, top, j]);
        out.add_assign(&order_sequence(&first));
        out.add_assign(&order_sequence(&second));
        return out;
    }
    out.toggle(LieTree::nested(&s));
    out
}

/// `c(P, [[μ_a, μ_b], x])` with `x` the nested commutator on `inner`,
/// expanded and ordered.
fn swap_correction(prefix: &[usize], a: usize, b: usize, inner: &[usize]) -> LiePoly {
    let mut out = LiePoly::zero();
    for mask in 0u32..(1 << prefix.len()) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (k, &l) in prefix.iter().enumerate() {
            if mask >> k & 1 == 1 {
                left.push(l);
            } else {
                right.push(l);
            }
        }
        left.extend([a, b]);
        right.extend_from_slice(inner);
        out.add_assign(&order_sequence(&left).bracket(&order_sequence(&right)));
    }
    out
}

/// Evaluated GPTW generators of a complex, for repeated linear solves.
#[derive(Clone, Debug)]
pub struct GptwExpander {
    complex: FlagComplex,
    spec: Arc<AlgebraSpec>,
    gens: Vec<(CommIndex, AlgElem)>,
}

impl GptwExpander {
    pub fn new(complex: &FlagComplex) -> Result<Self> {
        let spec = AlgebraSpec::enveloping(complex);
        let gens = complex
            .gptw_index()
            .into_iter()
            .map(|c| Ok((c, eval_tree(&LieTree::symbol(c), &spec)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GptwExpander {
            complex: complex.clone(),
            spec,
            gens,
        })
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn generators(&self) -> impl Iterator<Item = CommIndex> + '_ {
        self.gens.iter().map(|(c, _)| *c)
    }

    /// A Lie polynomial on GPTW symbols equal to `p` in `L_K`. `p` must be
    /// homogeneous of square-free multidegree.
    pub fn express(&self, p: &LiePoly) -> Result<LiePoly> {
        let m = self.complex.m();
        if p.is_zero() {
            return Ok(LiePoly::zero());
        }
        let alpha = p
            .multidegree(m)
            .ok_or_else(|| Error::Domain(format!("{p} is not homogeneous")))?;
        if alpha.iter().any(|&a| a > 1) {
            return Err(Error::Domain(format!("{p} has a repeated letter")));
        }
        if p.len() == 1 {
            let t = p.terms().next().expect("one term");
            if let LieTree::Leaf(Leaf::Nested(c)) = t {
                if self.complex.is_gptw(*c) {
                    return Ok(p.clone());
                }
            }
            if let Some(c) = t.nested_letters().and_then(|l| self.as_gptw(&l)) {
                return Ok(LiePoly::from_tree(LieTree::symbol(c)));
            }
        }
        let target = eval_lie(p, &self.spec)?;
        if target.is_zero() {
            return Ok(LiePoly::zero());
        }
        let support = VertexSet::from_vertices(
            m,
            alpha
                .iter()
                .enumerate()
                .filter(|(_, &a)| a == 1)
                .map(|(i, _)| i + 1),
        )?;
        let mut sequences = Vec::new();
        self.cover_sequences(support, &mut Vec::new(), &mut sequences);
        let index = WordIndex::new(self.spec.multidegree_basis(&alpha));
        let mut basis = Gf2Basis::new(index.len());
        let mut trees = Vec::with_capacity(sequences.len());
        for seq in sequences {
            let (tree, elem) = self.right_normed(&seq)?;
            let row = index
                .row(&elem)
                .ok_or_else(|| Error::Inconsistent("bracket left its multidegree".into()))?;
            basis.insert(row);
            trees.push(tree);
        }
        let row = index
            .row(&target)
            .ok_or_else(|| Error::Inconsistent("target left its multidegree".into()))?;
        let combo = basis.express(&row).ok_or_else(|| {
            Error::Inconsistent(format!(
                "{p} is not a Lie polynomial on the GPTW generators"
            ))
        })?;
        Ok(combo.ones().map(|k| trees[k].clone()).collect())
    }

    fn as_gptw(&self, letters: &[usize]) -> Option<CommIndex> {
        let (&last, outer) = letters.split_last()?;
        if outer.is_empty() || outer.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        let set = VertexSet::from_vertices(self.complex.m(), letters.iter().copied()).ok()?;
        let c = CommIndex::new(set, last).ok()?;
        (c.letters() == letters && self.complex.is_gptw(c)).then_some(c)
    }

    /// Ordered sequences of generators with disjoint supports covering
    /// `rest`; the two innermost entries appear in one order only.
    fn cover_sequences(&self, rest: VertexSet, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for (k, (c, _)) in self.gens.iter().enumerate() {
            if !c.set.is_subset(rest) {
                continue;
            }
            let left = rest.difference(c.set);
            if left.is_empty() {
                if let Some(&prev) = prefix.last() {
                    // [g_prev, g_k] = [g_k, g_prev]
                    if prev > k {
                        continue;
                    }
                }
                prefix.push(k);
                out.push(prefix.clone());
                prefix.pop();
            } else if left.len() >= 2 {
                prefix.push(k);
                self.cover_sequences(left, prefix, out);
                prefix.pop();
            }
        }
    }

    fn right_normed(&self, seq: &[usize]) -> Result<(LieTree, AlgElem)> {
        let (&last, outer) = seq.split_last().expect("nonempty sequence");
        let mut tree = LieTree::symbol(self.gens[last].0);
        let mut elem = self.gens[last].1.clone();
        for &k in outer.iter().rev() {
            tree = LieTree::bracket(LieTree::symbol(self.gens[k].0), tree);
            elem = self.gens[k].1.commutator(&elem)?;
        }
        Ok((tree, elem))
    }
}

/// A Lie polynomial on GPTW symbols equal to `p` in `L_K`.
pub fn express_in_gptw(p: &LiePoly, complex: &FlagComplex) -> Result<LiePoly> {
    GptwExpander::new(complex)?.express(p)
}

/// Basis of one multidegree component of `N_K`: bracket trees on GPTW
/// symbols and their images in `A`.
#[derive(Clone, Debug, Default)]
pub struct Component {
    pub trees: Vec<LieTree>,
    pub elems: Vec<AlgElem>,
}

/// Multigraded dimensions of `N_K` with explicit bases, up to a total degree.
#[derive(Clone, Debug)]
pub struct NkBasis {
    complex: FlagComplex,
    spec: Arc<AlgebraSpec>,
    max_degree: u32,
    generators: Vec<CommIndex>,
    components: BTreeMap<Exponent, Component>,
}

/// Candidate tree, where it came from, and the multidegree of its bracket partner.
type Candidate = (LieTree, Source, Option<Exponent>);

#[derive(Clone, Copy, Debug)]
enum Source {
    Generator(usize),
    Bracket(usize, usize),
}

impl NkBasis {
    pub fn complex(&self) -> &FlagComplex {
        &self.complex
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn generators(&self) -> &[CommIndex] {
        &self.generators
    }

    pub fn component(&self, alpha: &[u32]) -> Option<&Component> {
        self.components.get(alpha)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Exponent, &Component)> {
        self.components.iter()
    }

    pub fn dim(&self, alpha: &[u32]) -> usize {
        self.components.get(alpha).map_or(0, |c| c.trees.len())
    }

    pub fn dims(&self) -> DimTable {
        let mut t = DimTable::new(self.complex.m(), self.max_degree);
        for (a, c) in &self.components {
            t.set(a.clone(), c.trees.len() as u64);
        }
        t
    }

    /// Coordinates of an element of `A` in the closure bases, as a Lie
    /// polynomial on GPTW symbols; `None` if it is not in `N_K` (or lies
    /// beyond the computed degree).
    pub fn express(&self, e: &AlgElem) -> Result<Option<LiePoly>> {
        let m = self.complex.m();
        let mut parts: BTreeMap<Exponent, Vec<TraceWord>> = BTreeMap::new();
        for w in e.terms() {
            if w.pi != 0 {
                return Ok(None);
            }
            parts.entry(w.multidegree(m)).or_default().push(w.clone());
        }
        let mut out = LiePoly::zero();
        for (alpha, words) in parts {
            if total_degree(&alpha) > self.max_degree {
                return Ok(None);
            }
            let Some(comp) = self.components.get(&alpha) else {
                return Ok(None);
            };
            let index = WordIndex::new(self.spec.multidegree_basis(&alpha));
            let mut basis = Gf2Basis::new(index.len());
            for b in &comp.elems {
                basis.insert(index.row(b).expect("basis element in its component"));
            }
            let mut target = AlgElem::zero(&self.spec, None);
            for w in words {
                target.toggle(w);
            }
            let row = index.row(&target).expect("words of this multidegree");
            let Some(combo) = basis.express(&row) else {
                return Ok(None);
            };
            for k in combo.ones() {
                out.toggle(comp.trees[k].clone());
            }
        }
        Ok(Some(out))
    }
}

/// Dimensions of `N_K` per multidegree of total degree `<= max_degree`, by
/// closure: the component at `α` is spanned by the generators of degree `α`
/// and the brackets `[g, b]` with `b` in the basis at `α - deg g`.
pub fn nk_dims(complex: &FlagComplex, max_degree: u32, exec: Exec) -> Result<NkBasis> {
    nk_dims_capped(complex, max_degree, exec, DEFAULT_COLUMN_CAP)
}

pub fn nk_dims_capped(
    complex: &FlagComplex,
    max_degree: u32,
    exec: Exec,
    column_cap: usize,
) -> Result<NkBasis> {
    if max_degree < 2 {
        return Err(Error::Input("nk_dims needs max degree >= 2".into()));
    }
    let m = complex.m();
    let spec = AlgebraSpec::enveloping(complex);
    let generators: Vec<CommIndex> = complex
        .gptw_index()
        .into_iter()
        .filter(|c| c.degree() as u32 <= max_degree)
        .collect();
    let gen_elems = generators
        .iter()
        .map(|&c| eval_tree(&LieTree::symbol(c), &spec))
        .collect::<Result<Vec<_>>>()?;
    let gen_degs: Vec<Exponent> = generators.iter().map(|c| c.multidegree(m)).collect();
    let mut components: BTreeMap<Exponent, Component> = BTreeMap::new();

    for d in 2..=max_degree {
        let mut candidates: BTreeMap<Exponent, Vec<(LieTree, Source, Option<Exponent>)>> =
            BTreeMap::new();
        for (g, deg) in gen_degs.iter().enumerate() {
            let dg = total_degree(deg);
            if dg == d {
                candidates.entry(deg.clone()).or_default().push((
                    LieTree::symbol(generators[g]),
                    Source::Generator(g),
                    None,
                ));
            } else if dg < d {
                for (beta, comp) in components.iter().filter(|(b, _)| total_degree(b) == d - dg) {
                    let alpha: Exponent = deg.iter().zip(beta).map(|(x, y)| x + y).collect();
                    for (k, t) in comp.trees.iter().enumerate() {
                        let tree = LieTree::bracket(LieTree::symbol(generators[g]), t.clone());
                        candidates.entry(alpha.clone()).or_default().push((
                            tree,
                            Source::Bracket(g, k),
                            Some(beta.clone()),
                        ));
                    }
                }
            }
        }
        let work: Vec<(Exponent, Vec<Candidate>)> = candidates
            .into_iter()
            .filter(|(alpha, _)| !alpha.iter().any(|&a| a >= max_degree))
            .map(|(alpha, mut c)| {
                c.sort_by(|x, y| x.0.cmp(&y.0));
                (alpha, c)
            })
            .collect();
        let results = exec.map(&work, |(alpha, cands)| {
            let words = spec.multidegree_basis(alpha);
            if words.len() > column_cap {
                return Err(Error::TruncationExceeded {
                    what: format!("component {alpha:?} of N_K"),
                    needed: words.len(),
                    cap: column_cap,
                });
            }
            let index = WordIndex::new(words);
            let mut basis = Gf2Basis::new(index.len());
            let mut comp = Component::default();
            for (tree, source, beta) in cands {
                let elem = match *source {
                    Source::Generator(g) => gen_elems[g].clone(),
                    Source::Bracket(g, k) => {
                        let b = &components[beta.as_ref().expect("bracket source")].elems[k];
                        gen_elems[g].commutator(b)?
                    }
                };
                let row = index
                    .row(&elem)
                    .ok_or_else(|| Error::Inconsistent("bracket left its multidegree".into()))?;
                if basis.insert(row) {
                    comp.trees.push(tree.clone());
                    comp.elems.push(elem);
                }
            }
            Ok(comp)
        });
        for ((alpha, _), comp) in work.into_iter().zip(results) {
            let comp = comp?;
            if !comp.trees.is_empty() {
                components.insert(alpha, comp);
            }
        }
    }
    Ok(NkBasis {
        complex: complex.clone(),
        spec,
        max_degree,
        generators,
        components,
    })
}

/// Dimensions of the associative subalgebra of `A` generated by the GPTW
/// images, per multidegree of total degree `<= max_degree`.
pub fn enveloping_dims(complex: &FlagComplex, max_degree: u32) -> Result<DimTable> {
    let m = complex.m();
    let spec = AlgebraSpec::enveloping(complex);
    let gens: Vec<(Exponent, AlgElem)> = complex
        .gptw_index()
        .into_iter()
        .filter(|c| c.degree() as u32 <= max_degree)
        .map(|c| Ok((c.multidegree(m), eval_tree(&LieTree::symbol(c), &spec)?)))
        .collect::<Result<_>>()?;
    let mut bases: BTreeMap<Exponent, Vec<AlgElem>> = BTreeMap::new();
    bases.insert(vec![0; m], vec![AlgElem::one(&spec, None)]);
    for d in 2..=max_degree {
        let mut cands: BTreeMap<Exponent, Vec<AlgElem>> = BTreeMap::new();
        for (deg, g) in &gens {
            let dg = total_degree(deg);
            if dg > d {
                continue;
            }
            for (beta, elems) in bases.iter().filter(|(b, _)| total_degree(b) == d - dg) {
                let alpha: Exponent = deg.iter().zip(beta).map(|(x, y)| x + y).collect();
                for e in elems {
                    cands.entry(alpha.clone()).or_default().push(g.mul(e)?);
                }
            }
        }
        for (alpha, elems) in cands {
            let index = WordIndex::new(spec.multidegree_basis(&alpha));
            let mut basis = Gf2Basis::new(index.len());
            let mut kept = Vec::new();
            for e in elems {
                if basis.insert(index.row(&e).expect("product stays in its multidegree")) {
                    kept.push(e);
                }
            }
            if !kept.is_empty() {
                bases.insert(alpha, kept);
            }
        }
    }
    let mut t = DimTable::new(m, max_degree);
    for (a, b) in bases {
        t.set(a, b.len() as u64);
    }
    Ok(t)
}
