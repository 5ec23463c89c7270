//! The squaring operation `h`, repeat removal for nested commutators of the
//! `ḡ_i`, and the bracket calculator on `span(ḡ_1, ..., ḡ_m) ⊕ N_K[t]`.
//!
//! The calculator's answers describe `L(RC_K)` only under the conjecture that
//! `ψ: N_K[t] → L'(RC_K)` is injective; unconditionally they are identities
//! in `N_K[t]` whose images under `ψ` hold in `L(RC_K)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::complexes::{CommIndex, FlagComplex};
use crate::coxeter::{group_commutator, nested_word, racg_normal_form, GroupWord};
use crate::error::{Error, Result};
use crate::nk::{eval_lie, order_nested, GptwExpander, Leaf, LiePoly, LieTree, NkBasis};
use crate::pcalg::{AlgElem, AlgebraSpec};

/// Element of `N_K[t]`: t-power to Lie polynomial on GPTW symbols.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct NKtElem {
    terms: BTreeMap<u32, LiePoly>,
}

impl NKtElem {
    pub fn zero() -> Self {
        NKtElem::default()
    }

    pub fn monomial(p: LiePoly, t: u32) -> Self {
        let mut x = NKtElem::zero();
        x.add_at(t, &p);
        x
    }

    pub fn symbol(c: CommIndex, t: u32) -> Self {
        Self::monomial(LiePoly::from_tree(LieTree::symbol(c)), t)
    }

    pub fn add_at(&mut self, t: u32, p: &LiePoly) {
        let e = self.terms.entry(t).or_default();
        e.add_assign(p);
        if e.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn add_assign(&mut self, other: &NKtElem) {
        for (&t, p) in &other.terms {
            self.add_at(t, p);
        }
    }

    pub fn add(&self, other: &NKtElem) -> NKtElem {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Shift of every t-power by one.
    pub fn h(&self) -> NKtElem {
        self.h_pow(1)
    }

    pub fn h_pow(&self, n: u32) -> NKtElem {
        NKtElem {
            terms: self
                .terms
                .iter()
                .map(|(&t, p)| (t + n, p.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &LiePoly)> {
        self.terms.iter().map(|(&t, p)| (t, p))
    }

    /// Monomials `(t, tree)`.
    pub fn monomials(&self) -> impl Iterator<Item = (u32, &LieTree)> {
        self.terms
            .iter()
            .flat_map(|(&t, p)| p.terms().map(move |tr| (t, tr)))
    }
}

impl fmt::Display for NKtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (&t, p) in self.terms.iter().rev() {
            for tree in p.terms() {
                parts.push(match t {
                    0 => tree.to_string(),
                    t => format!("{tree}t^{t}"),
                });
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for NKtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[x t^k, y t^l] = [x, y] t^{k+l}`, with formal brackets of Lie polynomials.
pub fn bracket_nkt(x: &NKtElem, y: &NKtElem) -> NKtElem {
    let mut out = NKtElem::zero();
    for (&k, p) in &x.terms {
        for (&l, q) in &y.terms {
            out.add_at(k + l, &p.bracket(q));
        }
    }
    out
}

/// Element of `span(ḡ_i) ⊕ N_K[t]`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LElem {
    /// Bit `i - 1` set for each `ḡ_i` present.
    pub linear: u32,
    pub comm: NKtElem,
}

impl LElem {
    pub fn zero() -> Self {
        LElem::default()
    }

    pub fn generator(i: usize) -> Self {
        LElem {
            linear: 1 << (i - 1),
            comm: NKtElem::zero(),
        }
    }

    pub fn from_nkt(x: NKtElem) -> Self {
        LElem { linear: 0, comm: x }
    }

    pub fn add(&self, other: &LElem) -> LElem {
        LElem {
            linear: self.linear ^ other.linear,
            comm: self.comm.add(&other.comm),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.linear == 0 && self.comm.is_zero()
    }

    /// `h` on the commutator part; defined only when the linear part is 0.
    pub fn h(&self) -> Result<LElem> {
        if self.linear != 0 {
            return Err(Error::Domain(
                "h is defined only on commutators (degree >= 2)".into(),
            ));
        }
        Ok(LElem::from_nkt(self.comm.h()))
    }

    fn linear_letters(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32).filter(|b| self.linear >> b & 1 == 1).map(|b| b + 1)
    }
}

impl fmt::Display for LElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.linear_letters().map(|i| format!("g{i}")).collect();
        if !self.comm.is_zero() {
            parts.push(self.comm.to_string());
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Repeat removal and brackets for a fixed complex, with memoised
/// expansions of nested commutators.
pub struct Calculator {
    complex: FlagComplex,
    expander: GptwExpander,
    memo: Mutex<HashMap<Vec<usize>, NKtElem>>,
}

impl Calculator {
    pub fn new(complex: &FlagComplex) -> Result<Self> {
        Ok(Calculator {
            complex: complex.clone(),
            expander: GptwExpander::new(complex)?,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn complex(&self) -> &FlagComplex {
        &self.complex
    }

    /// The enveloping algebra `A` used for evaluation.
    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        self.expander.spec()
    }

    /// Nested commutator `[ḡ_{s_1}, [... [ḡ_{s_{n-1}}, ḡ_{s_n}]...]]` as
    /// `Σ_s h^{n_s}(a'_s)`, with each `a'_s` on GPTW symbols.
    pub fn remove_repeats(&self, letters: &[usize]) -> Result<NKtElem> {
        if letters.len() < 2 {
            return Err(Error::Contract("repeat removal needs length >= 2".into()));
        }
        if let Some(&m) = letters.iter().find(|&&l| l == 0 || l > self.complex.m()) {
            return Err(Error::VertexOutOfRange {
                vertex: m,
                m: self.complex.m(),
            });
        }
        self.rr(letters)
    }

    fn rr(&self, s: &[usize]) -> Result<NKtElem> {
        if let Some(x) = self.memo.lock().expect("memo lock").get(s) {
            return Ok(x.clone());
        }
        let out = self.rr_uncached(s)?;
        self.memo
            .lock()
            .expect("memo lock")
            .insert(s.to_vec(), out.clone());
        Ok(out)
    }

    fn rr_uncached(&self, s: &[usize]) -> Result<NKtElem> {
        let n = s.len();
        if s[n - 2] == s[n - 1] {
            return Ok(NKtElem::zero());
        }
        let repeats_before = |q: usize| s[..q].contains(&s[q]);
        if !(0..n).any(repeats_before) {
            let ordered = order_nested(&LieTree::nested(s))?;
            return Ok(NKtElem::monomial(self.expander.express(&ordered)?, 0));
        }
        // s = P i Q i R with R nonempty and the second i as far in as possible
        let Some(q) = (0..n - 1).rev().find(|&q| repeats_before(q)) else {
            // only the innermost letter repeats; [x, y] = [y, x] moves it out
            let mut swapped = s.to_vec();
            swapped.swap(n - 2, n - 1);
            return self.rr(&swapped);
        };
        let i = s[q];
        let p = (0..q)
            .rev()
            .find(|&p| s[p] == i)
            .expect("earlier occurrence");
        let (prefix, inner, tail) = (&s[..p], &s[p + 1..q], &s[q + 1..]);

        let mut shorter: Vec<usize> = prefix.to_vec();
        shorter.extend_from_slice(inner);
        shorter.push(i);
        shorter.extend_from_slice(tail);
        let mut out = self.rr(&shorter)?.h();

        for cmask in 0u32..(1 << prefix.len()) {
            let (c, d) = split_by_mask(prefix, cmask);
            for amask in 1u32..(1 << inner.len()) {
                let (a, b) = split_by_mask(inner, amask);
                let mut left = c.clone();
                left.extend(&a);
                left.push(i);
                let mut right = d.clone();
                right.extend(&b);
                right.push(i);
                right.extend_from_slice(tail);
                out.add_assign(&bracket_nkt(&self.rr(&left)?, &self.rr(&right)?));
            }
        }
        Ok(out)
    }

    /// `[ḡ_i, y]` for `y ∈ N_K[t]`.
    pub fn ad(&self, i: usize, y: &NKtElem) -> Result<NKtElem> {
        let mut out = NKtElem::zero();
        for (t, tree) in y.monomials() {
            out.add_assign(&self.ad_tree(i, tree)?.h_pow(t));
        }
        Ok(out)
    }

    fn ad_tree(&self, i: usize, tree: &LieTree) -> Result<NKtElem> {
        match tree {
            LieTree::Leaf(Leaf::Nested(c)) => {
                let mut s = vec![i];
                s.extend(c.letters());
                self.remove_repeats(&s)
            }
            LieTree::Leaf(Leaf::Mu(_)) => Err(Error::Domain(
                "N_K[t] elements are polynomials on GPTW symbols".into(),
            )),
            LieTree::Bracket(u, v) => {
                let u_elem = NKtElem::monomial(LiePoly::from_tree((**u).clone()), 0);
                let v_elem = NKtElem::monomial(LiePoly::from_tree((**v).clone()), 0);
                let mut out = bracket_nkt(&self.ad_tree(i, u)?, &v_elem);
                out.add_assign(&bracket_nkt(&u_elem, &self.ad_tree(i, v)?));
                Ok(out)
            }
        }
    }

    /// The bracket on `span(ḡ_i) ⊕ N_K[t]`.
    pub fn bracket_l(&self, x: &LElem, y: &LElem) -> Result<LElem> {
        let mut out = bracket_nkt(&x.comm, &y.comm);
        for i in x.linear_letters() {
            for j in y.linear_letters() {
                if i != j && !self.complex.is_edge(i, j) {
                    out.add_assign(&self.remove_repeats(&[i.max(j), i.min(j)])?);
                }
            }
            out.add_assign(&self.ad(i, &y.comm)?);
        }
        for j in y.linear_letters() {
            out.add_assign(&self.ad(j, &x.comm)?);
        }
        Ok(LElem::from_nkt(out))
    }

    /// Images of the t-components in `A`; zero components are omitted.
    pub fn eval(&self, x: &NKtElem) -> Result<BTreeMap<u32, AlgElem>> {
        let mut out = BTreeMap::new();
        for (t, p) in x.terms() {
            let e = eval_lie(p, self.spec())?;
            if !e.is_zero() {
                out.insert(t, e);
            }
        }
        Ok(out)
    }

    /// Equality in `span(ḡ_i) ⊕ N_K[t]`, by evaluation in `A`.
    pub fn equal(&self, x: &LElem, y: &LElem) -> Result<bool> {
        Ok(x.linear == y.linear && self.eval(&x.comm)? == self.eval(&y.comm)?)
    }

    /// Rewrites every t-component in the closure basis of `basis`.
    pub fn canonical(&self, x: &NKtElem, basis: &NkBasis) -> Result<NKtElem> {
        let mut out = NKtElem::zero();
        for (t, e) in self.eval(x)? {
            let p = basis.express(&e)?.ok_or_else(|| {
                Error::Inconsistent(format!(
                    "component t^{t} of {x} is outside the computed N_K"
                ))
            })?;
            out.add_at(t, &p);
        }
        Ok(out)
    }

    pub fn canonical_l(&self, x: &LElem, basis: &NkBasis) -> Result<LElem> {
        Ok(LElem {
            linear: x.linear,
            comm: self.canonical(&x.comm, basis)?,
        })
    }
}

fn split_by_mask(v: &[usize], mask: u32) -> (Vec<usize>, Vec<usize>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (k, &l) in v.iter().enumerate() {
        if mask >> k & 1 == 1 {
            a.push(l);
        } else {
            b.push(l);
        }
    }
    (a, b)
}

/// Group word representing a bracket tree on GPTW symbols.
pub fn tree_to_group(tree: &LieTree, complex: &FlagComplex) -> Result<GroupWord> {
    let w = match tree {
        LieTree::Leaf(Leaf::Nested(c)) => {
            let l = c.letters();
            let (&j, outer) = l.split_last().expect("nonempty");
            nested_word(outer, j)
        }
        LieTree::Leaf(Leaf::Mu(i)) => vec![*i],
        LieTree::Bracket(u, v) => {
            group_commutator(&tree_to_group(u, complex)?, &tree_to_group(v, complex)?)
        }
    };
    racg_normal_form(&w, complex)
}

/// One group word per monomial `tree·t^k`: the word of `tree`, squared `k`
/// times. Their product represents the image of `x` under `ψ`.
pub fn psi_to_group(x: &NKtElem, complex: &FlagComplex) -> Result<Vec<GroupWord>> {
    let mut out = Vec::new();
    for (t, tree) in x.monomials() {
        let mut w = tree_to_group(tree, complex)?;
        for _ in 0..t {
            let mut sq = w.clone();
            sq.extend_from_slice(&w);
            w = racg_normal_form(&sq, complex)?;
        }
        out.push(w);
    }
    Ok(out)
}

/// Product of the words from [`psi_to_group`].
pub fn psi_word(x: &NKtElem, complex: &FlagComplex) -> Result<GroupWord> {
    let words = psi_to_group(x, complex)?;
    racg_normal_form(&words.concat(), complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::nk::nk_dims;

    fn k2() -> FlagComplex {
        FlagComplex::new(2, &[]).unwrap()
    }

    fn k3() -> FlagComplex {
        FlagComplex::new(3, &[(1, 3)]).unwrap()
    }

    fn sym(k: &FlagComplex, set: &[usize], last: usize) -> NKtElem {
        let s = crate::complexes::VertexSet::from_vertices(k.m(), set.iter().copied()).unwrap();
        NKtElem::symbol(CommIndex::new(s, last).unwrap(), 0)
    }

    #[test]
    fn h_examples() {
        let k = k2();
        let a = sym(&k, &[1, 2], 1);
        let Leaf::Nested(c) = a.monomials().next().unwrap().1.leaves()[0] else {
            panic!("not a symbol");
        };
        assert_eq!(a.h(), NKtElem::symbol(c, 1));
        assert!(NKtElem::zero().h().is_zero());
        assert_eq!(bracket_nkt(&a, &a.h_pow(5)), NKtElem::zero());
        assert!(LElem::generator(1).h().is_err());
    }

    #[test]
    fn remove_repeats_examples() {
        let k = k2();
        let calc = Calculator::new(&k).unwrap();
        let a = sym(&k, &[1, 2], 1);
        assert_eq!(calc.remove_repeats(&[2, 1]).unwrap(), a);
        assert_eq!(calc.remove_repeats(&[1, 1, 2]).unwrap(), a.h());
        assert_eq!(calc.remove_repeats(&[1, 1, 1, 1, 2]).unwrap(), a.h_pow(3));
        assert_eq!(calc.remove_repeats(&[2, 1, 2]).unwrap(), a.h());
        assert!(calc.remove_repeats(&[1]).is_err());
    }

    #[test]
    fn example_two_table() {
        let k = k3();
        let calc = Calculator::new(&k).unwrap();
        let basis = nk_dims(&k, 5, Exec::Sequential).unwrap();
        let a = LElem::from_nkt(sym(&k, &[1, 2], 1));
        let b = LElem::from_nkt(sym(&k, &[2, 3], 2));
        let c = LElem::from_nkt(sym(&k, &[1, 2, 3], 2));
        let show = |i: usize, y: &LElem| {
            let r = calc.bracket_l(&LElem::generator(i), y).unwrap();
            calc.canonical_l(&r, &basis).unwrap().to_string()
        };
        assert_eq!(show(1, &a), "c(2;1)t^1");
        assert_eq!(show(2, &a), "c(2;1)t^1");
        assert_eq!(show(3, &a), "c(1,3;2)");
        assert_eq!(show(1, &b), "c(1,3;2)");
        assert_eq!(show(2, &b), "c(3;2)t^1");
        assert_eq!(show(3, &b), "c(3;2)t^1");
        assert_eq!(show(1, &c), "c(1,3;2)t^1");
        assert_eq!(show(2, &c), "c(1,3;2)t^1 + [c(2;1),c(3;2)]");
        assert_eq!(show(3, &c), "c(1,3;2)t^1");
    }

    #[test]
    fn degree_one_brackets() {
        let k = k3();
        let calc = Calculator::new(&k).unwrap();
        let g = LElem::generator;
        assert!(calc.bracket_l(&g(1), &g(3)).unwrap().is_zero());
        assert_eq!(calc.bracket_l(&g(1), &g(2)).unwrap().to_string(), "c(2;1)");
        assert_eq!(calc.bracket_l(&g(3), &g(2)).unwrap().to_string(), "c(3;2)");
        assert!(calc.bracket_l(&g(2), &g(2)).unwrap().is_zero());
    }

    #[test]
    fn psi_words() {
        let k = k2();
        let a = sym(&k, &[1, 2], 1);
        assert_eq!(psi_to_group(&a, &k).unwrap(), vec![vec![2, 1, 2, 1]]);
        let w = psi_to_group(&a.h(), &k).unwrap();
        assert_eq!(
            w,
            vec![racg_normal_form(&[2, 1, 2, 1, 2, 1, 2, 1], &k).unwrap()]
        );
    }
}
