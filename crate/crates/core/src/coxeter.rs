//! Words in the right-angled Coxeter group `RC_K`, group commutators, and
//! Magnus-type maps used to bound `dim L_k(RC_K)` from below.
//!
//! Two maps are provided. [`magnus_eval`] substitutes `g_i ↦ 1 + u_i` into
//! the square-zero algebra `B`. It is a homomorphism, but it sends every
//! square to an element of the form `1 + x^2` and therefore cannot see the
//! squaring operation `h`. [`magnus_eval_2adic`] works in the integral group
//! ring, where `u_i = g_i - 1` satisfies `u_i^2 = -2 u_i`, filtered by powers
//! of the ideal `(2, u_1, ..., u_m)`. Its associated graded ring is the
//! `SquarePi` algebra of [`crate::pcalg`], with `π` the class of 2. Group
//! elements of `γ_k` land in filtration `k`, and the class of `a^2` for `a`
//! of leading degree `k >= 2` is `π` times the class of `a`, so `h` is
//! multiplication by `π` on leading terms.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complexes::FlagComplex;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::pcalg::{independent_subset, AlgElem, AlgebraSpec, TraceWord};
use crate::series::{extract_exponents, rhs_poly};

/// Letters `1..=m`; each `g_i` is an involution.
pub type GroupWord = Vec<u8>;

/// Default cap on candidate vectors per degree in [`lower_bounds`].
pub const DEFAULT_CANDIDATE_CAP: usize = 200_000;

fn check_word(w: &[u8], complex: &FlagComplex) -> Result<()> {
    for &l in w {
        if l == 0 || l as usize > complex.m() {
            return Err(Error::VertexOutOfRange {
                vertex: l as usize,
                m: complex.m(),
            });
        }
    }
    Ok(())
}

/// Position pair `(p, q)` of two equal letters whose in-between letters all
/// commute with them.
fn cancelling_pair(w: &[u8], complex: &FlagComplex) -> Option<(usize, usize)> {
    for q in 1..w.len() {
        let a = w[q];
        for p in (0..q).rev() {
            let b = w[p];
            if b == a {
                return Some((p, q));
            }
            if !complex.is_edge(a as usize, b as usize) {
                break;
            }
        }
    }
    None
}

/// Shortlex-least reduced representative: cancel pairs `i ... i` separated
/// only by letters commuting with `i`, then take the lexicographically least
/// reordering.
pub fn racg_normal_form(w: &[u8], complex: &FlagComplex) -> Result<GroupWord> {
    check_word(w, complex)?;
    let mut w = w.to_vec();
    while let Some((p, q)) = cancelling_pair(&w, complex) {
        w.remove(q);
        w.remove(p);
    }
    Ok(AlgebraSpec::enveloping(complex).lex_least(&w))
}

fn inverse(w: &[u8]) -> GroupWord {
    w.iter().rev().copied().collect()
}

/// `(u, v) = u^{-1} v^{-1} u v`, unreduced.
pub fn group_commutator(u: &[u8], v: &[u8]) -> GroupWord {
    let mut out = inverse(u);
    out.extend(inverse(v));
    out.extend_from_slice(u);
    out.extend_from_slice(v);
    out
}

/// `(g_{i_1}, (g_{i_2}, ... (g_{i_k}, g_j)...))`, unreduced.
pub fn nested_word(outer: &[usize], j: usize) -> GroupWord {
    outer
        .iter()
        .rev()
        .fold(vec![j as u8], |acc, &i| group_commutator(&[i as u8], &acc))
}

/// Image under `g_i ↦ 1 + u_i` in `B`, truncated at total degree `max_degree`.
pub fn magnus_eval(w: &[u8], complex: &FlagComplex, max_degree: u32) -> Result<AlgElem> {
    magnus_eval_in(w, &AlgebraSpec::square_zero(complex), max_degree)
}

/// As [`magnus_eval`] with a prebuilt `B`.
pub fn magnus_eval_in(w: &[u8], spec: &Arc<AlgebraSpec>, max_degree: u32) -> Result<AlgElem> {
    check_word(w, spec.complex())?;
    let d = Some(max_degree);
    let mut out = AlgElem::one(spec, d);
    for &l in w {
        let mut g = AlgElem::one(spec, d);
        g.add_assign(&AlgElem::generator(spec, l as usize, d)?)?;
        out = out.mul(&g)?;
    }
    Ok(out)
}

/// Image of `w` in the integral group ring, written in the basis `u_v` of
/// reduced words `v`, reported through the associated graded ring: a term
/// `c·u_v` with `c = 2^a·odd` becomes `π^a·u_v` in filtration degree
/// `a + |v|`. Terms above `max_degree` (at most 63) are dropped. The result
/// lives in the `SquarePi` algebra with truncation `max_degree`.
pub fn magnus_eval_2adic(w: &[u8], spec: &Arc<AlgebraSpec>, max_degree: u32) -> Result<AlgElem> {
    if spec.kind() != crate::pcalg::AlgebraKind::SquarePi {
        return Err(Error::Domain(
            "the 2-adic map lands in the SquarePi algebra".into(),
        ));
    }
    if max_degree > 63 {
        return Err(Error::Input(
            "2-adic Magnus map supports degree <= 63".into(),
        ));
    }
    let complex = spec.complex();
    check_word(w, complex)?;
    let keep =
        |v: &[u8], c: u64| -> bool { c != 0 && c.trailing_zeros() + v.len() as u32 <= max_degree };
    let mut terms: HashMap<Vec<u8>, u64> = HashMap::new();
    terms.insert(Vec::new(), 1);
    for &l in w {
        let mut next: HashMap<Vec<u8>, u64> = HashMap::with_capacity(terms.len() * 2);
        for (v, &c) in &terms {
            let e = next.entry(v.clone()).or_insert(0);
            *e = e.wrapping_add(c);
            let mut vl = v.clone();
            vl.push(l);
            if cancelling_pair(&vl, complex).is_some() {
                // u_v u_l = u_{v'} u_l^2 = -2 u_v
                let e = next.entry(v.clone()).or_insert(0);
                *e = e.wrapping_add(c.wrapping_mul(2).wrapping_neg());
            } else {
                let nf = spec.lex_least(&vl);
                if vl.len() as u32 <= max_degree {
                    let e = next.entry(nf).or_insert(0);
                    *e = e.wrapping_add(c);
                }
            }
        }
        next.retain(|v, c| keep(v, *c));
        terms = next;
    }
    let mut out = AlgElem::zero(spec, Some(max_degree));
    for (v, c) in terms {
        out.toggle(TraceWord {
            pi: c.trailing_zeros(),
            letters: v,
        });
    }
    Ok(out)
}

/// Leading degree and leading component of `x - 1` for the image `x` of a
/// group element; `None` when `x - 1` vanishes up to the truncation.
pub fn leading_term(x: &AlgElem) -> Option<(u32, AlgElem)> {
    let mut y = x.clone();
    y.toggle(TraceWord::empty());
    let k = y.low_degree()?;
    Some((k, y.component(k)))
}

/// Lower bounds `ℓ_k` for `k = 0..=max_degree` (entries below 2 are zero
/// except `ℓ_1 = m`).
///
/// `L_k(RC_K)` is spanned by the classes of length-`k` nested commutators of
/// the `g_i`. The 2-adic Magnus map induces a linear map from `L_k` to the
/// degree-`k` part of the `SquarePi` algebra sending a nested commutator to
/// the nested ring commutator of the `u_i`. The image is the span `S_k`
/// with `S_1 = span{u_i}` and `S_k = Σ_i [u_i, S_{k-1}]`, and `ℓ_k = dim S_k`.
pub fn lower_bounds(complex: &FlagComplex, max_degree: u32, exec: Exec) -> Result<Vec<usize>> {
    lower_bounds_capped(complex, max_degree, exec, DEFAULT_CANDIDATE_CAP)
}

pub fn lower_bounds_capped(
    complex: &FlagComplex,
    max_degree: u32,
    exec: Exec,
    candidate_cap: usize,
) -> Result<Vec<usize>> {
    let spec = AlgebraSpec::square_pi(complex);
    let m = complex.m();
    let gens = (1..=m)
        .map(|i| AlgElem::generator(&spec, i, None))
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![0; max_degree as usize + 1];
    if max_degree >= 1 {
        out[1] = m;
    }
    let mut layer = gens.clone();
    for (k, slot) in out.iter_mut().enumerate().skip(2) {
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (0..layer.len()).map(move |s| (i, s)))
            .collect();
        if pairs.len() > candidate_cap {
            return Err(Error::TruncationExceeded {
                what: format!("degree-{k} lower bound candidates"),
                needed: pairs.len(),
                cap: candidate_cap,
            });
        }
        let cands = exec
            .map(&pairs, |&(i, s)| gens[i].commutator(&layer[s]))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let kept = independent_subset(&cands);
        layer = kept.into_iter().map(|k| cands[k].clone()).collect();
        *slot = layer.len();
        if layer.is_empty() {
            break;
        }
    }
    Ok(out)
}

/// `ℓ_k` for a single degree `k >= 2`.
pub fn lower_bound_dim(complex: &FlagComplex, k: u32, exec: Exec) -> Result<usize> {
    if k < 2 {
        return Err(Error::Input("lower bound needs k >= 2".into()));
    }
    Ok(lower_bounds(complex, k, exec)?[k as usize])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub k: u32,
    /// `ℓ_k`, a lower bound for `dim L_k(RC_K)`.
    pub lower: usize,
    /// `n_2 + ... + n_k`, an upper bound for `dim L_k(RC_K)`.
    pub upper: u64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub m: usize,
    pub max_degree: u32,
    pub degrees: Vec<DegreeReport>,
}

impl ConjectureReport {
    pub fn all_verified(&self) -> bool {
        self.degrees.iter().all(|d| d.verdict == Verdict::Verified)
    }
}

/// Default degree bound for [`conjecture_status`].
pub fn default_conjecture_degree(m: usize) -> u32 {
    match m {
        0..=5 => 6,
        6..=8 => 4,
        _ => 3,
    }
}

/// Per-degree comparison of `ℓ_k` with `n_2 + ... + n_k`. A strict gap is
/// reported as inconclusive, never as a refutation; `ℓ_k` above the upper
/// bound is an internal inconsistency.
pub fn conjecture_status(
    complex: &FlagComplex,
    max_degree: u32,
    exec: Exec,
) -> Result<ConjectureReport> {
    if max_degree < 2 {
        return Err(Error::Input(
            "conjecture check needs max degree >= 2".into(),
        ));
    }
    let n = extract_exponents(&rhs_poly(complex), max_degree)?.totals();
    let lower = lower_bounds(complex, max_degree, exec)?;
    let mut degrees = Vec::new();
    let mut upper = 0u64;
    for k in 2..=max_degree {
        upper += n[k as usize];
        let l = lower[k as usize];
        if l as u64 > upper {
            return Err(Error::Inconsistent(format!(
                "degree {k}: lower bound {l} exceeds upper bound {upper}"
            )));
        }
        degrees.push(DegreeReport {
            k,
            lower: l,
            upper,
            verdict: if l as u64 == upper {
                Verdict::Verified
            } else {
                Verdict::Inconclusive
            },
        });
    }
    Ok(ConjectureReport {
        m: complex.m(),
        max_degree,
        degrees,
    })
}
