//! Laws of the bracket calculator and its consistency with the group side.

use std::collections::HashMap;

use coxlie::coxeter::{group_commutator, magnus_eval_2adic, nested_word, racg_normal_form};
use coxlie::lcs::{bracket_nkt, psi_word, Calculator, LElem, NKtElem};
use coxlie::nk::{LiePoly, LieTree};
use coxlie::pcalg::{AlgElem, AlgebraSpec, TraceWord};
use coxlie::{CommIndex, FlagComplex};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Degree-`n` component of `x - 1` for the 2-adic image of `w`.
fn component(w: &[u8], k: &FlagComplex, n: u32) -> AlgElem {
    let sp = AlgebraSpec::square_pi(k);
    let mut x = magnus_eval_2adic(w, &sp, n).unwrap();
    x.toggle(TraceWord::empty());
    x.component(n)
}

/// Random monomial on GPTW symbols of total degree exactly `deg`, if any.
fn random_monomial(rng: &mut ChaCha8Rng, gens: &[CommIndex], deg: usize) -> Option<NKtElem> {
    for _ in 0..8 {
        let a = *gens.choose(rng)?;
        let (tree, d) = if rng.gen_bool(0.5) {
            let b = *gens.choose(rng)?;
            if a == b {
                continue;
            }
            (
                LieTree::bracket(LieTree::symbol(a), LieTree::symbol(b)),
                a.degree() + b.degree(),
            )
        } else {
            (LieTree::symbol(a), a.degree())
        };
        if d <= deg {
            return Some(NKtElem::monomial(
                LiePoly::from_tree(tree),
                (deg - d) as u32,
            ));
        }
    }
    None
}

fn random_homogeneous(rng: &mut ChaCha8Rng, gens: &[CommIndex], deg: usize) -> Option<NKtElem> {
    let mut x = random_monomial(rng, gens, deg)?;
    if rng.gen_bool(0.4) {
        x.add_assign(&random_monomial(rng, gens, deg)?);
    }
    Some(x)
}

fn random_lelem(rng: &mut ChaCha8Rng, k: &FlagComplex) -> LElem {
    let gens = k.gptw_index();
    let mut x = LElem {
        linear: rng.gen_range(0..1u32 << k.m()),
        comm: NKtElem::zero(),
    };
    if !gens.is_empty() && rng.gen_bool(0.6) {
        let deg = rng.gen_range(2..=3);
        if let Some(y) = random_homogeneous(rng, &gens, deg) {
            x.comm = y;
        }
    }
    x
}

pub fn bracket_l_alternates_and_satisfies_jacobi(cases: usize) {
    let mut rng = crate::common::rng(20);
    let mut calcs: HashMap<Vec<(usize, usize)>, (FlagComplex, Calculator)> = HashMap::new();
    for _ in 0..cases {
        let m = rng.gen_range(2..=4);
        let k = crate::common::random_nonabelian_complex(&mut rng, m);
        let (k, calc) = calcs
            .entry(k.edges())
            .or_insert_with(|| (k.clone(), Calculator::new(&k).unwrap()));
        let x = random_lelem(&mut rng, k);
        let y = random_lelem(&mut rng, k);
        let z = random_lelem(&mut rng, k);
        let br = |a: &LElem, b: &LElem| calc.bracket_l(a, b).unwrap();
        assert!(calc.equal(&br(&x, &x), &LElem::zero()).unwrap());
        assert!(calc.equal(&br(&x, &y), &br(&y, &x)).unwrap());
        let jac = br(&x, &br(&y, &z))
            .add(&br(&y, &br(&z, &x)))
            .add(&br(&z, &br(&x, &y)));
        assert!(
            calc.equal(&jac, &LElem::zero()).unwrap(),
            "Jacobi fails for {x} | {y} | {z} on {k:?}: {jac}"
        );
    }
}

pub fn h_identities(cases: usize) {
    let mut rng = crate::common::rng(21);
    for _ in 0..cases {
        let m = rng.gen_range(2..=5);
        let k = crate::common::random_nonabelian_complex(&mut rng, m);
        let gens = k.gptw_index();
        let p = rng.gen_range(2..=4);
        let q = rng.gen_range(2..=4);
        let (Some(x), Some(y)) = (
            random_homogeneous(&mut rng, &gens, p),
            random_homogeneous(&mut rng, &gens, q),
        ) else {
            continue;
        };
        let hxy = bracket_nkt(&x, &y).h();
        assert_eq!(bracket_nkt(&x.h(), &y), hxy);
        assert_eq!(bracket_nkt(&x, &y.h()), hxy);
        assert_eq!(x.add(&y).h(), x.h().add(&y.h()));
        assert!(LElem::from_nkt(x.clone()).h().is_ok());
        assert!(LElem::generator(1).add(&LElem::from_nkt(x)).h().is_err());
    }
}

pub fn outer_letter_law(cases: usize) {
    let mut rng = crate::common::rng(22);
    for _ in 0..cases {
        let m = rng.gen_range(2..=4);
        let k = crate::common::random_nonabelian_complex(&mut rng, m);
        let calc = Calculator::new(&k).unwrap();
        let len = rng.gen_range(2..=5);
        let s = crate::common::random_letters(&mut rng, m, len);
        let x = LElem::from_nkt(calc.remove_repeats(&s).unwrap());
        let lhs = calc.bracket_l(&LElem::generator(s[0]), &x).unwrap();
        assert!(calc.equal(&lhs, &x.h().unwrap()).unwrap(), "{s:?} on {k:?}");
    }
}

pub fn remove_repeats_matches_magnus_leading_terms(cases: usize) {
    let mut rng = crate::common::rng(23);
    for _ in 0..cases {
        let m = rng.gen_range(2..=4);
        let k = crate::common::random_nonabelian_complex(&mut rng, m);
        let calc = Calculator::new(&k).unwrap();
        let len = rng.gen_range(2..=6);
        let s = crate::common::random_letters(&mut rng, m, len);
        let rr = calc.remove_repeats(&s).unwrap();
        let (&j, outer) = s.split_last().unwrap();
        let n = len as u32;
        let lhs = component(&nested_word(outer, j), &k, n);
        let rhs = component(&psi_word(&rr, &k).unwrap(), &k, n);
        assert_eq!(lhs, rhs, "{s:?} -> {rr} on {k:?}");
    }
}

pub fn psi_is_a_homomorphism_on_leading_terms(cases: usize) {
    let mut rng = crate::common::rng(24);
    let mut done = 0;
    while done < cases {
        let m = rng.gen_range(2..=4);
        let k = crate::common::random_nonabelian_complex(&mut rng, m);
        let gens = k.gptw_index();
        let p = rng.gen_range(2..=4);
        let q = rng.gen_range(2..=3);
        let (Some(x), Some(y)) = (
            random_homogeneous(&mut rng, &gens, p),
            random_homogeneous(&mut rng, &gens, q),
        ) else {
            continue;
        };
        let n = (p + q) as u32;
        let wx = psi_word(&x, &k).unwrap();
        let wy = psi_word(&y, &k).unwrap();
        let lhs = component(
            &racg_normal_form(&group_commutator(&wx, &wy), &k).unwrap(),
            &k,
            n,
        );
        let rhs = component(&psi_word(&bracket_nkt(&x, &y), &k).unwrap(), &k, n);
        assert_eq!(lhs, rhs, "[{x}, {y}] on {k:?}");
        done += 1;
    }
}
