//! Associativity of the partially commutative algebras, Lie identities of
//! `eval_lie` images, and filtration properties of the Magnus-type maps.

use std::sync::Arc;

use coxlie::coxeter::{
    group_commutator, leading_term, magnus_eval, magnus_eval_2adic, magnus_eval_in, nested_word,
};
use coxlie::nk::{eval_lie, LiePoly, LieTree};
use coxlie::pcalg::{AlgElem, AlgebraSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_elem(rng: &mut ChaCha8Rng, spec: &Arc<AlgebraSpec>, trunc: Option<u32>) -> AlgElem {
    let mut x = AlgElem::zero(spec, trunc);
    for _ in 0..rng.gen_range(0..4) {
        let w = crate::common::random_word(rng, spec.m(), 4);
        x.add_assign(&AlgElem::from_word(spec, &w, trunc).unwrap())
            .unwrap();
    }
    x
}

fn random_tree(rng: &mut ChaCha8Rng, m: usize, size: usize) -> LieTree {
    if size <= 1 {
        return LieTree::mu(rng.gen_range(1..=m));
    }
    let left = rng.gen_range(1..size);
    LieTree::bracket(random_tree(rng, m, left), random_tree(rng, m, size - left))
}

fn poly(t: LieTree) -> LiePoly {
    LiePoly::from_tree(t)
}

pub fn associativity_in_a_and_b(cases: usize) {
    let mut rng = crate::common::rng(10);
    for case in 0..cases {
        let m = rng.gen_range(1..=4);
        let k = crate::common::random_complex(&mut rng, m);
        let spec = if case % 2 == 0 {
            AlgebraSpec::enveloping(&k)
        } else {
            AlgebraSpec::square_zero(&k)
        };
        let trunc = if rng.gen_bool(0.5) {
            Some(rng.gen_range(2..=8))
        } else {
            None
        };
        let x = random_elem(&mut rng, &spec, trunc);
        let y = random_elem(&mut rng, &spec, trunc);
        let z = random_elem(&mut rng, &spec, trunc);
        let l = x.mul(&y).unwrap().mul(&z).unwrap();
        let r = x.mul(&y.mul(&z).unwrap()).unwrap();
        assert_eq!(l, r, "{x} * {y} * {z} on {k:?}");
        // distributivity
        let l = x.mul(&y.add(&z).unwrap()).unwrap();
        let r = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        assert_eq!(l, r);
    }
}

pub fn lie_images_alternate_and_satisfy_jacobi(cases: usize) {
    let mut rng = crate::common::rng(11);
    for _ in 0..cases {
        let m = rng.gen_range(2..=4);
        let k = crate::common::random_complex(&mut rng, m);
        let spec = AlgebraSpec::enveloping(&k);
        let sizes = [
            rng.gen_range(1..=3),
            rng.gen_range(1..=3),
            rng.gen_range(1..=2),
        ];
        let x = poly(random_tree(&mut rng, m, sizes[0]));
        let y = poly(random_tree(&mut rng, m, sizes[1]));
        let z = poly(random_tree(&mut rng, m, sizes[2]));
        let ev = |p: &LiePoly| eval_lie(p, &spec).unwrap();

        let xy = x.add(&y);
        assert!(ev(&xy.bracket(&xy)).is_zero());
        let ex = ev(&x);
        assert!(ex.commutator(&ex).unwrap().is_zero());

        let jac = ev(&x.bracket(&y.bracket(&z)))
            .add(&ev(&y.bracket(&z.bracket(&x))))
            .unwrap()
            .add(&ev(&z.bracket(&x.bracket(&y))))
            .unwrap();
        assert!(jac.is_zero(), "Jacobi fails for {x:?} {y:?} {z:?}");
        // eval_lie is a Lie homomorphism into A with the commutator bracket
        assert_eq!(ev(&x.bracket(&y)), ev(&x).commutator(&ev(&y)).unwrap());
    }
}

pub fn magnus_into_b_is_multiplicative(cases: usize) {
    let mut rng = crate::common::rng(12);
    for _ in 0..cases {
        let m = rng.gen_range(1..=4);
        let k = crate::common::random_complex(&mut rng, m);
        let d = rng.gen_range(1..=6);
        let u = crate::common::random_word(&mut rng, m, 6);
        let v = crate::common::random_word(&mut rng, m, 6);
        let uv = [u.clone(), v.clone()].concat();
        let b = |w: &[u8]| magnus_eval(w, &k, d).unwrap();
        assert_eq!(b(&uv), b(&u).mul(&b(&v)).unwrap());
        let gg = [u.clone(), vec![1, 1], v.clone()].concat();
        assert_eq!(b(&gg), b(&uv));
    }
}

/// The 2-adic map records each basis term at its own filtration degree, so
/// it is multiplicative on leading terms only.
pub fn two_adic_leading_terms_are_multiplicative(cases: usize) {
    let mut rng = crate::common::rng(14);
    let d = 6;
    for _ in 0..cases {
        let m = rng.gen_range(2..=4);
        let k = crate::common::random_complex(&mut rng, m);
        let sp = AlgebraSpec::square_pi(&k);
        let lead = |w: &[u8]| leading_term(&magnus_eval_2adic(w, &sp, d).unwrap());
        let pick = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(1..=3);
            let l = crate::common::random_letters(rng, m, len);
            let (&j, outer) = l.split_last().unwrap();
            let mut w = nested_word(outer, j);
            if rng.gen_bool(0.3) {
                w = [w.clone(), w].concat();
            }
            w
        };
        let u = pick(&mut rng);
        let v = pick(&mut rng);
        let (Some((p, a)), Some((q, b))) = (lead(&u), lead(&v)) else {
            continue;
        };
        let uv = [u.clone(), v.clone()].concat();
        let got = lead(&uv);
        if p != q {
            let expected = if p < q {
                (p, a.clone())
            } else {
                (q, b.clone())
            };
            assert_eq!(got, Some(expected));
        } else {
            let s = a.add(&b).unwrap();
            if !s.is_zero() {
                assert_eq!(got, Some((p, s)));
            } else if let Some((r, _)) = got {
                assert!(r > p);
            }
        }
        let ab = a.commutator(&b).unwrap();
        let got = lead(&group_commutator(&u, &v));
        if !ab.is_zero() {
            assert_eq!(got, Some((p + q, ab)), "{u:?} {v:?} on {k:?}");
        } else if let Some((r, _)) = got {
            assert!(r > p + q);
        }
        let gg = [u.clone(), vec![1, 1], v.clone()].concat();
        assert_eq!(
            magnus_eval_2adic(&gg, &sp, d).unwrap(),
            magnus_eval_2adic(&uv, &sp, d).unwrap()
        );
    }
}

pub fn magnus_filtration_and_squaring(cases: usize) {
    let mut rng = crate::common::rng(13);
    for _ in 0..cases {
        let m = rng.gen_range(2..=4);
        let k = crate::common::random_complex(&mut rng, m);
        let len = rng.gen_range(2..=5);
        let letters = crate::common::random_letters(&mut rng, m, len);
        let (&j, outer) = letters.split_last().unwrap();
        let w = nested_word(outer, j);
        let d = len as u32 + 2;

        // nested commutators of length k lie in the k-th filtration term
        let sb = AlgebraSpec::square_zero(&k);
        let x = magnus_eval_in(&w, &sb, d).unwrap();
        if let Some((deg, _)) = leading_term(&x) {
            assert!(deg >= len as u32);
        }
        let sp = AlgebraSpec::square_pi(&k);
        let y = magnus_eval_2adic(&w, &sp, d).unwrap();
        let lead = leading_term(&y);
        if let Some((deg, _)) = &lead {
            assert!(*deg >= len as u32);
        }

        // squaring multiplies the 2-adic leading term by pi
        let sq = [w.clone(), w.clone()].concat();
        let y2 = magnus_eval_2adic(&sq, &sp, d).unwrap();
        match &lead {
            Some((deg, c)) if *deg < d => {
                let pi = AlgElem::pi(&sp, Some(d)).unwrap();
                let expected = pi.mul(&c.with_truncation(Some(d))).unwrap();
                let (deg2, c2) = leading_term(&y2).expect("square of a nontrivial leading term");
                assert_eq!(deg2, deg + 1);
                assert_eq!(c2, expected, "{letters:?} on {k:?}");
            }
            _ => {}
        }
        // in B the square of a filtered element starts in degree >= 2k
        let x2 = magnus_eval_in(&sq, &sb, d).unwrap();
        if let Some((deg, _)) = leading_term(&x2) {
            assert!(deg >= (2 * len as u32).min(d + 1));
        }
        // commutators raise the filtration additively
        let v = crate::common::random_word(&mut rng, m, 3);
        let c = group_commutator(&w, &v);
        if let Some((deg, _)) = leading_term(&magnus_eval_2adic(&c, &sp, d).unwrap()) {
            assert!(deg > len as u32);
        }
    }
}
