//! Word-level identities in `RC_K`.

use coxlie::coxeter::{group_commutator, racg_normal_form, GroupWord};
use coxlie::FlagComplex;
use rand::Rng;

fn inv(a: &[u8]) -> GroupWord {
    a.iter().rev().copied().collect()
}

fn comm(a: &[u8], b: &[u8]) -> GroupWord {
    group_commutator(a, b)
}

/// `a^b = b^{-1} a b`.
fn conj(a: &[u8], b: &[u8]) -> GroupWord {
    [inv(b), a.to_vec(), b.to_vec()].concat()
}

fn nf(w: &[u8], k: &FlagComplex) -> GroupWord {
    racg_normal_form(w, k).unwrap()
}

pub fn witt_hall_identities(cases: usize) {
    let mut rng = crate::common::rng(1);
    for _ in 0..cases {
        let m = rng.gen_range(2..=5);
        let k = crate::common::random_complex(&mut rng, m);
        let a = crate::common::random_word(&mut rng, m, 5);
        let b = crate::common::random_word(&mut rng, m, 5);
        let c = crate::common::random_word(&mut rng, m, 5);

        let lhs = comm(&a, &[b.clone(), c.clone()].concat());
        let rhs = [comm(&a, &c), comm(&a, &b), comm(&comm(&a, &b), &c)].concat();
        assert_eq!(
            nf(&lhs, &k),
            nf(&rhs, &k),
            "(a,bc) for {a:?} {b:?} {c:?} on {k:?}"
        );

        let lhs = comm(&[a.clone(), b.clone()].concat(), &c);
        let rhs = [comm(&a, &c), comm(&comm(&a, &c), &b), comm(&b, &c)].concat();
        assert_eq!(
            nf(&lhs, &k),
            nf(&rhs, &k),
            "(ab,c) for {a:?} {b:?} {c:?} on {k:?}"
        );

        let lhs = [
            comm(&comm(&a, &b), &c),
            comm(&comm(&b, &c), &a),
            comm(&comm(&c, &a), &b),
        ]
        .concat();
        let rhs = [
            comm(&b, &a),
            comm(&c, &a),
            conj(&comm(&c, &b), &a),
            comm(&a, &b),
            conj(&comm(&a, &c), &b),
            conj(&comm(&b, &c), &a),
            comm(&a, &c),
            conj(&comm(&c, &a), &b),
        ]
        .concat();
        assert_eq!(
            nf(&lhs, &k),
            nf(&rhs, &k),
            "Hall-Witt for {a:?} {b:?} {c:?} on {k:?}"
        );
    }
}

pub fn normal_form_swap_invariance(cases: usize) {
    let mut rng = crate::common::rng(2);
    for _ in 0..cases {
        let m = rng.gen_range(1..=5);
        let k = crate::common::random_complex(&mut rng, m);
        let w = crate::common::random_word(&mut rng, m, 12);
        let base = nf(&w, &k);

        let mut v = w.clone();
        for _ in 0..4 {
            if v.len() >= 2 {
                let p = rng.gen_range(0..v.len() - 1);
                if k.is_edge(v[p] as usize, v[p + 1] as usize) {
                    v.swap(p, p + 1);
                }
            }
            let p = rng.gen_range(0..=v.len());
            let g = rng.gen_range(1..=m) as u8;
            v.splice(p..p, [g, g]);
        }
        assert_eq!(nf(&v, &k), base, "{w:?} vs {v:?} on {k:?}");
        assert_eq!(nf(&base, &k), base);
        assert!(base.len() <= w.len() && base.len() % 2 == w.len() % 2);
    }
}

pub fn inverse_and_commutator_basics(cases: usize) {
    let mut rng = crate::common::rng(3);
    for _ in 0..cases {
        let m = rng.gen_range(1..=5);
        let k = crate::common::random_complex(&mut rng, m);
        let a = crate::common::random_word(&mut rng, m, 8);
        let b = crate::common::random_word(&mut rng, m, 8);
        assert!(nf(&[a.clone(), inv(&a)].concat(), &k).is_empty());
        assert!(nf(&comm(&a, &a), &k).is_empty());
        // (a,b)^{-1} = (b,a)
        assert_eq!(nf(&inv(&comm(&a, &b)), &k), nf(&comm(&b, &a), &k));
    }
    let k = FlagComplex::new(3, &[(1, 3)]).unwrap();
    assert!(nf(&comm(&[1], &[3]), &k).is_empty());
    assert_eq!(nf(&comm(&[1], &[2]), &k), vec![1, 2, 1, 2]);
}
