//! Partially commutative algebras and the Magnus-type maps.

mod common;
mod suites;

use suites::algebra;

#[test]
fn associativity_in_a_and_b() {
    algebra::associativity_in_a_and_b(1000);
}

#[test]
fn lie_images_alternate_and_satisfy_jacobi() {
    algebra::lie_images_alternate_and_satisfy_jacobi(1000);
}

#[test]
fn magnus_into_b_is_multiplicative() {
    algebra::magnus_into_b_is_multiplicative(1000);
}

#[test]
fn two_adic_leading_terms_are_multiplicative() {
    algebra::two_adic_leading_terms_are_multiplicative(1000);
}

#[test]
fn magnus_filtration_and_squaring() {
    algebra::magnus_filtration_and_squaring(1000);
}
