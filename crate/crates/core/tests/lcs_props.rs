//! Laws of the bracket calculator and its consistency with the group side.

mod common;
mod suites;

use suites::lcs;

#[test]
fn bracket_l_alternates_and_satisfies_jacobi() {
    lcs::bracket_l_alternates_and_satisfies_jacobi(1000);
}

#[test]
fn h_identities() {
    lcs::h_identities(1000);
}

#[test]
fn outer_letter_law() {
    lcs::outer_letter_law(300);
}

#[test]
fn remove_repeats_matches_magnus_leading_terms() {
    lcs::remove_repeats_matches_magnus_leading_terms(200);
}

#[test]
fn psi_is_a_homomorphism_on_leading_terms() {
    lcs::psi_is_a_homomorphism_on_leading_terms(200);
}
