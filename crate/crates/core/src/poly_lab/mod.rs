//! Exact univariate polynomials in `n`: interpolation from brute-force
//! coefficients, Sturm-based root isolation, and the conjecture suites.

mod interp;
mod poly;
mod roots;
mod suites;

pub use interp::{interpolate_a, interpolation_nodes, lagrange, observed_agreement_start, SigmaInterpolator};
pub use poly::RationalPolynomial;
pub use suites::{
    closed_form_root_report, conjecture_suite, degree_two_leading, weak_order_covers, weak_order_lower_set,
    POSITIVITY_WINDOW,
};
pub use roots::{analyze_roots, cauchy_bound, isolation_width, sturm_root_count, RootReport, SturmSequence};

/// Coefficient of the highest power; errors on the zero polynomial.
pub fn leading_coefficient(p: &RationalPolynomial) -> crate::error::Result<crate::rational::Rational> {
    p.leading_coefficient().cloned()
}
