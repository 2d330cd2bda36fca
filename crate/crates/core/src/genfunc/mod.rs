//! Generating-function side of the counting problem: Stirling numbers,
//! polynomials in `t`, closed forms for `h(m, n, d)` and truncated series.

pub mod closed;
pub mod counts;
pub mod poly;
pub mod series;
pub mod stirling;

pub use closed::{
    a_coeff, a_poly, asymptotic_proportion, closed_form_coeffs, h_closed, ClosedForm,
    CountingFormula,
};
pub use counts::{poly_bernoulli, single_cycle_count};
pub use poly::RatPoly;
pub use series::{series_c, series_c_total, series_d, series_d_check, TruncatedSeries};
pub use stirling::{binomial, factorial, stirling2, stirling2_alternating};
