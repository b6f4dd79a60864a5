//! Exact rationals, truncated series, bivariate polynomials and supports.

pub mod poly;
pub mod rat;
pub mod series;
pub mod support;

pub use poly::{shift_step, shift_substitute, BivarPoly, Mono, ShiftedPoly};
pub use rat::Rat;
pub use series::{series_pow, series_powers, TruncatedSeries, Valuation};
pub use support::{puiseux_support_constraints, PuiseuxMeta, SupportShape};

/// `P(x, y(x))` truncated at `x^precision`.
pub fn eval_poly_at_series(
    p: &BivarPoly,
    y: &TruncatedSeries,
    precision: usize,
) -> crate::Result<TruncatedSeries> {
    p.eval_at_series(y, precision)
}
