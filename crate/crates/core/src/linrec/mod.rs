//! Shifted-term linear recurrences `X_j = sum_m f_m X_{j - c_m}` with exact
//! rational coefficients, with the sequence-agnostic summation lemmas:
//! partial sums, generating functions, and the second- and third-order
//! (double) binomial sums.

mod poly;
mod spec;
mod sums;

pub use poly::{series_expand, Polynomial, PowerSeries, RationalFunction, DEFAULT_SERIES_ORDER};
pub use spec::{FractionJson, IntRepr, RecurrenceSpec, SpecJson, Term, TermJson};
pub use sums::{
    binom, gen_fun, partial_sum_closed, partial_sum_direct, second_order_binomial_sums,
    second_order_weighted_sums, third_order_double_binomial_sums, weight_denominator, SumPair,
};

pub(crate) use sums::binom_row;
