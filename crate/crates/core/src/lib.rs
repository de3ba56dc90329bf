//! Frobenius data for superelliptic and CM elliptic curves, and the
//! p-adic bookkeeping used to study how often the reduction is ordinary.
//!
//! The pipeline is: count points over `F_{p^r}` ([`curve_counts`]), rebuild
//! the Frobenius polynomial, split it over an imaginary quadratic field
//! ([`quad_field`]), read off slopes ([`newton`]) and tag each prime with the
//! mechanism that explains its ordinarity ([`classify`]).

pub mod arith;
pub mod classify;
pub mod curve_counts;
pub mod field_arith;
pub mod newton;
pub mod quad_field;
pub mod roots;
pub mod weil_oracle;
pub mod weilpoly;
