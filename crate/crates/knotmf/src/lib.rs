//! Exact HOMFLYPT invariants, Koszul matrix factorizations for two strands and
//! localization characters of Jucys–Murphy braids.

pub mod scalar;
pub mod braid;
pub mod hecke;
pub mod localization;
pub mod mf;
pub mod cli;
