//! Exact-arithmetic constructions for generalized punctual Hilbert schemes of
//! classical Lie algebras: principal slices, centralizer fibers, idealic
//! coordinates, spectral data, and the associated higher complex structures.

pub mod codec;
pub mod dual;
pub mod field;
pub mod gcx;
pub mod hilb;
pub mod ideals;
pub mod liealg;
pub mod matrix;
pub mod mpoly;
pub mod poly;
pub mod realforms;
pub mod sampling;
