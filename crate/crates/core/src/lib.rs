//! Exact arithmetic for truncated q-series and z-Laurent series, with a
//! constant-term engine, brute-force oracles, a catalog of Rogers–Ramanujan
//! type identities, step-by-step proof replays and a small expression
//! language for stating new identities.

pub mod catalog;
pub mod error;
pub mod laurentz;
pub mod oracles;
pub mod prooftrace;
pub mod qcore;
pub mod qdsl;

pub use error::{QError, Result};
pub use qcore::{Mismatch, Monomial, QLaurent, Term};
