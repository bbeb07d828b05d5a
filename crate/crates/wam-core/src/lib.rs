//! Character-theoretic monomiality analysis for finite permutation groups.
//!
//! The library computes, for a finite group given by permutation generators:
//!
//! * conjugacy classes, derived subgroups, quotients and direct products
//!   ([`group`]),
//! * the conjugacy classes of subgroups and the linear characters of each
//!   representative ([`subgroup`], [`linchar`]),
//! * the exact irreducible character table in Dixon's modular encoding and
//!   induced-character multiplicity vectors ([`chartab`]),
//! * the monoid generated by the monomial characters inside ℕʳ together with
//!   its Hilbert basis ([`monoid`]),
//! * the monomial / NAM / BAM / WAM classification with per-pair witnesses
//!   ([`classify`]),
//! * the order calculus for Artin L-functions at a fixed point: admissible
//!   order vectors, the holomorphy monoid, factoriality and the simple-zero
//!   criterion ([`lfun`]).
//!
//! [`pipeline`] wires the stages together behind a disk cache, and
//! [`descriptor`] provides the small text language (`"SL(2,3)"`,
//! `"Perm[(1,2),(1,2,3)]"`, `Direct(..)`, `Quotient(..)`) used by the CLI.

pub mod cache;
pub mod chartab;
pub mod classify;
pub mod data;
pub mod descriptor;
pub mod error;
pub mod field;
pub mod group;
pub mod lfun;
pub mod linchar;
pub mod modp;
pub mod monoid;
pub mod named;
pub mod perm;
pub mod pipeline;
pub mod schreier;
pub mod snf;
pub mod subgroup;

pub use error::Error;

/// Version string recorded in every artifact; cache entries from other
/// versions are discarded.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Default ceiling on group order for full pipelines.
pub const DEFAULT_SIZE_CAP: u64 = 10_000;
