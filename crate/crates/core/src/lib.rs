//! Thick partitions of finite grids, Ramsey extraction and exact
//! resolvability constructions over the rationals.
//!
//! The crate is organised by subsystem:
//!
//! * [`grid`]: cell sets, colorings, the `(mu, nu)`-thickness oracle,
//!   restriction and the block-map lift;
//! * [`breakers`]: breaking functions by diagonal selection and by
//!   iterated splitting;
//! * [`core_lemma`]: column-wise assembly of thick partitions from breaking
//!   schedules, their audit, and end-to-end scenarios;
//! * [`ramsey`]: monochromatic-set extraction and the three-color
//!   anti-thickness witness;
//! * [`search`]: complete search for thick partitions of `[m] x [m]`;
//! * [`topology`]: exact rationals, the enumerated rational plane, the
//!   linear-set construction, ranks and density audits;
//! * [`cli`]: the command-line dispatcher and its reports.

pub mod breakers;
pub mod cli;
pub mod combin;
pub mod core_lemma;
pub mod error;
pub mod grid;
pub mod ramsey;
pub mod report;
pub mod search;
pub mod seed;
pub mod topology;

pub use error::{Error, Result};
