//! Exact simulation of four-drawer Grover search over the registers K
//! (oracle's choice), X (query / solution) and V (result qubit), together
//! with its decomposition into classical histories that know half of the
//! oracle's choice in advance.
//!
//! Modules:
//! - [`layout`], [`state`], [`density`], [`measure`]: dense state vectors,
//!   reduced density matrices, entropy and projective measurement.
//! - [`grover`]: the delta oracle, inversion about the mean on X, query
//!   counting, pipelines.
//! - [`histories`], [`queries`], [`search`]: histories and their phase sum,
//!   classical query accounting, the exhaustive sign-pattern entropy search.
//! - [`boolean_net`]: the search problem as an AND-of-XNOR network.
//! - [`epr`]: two-photon singlet with backdated reduction.
//! - [`report`]: structured output.
//!
//! Sweeps run through [`Execution`]; with the default `parallel` feature
//! they use rayon.

pub mod bits;
pub mod boolean_net;
pub mod density;
pub mod epr;
mod error;
pub mod exec;
pub mod grover;
pub mod histories;
pub mod layout;
pub mod measure;
pub mod queries;
pub mod report;
pub mod search;
pub mod state;

pub use error::{Error, Result};
pub use exec::Execution;
pub use layout::{BasisIndex, RegisterLayout, Subsystem};
pub use state::{make_uniform_input, StateVector, TOLERANCE};
