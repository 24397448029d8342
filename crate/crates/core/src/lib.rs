//! Cuspidal subgroups attached to Eisenstein series on `X_0(N)`: closed-form
//! orders from cyclotomic constants, and a modular-symbols oracle to check
//! them against.

pub mod arith;
pub mod bernoulli;
pub mod characters;
pub mod cli;
pub mod error;
pub mod idealnum;
pub mod linalg;
pub mod modsym;
pub mod stevens;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
