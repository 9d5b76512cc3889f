//! Exact commutative algebra over polynomial rings: Groebner bases, free
//! resolutions, Ext modules, minimal primes, and depth invariants for
//! modules over quotient rings, every formula cross-checkable against
//! independent homological oracles.

pub mod error;
pub mod extnat;
pub mod depthcore;
pub mod groebner;
pub mod modalg;
pub mod primelib;
pub mod polyring;

pub use error::{Error, Result};
