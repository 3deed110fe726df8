//! Exact discrete probability over urns.
//!
//! Multisets and distributions with rational weights, the multinomial,
//! hypergeometric and Pólya draw channels, and Kantorovich distances at the
//! level of colours, multisets and distributions over multisets, each
//! returned with primal and dual certificates.

pub mod channel;
pub mod dist;
pub mod draws;
pub mod error;
pub mod laws;
pub mod metric;
pub mod multiset;
pub mod rational;
pub mod space;
pub mod tuple;

pub use dist::Dist;
pub use error::{Error, Result};
pub use multiset::Multiset;
pub use rational::Rational;
pub use space::{Elem, Space};
