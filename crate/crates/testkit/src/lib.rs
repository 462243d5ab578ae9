//! Shared test support: definitional oracles, rule-targeted instance families
//! and proptest strategies.

pub mod families;
pub mod oracles;
pub mod strategies;

pub use oracles::*;
