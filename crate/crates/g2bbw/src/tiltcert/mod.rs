//! Tilting-collection certification and the claim-verification report.

mod claims;
mod collections;

pub use claims::*;
pub use collections::*;
