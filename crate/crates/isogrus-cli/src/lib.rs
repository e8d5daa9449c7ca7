//! Front end for the isogrus engine: rendering, the product cache and the invariant suite.

pub mod cache;
pub mod checks;
pub mod cli;
pub mod render;
