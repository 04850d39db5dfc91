//! Reference methods the index is measured and checked against.

mod bktree;
mod naive;

pub use bktree::{BkQueryResult, BkTree};
pub use naive::naive_scan;
