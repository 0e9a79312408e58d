//! Connectedness and rationality criteria for real singular cubic threefolds.

pub mod cubic;
pub mod exact;
pub mod bundles;
pub mod cli;
pub mod cohomology;
pub mod families;
pub mod oracle;
pub mod singular;
pub mod verdict;
