pub mod encoding;
pub mod error;
pub mod graph;
pub mod harness;
pub mod optimizer;
pub mod oracle;
pub mod qaoa;
pub mod rng;
