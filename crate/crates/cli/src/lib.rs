//! Benchmark harness library: expression parsing, test-function registries,
//! bench drivers, and report serialization for the `cpslsm` binary.

pub mod bench;
pub mod expr;
pub mod functions;
pub mod report;
