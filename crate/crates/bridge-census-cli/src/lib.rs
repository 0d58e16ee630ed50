//! Library side of the census CLI: output formatting shared between the
//! binary and its tests.

pub mod output;
