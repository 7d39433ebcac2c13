//! Front end of the `vertexlab` binary: argument parsing, dispatch and output.

pub mod args;
pub mod emit;
pub mod run;
