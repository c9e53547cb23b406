//! Query DSL, script runner, and report rendering for the `topo` binary.

pub mod ast;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod render;
pub mod theorem1;
