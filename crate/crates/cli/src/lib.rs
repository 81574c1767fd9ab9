//! Command-line front end: an expression language for multivectors and
//! Clifford matrices, and JSON-emitting commands over the `cliffrep` library.

mod commands;
pub mod parser;
pub mod render;

pub use commands::run;
