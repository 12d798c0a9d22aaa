//! Concrete syntax, graph export and the command line.

pub mod cli;
pub mod dot;
pub mod parse;
pub mod print;

pub use dot::{term_hash, to_dot};
pub use parse::{parse_context, parse_term, parse_term_in, parse_type, Context, ParseError};
pub use print::{print_term, print_type};
