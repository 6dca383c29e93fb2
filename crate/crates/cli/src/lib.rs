//! Front end for `twist-cert-core`: document parsing, command dispatch and
//! certificate emission.

pub mod commands;
pub mod output;
pub mod schema;
pub mod words;

pub use commands::{run, CliError, Command, Flags, RunConfig};
pub use output::{emit_certificate, EXIT_INPUT, EXIT_NEGATIVE, EXIT_POSITIVE, EXIT_UNKNOWN};
pub use schema::{emit_chart, emit_system, parse_chart, parse_system, Diagnostic};
pub use words::{parse_nonempty_word, parse_word, WordError};
