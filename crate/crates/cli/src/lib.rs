//! Session scripts for the graded algebra kernel: parsing, evaluation,
//! text and JSON reports.

pub mod ast;
pub mod exec;
pub mod parse;
pub mod render;
pub mod report;

pub use ast::{Location, SessionScript};
pub use exec::{execute, Flags};
pub use parse::{parse_bytes, parse_session, ParseError, ParseErrorKind};
pub use render::{render_betti, render_report};
pub use report::{CommandOutput, ReportDocument};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const ENGINE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const GOLDEN: i32 = 3;
}

/// Exit code for a finished run.
pub fn exit_code(doc: &ReportDocument) -> i32 {
    if doc.error.is_some() {
        exit::ENGINE
    } else if doc.golden_failure() {
        exit::GOLDEN
    } else {
        exit::OK
    }
}
