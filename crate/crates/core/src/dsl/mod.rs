//! A small definition language for algebras, modules, operators and checks.
//!
//! ```text
//! algebra Vir { generators: L; [L, L] = (d + 2*x1) L; }
//! module M over Vir { generators: v; rho(L, v) = (d + x1) v; }
//! map T : M -> Vir { T(v) = 3 L; }
//! check rb T;
//! ```

pub mod ast;
pub mod elaborate;
pub mod error;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod run;

pub use ast::SourceFile;
pub use elaborate::{elaborate, ElabOptions, Program};
pub use error::{DslError, DslResult, Span};
pub use parser::{parse, parse_poly, parse_value};
pub use printer::print;
pub use run::{execute, Report, RunOptions};

/// Parse, elaborate and run every directive of `source` in order.
pub fn check_source(source: &str, elab: &ElabOptions, run: &RunOptions) -> DslResult<Report> {
    let file = parse(source)?;
    let program = elaborate(&file, elab)?;
    Ok(Report::run(source.as_bytes(), &program, run))
}
