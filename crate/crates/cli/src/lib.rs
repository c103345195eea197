//! Library surface of the `mvlab` command-line tool: the expression
//! language and the command dispatcher, exposed for integration tests.

pub mod commands;
pub mod expr;

pub use commands::{dispatch, Cli, Command, CommandOutput};
pub use expr::{elaborate, parse_expr, AlgebraExpr, Elaborated, ExprError, GroupExpr};
