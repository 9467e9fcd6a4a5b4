//! Expression language and command-line front end for `qhecke`.

pub mod app;
pub mod eval;
pub mod syntax;

pub use app::{run, Cli, Command};
pub use eval::eval;
pub use syntax::{parse, Expr, ExprKind, ParseError, Primitive, Span};
