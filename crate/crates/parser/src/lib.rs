//! Surface syntax for `.prtt` files: lexing, parsing, name resolution and
//! import loading.

mod error;
mod lexer;
mod parse;
mod resolve;
pub mod syntax;

pub use error::{LoadError, ParseError, ResolveError};
pub use parse::{parse_expr, parse_module, parse_module_named};
pub use resolve::{load, load_str, resolve, resolve_expr, resolve_into, Scope};
pub use syntax::SurfaceModule;
