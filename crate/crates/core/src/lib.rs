//! Syntax of the kernel: universe levels, nameless terms, substitution and
//! the lift coherence normalizer.

pub mod level;
pub mod natural;
pub mod pretty;
pub mod span;
pub mod term;

pub use level::Level;
pub use natural::Natural;
pub use span::SourceSpan;
pub use term::{collapse_lifts, erase_lifts, instantiate, shift, subst, Binding, Constant, Context, Term};
