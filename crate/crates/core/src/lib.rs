//! Bourbaki assemblies and a hereditarily finite set laboratory.
//!
//! The syntactic half expands abbreviations into assemblies of signs with
//! `τ`–`□` links and counts their signs exactly. The semantic half works with
//! ordinals and fixed points over hereditarily finite sets.

pub mod assembly;
pub mod cli;
pub mod count;
pub mod dot;
pub mod expand;
pub mod expr;
pub mod fixpoint;
pub mod formative;
pub mod formats;
pub mod hf;
pub mod linear;
pub mod ordinal;

pub use assembly::{Assembly, BuildKind, Classification, Letter, Sign};
pub use expand::expand;
pub use expr::{numeral_expr, parse_expression, Expression};
pub use linear::{delinearize, linearize, LinearAssembly};
