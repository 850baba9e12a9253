//! A small expression language over the character ring.
//!
//! `V[..]` is an irreducible, `U[..]` a single torus weight, `S+`/`S-` the
//! spinor halves; `*` tensors, `+`/`-` add, and the heads `dim`, `mult`,
//! `pair` and `ind` turn characters into numbers or an index.

mod ast;
mod eval;
mod lexer;
mod parser;

pub use ast::Expr;
pub use eval::{eval_str, evaluate, Evaluator, Value};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, parse_str};
