//! The surface language: parsing and elaboration into kernel terms.

pub mod ast;
mod case;
pub mod elab;
mod judg;
pub mod lexer;
pub mod ltype;
pub mod parser;
mod prods;
