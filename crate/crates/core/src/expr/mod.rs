//! Expression text: parsing, lowering, canonical printing and JSON fixtures.

mod json;
mod lower;
mod parse;
mod print;

pub use json::{
    exprs_from_json, exprs_from_strs, exprs_to_json, matrix_from_json, matrix_to_json,
    subst_from_json, subst_to_json,
};
pub use lower::{
    document_field, lower, lower_in, parse_document, parse_ratfunc, parse_ratfunc_in, ExprError,
};
pub use parse::{parse_expr, ExprAst, ParseError};
pub use print::{print_canonical, print_poly};
