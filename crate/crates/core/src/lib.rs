pub mod algebra;
pub mod chains;
pub mod cli;
pub mod cn;
pub mod expr;
pub mod qforms;
pub mod split;
