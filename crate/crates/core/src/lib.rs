pub mod cli;
pub mod env;
pub mod field;
pub mod index;
pub mod liealg;
pub mod linalg;
pub mod poly;
pub mod repn;
