//! Reasoning engine for stratified first-order logic.
//!
//! The library parses theories in the `.slt` s-expression format, expands
//! them with semantic tableaux into model schemata, ranks the schemata by
//! optimism, and reports the presuppositions a discourse commits its
//! speaker to, together with any cancellations.

pub mod cli;
pub mod corpus;
pub mod logic;
pub mod parser;
pub mod presup;
pub mod render;
pub mod schemata;
pub mod tableaux;
