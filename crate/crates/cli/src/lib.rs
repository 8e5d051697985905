//! Library half of the `madkit` command-line tool: edge-list parsing and
//! printing, seeded graph generators, and the JSON result documents.

pub mod document;
pub mod edgelist;
pub mod gen;

pub use edgelist::{parse_edge_list, write_edge_list, LabeledGraph, ParseError};
