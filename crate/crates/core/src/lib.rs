//! Certified lower bounds for the Odd Hadwiger number of graph products.
//!
//! [`graph`] holds simple graphs, the four standard products and graph I/O.
//! [`model`] defines odd clique certificates with their verifier and text
//! encoding. [`constructions`] builds certificates from factor models, and
//! [`oracle`] computes exact values on small graphs by exhaustive search.

pub mod cli;
pub mod constructions;
pub mod graph;
pub mod model;
pub mod oracle;
