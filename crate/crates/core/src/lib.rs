//! Query answering and answer enumeration for ontology-mediated queries:
//! ELIHF ontologies paired with conjunctive queries.
//!
//! The pipeline: parse and normalize the ontology ([`model`]), saturate
//! concept types ([`reasoner`]), close databases under ontology consequences
//! ([`chase`]), materialize query-directed universal models ([`umodel`]),
//! analyze the FA-extension of the query ([`analysis`]) and enumerate
//! complete answers with linear preprocessing and constant delay
//! ([`engine`]) or minimal partial answers with wildcards ([`partial`]).
//! [`gens`] builds reduction-shaped databases (triangle, hyperclique,
//! Boolean matrix multiplication) for correctness checks and benchmarks,
//! and [`oracle`] holds independent brute-force references used by tests.

pub mod analysis;
pub mod chase;
pub mod engine;
pub mod gens;
pub mod model;
pub mod oracle;
pub mod partial;
pub mod reasoner;
pub mod umodel;

pub use model::{Cq, Database, Omq, Ontology, Role, Signature, Sym, UnaryPred, Vocab};
