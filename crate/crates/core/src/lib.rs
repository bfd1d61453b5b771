//! The graph of q-ary simplex codes of dimension 2: simplex points and lines in
//! PG(q, q), maximal cliques of the induced Grassmann subgraph, the inversion
//! transformation and monomial automorphisms, plus verification suites.

pub mod error;
pub mod gf;
pub mod graph;
pub mod harness;
pub mod monomial;
pub mod projgeom;
pub mod simplex;

pub use error::{Error, Result};
pub use gf::{Fe, FieldSpec};
pub use graph::{Clique, CliqueKind, GammaGraph};
pub use harness::{RunOptions, SuiteReport};
pub use monomial::MonomialMap;
pub use projgeom::{FVec, PLine, PPoint, Plane};
