//! Polynomial histopolation on mock-Chebyshev segments.
//!
//! Reconstructs polynomial approximants of a function on `[-1, 1]` from its
//! mean values over `n` equispaced subintervals. Three segment-selection
//! strategies keep the reconstruction well conditioned where the full
//! equispaced histopolant is not:
//!
//! * concatenated mock-Chebyshev segments ([`histo::method_concatenated`]),
//! * quasi-nodal segments around Chebyshev roots ([`histo::method_quasi_nodal`]),
//! * constrained least squares over all segments ([`histo::method_constrained`]).
//!
//! Conditioning is measured through segmental Lebesgue constants
//! ([`histo::lebesgue_constant`]) and spectral condition numbers
//! ([`linalg::condition_number_2`]).

pub mod basis;
pub mod error;
pub mod experiments;
pub mod grid;
pub mod histo;
pub mod linalg;
pub mod oracle;
pub mod quadrature;

pub use basis::ChebPoly;
pub use error::{HistoError, Result};
pub use grid::{NodeKind, NodeSet, Segment, SegmentKind, SegmentSet};
pub use histo::{AveragesVector, Gramian, LagrangeBasis, Method, MethodReport, Provenance};
pub use linalg::{DenseMatrix, KktSystem};
pub use oracle::{FunctionId, TestFunction};
