//! Exact computer algebra for formal-scheme constructions at finite depth.
//!
//! Admissible rings are presented as descending ideal towers over a
//! polynomial model ring. Closures are computed level by level as
//! saturations, and the topology tests (ideal of definition, adic
//! cofinality, Chevalley dichotomy) reduce to Gröbner-basis containments.
//! Power-series rings such as `k[[x,y]]` or `k[x,y][[t]]` are modelled by
//! their polynomial rings at every level: all constructions here only use
//! levelwise ideal arithmetic, which agrees with the completed ring.
//!
//! The [`foliations`] module covers Pfaff forms on the projective plane,
//! bounded-degree algebraic-solution search and order-by-order smooth
//! separatrix jets, including families along a line through a singular point.

pub mod closures;
pub mod error;
pub mod exactpoly;
pub mod foliations;
pub mod groebner;
pub mod towers;

pub use error::{Error, ParseError, Result};
pub use exactpoly::{Mono, Poly, Rat, TruncSeries, VarSpec};
pub use groebner::{Engine, GroebnerBasis, Ideal, Limits, MonomialOrder};
