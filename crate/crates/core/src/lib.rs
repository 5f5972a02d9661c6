//! Star-shaped graphs: the graph equation and its solutions, characters and
//! reflection functors, locally scalar representations, and exact
//! certificates of rational independence.

pub mod algebra;
pub mod characters;
pub mod error;
pub mod graph;
pub mod independence;
pub mod locally_scalar;
pub mod scalar;

pub use algebra::{NumberField, NumberFieldElem, RatPoly, Rational};
pub use characters::Character;
pub use error::{Error, Result};
pub use graph::{classify, DynkinName, Enclosure, ExtendedDynkinName, GraphClass, GraphKind, RootChoice, StarGraph};
pub use independence::{certify_infinite_dimensional, minimal_hyperbolic_graphs, Certificate};
pub use locally_scalar::{IterateKind, LsCharacter, Parity, ParityPair, Vertex};
pub use scalar::Scalar;
