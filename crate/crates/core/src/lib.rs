//! Clique tensors of graphs: t-clique enumeration, certified spectral radii
//! of the t-clique tensor, and localized Turán/Zykov-type bounds checked
//! against exhaustive graph enumeration.

pub mod bits;
pub mod bounds;
pub mod cliques;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod spectral;
pub mod verify;

pub use bounds::{BoundName, BoundReport, BoundSuite, EqualityCase, EqualityKind, Tolerances, WeightedVector};
pub use cliques::{build_catalog, enumerate_t_cliques, max_clique, Clique, CliqueCatalog};
pub use error::{Error, Result};
pub use graph::Graph;
pub use spectral::{spectral_radius, SpectralOptions, SpectralResult};
