//! Jet coordinates on the charts of order `r`, total derivatives,
//! prolongation of variety ideals and changes of reference.

pub mod chart;
pub mod derivative;
pub mod projective;
pub mod transform;

pub use chart::{JetChart, JetIndex, JetVar};
pub use derivative::{prolong_ideal, total_derivative};
pub use projective::ProjectiveMap;
pub use transform::{prolong_transformation, PointTransformation};
