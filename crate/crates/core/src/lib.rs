//! Infinitesimal rigidity of body-and-cad frameworks.
//!
//! Rigid bodies in 3D are joined by coincidence, angular and distance
//! constraints between points, lines and planes. [`rigidity::analyze`] builds
//! the rigidity matrix from exact rational rows and reports rank, degrees of
//! freedom and redundant rows. The [`sparsity`] module checks the
//! combinatorial counting condition on the associated red/black multigraph.

pub mod compiler;
pub mod fixtures;
pub mod geometry;
pub mod linalg;
pub mod model;
pub mod rigidity;
pub mod sparsity;
pub mod synth;
