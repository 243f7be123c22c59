//! Gallery-mode eigenbasis of `-d_x^2 + |eta|^2 + x q(eta)` on the half-line with Dirichlet data.

pub mod metric;
pub mod modes;

pub use metric::ModelMetric;
pub use modes::{dirac_partial_sum, eigenvalue, mode_eval, GalleryMode, ModeBasis};
