//! Gallery modes of the Friedlander model: Airy phase machinery, the
//! semiclassical Green sum, dispersion and Strichartz scans.
//!
//! Numerical types are generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix `f64`, which is what the CLI and the acceptance suite use.

pub mod bessel;
pub mod cli;
pub mod dispersion_lab;
pub mod error;
pub mod green_sum;
pub mod model_modes;
pub mod plot;
pub mod quadrature;
pub mod scalar;
pub mod special_airy;
pub mod strichartz_lab;
pub mod verification;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Config = green_sum::SemiclassicalConfig<f64>;
pub type Envelope = dispersion_lab::DispersionEnvelope<f64>;
pub type Scanner = green_sum::SupScanner<f64>;
pub type Evaluator = green_sum::GreenEvaluator<f64>;
pub type Metric = model_modes::metric::ModelMetric<f64>;
pub type Mode = model_modes::modes::GalleryMode<f64>;
pub type Basis = model_modes::modes::ModeBasis<f64>;
pub type ZeroTable = special_airy::AiryZeroTable<f64>;
pub type Split = strichartz_lab::KernelSplit<f64>;
pub type Level = strichartz_lab::ScalingLevel<f64>;
pub type Pair = strichartz_lab::StrichartzPair<f64>;
