//! Semiclassical Green function of the model as a truncated gallery-mode sum.

pub mod config;
pub mod cutoff;
pub mod evaluate;
pub mod scanner;
pub mod slice;
pub mod truncation;

pub use config::{Propagator, SemiclassicalConfig};
pub use cutoff::CutoffSpec;
pub use evaluate::{green_evaluate, single_mode_wave, Evaluation, GreenEvaluator};
pub use scanner::{Profile, SupSample, SupScanner};
pub use slice::FieldSlice;
pub use truncation::{mode_truncation, ModeRange, K_HARD};
