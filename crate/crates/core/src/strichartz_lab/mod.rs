//! Strichartz exponents, mixed space-time norms and the regular/singular kernel split.

pub mod norms;
pub mod pair;
pub mod scaling;
pub mod split;

pub use norms::{mixed_norm, slice_norm, MixedNorm, SpaceTimeField};
pub use pair::{admissible_check, strichartz_exponents, Admissibility, StrichartzPair, GALLERY_LOSS};
pub use scaling::{scaling_level, ScalingLevel, ScalingPlan};
pub use split::{convolution_ratio, kernel_split, singular_ball, split_bounds_check, KernelSplit, SplitReport, WINDOW_RULE};
