//! Sup-norm decay of the Green function against the dispersion bounds.

pub mod envelope;
pub mod export;
pub mod fit;
pub mod gamma;
pub mod grid;
pub mod schedule;

pub use envelope::{detect_peaks, scanned_envelope, sup_norm_envelope, DispersionEnvelope, Peak, PEAK_FACTOR, PEAK_HALF_WINDOW};
pub use export::{envelope_plot, write_envelope_csv};
pub use fit::{exponent_fit, PowerFit};
pub use gamma::{caustic_term, envelope, gamma_bound, gamma_large, gamma_refined, gamma_small, GammaBound, Regime};
pub use grid::{caustic_time_grid, geometric_times, graded_times, SpatialGridSpec};
pub use schedule::{caustic_period, caustic_times, CausticInterval, CausticSchedule};
