//! Monte Carlo FER and complexity sweeps.

mod config;
mod csv;
mod sweep;

pub use config::{parse_snr_grid, SimConfig};
pub use csv::{format_real, read_csv, write_csv, CSV_COLUMNS};
pub use sweep::{
    load_or_estimate_profile, ml_lb_account, profile_cache_path, run_frame, run_sweep,
    AuditStats, FrameOutcome, SimRecord,
};
