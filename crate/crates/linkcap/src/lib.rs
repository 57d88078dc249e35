//! Link-capacity analysis for mmWave ISAC channels.
//!
//! Models two vehicle-to-vehicle radio configurations — automotive radar
//! used as a communication channel (RadCom, 76–81 GHz) and 802.11bd in the
//! unlicensed 60 GHz band — and computes Shannon channel capacity over the
//! band, both as a continuous integral and as the OFDM finite-sum estimate
//! with per-bin lower/upper bounds. Supports parameter sweeps, sensitivity
//! tables, capacity-vs-distance series, and an independent verification
//! oracle.

pub mod capacity;
pub mod channel;
pub mod error;
pub mod oracle;
pub mod profiles;
pub mod quantities;
pub mod report;
pub mod sweep;

pub use capacity::{apply_duty_cycle, binned_capacity, continuous_capacity, effective_throughput, CapacityEstimate};
pub use channel::{noise_power, path_power_gain, snr, GainModel, LinkProfile, BOLTZMANN};
pub use error::{Error, Result};
pub use oracle::{backsolve_tx_power, oracle_capacity, verify_all_tables, OracleReport};
pub use profiles::{builtin_radcom, builtin_wifi_bd, parse_scenario, serialize_scenario, ScenarioFile};
pub use quantities::{db_to_linear, linear_to_db, Decibel, Frequency, PowerWatts};
pub use report::{render_fig2_series, render_svg_chart, render_table, Format, ReportDocument};
pub use sweep::{capacity_vs_distance, relative_diff, run_sweep, Denominator, SweepResult, SweepSpec, SweptParameter};
