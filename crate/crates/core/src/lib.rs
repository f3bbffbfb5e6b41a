//! Rate analysis and placement optimization for IRS-aided LoS links.
//!
//! An intelligent reflecting surface (IRS) relays a blocked AP--user link by
//! re-phasing (passive) or re-phasing and amplifying (active) the incident
//! signal. This crate models the line-of-sight geometry, evaluates receive
//! SNR and achievable rate for both IRS types in both link directions,
//! optimizes where along the AP--user segment the surface should sit, and
//! decides which IRS type achieves the higher rate.
//!
//! Modules:
//! - [`config`]: scenario parameters, validation, dB/dBm conversions.
//! - [`channel`]: geometry and explicit LoS channel vectors.
//! - [`link`]: reflection design, feasibility, and SNR/rate evaluation
//!   via closed forms plus an independent vector-arithmetic route.
//! - [`placement`]: one-dimensional placement optimizers and closed-form
//!   placement rules.
//! - [`compare`]: active-versus-passive verdicts and element-count
//!   crossovers.
//!
//! All operations are pure functions over immutable inputs and safe to call
//! from concurrent workers.
//!
//! ```
//! use irs_core::compare::{exact_compare, Winner};
//! use irs_core::link::{passive_snr, Direction};
//! use irs_core::placement::optimize_active_dl;
//! use irs_core::default_scenario;
//!
//! let params = default_scenario();
//!
//! // Passive surface directly above the AP.
//! let ev = passive_snr(0.0, Direction::Downlink, &params).unwrap();
//! assert!((ev.rate_bps_hz - 18.116).abs() < 1e-3);
//!
//! // Optimized active placement sits near the user for a 0 dBm budget.
//! let active = optimize_active_dl(&params).unwrap();
//! assert!(active.x_ai_star_m > 40.0);
//!
//! // With 400 elements the passive surface wins the downlink.
//! let verdict = exact_compare(&params, Direction::Downlink).unwrap();
//! assert_eq!(verdict.winner, Winner::Passive);
//! ```

pub mod channel;
pub mod compare;
pub mod config;
pub mod error;
pub mod link;
pub mod placement;

pub use config::{default_scenario, ScenarioParams};
pub use error::{Error, Result};
