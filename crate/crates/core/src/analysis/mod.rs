//! Exact verification and analysis passes over operators: rule checks,
//! closure grids, fingerprint/rebuild round-trips, degree classification,
//! normal-form constants, and localization probes.

pub mod checks;
pub mod classify;
pub mod fingerprint;
pub mod generate;
pub mod localize;
pub mod report;

pub use checks::{
    leibniz_check, leibniz_check_factored, leibniz_check_real, leibniz_fuzz, linear_action,
    product_closed_grid, recurrence_check, LinearActionTable,
};
pub use classify::{classify_degree, monomial_constants, DegreeBehavior, MonomialConstants};
pub use fingerprint::{fingerprint, rebuild, roundtrip_check, Fingerprint};
pub use generate::GenConfig;
pub use localize::{localization_probe, ProbeCounterexample, ProbeResult};
pub use report::{CheckReport, Counterexample};
