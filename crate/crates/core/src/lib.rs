//! Boolean automata networks under block-sequential update schedules.
//!
//! A network is rewritten into one over the same automata whose parallel
//! dynamics equals the block-sequential one, then shrunk by merging
//! automata that compute the same function up to negation and dropping
//! automata that influence nothing. Limit dynamics survive both steps up
//! to isomorphism, which the exhaustive [`dynamics`] engine checks.
//!
//! ```
//! use anreduce::{netlang, dynamics, Limits, UpdateSchedule};
//!
//! let net = netlang::parse_network("a = !b | c\nb = a\nc = !b").unwrap();
//! let pi = UpdateSchedule::parallel(3);
//! let limit = dynamics::limit_dynamics(&net, &pi, &Limits::default()).unwrap();
//! assert_eq!(limit.signature().to_string(), "{5}");
//! ```

pub mod circuit;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod families;
pub mod graphs;
pub mod netlang;
pub mod network;
pub mod parallel;
pub mod random;
pub mod reduce;
pub mod schedule;

pub use config::{Configuration, State};
pub use error::{Error, ErrorClass, Result};
pub use network::AutomataNetwork;
pub use schedule::{apply_block, apply_schedule, UpdateSchedule};

/// Caps on exhaustive work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest circuit support tabulated by influence and equivalence checks.
    pub max_support: usize,
    /// Largest network whose `2^n` configurations are enumerated.
    pub max_automata: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_support: 20,
            max_automata: 20,
        }
    }
}
