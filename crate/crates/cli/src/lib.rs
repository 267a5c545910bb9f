//! Library side of the `cma` command: scenario-file parsing and report
//! rendering. The binary in `main.rs` only wires these to the command line.

pub mod report;
pub mod scenario_file;

pub use report::Format;
pub use scenario_file::{ParseError, ScenarioFile};
