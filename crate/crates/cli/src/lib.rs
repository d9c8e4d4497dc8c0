//! Front ends for the planner: shared CLI options and the HTTP service.

pub mod options;
pub mod server;
