//! Library side of the `mvg` command: dataset files, verification reports
//! and plots.

pub mod analytic;
pub mod flow;
pub mod generate;
pub mod io;
pub mod json;
pub mod plot;
pub mod records;
pub mod report;
pub mod verify;

pub use flow::flow;
pub use generate::{generate, load_config, Summary};
pub use plot::plot;
pub use report::{Profile, Report};
pub use verify::{verify, VerifyOptions};
