//! Experiment driver around `pliwave-core`: configuration, the SIR sweep
//! benchmark, table rendering and figure data.

pub mod config;
pub mod dataset;
pub mod error;
pub mod figure;
pub mod harness;
pub mod report;
pub mod svg;

pub use config::BenchConfig;
pub use error::{BenchError, Result};
pub use figure::emit_figure_data;
pub use harness::{persist, run_benchmark};
pub use report::{render_table, SciReport, TableFormat};
