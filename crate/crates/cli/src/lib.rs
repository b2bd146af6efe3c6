//! Report tables and the table builders behind the `mvpf` binary.

pub mod report;
pub mod tables;

pub use report::{Cell, ReportTable};
