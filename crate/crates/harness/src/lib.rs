//! Experiment harness: edge-list I/O, threshold scans and reports.

mod error;
pub mod io;
pub mod report;
pub mod scan;

pub use error::{HarnessError, Result};
pub use io::{format_hypergraph, parse_hypergraph, read_hypergraph, write_hypergraph, Parsed};
pub use ore3_core::is_subgraph_of_hstar;
pub use report::{read_report, report_emit, ReportFormat, ScanReport};
pub use scan::{classify_instance, run_scan, Experiment, ScanConfig};
