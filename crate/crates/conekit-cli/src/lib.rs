//! Library side of the command-line tool: the model file format, the
//! verification report, and two-parameter cone slices.  The binary in
//! `main.rs` is a thin argument-parsing layer over these modules, and the
//! integration tests drive them directly.

pub mod format;
pub mod report;
pub mod slice;

pub use format::{builtin, builtin_names, parse_model, parse_model_with_classes, serialize_model};
pub use report::{run_verification_report, ReportItem, VerificationReport};
pub use slice::{classify, slice_csv, slice_grid, SliceError, SliceRow, Verdict};
