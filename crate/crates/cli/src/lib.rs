//! File formats, the bundled catalog, threaded census and scan runs, and the
//! `coxdeform` command line, on top of `coxdeform-core`.

pub mod app;
pub mod format;
pub mod parallel;
pub mod store;
