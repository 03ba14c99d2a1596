//! Report types shared by the `kzcover` binary and its tests.

pub mod report;
