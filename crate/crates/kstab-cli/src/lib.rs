//! Library side of the `kstab` command: problem files, reports, scans and
//! the regression corpus.

pub mod compute;
pub mod corpus;
pub mod oracle;
pub mod problem;
pub mod rat;
pub mod report;
pub mod scan;
pub mod text;
