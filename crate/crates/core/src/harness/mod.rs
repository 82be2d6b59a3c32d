//! Corpus, group files, the check catalog and report rendering.

pub mod analysis;
pub mod checks;
pub mod corpus;
pub mod groupfile;
pub mod report;
