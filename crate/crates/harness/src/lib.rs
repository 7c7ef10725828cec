//! Front end for the singularity workbench: expression parsing, scenario
//! replay, fixed identities and property suites, with JSON reports.

pub mod parse;
pub mod report;
pub mod scenario;
pub mod identities;
pub mod suite;
