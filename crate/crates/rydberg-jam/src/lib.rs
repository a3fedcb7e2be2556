//! File formats, parallel drivers and the command line for
//! [`rydberg_jam_core`].

pub mod cli;
pub mod export;
pub mod format;
pub mod parallel;
pub mod selfcheck;
pub mod svg;
