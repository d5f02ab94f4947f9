//! File formats, enumeration, certificates and the command line for the
//! finloop toolkit.

pub mod certificate;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod loopfile;
pub mod termparse;

pub use cli::run;
