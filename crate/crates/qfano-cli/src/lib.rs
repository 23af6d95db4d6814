//! Command-line front end for the `qfano` library: stable machine-readable
//! output around enumeration, dimension tables, link analysis and model
//! verification.

pub mod assets;
pub mod commands;
pub mod output;
