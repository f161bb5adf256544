pub mod error;
pub mod graph;
pub mod guard;

pub use error::{Error, Result};
pub mod cli;
pub mod csp;
pub mod decomposition;
pub mod homcount;
pub mod kpath;
pub mod mis;
pub mod permpattern;
pub mod subcount;
pub mod verify;
