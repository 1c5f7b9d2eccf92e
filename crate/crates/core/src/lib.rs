pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod lti;
pub mod obsv;
pub mod oracle;
pub mod signcons;
pub mod variation;

pub use error::{Error, Result};
