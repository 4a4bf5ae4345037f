//! Soft-output list decoding of binary product codes.

pub mod calibrate;
pub mod channel;
pub mod chase;
pub mod code;
pub mod error;
pub mod logmath;
pub mod oracle;
pub mod simulate;
pub mod softout;
pub mod tpd;

pub use error::{Error, Result};
