//! Interchange formats, verification suites and the command-line front end
//! for [`stablat_core`].
//!
//! All rationals travel as strings `"p/q"` (or `"p"`) in lowest terms so
//! values round-trip bit-exactly and never pass through floating point.

pub mod cli;
pub mod json;
pub mod verify;
