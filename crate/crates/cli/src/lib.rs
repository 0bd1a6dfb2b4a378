//! IO companion for the exact-arithmetic core: the certificate text format,
//! the shipped certificates for the six built-in fields, JSON rendering of
//! command outputs, and SVG/TikZ figure emission.

pub mod format;
pub mod json;
pub mod plot;
pub mod shipped;
