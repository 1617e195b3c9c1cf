//! Library half of the `kss` command: instance families, certificate checking and sweeps.

pub mod certify;
pub mod family;
pub mod scan;
