//! Graphs of virtually cyclic groups.

pub mod constructions;
pub mod doc;
pub mod finite;
pub mod fixtures;
pub mod gog;
pub mod pi1;
pub mod tree;
pub mod vc;

#[cfg(any(test, feature = "oracles"))]
pub mod oracles;
