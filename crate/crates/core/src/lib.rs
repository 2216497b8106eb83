//! Exact computation of Swan spectral sequences for finite groups acting on
//! finite simplicial complexes, with independent group-cohomology and Borel
//! construction oracles, and an affine bisimplex subdivision calculus.

pub mod bisubdiv;
pub mod borel;
pub mod complexes;
pub mod error;
pub mod groupcoh;
pub mod gspace;
pub mod limits;
pub mod linalg;
pub mod random;
pub mod spectral;
pub mod swan;

pub use error::{Error, Result};
pub use limits::Limits;
