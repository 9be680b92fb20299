//! Construction and verification of generalized pentagonal geometries
//! PENT(k, r, w) and of the designs and graphs they are built from.
pub mod incidence;
pub mod params;
pub mod graphs;
pub mod designs;
pub mod pent;
pub mod build;
pub mod certify;
pub mod compose;
pub mod catalog;
pub mod cli;
pub use incidence::{normalize_block, Block, Geometry, Point, VerificationReport};
pub use params::PentParams;
