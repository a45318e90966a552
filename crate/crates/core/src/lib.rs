//! Cox quotient presentations of smooth complete toric varieties and symbolic
//! reports of their low-degree A¹-homotopy sheaves.
//!
//! Modules, bottom-up: [`lattice`] (exact integer linear algebra),
//! [`geometry`] (unimodular cones), [`fan`] (fans, validation, constructions),
//! [`cox`] (irrelevant ideal, non-faces, Picard group), [`homotopy`] (the
//! symbolic engine) and [`cli`].

pub mod cli;
pub mod cox;
pub mod fan;
pub mod geometry;
pub mod homotopy;
pub mod lattice;
pub mod rayset;

pub use cox::{MonomialIdeal, PicardGroup, SubspaceArrangement};
pub use fan::{Fan, FanError, ValidationReport};
pub use geometry::{HalfspaceRep, SimplicialCone};
pub use homotopy::{GroupExpr, HomotopyReport};
pub use lattice::{IntMatrix, IntVector, SmithDecomposition};
pub use rayset::RaySet;
