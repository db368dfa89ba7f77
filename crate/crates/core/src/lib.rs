//! Exact computations with lattice-periodic triangulations of `Z^n`.

pub mod enumerate;
pub mod exact;
pub mod io;
pub mod polyhedra;
pub mod predicates;
pub mod stats;
pub mod symmetry;
pub mod tri;

use thiserror::Error;

/// Any error raised by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] exact::ArithError),
    #[error(transparent)]
    Poly(#[from] polyhedra::PolyError),
    #[error(transparent)]
    Tri(#[from] tri::TriError),
    #[error(transparent)]
    Predicate(#[from] predicates::PredicateError),
    #[error(transparent)]
    Neighbor(#[from] enumerate::NeighborError),
    #[error(transparent)]
    Flip(#[from] enumerate::FlipError),
    #[error(transparent)]
    Parse(#[from] io::ParseError),
    #[error(transparent)]
    Io(#[from] io::IoError),
}
