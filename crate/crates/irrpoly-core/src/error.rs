use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

/// Crate-wide error type. Variants carry enough context to reconstruct what
/// was rejected without chasing the call site.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two dimensions that had to agree did not.
    DimMismatch { expected: usize, got: usize },
    /// A square matrix was required.
    NonSquare { rows: usize, cols: usize },
    /// A nonsingular matrix was required.
    Singular,
    /// The polyhedron is unbounded; a nonzero recession direction is named.
    Unbounded { direction: Vec<BigInt> },
    /// The polyhedron has no points.
    EmptyPolytope,
    /// The polytope holds no lattice points.
    EmptyLattice,
    /// A full-dimensional set was required.
    LowerDimensional { dim: usize, ambient: usize },
    /// The queried point is not a member of the given set.
    NotInSet,
    /// The cone has a nontrivial lineality space, so extreme rays do not exist.
    NotPointed,
    /// The requested computation exceeds a hard size guard.
    Capacity { what: &'static str, limit: usize },
    /// A grid coordinate fell outside `{0, …, k−1}`.
    OutOfGrid,
    /// A point with a negative component where `Z₊ⁿ` membership is required.
    NegativeComponent,
    /// Malformed construction input (free-form reason).
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NonSquare { rows, cols } => {
                write!(f, "matrix is not square: {rows}x{cols}")
            }
            Error::Singular => write!(f, "matrix is singular"),
            Error::Unbounded { direction } => {
                write!(f, "polyhedron is unbounded along {direction:?}")
            }
            Error::EmptyPolytope => write!(f, "polyhedron is empty"),
            Error::EmptyLattice => write!(f, "polytope holds no lattice points"),
            Error::LowerDimensional { dim, ambient } => {
                write!(f, "set has affine dimension {dim} < ambient {ambient}")
            }
            Error::NotInSet => write!(f, "point is not a member of the set"),
            Error::NotPointed => write!(f, "cone is not pointed (nontrivial lineality)"),
            Error::Capacity { what, limit } => {
                write!(f, "size guard exceeded: {what} over limit {limit}")
            }
            Error::OutOfGrid => write!(f, "coordinate outside the grid range"),
            Error::NegativeComponent => write!(f, "point has a negative component"),
            Error::Invalid(why) => write!(f, "invalid input: {why}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
