//! Exact Euler calculus on semilinear sets.
//!
//! Everything here runs over arbitrary-precision rationals; there are no
//! floating point numbers and no tolerances anywhere. The objects are
//! subsets of ℝⁿ described by Boolean combinations of linear equalities
//! and strict or weak inequalities, and the central quantity is the
//! combinatorial Euler measure: the valuation that assigns a point
//! measure 1 and an open bounded interval measure -1. It is additive and
//! multiplicative but deliberately not a homotopy invariant, which is
//! what makes it integrate against constructible functions.
//!
//! The measure is computed two independent ways, by fiber recursion over
//! the last coordinate and by cell enumeration over the induced
//! hyperplane arrangement, so each engine serves as a check on the other.
//! On top of the measure sit Euler integration, counting series for
//! definable families of subsets with their evaluation conventions,
//! and character-theoretic splitting of measures under finite symmetry
//! groups.

pub mod combinat;
pub mod elimination;
pub mod error;
pub mod euler;
pub mod linalg;
pub mod polyset;
pub mod rat;
pub mod series;
pub mod symmetry;

pub use error::{Error, Result};
pub use rat::{rat, rat_int, Int, Rat};
