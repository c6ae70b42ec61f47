//! Numerical solver for systems of multivariate polynomial equations with
//! isolated solutions.
//!
//! The pipeline reduces a polynomial system to an eigenvalue problem: a
//! structured Macaulay matrix is assembled from the coefficients, its left
//! nullspace (cokernel) is computed, and a family of small matrices built from
//! the cokernel carries the solutions in its left eigenstructure. Candidate
//! roots are read off from eigenvalue ratios and filtered by backward error.
//!
//! Modules mirror the stages: [`poly`] (supports, polynomials, systems),
//! [`lattice`] (polytope and integer-lattice computations), [`macaulay`]
//! (matrix assembly and cokernels), [`linalg`] (dense factorization backend),
//! [`admissible`] (exponent-set tuples parameterizing the construction),
//! [`solver`] (the eigenvalue solve itself) and [`generators`] (random and
//! fixed test systems).

pub mod admissible;
mod error;
pub mod generators;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod macaulay;
pub mod poly;
pub mod solver;

pub use error::{Error, Result};
pub use poly::{CoeffDist, Exponent, PolySystem, Polynomial, Support, C64};

pub use admissible::{AdmissibleTuple, HilbertPrediction, TupleFamily};
pub use lattice::{ExponentRecoveryTable, LatticePolytopeSpec};
pub use macaulay::{CokernelBasis, MacaulayMatrix};
pub use solver::{Solution, SolveOptions, SolveReport};
