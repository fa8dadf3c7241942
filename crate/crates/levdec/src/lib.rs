//! Exact computer algebra for level decompositions of Borcherds superalgebras
//! `B(g^(n))` and tensor hierarchy algebras `S(g^(n))` built over (over-)extended
//! Kac--Moody algebras such as E10 and A1++.
//!
//! The pipeline:
//!
//! 1. [`cartan`] builds Cartan matrices for the extended algebras and their
//!    super-extensions, with exact integer/rational lattice arithmetic.
//! 2. [`weyl`] enumerates the Weyl group elements whose shifted images of a
//!    dominant weight stay gl-dominant up to a degree cutoff.
//! 3. [`glrep`] is an exact representation ring for gl(d): Littlewood-Richardson
//!    products, exterior/symmetric powers, Adams operations.
//! 4. [`branching`] evaluates the gl-covariant Weyl-Kac character formula,
//!    branching a lowest-weight module into gl(d) irreps graded by degree.
//! 5. [`borcherds`] peels the level modules B_l out of the Koszul duality
//!    `Z_mu(t) (x) Z_B(t) = 1`.
//! 6. [`rootmult`] computes root multiplicities by the Peterson recursion and
//!    the gl-graded adjoint.
//! 7. [`tha`] assembles the bigraded content of S(g^(n)), fits it into columns
//!    of the W(d) superalgebra, detects extra modules and runs the structural
//!    checks (duality reflection, free diagonal, column tops).
//! 8. [`virasoro`] holds the q-series utilities for the coset Virasoro
//!    character chi(q) = phi(q^2)/phi(q).
//!
//! [`oracle`] contains brute-force reference implementations (formal character
//! polynomials, Freudenthal weight multiplicities) used by the test suites to
//! cross-check the fast paths; it never feeds the pipeline itself.

pub mod branching;
pub mod borcherds;
pub mod cartan;
pub mod error;
pub mod glrep;
pub mod oracle;
pub mod render;
pub mod rootmult;
pub mod series;
pub mod tha;
pub mod virasoro;
pub mod weyl;

pub use cartan::{AlgebraFamily, BaseSeries, CartanSpec, WeightVector};
pub use error::{Error, Result};
pub use glrep::{DominantCharacter, GlIrrep, Mult, RepRingElem};
pub use series::{BiSeries, MSeries};
