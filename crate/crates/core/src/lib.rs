//! Exact Kempf–Laksov classes in even infinitesimal cohomology.
//!
//! Coefficients live in `Z[al]/(al^2)` with `deg al = -2m`. All arithmetic is
//! exact; identities are checked by comparing polynomials for equality.

pub mod coeffs;
pub mod emit;
pub mod error;
pub mod fgl;
pub mod kernels;
pub mod kl;
pub mod poly;
pub mod report;
pub mod segre;
pub mod symfn;
pub mod verify;

pub use coeffs::{binomial, gamma_table, nontriviality_index, GammaTable, Q2mScalar};
pub use error::{Error, Result};
pub use fgl::{build_fgl, fgl_inverse, verify_fgl_axioms, FormalGroupLaw};
pub use kernels::{ClassPoly, ClassSymbol, ClassVar, SymbolKind};
pub use kl::{GrassmannSetup, LagrangianSetup, Setup};
pub use poly::{Family, GradedPoly, Homogeneity, Monomial, Poly, VarId, Variable};
pub use report::{ResidualEntry, ResidualReport};
pub use segre::SegreContext;
pub use symfn::VirtualBundle;
pub use verify::{Suite, SuiteConfig, VerifyReport};
