//! Exact-arithmetic BRST complexes for deformation quantization.
//!
//! The crate builds, over the Gaussian rationals, the classical and quantum
//! BRST complexes attached to a Hamiltonian Lie algebra action on a concrete
//! phase space: graded star products on ghost-extended function algebras,
//! BRST charges and differentials, quantized Koszul and Chevalley-Eilenberg
//! operators, deformed restriction and chain homotopies, and the reduced star
//! product on the constraint surface. Everything is computed exactly (no
//! floating point) on truncated formal power series in the deformation
//! parameter, so every algebraic identity can be *checked*, not trusted.
//!
//! Module map:
//! - [`scalars`]: Gaussian rationals and truncated formal power series.
//! - [`liealg`]: structure constants, trace form, the cubic ghost charge.
//! - [`grassmann`]: the exterior algebra over ghosts and antighosts with its
//!   one-parameter family of Clifford products.
//! - [`phasespace`]: function-algebra backends (torus, flat, point) with star
//!   products, momentum maps, restriction/prolongation and Koszul homotopy
//!   data, plus a small expression parser.
//! - [`brst`]: the BRST complex proper, its operator family, the deformed
//!   augmentation and the cohomology isomorphisms.
//! - [`reduction`]: order-by-order invariant solver, consistency verdicts,
//!   reduced product tables and the differential-order audit.
//! - [`verify`]: the named identity suites behind the `brstlab verify` CLI.
//! - [`report`]: JSON report types shared by the CLI subcommands.

pub mod brst;
pub mod error;
pub mod grassmann;
pub mod liealg;
pub mod phasespace;
pub mod reduction;
pub mod report;
pub mod rng;
pub mod scalars;
pub mod verify;

pub use error::{Error, Result};
