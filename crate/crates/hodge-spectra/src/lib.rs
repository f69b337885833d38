//! Spectral geometry of homogeneous 3-spheres.
//!
//! This crate computes, certifies, and inverts the spectrum of the
//! Hodge-Laplacian `Δ₁` on 1-forms (and of the Laplace–Beltrami operator
//! `Δ₀` on functions) for the full family of left-invariant metrics
//! `g_(a,b,c)` on `SU(2) ≅ S³` and `SO(3) ≅ P³(ℝ)`.
//!
//! The Peter–Weyl decomposition reduces each operator to one finite
//! matrix per representation weight `k ≥ 0`: a `(k+1)×(k+1)` matrix for
//! functions and a block-penta-diagonal `3(k+1)×3(k+1)` matrix for
//! 1-forms, every entry an explicit rational function of `(a,b,c)`.
//! The crate is organized around that reduction:
//!
//! * [`geometry`] — closed-form connection, curvature, and volume data
//!   of `g_(a,b,c)`.
//! * [`su2_rep`] — the irreducible `SU(2)` representation matrices on
//!   the polynomial basis `P_l = zˡ w^{k−l}` and the metric-scaled
//!   Casimir matrix.
//! * [`laplacian`] — assembly and diagonalization of the weight-block
//!   matrices, and aggregation of full spectra with multiplicities.
//! * [`berger`] — exact eigenvalues and eigenvectors for the Berger
//!   sub-family `b = c`, used as an analytic oracle for the solver.
//! * [`lambda1`] — the closed-form first eigenvalue, a dynamic
//!   Gershgorin certification that the minimum sits at low weight, and
//!   a seeded Monte Carlo stress test.
//! * [`curl`] — the curl operator on left-invariant forms and the
//!   coexact spectral gap it implies.
//! * [`inverse`] — heat invariants and recovery of `(a,b,c)` from
//!   `{volume, Scal, λ₁}`.
//! * [`report`] — deterministic JSON/CSV emission shared by the CLI.

pub mod berger;
pub mod curl;
pub mod error;
pub mod geometry;
pub mod inverse;
pub mod lambda1;
pub mod laplacian;
pub mod linalg;
pub mod report;
pub mod su2_rep;

pub use error::SpectralError;
pub use geometry::{Group, MetricParams};
