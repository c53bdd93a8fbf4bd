//! Folded optimal transport on convex state spaces.
//!
//! A cost or distance defined on the extreme boundary of a compact convex set
//! extends to the whole set by optimal transport over *representing* measures:
//! lift the boundary metric to a Wasserstein distance on probability measures,
//! then glue along the classes of measures sharing a barycenter. On the set of
//! density matrices (extreme boundary: the pure states) this produces the
//! folded Kantorovich semi-distance and the folded Wasserstein pseudo-distance,
//! genuine quantum extensions of the Fröbenius and Fubini–Study metrics.
//!
//! The crate provides:
//!
//! - [`linalg`] — dense complex-matrix kernel: Hermitian eigendecomposition
//!   (cyclic complex Jacobi), PSD projection, seeded isometries and retraction.
//! - [`classical`] — exact discrete Kantorovich solver (transportation simplex)
//!   and the Wasserstein-p distance on weighted atoms.
//! - [`metrics`] — pure-state metrics, geodesic interpolation, norm bounds.
//! - [`folded`] — ensembles, representing couplings, the fixed-atom linear
//!   program, the alternating upper-bound solver, chain relaxation, and the
//!   subadditivity prober.
//! - [`convex`] — the generic folded Kantorovich cost over abstract convex
//!   instances, with the probability simplex and the semiclassical
//!   harmonic-truncation cost as concrete instances.
//! - [`oracle`] — independent brute-force reference values for qubit instances
//!   (Bloch grid + pattern-search refinement over candidate atoms).
//!
//! All solvers are deterministic for a fixed seed; restarts run in parallel
//! and are merged by value with lowest-restart-index tie-breaking.

pub mod classical;
pub mod convex;
pub mod folded;
pub mod linalg;
pub mod metrics;
pub mod oracle;

pub(crate) mod bloch;
pub(crate) mod lp;

pub use linalg::{ComplexMatrix, DensityMatrix, HermitianEig, Isometry, C64};
pub use metrics::{PureMetric, PureState};
