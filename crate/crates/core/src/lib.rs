//! Exact enumeration of lozenge tilings of half-hexagons with a free boundary
//! and a hole near it, plus the numerical analysis of the resulting
//! boundary correlation.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactnum`]: big-integer and rational kernels.
//! * [`pfaffian`]: skew matrices, Pfaffians and the Pfaffian identities.
//! * [`region`]: the triangular-lattice regions and their path encoding.
//! * [`oracle`]: brute-force counts used as ground truth.
//! * [`counting`]: the gap matrix and the closed-form counts.
//! * [`analysis`]: the correlation `omega_f` and its asymptotics.
//! * [`verify`] and [`cli`]: invariant suites and the command-line front end.

pub mod analysis;
pub mod cli;
pub mod counting;
pub mod exactnum;
pub mod oracle;
pub mod pfaffian;
pub mod region;
pub mod verify;
