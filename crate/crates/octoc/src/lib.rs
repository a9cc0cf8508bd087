//! Numerical optimal control toolkit.
//!
//! One problem model ([`model::ControlProblem`]) is shared by four solver
//! families that attack it from different angles:
//!
//! * [`direct`] — discretize-then-optimize: transcription to a nonlinear
//!   program solved by an in-repo augmented-Lagrangian method, with the
//!   dynamics multipliers exposed as costate estimates;
//! * [`shooting`] — indirect method: Hamiltonian flows, Poisson brackets,
//!   singular/boundary feedback laws, and Newton root-finding on shooting
//!   residuals, plus the long-horizon turnpike machinery;
//! * [`hjb`] — grid-based dynamic programming: monotone finite-difference
//!   and semi-Lagrangian schemes, level-set minimum time, and the augmented
//!   state-constrained formulation, with [`reconstruct`] turning value
//!   tables back into trajectories and costates;
//! * [`planning`] — optimistic planning: branch-and-bound over nested
//!   control boxes with Lipschitz error radii, no state grid at all.
//!
//! The [`problems`] module builds the two benchmark models (boat-in-current
//! navigation and vertical rocket ascent) plus a linear-quadratic family;
//! [`cli`] wires everything into the `octoc` command-line tool.
//!
//! The `book/` directory at the repository root holds a narrative guide;
//! its chapters are compiled as doc-tests through the [`guide`] module.

pub mod cli;
pub mod direct;
pub mod error;
pub mod guide;
pub mod hjb;
pub mod io;
pub mod model;
pub mod ode;
pub mod planning;
pub mod problems;
pub mod reconstruct;
pub mod shooting;

pub use error::Error;
