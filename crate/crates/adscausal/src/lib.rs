//! Exact structure theory of so(2,n) and the causal structure of the
//! anti-de Sitter black hole.
//!
//! The crate has two layers:
//!
//! - an **exact layer** ([`lie_core`], [`reductive`]): so(2,n) is built
//!   concretely over the rationals, its root-space basis is derived from the
//!   simultaneous eigenspaces of two commuting boosts, and every structural
//!   theorem (Jacobi, Killing orthogonality, the commutator table, the
//!   orthonormal tangent basis, nilpotency of light-like directions) is
//!   verified with zero tolerance;
//! - a **numerical layer** ([`exp_group`], [`causal`]): exponentials of
//!   adjoint actions, the quadric embedding, and the classifier that decides
//!   whether a point of AdS is singular, inside the black hole, or free, by
//!   solving the quadratic whose roots are the parameter times at which a
//!   light-like geodesic crosses the singular set.
//!
//! The binary `adscausal` exposes the verification suites and the classifier
//! as subcommands; see the book under `book/` for a guided tour.
//!
//! ```
//! use adscausal::lie_core::{Algebra, BasisLabel, Element, ElementQ};
//!
//! let alg = Algebra::get(3).unwrap();
//! assert_eq!(alg.dim, 10);
//!
//! // B(J2, J2) = 2n, exactly.
//! let j2: ElementQ = Element::basis(&alg, BasisLabel::J2);
//! assert_eq!(j2.killing(&j2).unwrap(), adscausal::exact::qi(6));
//! ```

pub mod causal;
pub mod cli;
pub mod error;
pub mod exact;
pub mod exp_group;
pub mod lie_core;
pub mod reductive;

pub use error::{Error, Result};
