//! Finite semigroups with zero and their primitive inverse semigroups of
//! left I-quotients.
//!
//! A semigroup `S` sits inside a primitive inverse semigroup `Q` with every
//! element of `Q` of the form `a⁻¹b` (`a, b ∈ S`) exactly when `S` is
//! categorical at 0, 0-cancellative, has transitive λ, and satisfies
//! `Sa ≠ 0` for all non-zero `a`. [`quotient::build_quotient`] constructs
//! that `Q`; the other modules decide the conditions, compute the relations
//! involved, and check the structural facts that tie `S` to `Q`.

pub mod abundance;
pub mod audit;
pub mod builders;
pub mod conditions;
pub mod error;
pub mod inverse;
pub mod morphisms;
pub mod quotient;
pub mod relations;
pub mod semigroup;
pub mod sgp;

pub use error::{Error, ParseError, Result};
pub use semigroup::{Elem, FiniteSemigroup};
