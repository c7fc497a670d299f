//! Exact-arithmetic certification of symplectic fatness for fiber bundles
//! over compact homogeneous spaces `K/H`.
//!
//! The crate builds classical compact semisimple Lie algebras from root
//! data and runs four kinds of certification, all in exact rational
//! arithmetic:
//!
//! - wall-avoidance tests for a torus element against the forbidden walls
//!   of a reductive decomposition `k = h + m`,
//! - non-degeneracy of the curvature pairing of the canonical invariant
//!   connection, witnessed by an exact determinant,
//! - constructive translation of a moment polytope off the forbidden
//!   walls, with the exact threshold,
//! - twistor-bundle certificates obtained by solving the sign system
//!   `beta(T) = +/- i` on the complement roots and checking
//!   `(ad T|_m)^2 = -id`.
//!
//! Every scalar is a [`rational::Rational`]; no floating point anywhere.

pub mod catalog;
pub mod chevalley;
pub mod error;
pub mod fatness;
pub mod linalg;
pub mod oracle;
pub mod problem;
pub mod rational;
pub mod reductive;
pub mod root_system;
pub mod twistor;

pub use error::{Error, Result};
pub use rational::Rational;

#[cfg(test)]
mod tests {
    // Everything is immutable after construction and shared freely across
    // threads.
    #[test]
    fn core_types_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<crate::root_system::RootSystem>();
        assert_send_sync::<crate::chevalley::CompactLieAlgebra>();
        assert_send_sync::<crate::fatness::FatnessCertificate>();
        assert_send_sync::<crate::twistor::TwistorCertificate>();
        assert_send_sync::<crate::problem::ProblemSpec>();
        assert_send_sync::<crate::oracle::OracleReport>();
    }
}
