//! # kantorovich
//!
//! The Kantorovich probability monad on finite metric spaces, computed
//! exactly over the rationals.
//!
//! - [`metric`]: finite metric spaces, short maps, and the tensor product
//!   with the sum metric `d((x,y),(x',y')) = d(x,x') + d(y,y')`.
//! - [`measure`]: finitely supported probability measures, integration,
//!   Dirac measures and pushforward.
//! - [`transport`]: Wasserstein-1 with an optimal coupling and a short dual
//!   witness, plus a brute-force oracle.
//! - [`monad`]: nested measures and the averaging map `E`.
//! - [`structure`]: product joints, marginals, independence, convolution.
//! - [`laws`]: a seeded checker that evaluates every structural law on
//!   random instances and reports counterexamples.
//!
//! No floating point is used anywhere; all equalities are exact.

#![forbid(unsafe_code)]

pub mod cli;
pub mod error;
pub mod gen;
pub mod json;
pub mod laws;
pub mod measure;
pub mod metric;
pub mod monad;
pub mod rational;
pub mod structure;
pub mod transport;

pub use error::{Error, Result};
pub use measure::{dirac, integrate, partial_integral, pushforward, Measure};
pub use metric::{
    bang, braiding, compose, identity, proj1, proj2, tensor, tensor_map, terminal, FinMetricSpace,
    Label, ShortFunctional, ShortMap,
};
pub use monad::{expectation, wasserstein_space, DoublyNestedMeasure, NestedMeasure};
pub use rational::Rational;
pub use structure::{
    convolve, independent_maps, is_independent, law_product, marginals, product, strength,
    InternalMonoid, Law,
};
pub use transport::{wasserstein, wasserstein_oracle, DualWitness, Transport, TransportPlan};
