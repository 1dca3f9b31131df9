//! Exact expectation and variance of the number of edge crossings of a
//! graph under uniformly random linear arrangements.
//!
//! Three independent routes reach the variance: fast per-pair frequency
//! formulas ([`freq_fast`]), direct classification of every product
//! ([`freq_brute`]) and closed forms for special families
//! ([`closed_forms`]). Empirical moments come from [`estimator`].

pub mod arrangement;
pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod estimator;
pub mod exact;
pub mod graph;
pub mod graph6;
pub mod moments;
pub mod product_types;
pub mod pruefer;
pub mod validation;

pub use arrangement::{crossings, CrossingCounter, LinearArrangement};
pub use error::{Error, Result};
pub use exact::Rational;
pub use graph::{erdos_renyi, gen_family, Family, FamilySpec, Graph, QZeroFamily};
pub use moments::{expectation_rla, variance_rla, LayoutConstants, RlaConstants};
pub use product_types::{classify, freq_brute, freq_fast, FreqVector, Graphette, ProductType};
