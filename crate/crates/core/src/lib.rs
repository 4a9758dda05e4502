//! Exact combinatorics for untwisted affine Kac-Moody algebras: root data,
//! weights, truncated characters, tensor product multiplicities, GKO scalars
//! and verification harnesses for root-component statements.

pub mod charmult;
pub mod error;
pub mod gko;
pub mod rational;
pub mod rootdata;
pub mod tensor;
pub mod verify;
pub mod weight;

pub use charmult::{dominant_weights_below, freudenthal_mults, MultCache, MultTable};
pub use error::{Error, Result};
pub use rational::Q;
pub use rootdata::{AffineType, CartanData, Family, IndexSet, Root, RootClass};
pub use tensor::{tensor_mults, tensor_mults_oracle, Decomposer, DecompositionReport, Method};
pub use verify::{Status, VerificationReport, WahlCase};
pub use weight::{Weight, WeylWord};
