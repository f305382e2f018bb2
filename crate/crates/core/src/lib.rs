//! Federated continual clustering without cluster-count or vigilance parameters.
//!
//! The crate is `no_std` (with `alloc`) and holds every algorithmic piece:
//!
//! * [`kernel`], [`stats`], [`matrix`]: correntropy, the correntropy-induced
//!   metric (CIM), Silverman bandwidths, percentiles and similarity-matrix
//!   determinants.
//! * [`privacy`]: local ε-differential privacy through the Laplace mechanism.
//! * [`clusterer`]: the ART-based online clusterer in its three variants
//!   (CAE, CAE_FC and CA+).
//! * [`federation`]: the one-shot client → server protocol (FCAC).
//! * [`data`]: scaling, synthetic generation, IID and Dirichlet partitioning.
//! * [`eval`]: ARI, AMI, NMI and the exact 1-Wasserstein distance.
//!
//! IO, configuration and the experiment driver live in the `fcac` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod clusterer;
pub mod data;
pub mod error;
pub mod eval;
pub mod federation;
pub mod kernel;
pub mod matrix;
pub mod privacy;
pub mod stats;

mod float;

pub use clusterer::{Clusterer, ClusterLabeling, NodeId, Variant};
pub use error::{Error, Result};
pub use federation::{ClientResult, FederationConfig, SortedStream};
pub use kernel::{Bandwidth, SIGMA_FLOOR};
pub use privacy::{Epsilon, PrivacyParams};
