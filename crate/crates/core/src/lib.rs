//! Probabilistic regulatory networks: construction, Markov-chain analysis,
//! morphisms, network algebra, invariant subnetworks and linear systems over
//! prime fields.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod linfield;
pub mod markov;
pub mod morphisms;
pub mod netio;
pub mod network;
pub mod subnet;

pub use error::{Error, Result};
pub use markov::{
    matrix_distance, matrix_power, recurrent_classes, steady_state, tdmc_similarity,
    transition_matrix, verify_power_bound, ChainDistanceReport, Distribution, StochasticMatrix,
};
pub use morphisms::{
    check_homomorphism, compose_morphisms, enumerate_homomorphisms, is_projection, EnumOptions,
    MorphismCertificate, StateMap,
};
pub use network::{
    expand_pbn, state_space, validate_prn, Fds, Function, Pbn, Predictor, Prn, RawPrn,
    ValidationReport,
};
