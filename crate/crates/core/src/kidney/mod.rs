//! Random kidney-exchange instances: incompatible patient/donor pairs as
//! nodes, swap success probabilities as edge weights.

mod config;
mod generator;

pub use crate::blood::{blood_type_compatible, AboPair, AboType};
pub use config::{EdgeRule, GeneratorConfig, PraLevel, DEFAULT_CONFIG};
pub use generator::{
    crossmatch_probability, generate_instance, generate_pairs, incompatible_type_law,
    instance_from_pairs, sample_incompatible_pair, sample_pair, PatientDonorPair,
};
