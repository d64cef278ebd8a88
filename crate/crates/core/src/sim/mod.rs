//! Stabilizer circuits, detector models, decoding and Monte Carlo.

mod circuit;
mod coloring;
mod decoder;
mod dem;
mod extraction;
mod frame;
mod monte_carlo;
mod noise;
mod single_shot;
mod tableau;
mod teleport;

pub use circuit::{Block, Circuit, Noise, Op, Pauli};
pub use frame::{frame_run, FrameBatch, Injection};
pub use noise::{fault_sites, sample_sites, Effect, FaultSite, NoiseMode, NoiseModel};
pub use tableau::{tableau_run, PauliString, RandomOutcome, Tableau, TableauRun};
pub use coloring::edge_coloring;
pub use dem::{build_detector_model, check_determinism, reference_observables, DemFault, DetectorModel};
pub use extraction::{build_syndrome_extraction, memory_circuit, Checks, Extractor, Registers, RoundRecords};
pub use decoder::{BpOsd, Decoded, DEFAULT_ITERATIONS, DEFAULT_SCALING};
pub use monte_carlo::{monte_carlo, Experiment, FaultSampler, MonteCarloResult};
pub use teleport::{
    prepare_code_state, teleport_circuit, verify_teleport_logical_action, Direction, Mismatch, TeleportReport, TeleportSetup,
};
pub use single_shot::{
    flips_logical, single_shot_circuit, single_shot_dem_experiment, single_shot_monte_carlo, single_shot_repair, Repair,
    SingleShotDecoder, DEFAULT_PRIOR,
};
