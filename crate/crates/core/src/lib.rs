//! Coupled relaxation-oscillator Ising machine simulator.
//!
//! Networks of Schmitt-trigger relaxation oscillators, coupled capacitively
//! according to an input graph, settle into phase patterns whose antipodal
//! bipartition encodes a MaxCut of the graph. Two routes to that bipartition
//! are modeled: injecting an external signal at twice the natural frequency
//! into every node, or using an autaptic oscillator whose two-slope
//! discharge generates the second harmonic internally.
//!
//! - [`graph`]: instances, cut/energy evaluation, exact small-graph solver
//! - [`oscillator`]: device models and single-oscillator calibration
//! - [`network`]: coupled-system assembly and event-accurate integration
//! - [`analysis`]: phase readout, bipartition quality, harmonic content
//! - [`harness`]: batch experiments, statistics, CSV emission

pub mod analysis;
pub mod error;
pub mod graph;
mod integrate;
pub mod network;
pub mod oscillator;
pub mod sim;

pub use error::{Error, Result};
pub use graph::{
    brute_force_maxcut, cut_value, gen_random, ising_energy, CutResult, Graph, SpinAssignment,
};
pub use network::{assemble_mass_matrix, loaded_period_estimate, run, CouplingSpec, InjectionConfig};
pub use oscillator::{
    simulate_single, ComparatorState, DeviceKind, OscillatorParams, SingleRun,
};
pub use sim::{FlipDirection, FlipEvent, NetworkState, SimConfig, Trace};
