//! Area, delay, and power analysis over netlists.

pub mod cost;
pub mod delay;
pub mod power;

use thiserror::Error;

use crate::generators::GenError;
use crate::netlist::{GateKind, NetlistError};

pub use cost::{transistor_cost, BomItem, BomRow, CostModel, CostReport, KindTally, TABLE_ONE};
pub use delay::{
    delay_functional, delay_functional_bcd, delay_topological, DelayModel, DelayReport, EventSim,
    FunctionalDelay, FunctionalMethod, PairMode, PairStimulus, Waveform,
};
pub use power::{
    estimate_activity, estimate_power, power_equation, random_stimulus, ActivityReport,
    PowerEstimate, PowerParams, PowerTerm, PowerVariant,
};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum AnalysisError {
    #[error("cost model has no entry for {0}")]
    UnknownKind(GateKind),
    #[error("activity covers {covered} nets but the netlist has {nets}")]
    MissingActivity { nets: usize, covered: usize },
    #[error("activity needs at least two vectors, got {0}")]
    SequenceTooShort(usize),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("bad stimulus: {0}")]
    Stimulus(String),
    #[error(transparent)]
    Netlist(#[from] NetlistError),
    #[error(transparent)]
    Generator(#[from] GenError),
}
