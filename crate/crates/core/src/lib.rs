//! Gate-level workbench for decimal (BCD) adders.
//!
//! Builds netlists for ripple, AND/OR carry-lookahead, NAND-lookahead and
//! carry-skip adders and the BCD digit adders built from them, checks them
//! exhaustively against arithmetic oracles, and analyses transistor count,
//! delay and power. A small switch-level simulator models the two-transistor
//! pass-gate AND and OR cells.

pub mod analysis;
pub mod cli;
pub mod generators;
pub mod netlist;
pub mod switchlevel;
pub mod verify;

pub use generators::{AdderStyle, BcdChainSpec, Circuit};
pub use netlist::{GateKind, Netlist, NetlistBuilder};
