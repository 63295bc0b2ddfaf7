//! Switch-level simulation of MOS pass networks.
//!
//! Signals carry a level, a discrete strength (strong/weak/floating), and a
//! count of threshold drops picked up by passing a level through the "wrong"
//! device type (an NMOS passing a 1 or a PMOS passing a 0). The two
//! two-transistor cells built here are the supply-less AND and the
//! ground-less OR.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Channel {
    Nmos,
    Pmos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Device {
    pub kind: Channel,
    pub gate: NodeId,
    pub source: NodeId,
    pub drain: NodeId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeRole {
    Input,
    Output,
    Internal,
    Tied0,
    Tied1,
}

impl NodeRole {
    fn is_driven(self) -> bool {
        matches!(self, NodeRole::Input | NodeRole::Tied0 | NodeRole::Tied1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: NodeId,
    pub name: String,
    pub role: NodeRole,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Zero,
    One,
    Unknown,
}

impl Level {
    pub fn from_bool(bit: bool) -> Self {
        if bit {
            Level::One
        } else {
            Level::Zero
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strength {
    Floating,
    Weak,
    Strong,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignalState {
    pub level: Level,
    pub strength: Strength,
    /// Threshold drops accumulated along the path that set this value.
    pub drops: u32,
}

impl SignalState {
    pub const FLOATING: SignalState = SignalState {
        level: Level::Unknown,
        strength: Strength::Floating,
        drops: 0,
    };

    pub fn strong(bit: bool) -> Self {
        SignalState {
            level: Level::from_bool(bit),
            strength: Strength::Strong,
            drops: 0,
        }
    }

    pub fn weak(bit: bool, drops: u32) -> Self {
        SignalState {
            level: Level::from_bool(bit),
            strength: Strength::Weak,
            drops,
        }
    }

    /// Orders contributions: stronger first, then fewer drops.
    fn rank(&self) -> (Strength, Reverse<u32>) {
        (self.strength, Reverse(self.drops))
    }
}

impl fmt::Display for SignalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.level {
            Level::Zero => "0",
            Level::One => "1",
            Level::Unknown => "X",
        };
        let strength = match self.strength {
            Strength::Strong => "strong",
            Strength::Weak => "weak",
            Strength::Floating => "floating",
        };
        write!(f, "{level} ({strength}, {} drops)", self.drops)
    }
}

/// Reads a settled node as a logic value, tolerating up to `max_drops`
/// threshold drops.
pub fn logical_readout(state: SignalState, max_drops: u32) -> Option<bool> {
    match state.level {
        Level::Zero if state.drops <= max_drops => Some(false),
        Level::One if state.drops <= max_drops => Some(true),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SwitchError {
    #[error("no fixed point after {iterations} relaxation rounds")]
    NoConvergence { iterations: usize },
    #[error("expected {expected} input states, got {got}")]
    InputCount { expected: usize, got: usize },
    #[error("input node `{0}` must be driven to 0 or 1")]
    UndefinedInput(String),
    #[error("node {0:?} does not exist")]
    UnknownNode(NodeId),
    #[error("network has no output node")]
    NoOutputs,
    #[error("initial state has {got} entries for {expected} nodes")]
    StateSize { expected: usize, got: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SwitchNetwork {
    nodes: Vec<Node>,
    devices: Vec<Device>,
    inputs: Vec<NodeId>,
    outputs: Vec<NodeId>,
}

impl SwitchNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, name: impl Into<String>, role: NodeRole) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(Node {
            id,
            name: name.into(),
            role,
        });
        match role {
            NodeRole::Input => self.inputs.push(id),
            NodeRole::Output => self.outputs.push(id),
            _ => {}
        }
        id
    }

    pub fn add_device(
        &mut self,
        kind: Channel,
        gate: NodeId,
        source: NodeId,
        drain: NodeId,
    ) -> Result<(), SwitchError> {
        for n in [gate, source, drain] {
            if n.index() >= self.nodes.len() {
                return Err(SwitchError::UnknownNode(n));
            }
        }
        self.devices.push(Device {
            kind,
            gate,
            source,
            drain,
        });
        Ok(())
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn devices(&self) -> &[Device] {
        &self.devices
    }

    pub fn inputs(&self) -> &[NodeId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    pub fn has_role(&self, role: NodeRole) -> bool {
        self.nodes.iter().any(|n| n.role == role)
    }

    /// Number of device channel terminals (source or drain) attached to `node`.
    pub fn channel_terminals(&self, node: NodeId) -> usize {
        self.devices
            .iter()
            .map(|d| usize::from(d.source == node) + usize::from(d.drain == node))
            .sum()
    }

    fn initial_states(&self, inputs: &[SignalState]) -> Result<Vec<SignalState>, SwitchError> {
        if self.outputs.is_empty() {
            return Err(SwitchError::NoOutputs);
        }
        if inputs.len() != self.inputs.len() {
            return Err(SwitchError::InputCount {
                expected: self.inputs.len(),
                got: inputs.len(),
            });
        }
        let mut states = vec![SignalState::FLOATING; self.nodes.len()];
        for (node, state) in self.nodes.iter().zip(states.iter_mut()) {
            match node.role {
                NodeRole::Tied0 => *state = SignalState::strong(false),
                NodeRole::Tied1 => *state = SignalState::strong(true),
                _ => {}
            }
        }
        for (&id, &state) in self.inputs.iter().zip(inputs) {
            if state.level == Level::Unknown || state.strength == Strength::Floating {
                return Err(SwitchError::UndefinedInput(
                    self.nodes[id.index()].name.clone(),
                ));
            }
            states[id.index()] = state;
        }
        Ok(states)
    }

    /// Settles the network from an all-floating start.
    pub fn settle(&self, inputs: &[SignalState]) -> Result<Settled, SwitchError> {
        let states = self.initial_states(inputs)?;
        self.relax(states)
    }

    /// Settles starting from a caller-provided state for every node. Driven
    /// nodes are reset from `inputs` and the tie-offs.
    pub fn settle_from(
        &self,
        inputs: &[SignalState],
        initial: &[SignalState],
    ) -> Result<Settled, SwitchError> {
        if initial.len() != self.nodes.len() {
            return Err(SwitchError::StateSize {
                expected: self.nodes.len(),
                got: initial.len(),
            });
        }
        let driven = self.initial_states(inputs)?;
        let states = self
            .nodes
            .iter()
            .map(|n| {
                if n.role.is_driven() {
                    driven[n.id.index()]
                } else {
                    initial[n.id.index()]
                }
            })
            .collect();
        self.relax(states)
    }

    pub fn settle_bits(&self, bits: &[bool]) -> Result<Settled, SwitchError> {
        let states: Vec<SignalState> = bits.iter().map(|&b| SignalState::strong(b)).collect();
        self.settle(&states)
    }

    fn relax(&self, mut states: Vec<SignalState>) -> Result<Settled, SwitchError> {
        let bound = (self.nodes.len() * self.devices.len()).max(2);
        for _ in 0..bound {
            let pass = self.propagate(&states);
            if pass.states == states {
                return Ok(pass);
            }
            states = pass.states;
        }
        Err(SwitchError::NoConvergence { iterations: bound })
    }

    /// One relaxation round: fixes device conduction from the current gate
    /// levels, then finds the best path from every driven node to every
    /// undriven node, separately per level.
    fn propagate(&self, states: &[SignalState]) -> Settled {
        let n = self.nodes.len();
        let conduction: Vec<Conduction> = self
            .devices
            .iter()
            .map(|d| match (d.kind, states[d.gate.index()].level) {
                (_, Level::Unknown) => Conduction::Unknown,
                (Channel::Nmos, Level::One) | (Channel::Pmos, Level::Zero) => Conduction::On,
                _ => Conduction::Off,
            })
            .collect();

        let mut adjacency: Vec<Vec<(usize, NodeId)>> = vec![Vec::new(); n];
        for (i, d) in self.devices.iter().enumerate() {
            adjacency[d.source.index()].push((i, d.drain));
            adjacency[d.drain.index()].push((i, d.source));
        }

        let mut best = [vec![None; n], vec![None; n], vec![None; n]];
        for (slot, level) in [(0, Level::Zero), (1, Level::One)] {
            let seeds = self
                .nodes
                .iter()
                .filter(|node| node.role.is_driven() && states[node.id.index()].level == level)
                .map(|node| (node.id, states[node.id.index()]));
            best[slot] = self.shortest_paths(
                seeds,
                &adjacency,
                &conduction,
                |c| c == Conduction::On,
                pass_through,
            );
        }

        // Unknown contributions: driven unknowns, plus definite levels that
        // cross a device whose gate is unknown.
        let mut x_seeds = Vec::new();
        for node in self.nodes.iter().filter(|node| node.role.is_driven()) {
            let s = states[node.id.index()];
            if s.level == Level::Unknown && s.strength > Strength::Floating {
                x_seeds.push((node.id, s));
            }
        }
        for (i, d) in self.devices.iter().enumerate() {
            if conduction[i] != Conduction::Unknown {
                continue;
            }
            for (from, to) in [(d.source, d.drain), (d.drain, d.source)] {
                if self.nodes[to.index()].role.is_driven() {
                    continue;
                }
                for slot in &best {
                    if let Some(s) = slot[from.index()] {
                        let passed = pass_through(d.kind, s);
                        x_seeds.push((
                            to,
                            SignalState {
                                level: Level::Unknown,
                                ..passed
                            },
                        ));
                    }
                }
            }
        }
        best[2] = self.shortest_paths(
            x_seeds.into_iter(),
            &adjacency,
            &conduction,
            |c| c != Conduction::Off,
            |_, s| s,
        );

        let mut out = Vec::with_capacity(n);
        let mut candidates = Vec::with_capacity(n);
        let mut conflicts = Vec::new();
        for node in &self.nodes {
            let i = node.id.index();
            let cands = [best[0][i], best[1][i], best[2][i]];
            candidates.push(cands);
            if node.role.is_driven() {
                out.push(states[i]);
                continue;
            }
            let top = cands.iter().flatten().map(|s| s.strength).max();
            let Some(top) = top else {
                out.push(SignalState::FLOATING);
                continue;
            };
            let winners: Vec<&SignalState> = cands
                .iter()
                .flatten()
                .filter(|s| s.strength == top)
                .collect();
            if winners.len() == 1 && winners[0].level != Level::Unknown {
                out.push(*winners[0]);
            } else {
                if cands[0].is_some_and(|s| s.strength == top)
                    && cands[1].is_some_and(|s| s.strength == top)
                {
                    conflicts.push(Conflict {
                        node: node.id,
                        strength: top,
                    });
                }
                out.push(SignalState {
                    level: Level::Unknown,
                    strength: top,
                    drops: 0,
                });
            }
        }
        Settled {
            states: out,
            candidates,
            conflicts,
        }
    }

    fn shortest_paths(
        &self,
        seeds: impl Iterator<Item = (NodeId, SignalState)>,
        adjacency: &[Vec<(usize, NodeId)>],
        conduction: &[Conduction],
        usable: impl Fn(Conduction) -> bool,
        pass: impl Fn(Channel, SignalState) -> SignalState,
    ) -> Vec<Option<SignalState>> {
        let n = self.nodes.len();
        let mut best: Vec<Option<SignalState>> = vec![None; n];
        let mut heap = BinaryHeap::new();
        for (node, state) in seeds {
            if better(state, best[node.index()]) {
                best[node.index()] = Some(state);
                heap.push(Entry(state, node));
            }
        }
        while let Some(Entry(state, node)) = heap.pop() {
            if best[node.index()] != Some(state) {
                continue;
            }
            for &(dev, next) in &adjacency[node.index()] {
                if !usable(conduction[dev]) || self.nodes[next.index()].role.is_driven() {
                    continue;
                }
                let passed = pass(self.devices[dev].kind, state);
                if better(passed, best[next.index()]) {
                    best[next.index()] = Some(passed);
                    heap.push(Entry(passed, next));
                }
            }
        }
        best
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Conduction {
    On,
    Off,
    Unknown,
}

/// Heap entry ordered by contribution quality.
#[derive(PartialEq, Eq)]
struct Entry(SignalState, NodeId);

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .rank()
            .cmp(&other.0.rank())
            .then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn better(candidate: SignalState, current: Option<SignalState>) -> bool {
    current.is_none_or(|c| candidate.rank() > c.rank())
}

/// NMOS passes 0 cleanly and degrades 1; PMOS passes 1 cleanly and degrades 0.
fn pass_through(kind: Channel, s: SignalState) -> SignalState {
    let degrades = matches!(
        (kind, s.level),
        (Channel::Nmos, Level::One) | (Channel::Pmos, Level::Zero)
    );
    if degrades {
        SignalState {
            level: s.level,
            strength: s.strength.min(Strength::Weak),
            drops: s.drops + 1,
        }
    } else {
        s
    }
}

/// Two drivers of equal strength disagreeing on a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub node: NodeId,
    pub strength: Strength,
}

/// Result of settling a network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settled {
    pub states: Vec<SignalState>,
    /// Best contribution per node for level 0, level 1 and unknown.
    pub candidates: Vec<[Option<SignalState>; 3]>,
    pub conflicts: Vec<Conflict>,
}

impl Settled {
    pub fn state(&self, node: NodeId) -> SignalState {
        self.states[node.index()]
    }
}

/// Supply-less AND: the pass NMOS forwards `B` when `A` is high, and a PMOS
/// tied to ground pulls the output low when `A` is low.
pub fn build_two_t_and() -> SwitchNetwork {
    let mut net = SwitchNetwork::new();
    let a = net.add_node("A", NodeRole::Input);
    let b = net.add_node("B", NodeRole::Input);
    let out = net.add_node("out", NodeRole::Output);
    let gnd = net.add_node("gnd", NodeRole::Tied0);
    net.add_device(Channel::Nmos, a, b, out)
        .expect("nodes exist");
    net.add_device(Channel::Pmos, a, gnd, out)
        .expect("nodes exist");
    net
}

/// Ground-less OR: the pass PMOS forwards `B` when `A` is low, and an NMOS
/// tied to the supply pulls the output high when `A` is high.
pub fn build_two_t_or() -> SwitchNetwork {
    let mut net = SwitchNetwork::new();
    let a = net.add_node("A", NodeRole::Input);
    let b = net.add_node("B", NodeRole::Input);
    let out = net.add_node("out", NodeRole::Output);
    let vdd = net.add_node("vdd", NodeRole::Tied1);
    net.add_device(Channel::Pmos, a, b, out)
        .expect("nodes exist");
    net.add_device(Channel::Nmos, a, vdd, out)
        .expect("nodes exist");
    net
}

/// Chains `depth` copies of a two-input cell (inputs `[A, B]`, one output)
/// so that each stage's output drives the next stage's `B` input.
///
/// Returns the network and the output node of every stage.
pub fn cascade(cell: &SwitchNetwork, depth: usize) -> (SwitchNetwork, Vec<NodeId>) {
    assert_eq!(
        cell.inputs().len(),
        2,
        "cascaded cells take [control, pass] inputs"
    );
    assert_eq!(cell.outputs().len(), 1, "cascaded cells have one output");
    let mut net = SwitchNetwork::new();
    let mut stage_outputs = Vec::with_capacity(depth);
    let mut carried: Option<NodeId> = None;
    for stage in 0..depth {
        let mut map = vec![NodeId(0); cell.nodes().len()];
        for node in cell.nodes() {
            let name = format!("s{stage}.{}", node.name);
            let id = if node.id == cell.inputs()[1] {
                match carried {
                    Some(prev) => prev,
                    None => net.add_node(name, NodeRole::Input),
                }
            } else {
                let role = match node.role {
                    NodeRole::Output if stage + 1 < depth => NodeRole::Internal,
                    role => role,
                };
                net.add_node(name, role)
            };
            map[node.id.index()] = id;
        }
        for d in cell.devices() {
            net.add_device(
                d.kind,
                map[d.gate.index()],
                map[d.source.index()],
                map[d.drain.index()],
            )
            .expect("mapped nodes exist");
        }
        let out = map[cell.outputs()[0].index()];
        stage_outputs.push(out);
        carried = Some(out);
    }
    (net, stage_outputs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CascadeProfile {
    /// Worst drop count seen at each stage output, first stage first.
    pub max_drops: Vec<u32>,
    /// Input assignment (network input order) that produced each maximum.
    pub witnesses: Vec<Vec<bool>>,
}

/// Largest cascade swept exhaustively; deeper chains use only the
/// all-conducting corner cases.
const EXHAUSTIVE_CASCADE_INPUTS: usize = 16;

/// Drop accumulation along a chain of `depth` cells, maximised over input
/// assignments.
pub fn cascade_analysis(
    gate_builder: impl Fn() -> SwitchNetwork,
    depth: usize,
) -> Result<CascadeProfile, SwitchError> {
    assert!(depth >= 1, "cascade depth must be at least 1");
    let cell = gate_builder();
    let (net, stages) = cascade(&cell, depth);
    let width = net.inputs().len();
    let assignments: Box<dyn Iterator<Item = Vec<bool>>> = if width <= EXHAUSTIVE_CASCADE_INPUTS {
        Box::new((0u64..1 << width).map(move |v| (0..width).map(|i| v >> i & 1 == 1).collect()))
    } else {
        // Uniform assignments cover the all-pass corners of both cell types.
        Box::new([false, true].into_iter().flat_map(move |pass| {
            [false, true].into_iter().map(move |ctrl| {
                let mut bits = vec![ctrl; width];
                bits[0] = pass;
                bits
            })
        }))
    };
    let mut max_drops = vec![0u32; depth];
    let mut witnesses = vec![Vec::new(); depth];
    for bits in assignments {
        let settled = net.settle_bits(&bits)?;
        for (i, &node) in stages.iter().enumerate() {
            let s = settled.state(node);
            if witnesses[i].is_empty() || s.drops > max_drops[i] {
                max_drops[i] = s.drops;
                witnesses[i] = bits.clone();
            }
        }
    }
    Ok(CascadeProfile {
        max_drops,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn out_state(net: &SwitchNetwork, a: bool, b: bool) -> SignalState {
        // inputs are declared A then B
        net.settle_bits(&[a, b]).unwrap().state(net.outputs()[0])
    }

    #[test]
    fn and_structure() {
        let net = build_two_t_and();
        assert_eq!(net.devices().len(), 2);
        assert!(net.has_role(NodeRole::Tied0));
        assert!(!net.has_role(NodeRole::Tied1));
        assert_eq!(net.channel_terminals(net.outputs()[0]), 2);
    }

    #[test]
    fn or_structure() {
        let net = build_two_t_or();
        assert_eq!(net.devices().len(), 2);
        assert!(net.has_role(NodeRole::Tied1));
        assert!(!net.has_role(NodeRole::Tied0));
        let nmos = net
            .devices()
            .iter()
            .filter(|d| d.kind == Channel::Nmos)
            .count();
        assert_eq!(nmos, 1);
    }

    #[test]
    fn and_settles_to_derived_states() {
        let and = build_two_t_and();
        assert_eq!(out_state(&and, true, true), SignalState::weak(true, 1));
        assert_eq!(out_state(&and, true, false), SignalState::strong(false));
        assert_eq!(out_state(&and, false, false), SignalState::weak(false, 1));
        assert_eq!(out_state(&and, false, true), SignalState::weak(false, 1));
    }

    #[test]
    fn or_settles_to_derived_states() {
        let or = build_two_t_or();
        assert_eq!(out_state(&or, false, true), SignalState::strong(true));
        assert_eq!(out_state(&or, false, false), SignalState::weak(false, 1));
        assert_eq!(out_state(&or, true, false), SignalState::weak(true, 1));
        assert_eq!(out_state(&or, true, true), SignalState::weak(true, 1));
    }

    #[test]
    fn readout_rules() {
        assert_eq!(logical_readout(SignalState::weak(true, 1), 1), Some(true));
        assert_eq!(logical_readout(SignalState::weak(true, 2), 1), None);
        let unknown = SignalState {
            level: Level::Unknown,
            strength: Strength::Strong,
            drops: 0,
        };
        assert_eq!(logical_readout(unknown, 5), None);
        assert_eq!(logical_readout(SignalState::FLOATING, 0), None);
    }

    #[test]
    fn floating_output_reads_unknown() {
        let mut net = SwitchNetwork::new();
        let a = net.add_node("A", NodeRole::Input);
        let b = net.add_node("B", NodeRole::Input);
        let out = net.add_node("out", NodeRole::Output);
        net.add_device(Channel::Nmos, a, b, out).unwrap();
        let s = net.settle_bits(&[false, true]).unwrap();
        assert_eq!(s.state(out), SignalState::FLOATING);
    }

    #[test]
    fn opposing_strong_drivers_conflict() {
        let mut net = SwitchNetwork::new();
        let a = net.add_node("A", NodeRole::Input);
        let out = net.add_node("out", NodeRole::Output);
        let gnd = net.add_node("gnd", NodeRole::Tied0);
        let vdd = net.add_node("vdd", NodeRole::Tied1);
        // both devices on when A=1, each passing its good level
        net.add_device(Channel::Nmos, a, gnd, out).unwrap();
        net.add_device(Channel::Nmos, a, vdd, out).unwrap();
        let s = net.settle_bits(&[true]).unwrap();
        // strong 0 beats the weak 1 the NMOS lets through from vdd
        assert_eq!(s.state(out), SignalState::strong(false));
        assert!(s.conflicts.is_empty());

        let mut fight = SwitchNetwork::new();
        let a = fight.add_node("A", NodeRole::Input);
        let out = fight.add_node("out", NodeRole::Output);
        let gnd = fight.add_node("gnd", NodeRole::Tied0);
        let vdd = fight.add_node("vdd", NodeRole::Tied1);
        fight.add_device(Channel::Nmos, a, gnd, out).unwrap();
        fight.add_device(Channel::Pmos, gnd, vdd, out).unwrap();
        let s = fight.settle_bits(&[true]).unwrap();
        assert_eq!(s.state(out).level, Level::Unknown);
        assert_eq!(
            s.conflicts,
            vec![Conflict {
                node: out,
                strength: Strength::Strong
            }]
        );
    }

    #[test]
    fn unknown_gate_spreads_unknown() {
        let mut net = SwitchNetwork::new();
        let a = net.add_node("A", NodeRole::Input);
        let ctrl = net.add_node("ctrl", NodeRole::Internal);
        let out = net.add_node("out", NodeRole::Output);
        net.add_device(Channel::Nmos, ctrl, a, out).unwrap();
        let s = net.settle_bits(&[false]).unwrap();
        assert_eq!(s.state(out).level, Level::Unknown);
        assert_eq!(s.state(out).strength, Strength::Strong);
    }

    #[test]
    fn settle_is_idempotent() {
        for net in [
            build_two_t_and(),
            build_two_t_or(),
            cascade(&build_two_t_and(), 3).0,
        ] {
            let width = net.inputs().len();
            for v in 0..1u32 << width {
                let bits: Vec<SignalState> = (0..width)
                    .map(|i| SignalState::strong(v >> i & 1 == 1))
                    .collect();
                let first = net.settle(&bits).unwrap();
                let again = net.settle_from(&bits, &first.states).unwrap();
                assert_eq!(first.states, again.states);
            }
        }
    }

    #[test]
    fn cascade_profiles() {
        assert_eq!(
            cascade_analysis(build_two_t_and, 1).unwrap().max_drops,
            vec![1]
        );
        assert_eq!(
            cascade_analysis(build_two_t_and, 2).unwrap().max_drops,
            vec![1, 2]
        );
        let p = cascade_analysis(build_two_t_or, 5).unwrap();
        assert!(p.max_drops.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn input_errors() {
        let and = build_two_t_and();
        assert_eq!(
            and.settle_bits(&[true]),
            Err(SwitchError::InputCount {
                expected: 2,
                got: 1
            })
        );
        assert!(matches!(
            and.settle(&[SignalState::FLOATING, SignalState::strong(true)]),
            Err(SwitchError::UndefinedInput(_))
        ));
        assert_eq!(
            SwitchNetwork::new().settle(&[]),
            Err(SwitchError::NoOutputs)
        );
    }
}
