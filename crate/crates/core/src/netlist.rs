//! Gate-level combinational netlists.
//!
//! A [`Netlist`] is built through a [`NetlistBuilder`] and is immutable
//! afterwards. Structural problems that the builder cannot reject eagerly
//! (combinational cycles, undriven internal nets) are recorded at
//! construction time and reported by [`Netlist::validate`]; evaluation of a
//! netlist with diagnostics is refused.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NetId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GateId(pub u32);

impl NetId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl GateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NetRole {
    PrimaryInput,
    PrimaryOutput,
    Internal,
    Constant0,
    Constant1,
}

impl NetRole {
    /// Nets whose value is supplied from outside the gate graph.
    pub fn is_source(self) -> bool {
        matches!(
            self,
            NetRole::PrimaryInput | NetRole::Constant0 | NetRole::Constant1
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Net {
    pub id: NetId,
    pub name: String,
    pub role: NetRole,
}

/// Primitive gate vocabulary plus the two full-adder macro cells.
///
/// AND/OR/NAND carry their fan-in, which must be 2, 3 or 4. Wider functions
/// are built by cascading explicit gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateKind {
    Not,
    And(u8),
    Or(u8),
    Nand(u8),
    Xor2,
    /// 10-transistor full adder macro: inputs `[a, b, cin]`, outputs `[sum, carry]`.
    Fa10T,
    /// Multiplexer-based 12-transistor full adder macro, same pinout as [`GateKind::Fa10T`].
    FaMux12,
}

impl GateKind {
    /// Every kind in the vocabulary, in canonical order.
    pub const ALL: [GateKind; 13] = [
        GateKind::Not,
        GateKind::Xor2,
        GateKind::Nand(2),
        GateKind::Nand(3),
        GateKind::Nand(4),
        GateKind::And(2),
        GateKind::And(3),
        GateKind::And(4),
        GateKind::Or(2),
        GateKind::Or(3),
        GateKind::Or(4),
        GateKind::Fa10T,
        GateKind::FaMux12,
    ];

    pub fn is_valid(self) -> bool {
        match self {
            GateKind::And(n) | GateKind::Or(n) | GateKind::Nand(n) => (2..=4).contains(&n),
            _ => true,
        }
    }

    pub fn input_count(self) -> usize {
        match self {
            GateKind::Not => 1,
            GateKind::Xor2 => 2,
            GateKind::And(n) | GateKind::Or(n) | GateKind::Nand(n) => n as usize,
            GateKind::Fa10T | GateKind::FaMux12 => 3,
        }
    }

    pub fn output_count(self) -> usize {
        if self.is_full_adder() {
            2
        } else {
            1
        }
    }

    pub fn is_full_adder(self) -> bool {
        matches!(self, GateKind::Fa10T | GateKind::FaMux12)
    }

    /// Boolean function of the gate. `inputs` must have `input_count()` entries
    /// and `outputs` must have `output_count()` entries.
    #[inline]
    pub fn eval(self, inputs: &[bool], outputs: &mut [bool]) {
        match self {
            GateKind::Not => outputs[0] = !inputs[0],
            GateKind::And(_) => outputs[0] = inputs.iter().all(|&b| b),
            GateKind::Or(_) => outputs[0] = inputs.iter().any(|&b| b),
            GateKind::Nand(_) => outputs[0] = !inputs.iter().all(|&b| b),
            GateKind::Xor2 => outputs[0] = inputs[0] ^ inputs[1],
            GateKind::Fa10T | GateKind::FaMux12 => {
                let (a, b, c) = (inputs[0], inputs[1], inputs[2]);
                outputs[0] = a ^ b ^ c;
                outputs[1] = (a & b) | (a & c) | (b & c);
            }
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::Not => f.write_str("NOT"),
            GateKind::And(n) => write!(f, "AND{n}"),
            GateKind::Or(n) => write!(f, "OR{n}"),
            GateKind::Nand(n) => write!(f, "NAND{n}"),
            GateKind::Xor2 => f.write_str("XOR2"),
            GateKind::Fa10T => f.write_str("FA_10T"),
            GateKind::FaMux12 => f.write_str("FA_MUX12"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown gate kind `{0}`")]
pub struct ParseGateKindError(pub String);

impl FromStr for GateKind {
    type Err = ParseGateKindError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let kind = match s {
            "NOT" => GateKind::Not,
            "XOR2" => GateKind::Xor2,
            "FA_10T" => GateKind::Fa10T,
            "FA_MUX12" => GateKind::FaMux12,
            _ => {
                let split = s
                    .find(|c: char| c.is_ascii_digit())
                    .ok_or_else(|| ParseGateKindError(s.to_owned()))?;
                let (head, tail) = s.split_at(split);
                let n: u8 = tail.parse().map_err(|_| ParseGateKindError(s.to_owned()))?;
                let kind = match head {
                    "AND" => GateKind::And(n),
                    "OR" => GateKind::Or(n),
                    "NAND" => GateKind::Nand(n),
                    _ => return Err(ParseGateKindError(s.to_owned())),
                };
                if !kind.is_valid() {
                    return Err(ParseGateKindError(s.to_owned()));
                }
                kind
            }
        };
        Ok(kind)
    }
}

impl Serialize for GateKind {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GateKind {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Membership of a gate in a named higher-level cell instance (for example
/// one PGA block). Only used for bill-of-materials grouping.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellTag {
    pub kind: String,
    pub instance: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub id: GateId,
    pub kind: GateKind,
    pub inputs: Vec<NetId>,
    pub outputs: Vec<NetId>,
    pub cell: Option<CellTag>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NetlistError {
    #[error("{kind} expects {expected_inputs} inputs and {expected_outputs} outputs, got {inputs} and {outputs}")]
    ArityMismatch {
        kind: GateKind,
        expected_inputs: usize,
        expected_outputs: usize,
        inputs: usize,
        outputs: usize,
    },
    #[error("net `{name}` already has a driver")]
    MultipleDrivers { net: NetId, name: String },
    #[error("net {0} does not exist")]
    UnknownNet(NetId),
    #[error("net `{name}` is a {role:?} net and cannot be driven by a gate")]
    DrivenSource {
        net: NetId,
        name: String,
        role: NetRole,
    },
    #[error("a net named `{0}` already exists")]
    DuplicateName(String),
    #[error("unsupported gate kind {0}")]
    InvalidKind(GateKind),
    #[error("assignment has {got} bits but the netlist has {expected} primary inputs")]
    IncompleteAssignment { expected: usize, got: usize },
    #[error("no primary input named `{0}`")]
    UnknownInput(String),
    #[error("netlist `{name}` is not valid: {first}")]
    Invalid { name: String, first: Diagnostic },
}

/// One violated structural invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    Cycle {
        gates: Vec<GateId>,
        nets: Vec<String>,
    },
    Undriven {
        net: NetId,
        name: String,
    },
    MultipleDrivers {
        net: NetId,
        name: String,
        gates: Vec<GateId>,
    },
    DrivenSource {
        net: NetId,
        name: String,
    },
    DuplicateName {
        name: String,
    },
    ArityMismatch {
        gate: GateId,
        kind: GateKind,
    },
    InvalidKind {
        gate: GateId,
        kind: GateKind,
    },
    UnknownNet {
        gate: Option<GateId>,
        net: NetId,
    },
    PortRole {
        net: NetId,
        name: String,
        expected: NetRole,
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Cycle { gates, nets } => {
                let gates: Vec<String> = gates.iter().map(ToString::to_string).collect();
                write!(
                    f,
                    "combinational cycle through gates [{}] (nets {})",
                    gates.join(", "),
                    nets.join(" -> ")
                )
            }
            Diagnostic::Undriven { name, .. } => write!(f, "internal net `{name}` has no driver"),
            Diagnostic::MultipleDrivers { name, gates, .. } => {
                write!(f, "net `{name}` is driven by {} gates", gates.len())
            }
            Diagnostic::DrivenSource { name, .. } => {
                write!(f, "input/constant net `{name}` is driven by a gate")
            }
            Diagnostic::DuplicateName { name } => {
                write!(f, "net name `{name}` is used more than once")
            }
            Diagnostic::ArityMismatch { gate, kind } => {
                write!(f, "gate {gate} ({kind}) has the wrong number of pins")
            }
            Diagnostic::InvalidKind { gate, kind } => {
                write!(f, "gate {gate} has unsupported kind {kind}")
            }
            Diagnostic::UnknownNet { gate: Some(g), net } => {
                write!(f, "gate {g} references missing net {net}")
            }
            Diagnostic::UnknownNet { gate: None, net } => {
                write!(f, "port list references missing net {net}")
            }
            Diagnostic::PortRole { name, expected, .. } => {
                write!(f, "port net `{name}` should have role {expected:?}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metadata {
    pub name: String,
    pub digits: Option<u32>,
}

/// Immutable combinational netlist.
#[derive(Clone, Debug)]
pub struct Netlist {
    meta: Metadata,
    nets: Vec<Net>,
    gates: Vec<Gate>,
    inputs: Vec<NetId>,
    outputs: Vec<NetId>,
    driver: Vec<Option<(GateId, usize)>>,
    fanout: Vec<Vec<GateId>>,
    order: Vec<GateId>,
    diagnostics: Vec<Diagnostic>,
}

impl Netlist {
    /// Assembles a netlist from raw parts without rejecting anything; any
    /// violated invariant shows up in [`Netlist::validate`].
    pub fn from_parts(
        meta: Metadata,
        nets: Vec<Net>,
        gates: Vec<Gate>,
        inputs: Vec<NetId>,
        outputs: Vec<NetId>,
    ) -> Self {
        let mut netlist = Netlist {
            meta,
            nets,
            gates,
            inputs,
            outputs,
            driver: Vec::new(),
            fanout: Vec::new(),
            order: Vec::new(),
            diagnostics: Vec::new(),
        };
        netlist.analyze();
        netlist
    }

    fn analyze(&mut self) {
        let n = self.nets.len();
        let mut diags = Vec::new();
        let mut driver: Vec<Option<(GateId, usize)>> = vec![None; n];
        let mut all_drivers: Vec<Vec<GateId>> = vec![Vec::new(); n];
        let mut fanout: Vec<Vec<GateId>> = vec![Vec::new(); n];

        let mut seen = HashMap::new();
        for net in &self.nets {
            if seen.insert(net.name.as_str(), net.id).is_some() {
                diags.push(Diagnostic::DuplicateName {
                    name: net.name.clone(),
                });
            }
        }
        for (i, net) in self.nets.iter().enumerate() {
            if net.id.index() != i {
                diags.push(Diagnostic::UnknownNet {
                    gate: None,
                    net: net.id,
                });
            }
        }

        let mut structurally_sound = true;
        for gate in &self.gates {
            if !gate.kind.is_valid() {
                diags.push(Diagnostic::InvalidKind {
                    gate: gate.id,
                    kind: gate.kind,
                });
                structurally_sound = false;
                continue;
            }
            if gate.inputs.len() != gate.kind.input_count()
                || gate.outputs.len() != gate.kind.output_count()
            {
                diags.push(Diagnostic::ArityMismatch {
                    gate: gate.id,
                    kind: gate.kind,
                });
                structurally_sound = false;
            }
            for &net in gate.inputs.iter().chain(&gate.outputs) {
                if net.index() >= n {
                    diags.push(Diagnostic::UnknownNet {
                        gate: Some(gate.id),
                        net,
                    });
                    structurally_sound = false;
                }
            }
            for &net in &gate.inputs {
                if net.index() < n && !fanout[net.index()].contains(&gate.id) {
                    fanout[net.index()].push(gate.id);
                }
            }
            for (pin, &net) in gate.outputs.iter().enumerate() {
                if net.index() < n {
                    all_drivers[net.index()].push(gate.id);
                    driver[net.index()].get_or_insert((gate.id, pin));
                }
            }
        }
        for (i, gate) in self.gates.iter().enumerate() {
            if gate.id.index() != i {
                diags.push(Diagnostic::ArityMismatch {
                    gate: gate.id,
                    kind: gate.kind,
                });
                structurally_sound = false;
            }
        }

        for &net in &self.inputs {
            match self.nets.get(net.index()) {
                None => diags.push(Diagnostic::UnknownNet { gate: None, net }),
                Some(nn) if nn.role != NetRole::PrimaryInput => diags.push(Diagnostic::PortRole {
                    net,
                    name: nn.name.clone(),
                    expected: NetRole::PrimaryInput,
                }),
                _ => {}
            }
        }
        for &net in &self.outputs {
            match self.nets.get(net.index()) {
                None => diags.push(Diagnostic::UnknownNet { gate: None, net }),
                Some(nn) if nn.role != NetRole::PrimaryOutput => diags.push(Diagnostic::PortRole {
                    net,
                    name: nn.name.clone(),
                    expected: NetRole::PrimaryOutput,
                }),
                _ => {}
            }
        }

        for net in &self.nets {
            let Some(drivers) = all_drivers.get(net.id.index()) else {
                continue;
            };
            if net.role.is_source() {
                if !drivers.is_empty() {
                    diags.push(Diagnostic::DrivenSource {
                        net: net.id,
                        name: net.name.clone(),
                    });
                }
            } else if drivers.is_empty() {
                diags.push(Diagnostic::Undriven {
                    net: net.id,
                    name: net.name.clone(),
                });
            } else if drivers.len() > 1 {
                diags.push(Diagnostic::MultipleDrivers {
                    net: net.id,
                    name: net.name.clone(),
                    gates: drivers.clone(),
                });
            }
        }

        let mut order = Vec::new();
        if structurally_sound {
            match self.topological_order(&driver, &fanout) {
                Ok(o) => order = o,
                Err(cycle) => diags.push(cycle),
            }
        }

        self.driver = driver;
        self.fanout = fanout;
        self.order = order;
        self.diagnostics = diags;
    }

    /// Kahn's algorithm with a min-heap so the order is independent of
    /// insertion details beyond gate ids.
    fn topological_order(
        &self,
        driver: &[Option<(GateId, usize)>],
        fanout: &[Vec<GateId>],
    ) -> Result<Vec<GateId>, Diagnostic> {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;

        let mut pending: Vec<usize> = self
            .gates
            .iter()
            .map(|g| {
                g.inputs
                    .iter()
                    .filter(|n| driver[n.index()].is_some())
                    .count()
            })
            .collect();
        let mut ready: BinaryHeap<Reverse<GateId>> = self
            .gates
            .iter()
            .filter(|g| pending[g.id.index()] == 0)
            .map(|g| Reverse(g.id))
            .collect();
        let mut order = Vec::with_capacity(self.gates.len());
        while let Some(Reverse(g)) = ready.pop() {
            order.push(g);
            for &out in &self.gates[g.index()].outputs {
                if driver[out.index()].map(|(d, _)| d) != Some(g) {
                    continue;
                }
                for &succ in &fanout[out.index()] {
                    let uses = self.gates[succ.index()]
                        .inputs
                        .iter()
                        .filter(|&&n| n == out)
                        .count();
                    pending[succ.index()] -= uses;
                    if pending[succ.index()] == 0 {
                        ready.push(Reverse(succ));
                    }
                }
            }
        }
        if order.len() == self.gates.len() {
            return Ok(order);
        }
        Err(self.describe_cycle(driver, &pending))
    }

    fn describe_cycle(&self, driver: &[Option<(GateId, usize)>], pending: &[usize]) -> Diagnostic {
        // Walk backwards from any blocked gate through blocked drivers until a
        // gate repeats; the repeated suffix is a cycle.
        let start = self
            .gates
            .iter()
            .find(|g| pending[g.id.index()] > 0)
            .map(|g| g.id)
            .expect("a blocked gate exists when the order is incomplete");
        let mut path: Vec<(GateId, NetId)> = Vec::new();
        let mut position: HashMap<GateId, usize> = HashMap::new();
        let mut current = start;
        loop {
            if let Some(&at) = position.get(&current) {
                let cycle = &path[at..];
                let mut gates: Vec<GateId> = cycle.iter().map(|(g, _)| *g).collect();
                let mut nets: Vec<String> = cycle
                    .iter()
                    .rev()
                    .map(|(_, n)| self.nets[n.index()].name.clone())
                    .collect();
                gates.reverse();
                if let Some(first) = nets.first().cloned() {
                    nets.push(first);
                }
                return Diagnostic::Cycle { gates, nets };
            }
            position.insert(current, path.len());
            let (net, prev) = self.gates[current.index()]
                .inputs
                .iter()
                .find_map(|&n| {
                    driver[n.index()]
                        .filter(|(d, _)| pending[d.index()] > 0)
                        .map(|(d, _)| (n, d))
                })
                .expect("a blocked gate has a blocked predecessor");
            path.push((current, net));
            current = prev;
        }
    }

    pub fn name(&self) -> &str {
        &self.meta.name
    }

    pub fn metadata(&self) -> &Metadata {
        &self.meta
    }

    pub fn nets(&self) -> &[Net] {
        &self.nets
    }

    pub fn net(&self, id: NetId) -> &Net {
        &self.nets[id.index()]
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id.index()]
    }

    pub fn inputs(&self) -> &[NetId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[NetId] {
        &self.outputs
    }

    pub fn driver(&self, net: NetId) -> Option<(GateId, usize)> {
        self.driver.get(net.index()).copied().flatten()
    }

    pub fn fanout(&self, net: NetId) -> &[GateId] {
        &self.fanout[net.index()]
    }

    /// Gates in a topological order (empty when the netlist has diagnostics
    /// that prevent ordering).
    pub fn order(&self) -> &[GateId] {
        &self.order
    }

    pub fn find_net(&self, name: &str) -> Option<NetId> {
        self.nets.iter().find(|n| n.name == name).map(|n| n.id)
    }

    pub fn input_names(&self) -> Vec<&str> {
        self.inputs
            .iter()
            .map(|n| self.nets[n.index()].name.as_str())
            .collect()
    }

    pub fn output_names(&self) -> Vec<&str> {
        self.outputs
            .iter()
            .map(|n| self.nets[n.index()].name.as_str())
            .collect()
    }

    /// Empty iff every structural invariant holds.
    pub fn validate(&self) -> Vec<Diagnostic> {
        self.diagnostics.clone()
    }

    pub fn is_valid(&self) -> bool {
        self.diagnostics.is_empty()
    }

    pub fn ensure_valid(&self) -> Result<(), NetlistError> {
        match self.diagnostics.first() {
            None => Ok(()),
            Some(first) => Err(NetlistError::Invalid {
                name: self.meta.name.clone(),
                first: first.clone(),
            }),
        }
    }

    /// Evaluates the primary outputs for one assignment given in
    /// primary-input order.
    pub fn evaluate(&self, assignment: &[bool]) -> Result<Vec<bool>, NetlistError> {
        let mut eval = Evaluator::new(self)?;
        eval.run(assignment)?;
        Ok(eval.outputs())
    }

    /// Evaluates with inputs given by name.
    pub fn evaluate_named(
        &self,
        assignment: &BTreeMap<String, bool>,
    ) -> Result<Vec<bool>, NetlistError> {
        for name in assignment.keys() {
            match self.find_net(name) {
                Some(id) if self.inputs.contains(&id) => {}
                _ => return Err(NetlistError::UnknownInput(name.clone())),
            }
        }
        let bits: Option<Vec<bool>> = self
            .inputs
            .iter()
            .map(|n| assignment.get(&self.nets[n.index()].name).copied())
            .collect();
        match bits {
            Some(bits) => self.evaluate(&bits),
            None => Err(NetlistError::IncompleteAssignment {
                expected: self.inputs.len(),
                got: assignment.len(),
            }),
        }
    }
}

/// Caller-owned scratch state for repeated evaluation of one netlist.
#[derive(Clone, Debug)]
pub struct Evaluator<'a> {
    netlist: &'a Netlist,
    values: Vec<bool>,
    pins_in: Vec<bool>,
    pins_out: [bool; 2],
}

impl<'a> Evaluator<'a> {
    pub fn new(netlist: &'a Netlist) -> Result<Self, NetlistError> {
        netlist.ensure_valid()?;
        let mut values = vec![false; netlist.nets.len()];
        for net in &netlist.nets {
            values[net.id.index()] = net.role == NetRole::Constant1;
        }
        Ok(Evaluator {
            netlist,
            values,
            pins_in: Vec::with_capacity(4),
            pins_out: [false; 2],
        })
    }

    pub fn run(&mut self, assignment: &[bool]) -> Result<(), NetlistError> {
        let nl = self.netlist;
        if assignment.len() != nl.inputs.len() {
            return Err(NetlistError::IncompleteAssignment {
                expected: nl.inputs.len(),
                got: assignment.len(),
            });
        }
        for (&net, &bit) in nl.inputs.iter().zip(assignment) {
            self.values[net.index()] = bit;
        }
        for &gid in &nl.order {
            let gate = &nl.gates[gid.index()];
            self.pins_in.clear();
            self.pins_in
                .extend(gate.inputs.iter().map(|n| self.values[n.index()]));
            gate.kind
                .eval(&self.pins_in, &mut self.pins_out[..gate.outputs.len()]);
            for (k, &out) in gate.outputs.iter().enumerate() {
                self.values[out.index()] = self.pins_out[k];
            }
        }
        Ok(())
    }

    pub fn value(&self, net: NetId) -> bool {
        self.values[net.index()]
    }

    /// Values of every net after the last [`Evaluator::run`], indexed by net id.
    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn outputs(&self) -> Vec<bool> {
        self.netlist
            .outputs
            .iter()
            .map(|n| self.values[n.index()])
            .collect()
    }

    pub fn outputs_into(&self, buf: &mut Vec<bool>) {
        buf.clear();
        buf.extend(self.netlist.outputs.iter().map(|n| self.values[n.index()]));
    }
}

/// Incremental netlist construction with eager checks on every gate.
#[derive(Clone, Debug, Default)]
pub struct NetlistBuilder {
    meta: Metadata,
    nets: Vec<Net>,
    gates: Vec<Gate>,
    inputs: Vec<NetId>,
    outputs: Vec<NetId>,
    names: HashMap<String, NetId>,
    driven: Vec<bool>,
    const0: Option<NetId>,
    const1: Option<NetId>,
    cell: Option<CellTag>,
}

impl NetlistBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        NetlistBuilder {
            meta: Metadata {
                name: name.into(),
                digits: None,
            },
            ..Default::default()
        }
    }

    pub fn set_digits(&mut self, digits: u32) {
        self.meta.digits = Some(digits);
    }

    pub fn add_net(
        &mut self,
        name: impl Into<String>,
        role: NetRole,
    ) -> Result<NetId, NetlistError> {
        let name = name.into();
        if self.names.contains_key(&name) {
            return Err(NetlistError::DuplicateName(name));
        }
        let id = NetId(self.nets.len() as u32);
        self.names.insert(name.clone(), id);
        self.nets.push(Net { id, name, role });
        self.driven.push(false);
        match role {
            NetRole::PrimaryInput => self.inputs.push(id),
            NetRole::PrimaryOutput => self.outputs.push(id),
            _ => {}
        }
        Ok(id)
    }

    pub fn input(&mut self, name: impl Into<String>) -> Result<NetId, NetlistError> {
        self.add_net(name, NetRole::PrimaryInput)
    }

    pub fn output(&mut self, name: impl Into<String>) -> Result<NetId, NetlistError> {
        self.add_net(name, NetRole::PrimaryOutput)
    }

    pub fn wire(&mut self, name: impl Into<String>) -> Result<NetId, NetlistError> {
        self.add_net(name, NetRole::Internal)
    }

    /// Shared logic-0 net, created on first use.
    pub fn zero(&mut self) -> NetId {
        if let Some(id) = self.const0 {
            return id;
        }
        let id = self
            .add_net("const0", NetRole::Constant0)
            .expect("const0 name is reserved");
        self.const0 = Some(id);
        id
    }

    /// Shared logic-1 net, created on first use.
    pub fn one(&mut self) -> NetId {
        if let Some(id) = self.const1 {
            return id;
        }
        let id = self
            .add_net("const1", NetRole::Constant1)
            .expect("const1 name is reserved");
        self.const1 = Some(id);
        id
    }

    pub fn net_by_name(&self, name: &str) -> Option<NetId> {
        self.names.get(name).copied()
    }

    /// Gates added while a cell is open are tagged with it.
    pub fn begin_cell(&mut self, kind: impl Into<String>, instance: impl Into<String>) {
        self.cell = Some(CellTag {
            kind: kind.into(),
            instance: instance.into(),
        });
    }

    pub fn end_cell(&mut self) {
        self.cell = None;
    }

    pub fn add_gate(
        &mut self,
        kind: GateKind,
        inputs: &[NetId],
        outputs: &[NetId],
    ) -> Result<GateId, NetlistError> {
        if !kind.is_valid() {
            return Err(NetlistError::InvalidKind(kind));
        }
        if inputs.len() != kind.input_count() || outputs.len() != kind.output_count() {
            return Err(NetlistError::ArityMismatch {
                kind,
                expected_inputs: kind.input_count(),
                expected_outputs: kind.output_count(),
                inputs: inputs.len(),
                outputs: outputs.len(),
            });
        }
        for &net in inputs.iter().chain(outputs) {
            if net.index() >= self.nets.len() {
                return Err(NetlistError::UnknownNet(net));
            }
        }
        for (k, &net) in outputs.iter().enumerate() {
            let info = &self.nets[net.index()];
            if info.role.is_source() {
                return Err(NetlistError::DrivenSource {
                    net,
                    name: info.name.clone(),
                    role: info.role,
                });
            }
            if self.driven[net.index()] || outputs[..k].contains(&net) {
                return Err(NetlistError::MultipleDrivers {
                    net,
                    name: info.name.clone(),
                });
            }
        }
        for &net in outputs {
            self.driven[net.index()] = true;
        }
        let id = GateId(self.gates.len() as u32);
        self.gates.push(Gate {
            id,
            kind,
            inputs: inputs.to_vec(),
            outputs: outputs.to_vec(),
            cell: self.cell.clone(),
        });
        Ok(id)
    }

    /// Adds a single-output gate driving a fresh internal net.
    pub fn gate(
        &mut self,
        kind: GateKind,
        inputs: &[NetId],
        out: impl Into<String>,
    ) -> Result<NetId, NetlistError> {
        let net = self.wire(out)?;
        self.add_gate(kind, inputs, &[net])?;
        Ok(net)
    }

    pub fn finish(self) -> Netlist {
        Netlist::from_parts(self.meta, self.nets, self.gates, self.inputs, self.outputs)
    }
}
