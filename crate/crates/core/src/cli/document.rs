//! Versioned JSON netlist documents and the DOT export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::netlist::{
    CellTag, Gate, GateId, GateKind, Metadata, Net, NetId, NetRole, Netlist, NetlistError,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetEntry {
    pub id: u32,
    pub name: String,
    pub role: NetRole,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateEntry {
    pub id: u32,
    pub kind: GateKind,
    pub inputs: Vec<u32>,
    pub outputs: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell: Option<CellTag>,
}

/// On-disk form of a netlist. Ids are dense and sorted, so a document that
/// was written by [`NetlistDocument::to_json`] reloads and re-saves to the
/// same bytes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetlistDocument {
    pub version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digits: Option<u32>,
    pub nets: Vec<NetEntry>,
    pub gates: Vec<GateEntry>,
    pub inputs: Vec<u32>,
    pub outputs: Vec<u32>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed netlist document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported document version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("{what} ids must run 0..n in order; position {position} holds id {id}")]
    IdOrder {
        what: &'static str,
        position: usize,
        id: u32,
    },
    #[error(transparent)]
    Invalid(#[from] NetlistError),
}

impl NetlistDocument {
    pub fn from_netlist(netlist: &Netlist) -> Self {
        let ids = |v: &[NetId]| v.iter().map(|n| n.0).collect::<Vec<_>>();
        NetlistDocument {
            version: FORMAT_VERSION,
            name: netlist.name().to_owned(),
            digits: netlist.metadata().digits,
            nets: netlist
                .nets()
                .iter()
                .map(|n| NetEntry {
                    id: n.id.0,
                    name: n.name.clone(),
                    role: n.role,
                })
                .collect(),
            gates: netlist
                .gates()
                .iter()
                .map(|g| GateEntry {
                    id: g.id.0,
                    kind: g.kind,
                    inputs: ids(&g.inputs),
                    outputs: ids(&g.outputs),
                    cell: g.cell.clone(),
                })
                .collect(),
            inputs: ids(netlist.inputs()),
            outputs: ids(netlist.outputs()),
        }
    }

    /// Rebuilds the netlist and rejects it unless every structural
    /// invariant holds.
    pub fn into_netlist(self) -> Result<Netlist, DocumentError> {
        if self.version != FORMAT_VERSION {
            return Err(DocumentError::Version(self.version));
        }
        if let Some((position, n)) = self
            .nets
            .iter()
            .enumerate()
            .find(|(i, n)| n.id as usize != *i)
        {
            return Err(DocumentError::IdOrder {
                what: "net",
                position,
                id: n.id,
            });
        }
        if let Some((position, g)) = self
            .gates
            .iter()
            .enumerate()
            .find(|(i, g)| g.id as usize != *i)
        {
            return Err(DocumentError::IdOrder {
                what: "gate",
                position,
                id: g.id,
            });
        }
        let ids = |v: Vec<u32>| v.into_iter().map(NetId).collect::<Vec<_>>();
        let nets = self
            .nets
            .into_iter()
            .map(|n| Net {
                id: NetId(n.id),
                name: n.name,
                role: n.role,
            })
            .collect();
        let gates = self
            .gates
            .into_iter()
            .map(|g| Gate {
                id: GateId(g.id),
                kind: g.kind,
                inputs: ids(g.inputs),
                outputs: ids(g.outputs),
                cell: g.cell,
            })
            .collect();
        let meta = Metadata {
            name: self.name,
            digits: self.digits,
        };
        let netlist = Netlist::from_parts(meta, nets, gates, ids(self.inputs), ids(self.outputs));
        netlist.ensure_valid()?;
        Ok(netlist)
    }

    /// Canonical text: pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents always serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn netlist_to_json(netlist: &Netlist) -> String {
    NetlistDocument::from_netlist(netlist).to_json()
}

pub fn netlist_from_json(text: &str) -> Result<Netlist, DocumentError> {
    NetlistDocument::from_json(text)?.into_netlist()
}

/// Graphviz rendering: nets are edges, gates and ports are nodes.
pub fn netlist_to_dot(netlist: &Netlist) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", netlist.name());
    let _ = writeln!(out, "  rankdir=LR;");
    for &n in netlist.inputs() {
        let _ = writeln!(out, "  \"{}\" [shape=invhouse];", netlist.net(n).name);
    }
    for &n in netlist.outputs() {
        let _ = writeln!(out, "  \"{}\" [shape=house];", netlist.net(n).name);
    }
    for net in netlist.nets() {
        if matches!(net.role, NetRole::Constant0 | NetRole::Constant1) {
            let _ = writeln!(out, "  \"{}\" [shape=plaintext];", net.name);
        }
    }
    for gate in netlist.gates() {
        let _ = writeln!(
            out,
            "  {} [shape=box,label=\"{}\\n{}\"];",
            gate.id, gate.kind, gate.id
        );
    }
    let source = |net: NetId| match netlist.driver(net) {
        Some((g, _)) => g.to_string(),
        None => format!("\"{}\"", netlist.net(net).name),
    };
    for gate in netlist.gates() {
        for &n in &gate.inputs {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                source(n),
                gate.id,
                netlist.net(n).name
            );
        }
    }
    for &n in netlist.outputs() {
        if let Some((g, _)) = netlist.driver(n) {
            let _ = writeln!(out, "  {g} -> \"{}\";", netlist.net(n).name);
        }
    }
    out.push_str("}\n");
    out
}
