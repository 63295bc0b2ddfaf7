//! Transistor-count area model.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::AnalysisError;
use crate::netlist::{GateKind, Netlist};

/// One row of the reference transistor-count table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CostTableRow {
    pub label: &'static str,
    pub kind: GateKind,
    pub transistors: u32,
}

/// Reference per-function transistor counts, in table order.
pub const TABLE_ONE: [CostTableRow; 12] = [
    CostTableRow {
        label: "NOT Gate",
        kind: GateKind::Not,
        transistors: 2,
    },
    CostTableRow {
        label: "2 input XOR gate",
        kind: GateKind::Xor2,
        transistors: 4,
    },
    CostTableRow {
        label: "2 input NAND gate",
        kind: GateKind::Nand(2),
        transistors: 4,
    },
    CostTableRow {
        label: "3 input NAND gate",
        kind: GateKind::Nand(3),
        transistors: 6,
    },
    CostTableRow {
        label: "4 input NAND gate",
        kind: GateKind::Nand(4),
        transistors: 8,
    },
    CostTableRow {
        label: "1 bit full adder (10T)",
        kind: GateKind::Fa10T,
        transistors: 10,
    },
    CostTableRow {
        label: "1 bit multiplexer based full adder",
        kind: GateKind::FaMux12,
        transistors: 12,
    },
    CostTableRow {
        label: "2 input AND gate (2T)",
        kind: GateKind::And(2),
        transistors: 2,
    },
    CostTableRow {
        label: "2 input OR gate (2T)",
        kind: GateKind::Or(2),
        transistors: 2,
    },
    CostTableRow {
        label: "3 input AND gate (cascaded 2T)",
        kind: GateKind::And(3),
        transistors: 4,
    },
    CostTableRow {
        label: "4 input AND gate (cascaded 2T)",
        kind: GateKind::And(4),
        transistors: 6,
    },
    CostTableRow {
        label: "4 input OR gate (cascaded 2T)",
        kind: GateKind::Or(4),
        transistors: 6,
    },
];

/// Transistor count per gate kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CostModel {
    counts: BTreeMap<GateKind, u32>,
}

impl Default for CostModel {
    fn default() -> Self {
        let mut counts: BTreeMap<GateKind, u32> =
            TABLE_ONE.iter().map(|r| (r.kind, r.transistors)).collect();
        // three-input OR follows the same cascade rule as the AND gates
        counts.insert(GateKind::Or(3), cascaded_and_or(3));
        CostModel { counts }
    }
}

/// Cost of an n-input AND/OR built by cascading two-transistor gates.
pub fn cascaded_and_or(fan_in: u8) -> u32 {
    2 * (u32::from(fan_in) - 1)
}

impl CostModel {
    /// A model with no entries; every lookup fails until kinds are set.
    pub fn empty() -> Self {
        CostModel {
            counts: BTreeMap::new(),
        }
    }

    pub fn get(&self, kind: GateKind) -> Option<u32> {
        self.counts.get(&kind).copied()
    }

    pub fn set(&mut self, kind: GateKind, transistors: u32) {
        self.counts.insert(kind, transistors);
    }

    pub fn with(mut self, kind: GateKind, transistors: u32) -> Self {
        self.set(kind, transistors);
        self
    }

    pub fn entries(&self) -> impl Iterator<Item = (GateKind, u32)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    /// Positive counts everywhere and the 2(n-1) cascade rule for AND/OR.
    pub fn check(&self) -> Result<(), AnalysisError> {
        for (&kind, &count) in &self.counts {
            if count == 0 {
                return Err(AnalysisError::InvalidModel(format!(
                    "{kind} has zero transistors"
                )));
            }
            if let GateKind::And(n) | GateKind::Or(n) = kind {
                if count != cascaded_and_or(n) {
                    return Err(AnalysisError::InvalidModel(format!(
                        "{kind} costs {count}, cascading gives {}",
                        cascaded_and_or(n)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Per-kind gate tally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KindTally {
    pub kind: GateKind,
    pub gates: u32,
    pub transistors_each: u32,
    pub subtotal: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum BomItem {
    /// A named multi-gate cell such as a PGA block.
    Cell(String),
    Gate(GateKind),
}

impl fmt::Display for BomItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BomItem::Cell(name) => f.write_str(name),
            BomItem::Gate(kind) => write!(f, "{kind}"),
        }
    }
}

/// Bill-of-materials row: `count` instances of `item` at `each` transistors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BomRow {
    pub item: BomItem,
    pub count: u32,
    pub each: u32,
    pub subtotal: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub circuit: String,
    /// Every gate counted by kind, including gates inside cells.
    pub by_kind: Vec<KindTally>,
    /// Gates grouped into their cells where tagged, otherwise by kind.
    pub bom: Vec<BomRow>,
    pub total: u32,
}

impl CostReport {
    pub fn row(&self, item: &BomItem) -> Option<&BomRow> {
        self.bom.iter().find(|r| &r.item == item)
    }

    pub fn kind(&self, kind: GateKind) -> Option<&KindTally> {
        self.by_kind.iter().find(|t| t.kind == kind)
    }
}

fn kind_rank(kind: GateKind) -> usize {
    GateKind::ALL
        .iter()
        .position(|&k| k == kind)
        .unwrap_or(usize::MAX)
}

/// Exact transistor tally of a netlist.
pub fn transistor_cost(netlist: &Netlist, model: &CostModel) -> Result<CostReport, AnalysisError> {
    let mut by_kind: BTreeMap<(usize, GateKind), u32> = BTreeMap::new();
    let mut cells: BTreeMap<(String, String), u32> = BTreeMap::new();
    let mut loose: BTreeMap<(usize, GateKind), u32> = BTreeMap::new();
    for gate in netlist.gates() {
        let cost = model
            .get(gate.kind)
            .ok_or(AnalysisError::UnknownKind(gate.kind))?;
        let key = (kind_rank(gate.kind), gate.kind);
        *by_kind.entry(key).or_default() += 1;
        match &gate.cell {
            Some(tag) => {
                *cells
                    .entry((tag.kind.clone(), tag.instance.clone()))
                    .or_default() += cost
            }
            None => *loose.entry(key).or_default() += 1,
        }
    }

    let by_kind: Vec<KindTally> = by_kind
        .into_iter()
        .map(|((_, kind), gates)| {
            let each = model.get(kind).expect("looked up above");
            KindTally {
                kind,
                gates,
                transistors_each: each,
                subtotal: gates * each,
            }
        })
        .collect();

    // cells of one kind and cost collapse into a single row
    let mut cell_rows: BTreeMap<(String, u32), u32> = BTreeMap::new();
    for ((kind, _), cost) in cells {
        *cell_rows.entry((kind, cost)).or_default() += 1;
    }
    let mut bom: Vec<BomRow> = cell_rows
        .into_iter()
        .map(|((kind, each), count)| BomRow {
            item: BomItem::Cell(kind),
            count,
            each,
            subtotal: count * each,
        })
        .collect();
    bom.extend(loose.into_iter().map(|((_, kind), count)| {
        let each = model.get(kind).expect("looked up above");
        BomRow {
            item: BomItem::Gate(kind),
            count,
            each,
            subtotal: count * each,
        }
    }));

    let total = by_kind.iter().map(|t| t.subtotal).sum();
    debug_assert_eq!(total, bom.iter().map(|r| r.subtotal).sum::<u32>());
    Ok(CostReport {
        circuit: netlist.name().to_owned(),
        by_kind,
        bom,
        total,
    })
}
