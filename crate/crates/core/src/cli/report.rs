//! Markdown reports.

use std::fmt::Write as _;

use super::config::AnalysisConfig;
use crate::analysis::{
    delay_functional, delay_functional_bcd, delay_topological, estimate_activity, estimate_power,
    random_stimulus, transistor_cost, AnalysisError, BomItem, CostReport, FunctionalDelay,
    FunctionalMethod, PairStimulus, TABLE_ONE,
};
use crate::generators::{gen_mcla4, gen_ncla4, gen_ripple4, AdderStyle, BcdChainSpec, Circuit};
use crate::netlist::{GateKind, Netlist};
use crate::verify::{InputSpace, Oracle};

/// Chains up to this many digits get the exact digit-serial delay.
const EXACT_CHAIN_DIGITS: u32 = 2;
/// Activity sequence length when the configuration does not set one.
const REPORT_ACTIVITY_LENGTH: usize = 1000;

pub const DEFAULT_COMPARE_DIGITS: [u32; 5] = [1, 2, 7, 16, 34];

fn kind_label(kind: GateKind) -> String {
    match TABLE_ONE.iter().find(|r| r.kind == kind) {
        Some(row) => row.label.to_owned(),
        None => match kind {
            GateKind::Or(n) => format!("{n} input OR gate (cascaded 2T)"),
            other => other.to_string(),
        },
    }
}

fn item_label(item: &BomItem) -> String {
    match item {
        BomItem::Cell(name) if name == "PGA" => "1 bit NFA (PGA cell)".to_owned(),
        BomItem::Cell(name) => format!("{name} cell"),
        BomItem::Gate(kind) => kind_label(*kind),
    }
}

fn bom_table(out: &mut String, title: &str, total_label: &str, report: &CostReport) {
    let _ = writeln!(out, "## {title}\n");
    let _ = writeln!(out, "| Block | Count | Each | Transistors |");
    let _ = writeln!(out, "|---|---:|---:|---:|");
    for row in &report.bom {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} |",
            item_label(&row.item),
            row.count,
            row.each,
            row.subtotal
        );
    }
    let _ = writeln!(out, "| {total_label} | | | {} |\n", report.total);
}

/// Per-function cost table followed by the bills of materials of the two
/// lookahead adders.
pub fn tables_report(config: &AnalysisConfig) -> Result<String, AnalysisError> {
    let model = config.cost_model();
    let mcla = transistor_cost(&gen_mcla4(), &model)?;
    let ncla = transistor_cost(&gen_ncla4(), &model)?;
    let mut out = String::from("# Transistor cost tables\n\n## Per-function costs\n\n");
    let _ = writeln!(out, "| Logic function | Transistors |");
    let _ = writeln!(out, "|---|---:|");
    for row in TABLE_ONE {
        let count = model
            .get(row.kind)
            .ok_or(AnalysisError::UnknownKind(row.kind))?;
        let _ = writeln!(out, "| {} | {count} |", row.label);
    }
    for (label, report, cell) in [
        ("MPFA cell (2 XOR2 + 1 NAND2)", &mcla, "MPFA"),
        ("PGA cell (2 XOR2 + 1 AND2)", &ncla, "PGA"),
    ] {
        if let Some(row) = report.row(&BomItem::Cell(cell.to_owned())) {
            let _ = writeln!(out, "| {label} | {} |", row.each);
        }
    }
    out.push('\n');
    bom_table(
        &mut out,
        "MCLA (NAND lookahead baseline)",
        "MCLA total",
        &mcla,
    );
    bom_table(&mut out, "NCLA (AND/OR lookahead)", "NCLA total", &ncla);
    Ok(out)
}

struct CompareRow {
    label: String,
    digits: Option<u32>,
    cost: u32,
    topological: u64,
    functional: FunctionalDelay,
    power: Vec<f64>,
}

fn method_label(method: &FunctionalMethod) -> String {
    match method {
        FunctionalMethod::ExhaustivePairs => "exhaustive pairs".to_owned(),
        FunctionalMethod::SampledPairs { seed } => format!("sampled, seed {seed}"),
        FunctionalMethod::DigitSerial { .. } => "exhaustive (digit-serial)".to_owned(),
    }
}

fn power_grid(
    netlist: &Netlist,
    space: InputSpace,
    config: &AnalysisConfig,
) -> Result<Vec<f64>, AnalysisError> {
    let length = config
        .sweep
        .activity_length
        .unwrap_or(REPORT_ACTIVITY_LENGTH);
    let stimulus = random_stimulus(space, length, config.sweep.seed);
    let activity = estimate_activity(netlist, &stimulus)?;
    let model = config.cost_model();
    let mut values = Vec::new();
    for &load in &config.sweep.loads {
        for &f_clk in &config.sweep.frequencies {
            let params = crate::analysis::PowerParams {
                output_load: load,
                f_clk,
                ..config.power.clone()
            };
            values.push(estimate_power(netlist, &activity, &params, &model)?.total);
        }
    }
    Ok(values)
}

fn space_of(netlist: &Netlist) -> InputSpace {
    match Oracle::for_netlist(netlist) {
        Some(Oracle::BcdAdd { digits }) => InputSpace::BcdValid { digits },
        _ => InputSpace::AllBinary {
            width: netlist.inputs().len(),
        },
    }
}

fn compare_row(
    label: String,
    digits: Option<u32>,
    netlist: &Netlist,
    functional: FunctionalDelay,
    config: &AnalysisConfig,
) -> Result<CompareRow, AnalysisError> {
    Ok(CompareRow {
        label,
        digits,
        cost: transistor_cost(netlist, &config.cost_model())?.total,
        topological: delay_topological(netlist, &config.delay)?.max_depth(),
        functional,
        power: power_grid(netlist, space_of(netlist), config)?,
    })
}

/// Cost, delay and power side by side for the 4-bit adders and the BCD
/// chains at each requested digit count.
pub fn compare_report(
    config: &AnalysisConfig,
    digits: &[u32],
    parallel: bool,
) -> Result<String, AnalysisError> {
    let mut rows = Vec::new();
    for (circuit, netlist) in [
        (Circuit::Ripple4, gen_ripple4()),
        (Circuit::Ncla4, gen_ncla4()),
        (Circuit::Mcla4, gen_mcla4()),
    ] {
        let stim = PairStimulus::exhaustive(space_of(&netlist));
        let functional = delay_functional(&netlist, &config.delay, &stim, parallel)?;
        rows.push(compare_row(
            circuit.name().to_owned(),
            None,
            &netlist,
            functional,
            config,
        )?);
    }
    for &n in digits {
        for style in [AdderStyle::Ripple, AdderStyle::Ncla, AdderStyle::CarrySkip] {
            let spec = BcdChainSpec::new(n, style);
            let netlist = crate::generators::gen_bcd_chain(spec)?;
            let functional = if n <= EXACT_CHAIN_DIGITS {
                let digits: Vec<u8> = (0..10).collect();
                delay_functional_bcd(spec, &config.delay, &digits, parallel)?
            } else {
                let stim = PairStimulus::sampled(
                    space_of(&netlist),
                    config.sweep.seed,
                    config.sweep.delay_samples,
                );
                delay_functional(&netlist, &config.delay, &stim, parallel)?
            };
            rows.push(compare_row(
                Circuit::Bcd(style).name().to_owned(),
                Some(n),
                &netlist,
                functional,
                config,
            )?);
        }
    }

    let mut out = String::from("# Adder comparison\n\n");
    let _ = writeln!(
        out,
        "Delays are in gate units (primitive gates {}, full-adder macros {} sum / {} carry). \
         Power is the range of the power equation over {} loads x {} clock frequencies.\n",
        config.delay.gate,
        config.delay.fa_sum,
        config.delay.fa_carry,
        config.sweep.loads.len(),
        config.sweep.frequencies.len()
    );
    let _ = writeln!(out, "| Circuit | Digits | Transistors | Topological delay | Functional worst delay | Stimulus | Power min (W) | Power max (W) |");
    let _ = writeln!(out, "|---|---:|---:|---:|---:|---|---:|---:|");
    for row in &rows {
        let min = row.power.iter().copied().fold(f64::INFINITY, f64::min);
        let max = row.power.iter().copied().fold(0.0, f64::max);
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {:.3e} | {:.3e} |",
            row.label,
            row.digits.map_or("-".to_owned(), |d| d.to_string()),
            row.cost,
            row.topological,
            row.functional.worst,
            method_label(&row.functional.method),
            min,
            max
        );
    }

    let _ = writeln!(out, "\n## Power over the default grid\n");
    let mut header = String::from("| Circuit | Digits | Load (pF) |");
    let mut rule = String::from("|---|---:|---:|");
    for f in &config.sweep.frequencies {
        let _ = write!(header, " {} MHz |", f / 1e6);
        rule.push_str("---:|");
    }
    let _ = writeln!(out, "{header}\n{rule}");
    let width = config.sweep.frequencies.len();
    for row in rows.iter().filter(|r| r.digits.unwrap_or(1) == 1) {
        for (i, load) in config.sweep.loads.iter().enumerate() {
            let cells: Vec<String> = row.power[i * width..(i + 1) * width]
                .iter()
                .map(|p| format!("{p:.3e}"))
                .collect();
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} |",
                row.label,
                row.digits.map_or("-".to_owned(), |d| d.to_string()),
                load * 1e12,
                cells.join(" | ")
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_contain_totals() {
        let text = tables_report(&AnalysisConfig::default()).unwrap();
        assert!(text.contains("| NCLA total | | | 74 |"));
        assert!(text.contains("| MCLA total | | | 136 |"));
        assert!(text.contains("| MPFA cell | 4 | 12 | 48 |"));
        assert!(text.contains("| 1 bit NFA (PGA cell) | 3 | 10 | 30 |"));
        assert!(text.contains("| MPFA cell (2 XOR2 + 1 NAND2) | 12 |"));
    }

    #[test]
    fn compare_single_digit() {
        let config = AnalysisConfig::default();
        let text = compare_report(&config, &[1], false).unwrap();
        assert!(
            text.contains("| ripple4 | - | 40 | 8 | 8 | exhaustive pairs |"),
            "{text}"
        );
        assert!(text.contains("| ncla4 | - | 74 |"));
        assert!(text.contains("| bcd-cs | 1 |"));
    }
}
