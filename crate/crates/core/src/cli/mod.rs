//! Command-line front end: argument parsing, file formats and rendering.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or parse error, 3 I/O
//! error, 4 configuration error.

pub mod config;
pub mod document;
pub mod report;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::analysis::{
    delay_functional, delay_functional_bcd, delay_topological, estimate_activity, estimate_power,
    random_stimulus, transistor_cost, AnalysisError, PairMode, PairStimulus, PowerParams,
};
use crate::generators::{BcdChainSpec, Circuit, GenError};
use crate::netlist::Netlist;
use crate::verify::{
    equiv_check_with, exhaustive_check_with, sampled_check, InputSpace, Oracle, OutputMapping,
    VerifyError, MAX_EXHAUSTIVE_VECTORS,
};
use config::{AnalysisConfig, SEED_ENV};
use document::{netlist_from_json, netlist_to_dot, netlist_to_json, DocumentError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Config(String),
    #[error("check failed")]
    CheckFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed => 1,
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Config(_) => 4,
        }
    }

    fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_owned(),
            source,
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::UnknownKind(_)
            | AnalysisError::InvalidModel(_)
            | AnalysisError::MissingActivity { .. } => CliError::Config(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bcdkit",
    version,
    about = "Generate, verify and analyse binary and BCD adder netlists"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// A built-in circuit name or a path to a netlist document.
#[derive(Debug, Args)]
pub struct Target {
    /// Circuit (pga, ncla4, mcla4, ripple4, cs4, bcd-ripple, bcd-ncla, bcd-cs) or netlist .json path
    pub target: String,
    /// Digit count for BCD chains
    #[arg(long, default_value_t = 1)]
    pub digits: u32,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Analysis configuration document (.json)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
    /// Sweep seed (overrides the config and the BCDKIT_SEED variable)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Run sweeps on one thread
    #[arg(long)]
    pub serial: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DelayMode {
    Topological,
    Functional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportScope {
    Tables,
    Compare,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the canonical netlist document of a built-in circuit
    Generate {
        circuit: String,
        #[arg(long, default_value_t = 1)]
        digits: u32,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate one input assignment.
    ///
    /// Inputs are NAME=BITS pairs separated by commas. Nets named STEM0,
    /// STEM1, ... form the bus STEM, written most significant bit first, so
    /// A=0101 sets A3=0 A2=1 A1=0 A0=1. Underscores inside BITS are ignored.
    Sim {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        inputs: String,
        #[arg(long)]
        json: bool,
    },
    /// Verify against the arithmetic oracle, or against another netlist
    Check {
        #[command(flatten)]
        target: Target,
        /// Compare with this circuit or document instead of the oracle
        #[arg(long)]
        equiv: Option<String>,
        /// Random vectors when the space is too large to enumerate
        #[arg(long)]
        samples: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Transistor count and bill of materials
    Cost {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Static or event-driven delay
    Delay {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = DelayMode::Topological)]
        mode: DelayMode,
        /// Enumerate every input pair (exact digit-serial method for BCD chains)
        #[arg(long)]
        exhaustive: bool,
        /// Random input pairs when sampling
        #[arg(long)]
        samples: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Power estimate from measured switching activity
    Power {
        #[command(flatten)]
        target: Target,
        /// File with one input assignment per line, in `sim --inputs` syntax
        #[arg(long)]
        vectors: Option<PathBuf>,
        /// Random valid input sequence of this length
        #[arg(long)]
        random: Option<usize>,
        /// Evaluate over the configured load x frequency grid
        #[arg(long)]
        grid: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Write a netlist as a JSON document or a Graphviz graph
    Export {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = ExportFormat::Json)]
        format: ExportFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Markdown cost tables or the adder comparison
    Report {
        #[arg(value_enum)]
        scope: ReportScope,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Chain lengths for the comparison, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = report::DEFAULT_COMPARE_DIGITS)]
        digits: Vec<u32>,
        #[command(flatten)]
        common: Common,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            if !matches!(e, CliError::CheckFailed) {
                let _ = writeln!(err, "error: {e}");
            }
            e.exit_code()
        }
    }
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Resolves a circuit name or a document path to a validated netlist.
pub fn load_target(target: &str, digits: u32) -> Result<Netlist, CliError> {
    if let Ok(circuit) = target.parse::<Circuit>() {
        return Ok(circuit.build(digits)?);
    }
    let path = Path::new(target);
    let looks_like_path =
        path.exists() || target.contains(std::path::MAIN_SEPARATOR) || target.ends_with(".json");
    if !looks_like_path {
        return Err(GenError::UnknownCircuit(target.to_owned()).into());
    }
    let text = read_file(path)?;
    netlist_from_json(&text).map_err(|e: DocumentError| CliError::Parse(format!("{target}: {e}")))
}

fn load_config(common: &Common) -> Result<AnalysisConfig, CliError> {
    let mut config = match &common.config {
        Some(path) => AnalysisConfig::from_json(&read_file(path)?)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?,
        None => AnalysisConfig::default(),
    };
    config
        .apply_seed_env(std::env::var(SEED_ENV).ok().as_deref())
        .map_err(CliError::Config)?;
    if let Some(seed) = common.seed {
        config.sweep.seed = seed;
    }
    config.check()?;
    Ok(config)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports always serialize");
    text.push('\n');
    text
}

/// A named group of primary inputs or outputs, least significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortGroup {
    pub label: String,
    pub members: Vec<usize>,
}

fn split_index(name: &str) -> Option<(&str, usize)> {
    let stem = name.trim_end_matches(|c: char| c.is_ascii_digit());
    if stem.len() == name.len() || stem.is_empty() {
        return None;
    }
    Some((stem, name[stem.len()..].parse().ok()?))
}

/// Groups nets named `STEM0..STEMk` (k >= 1, no gaps) into buses; any other
/// net stands alone under its own name.
pub fn port_groups(names: &[&str]) -> Vec<PortGroup> {
    let mut stems: Vec<(&str, Vec<(usize, usize)>)> = Vec::new();
    for (pos, name) in names.iter().enumerate() {
        if let Some((stem, index)) = split_index(name) {
            match stems.iter_mut().find(|(s, _)| *s == stem) {
                Some((_, v)) => v.push((index, pos)),
                None => stems.push((stem, vec![(index, pos)])),
            }
        }
    }
    let mut bus_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut groups: Vec<PortGroup> = Vec::new();
    for (stem, mut members) in stems {
        members.sort();
        let dense = members.len() >= 2
            && members
                .iter()
                .enumerate()
                .all(|(i, &(index, _))| index == i);
        if dense {
            for &(_, pos) in &members {
                bus_of.insert(pos, groups.len());
            }
            groups.push(PortGroup {
                label: stem.to_owned(),
                members: members.iter().map(|&(_, p)| p).collect(),
            });
        }
    }
    let mut ordered: Vec<PortGroup> = Vec::new();
    let mut emitted = vec![false; groups.len()];
    for (pos, name) in names.iter().enumerate() {
        match bus_of.get(&pos) {
            Some(&g) if !emitted[g] => {
                emitted[g] = true;
                ordered.push(groups[g].clone());
            }
            Some(_) => {}
            None => ordered.push(PortGroup {
                label: (*name).to_owned(),
                members: vec![pos],
            }),
        }
    }
    ordered
}

/// Parses `A=0101,B=0111,C0=0` into a full input vector in net order.
pub fn parse_assignment(netlist: &Netlist, text: &str) -> Result<Vec<bool>, CliError> {
    let names = netlist.input_names();
    let groups = port_groups(&names);
    let mut bits: Vec<Option<bool>> = vec![None; names.len()];
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (label, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("`{item}` is not NAME=BITS")))?;
        let members: Vec<usize> = match groups.iter().find(|g| g.label == label) {
            Some(g) => g.members.clone(),
            None => match names.iter().position(|n| *n == label) {
                Some(p) => vec![p],
                None => {
                    return Err(CliError::Usage(format!(
                        "no input or input bus named `{label}`"
                    )))
                }
            },
        };
        let digits: Vec<char> = value.chars().filter(|&c| c != '_').collect();
        if digits.len() != members.len() {
            return Err(CliError::Usage(format!(
                "`{label}` takes {} bits, got {}",
                members.len(),
                digits.len()
            )));
        }
        // most significant bit first on the command line
        for (&member, c) in members.iter().rev().zip(&digits) {
            let bit = match c {
                '0' => false,
                '1' => true,
                _ => return Err(CliError::Usage(format!("`{value}` is not a bit string"))),
            };
            if bits[member].replace(bit).is_some() {
                return Err(CliError::Usage(format!(
                    "input `{}` assigned twice",
                    names[member]
                )));
            }
        }
    }
    let missing: Vec<&str> = bits
        .iter()
        .zip(&names)
        .filter(|(b, _)| b.is_none())
        .map(|(_, n)| *n)
        .collect();
    if !missing.is_empty() {
        return Err(CliError::Usage(format!(
            "missing inputs: {}",
            missing.join(", ")
        )));
    }
    Ok(bits
        .into_iter()
        .map(|b| b.expect("checked above"))
        .collect())
}

/// Renders output values grouped into buses, most significant bit first.
pub fn render_outputs(netlist: &Netlist, values: &[bool]) -> Vec<(String, String)> {
    port_groups(&netlist.output_names())
        .into_iter()
        .map(|g| {
            let bits = g
                .members
                .iter()
                .rev()
                .map(|&m| if values[m] { '1' } else { '0' })
                .collect();
            (g.label, bits)
        })
        .collect()
}

fn space_for(netlist: &Netlist, oracle: Option<Oracle>) -> InputSpace {
    match oracle {
        Some(Oracle::BcdAdd { digits }) if digits * 8 + 1 == netlist.inputs().len() => {
            InputSpace::BcdValid { digits }
        }
        _ => InputSpace::AllBinary {
            width: netlist.inputs().len(),
        },
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Generate {
            circuit,
            digits,
            output,
        } => {
            let circuit: Circuit = circuit.parse()?;
            let netlist = circuit.build(digits)?;
            write_output(output.as_deref(), &netlist_to_json(&netlist), out)
        }
        Command::Sim {
            target,
            inputs,
            json,
        } => {
            let netlist = load_target(&target.target, target.digits)?;
            let vector = parse_assignment(&netlist, &inputs)?;
            let values = netlist
                .evaluate(&vector)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let rendered = render_outputs(&netlist, &values);
            let text = if json {
                to_json(&rendered.into_iter().collect::<BTreeMap<_, _>>())
            } else {
                let parts: Vec<String> = rendered.iter().map(|(k, v)| format!("{k}={v}")).collect();
                format!("{}\n", parts.join(" "))
            };
            write_output(None, &text, out)
        }
        Command::Check {
            target,
            equiv,
            samples,
            common,
        } => {
            let config = load_config(&common)?;
            let netlist = load_target(&target.target, target.digits)?;
            let mut opts = config.sweep_options(!common.serial);
            if let Some(s) = samples {
                opts.samples = s;
            }
            let oracle = Oracle::for_netlist(&netlist);
            let space = space_for(&netlist, oracle);
            let report = match equiv {
                Some(other) => {
                    let other = load_target(&other, target.digits)?;
                    let mapping = OutputMapping::common_names(&netlist, &other);
                    if mapping.0.is_empty() {
                        return Err(CliError::Usage("the netlists share no output names".into()));
                    }
                    equiv_check_with(&netlist, &other, space, &mapping, opts)?
                }
                None => {
                    let oracle = oracle.ok_or_else(|| {
                        CliError::Usage(format!(
                            "no oracle for circuit `{}`; use --equiv",
                            netlist.name()
                        ))
                    })?;
                    if space.size() <= MAX_EXHAUSTIVE_VECTORS {
                        exhaustive_check_with(&netlist, oracle, space, opts)?
                    } else {
                        sampled_check(&netlist, oracle, space, opts)?
                    }
                }
            };
            let text = if common.json {
                to_json(&report)
            } else {
                report.to_string()
            };
            write_output(None, &text, out)?;
            if report.is_pass() {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
        Command::Cost { target, common } => {
            let config = load_config(&common)?;
            let netlist = load_target(&target.target, target.digits)?;
            let report = transistor_cost(&netlist, &config.cost_model())?;
            let text = if common.json {
                to_json(&report)
            } else {
                let mut s = format!("{}: {} transistors\n", report.circuit, report.total);
                for row in &report.bom {
                    let _ = writeln!(
                        s,
                        "  {:<12} x{:<4} {:>3} each {:>6}",
                        row.item.to_string(),
                        row.count,
                        row.each,
                        row.subtotal
                    );
                }
                s
            };
            write_output(None, &text, out)
        }
        Command::Delay {
            target,
            mode,
            exhaustive,
            samples,
            common,
        } => {
            let config = load_config(&common)?;
            let netlist = load_target(&target.target, target.digits)?;
            let parallel = !common.serial;
            match mode {
                DelayMode::Topological => {
                    let report = delay_topological(&netlist, &config.delay)?;
                    let text = if common.json {
                        to_json(&report)
                    } else {
                        let mut s =
                            format!("{}: max depth {}\n", report.circuit, report.max_depth());
                        for o in &report.outputs {
                            let _ = writeln!(s, "  {:<8} {}", o.name, o.depth);
                        }
                        if let Some(c) = &report.critical {
                            let _ = writeln!(
                                s,
                                "critical path to {}: {}",
                                c.output,
                                c.nets.join(" -> ")
                            );
                        }
                        s
                    };
                    write_output(None, &text, out)
                }
                DelayMode::Functional => {
                    let bcd_circuit =
                        netlist
                            .name()
                            .parse::<Circuit>()
                            .ok()
                            .and_then(|c| match c {
                                Circuit::Bcd(style) => Some(style),
                                _ => None,
                            });
                    let space = space_for(&netlist, Oracle::for_netlist(&netlist));
                    let result = match (exhaustive, bcd_circuit) {
                        (true, Some(style)) if matches!(space, InputSpace::BcdValid { .. }) => {
                            let digits = netlist.metadata().digits.unwrap_or(1);
                            let alphabet: Vec<u8> = (0..10).collect();
                            delay_functional_bcd(
                                BcdChainSpec::new(digits, style),
                                &config.delay,
                                &alphabet,
                                parallel,
                            )?
                        }
                        _ => {
                            let mut stim = PairStimulus::auto(
                                space,
                                config.sweep.seed,
                                samples.unwrap_or(config.sweep.delay_samples),
                            );
                            stim.exhaustive_inputs = config.sweep.exhaustive_inputs;
                            if exhaustive {
                                stim.mode = PairMode::Exhaustive;
                            } else if samples.is_some() {
                                stim.mode = PairMode::Sampled;
                            }
                            delay_functional(&netlist, &config.delay, &stim, parallel)?
                        }
                    };
                    let text = if common.json {
                        to_json(&result)
                    } else {
                        format!(
                            "{}: functional worst {} ({} pairs, {:?})\n",
                            result.circuit, result.worst, result.pairs, result.method
                        )
                    };
                    write_output(None, &text, out)
                }
            }
        }
        Command::Power {
            target,
            vectors,
            random,
            grid,
            common,
        } => {
            let config = load_config(&common)?;
            let netlist = load_target(&target.target, target.digits)?;
            let space = space_for(&netlist, Oracle::for_netlist(&netlist));
            let stimulus = match (vectors, random.or(config.sweep.activity_length)) {
                (Some(path), _) => read_file(&path)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(|l| parse_assignment(&netlist, l))
                    .collect::<Result<Vec<_>, _>>()?,
                (None, Some(n)) => random_stimulus(space, n, config.sweep.seed),
                (None, None) => {
                    return Err(CliError::Config(
                        "power needs switching activity: pass --vectors FILE or --random N, or set sweep.activity_length"
                            .into(),
                    ))
                }
            };
            let activity = estimate_activity(&netlist, &stimulus)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let model = config.cost_model();
            let points: Vec<(f64, f64)> = if grid {
                config
                    .sweep
                    .loads
                    .iter()
                    .flat_map(|&l| config.sweep.frequencies.iter().map(move |&f| (l, f)))
                    .collect()
            } else {
                vec![(config.power.output_load, config.power.f_clk)]
            };
            let mut rows = Vec::new();
            for (load, f_clk) in points {
                let params = PowerParams {
                    output_load: load,
                    f_clk,
                    ..config.power.clone()
                };
                rows.push((
                    load,
                    f_clk,
                    estimate_power(&netlist, &activity, &params, &model)?,
                ));
            }
            let text = if common.json {
                let entries: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(l, f, p)| serde_json::json!({"output_load": l, "f_clk": f, "estimate": p}))
                    .collect();
                to_json(
                    &serde_json::json!({"circuit": netlist.name(), "vectors": activity.length, "points": entries}),
                )
            } else {
                let mut s = format!("{}: {} vectors\n", netlist.name(), activity.length);
                for (l, f, p) in &rows {
                    let _ = writeln!(
                        s,
                        "  load {:>6} pF  f {:>7} MHz  total {:.4e} W (dynamic {:.4e}, short-circuit {:.4e}, leakage {:.4e})",
                        l * 1e12,
                        f / 1e6,
                        p.total,
                        p.dynamic,
                        p.short_circuit,
                        p.leakage
                    );
                }
                s
            };
            write_output(None, &text, out)
        }
        Command::Export {
            target,
            format,
            output,
        } => {
            let netlist = load_target(&target.target, target.digits)?;
            let text = match format {
                ExportFormat::Json => netlist_to_json(&netlist),
                ExportFormat::Dot => netlist_to_dot(&netlist),
            };
            write_output(output.as_deref(), &text, out)
        }
        Command::Report {
            scope,
            output,
            digits,
            common,
        } => {
            let config = load_config(&common)?;
            let text = match scope {
                ReportScope::Tables => report::tables_report(&config)?,
                ReportScope::Compare => report::compare_report(&config, &digits, !common.serial)?,
            };
            write_output(output.as_deref(), &text, out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_bcd_digit, gen_mcla4, gen_ncla4, AdderStyle};

    #[test]
    fn groups_buses_and_singletons() {
        let nl = gen_ncla4();
        let g = port_groups(&nl.input_names());
        let labels: Vec<&str> = g.iter().map(|g| g.label.as_str()).collect();
        assert_eq!(labels, ["A", "B", "C0"]);
        let outs = port_groups(&gen_mcla4().output_names());
        let labels: Vec<&str> = outs.iter().map(|g| g.label.as_str()).collect();
        assert_eq!(labels, ["S", "C4", "PG"]);
        let bcd = port_groups(&gen_bcd_digit(AdderStyle::Ncla).unwrap().input_names());
        assert_eq!(bcd.last().unwrap().label, "Cin");
    }

    #[test]
    fn assignment_is_msb_first() {
        let nl = gen_ncla4();
        let v = parse_assignment(&nl, "A=0101,B=0111,C0=0").unwrap();
        let out = nl.evaluate(&v).unwrap();
        assert_eq!(
            render_outputs(&nl, &out),
            [
                ("S".to_owned(), "1100".to_owned()),
                ("C4".to_owned(), "0".to_owned())
            ]
        );
        assert!(parse_assignment(&nl, "A=0101,B=0111").is_err());
        assert!(parse_assignment(&nl, "A=01,B=0111,C0=0").is_err());
        assert!(parse_assignment(&nl, "A=0101,B=0111,C0=2").is_err());
        assert!(parse_assignment(&nl, "Q=1").is_err());
        assert_eq!(parse_assignment(&nl, "A=01_01,B=0111,C0=0").unwrap(), v);
    }

    #[test]
    fn exit_codes() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(
            run_with(["bcdkit", "generate", "bogus"], &mut out, &mut err),
            2
        );
        assert_eq!(
            run_with(["bcdkit", "check", "ncla4"], &mut out, &mut err),
            0
        );
        assert_eq!(
            run_with(["bcdkit", "power", "ncla4"], &mut out, &mut err),
            4
        );
        assert_eq!(
            run_with(["bcdkit", "cost", "missing/file.json"], &mut out, &mut err),
            3
        );
        assert_eq!(run_with(["bcdkit", "frobnicate"], &mut out, &mut err), 2);
    }
}
