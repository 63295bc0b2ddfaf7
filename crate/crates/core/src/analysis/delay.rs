//! Static (longest-path) and functional (event-driven) delay analysis.
//!
//! Functional delay applies an input transition `u -> v` at `t = 0` to a
//! netlist settled on `u` and runs a transport-delay event simulation; the
//! settle time is the time of the last change on any primary output.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::generators::{gen_bcd_digit, BcdChainSpec};
use crate::netlist::{GateId, GateKind, NetId, NetRole, Netlist};
use crate::verify::InputSpace;

/// Default bound on total inputs for exhaustive pair enumeration.
pub const DEFAULT_EXHAUSTIVE_INPUTS: usize = 10;
/// Hard cap on enumerated pairs.
pub const MAX_EXHAUSTIVE_PAIRS: u64 = 1 << 32;

const BLOCK: u64 = 4096;

/// Integer gate delays. Primitive gates default to one unit, full-adder
/// macros to two units on both outputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DelayModel {
    pub gate: u32,
    pub per_kind: BTreeMap<GateKind, u32>,
    pub fa_sum: u32,
    pub fa_carry: u32,
}

impl Default for DelayModel {
    fn default() -> Self {
        DelayModel {
            gate: 1,
            per_kind: BTreeMap::new(),
            fa_sum: 2,
            fa_carry: 2,
        }
    }
}

impl DelayModel {
    pub fn pin_delay(&self, kind: GateKind, pin: usize) -> u32 {
        if kind.is_full_adder() {
            if pin == 0 {
                self.fa_sum
            } else {
                self.fa_carry
            }
        } else {
            self.per_kind.get(&kind).copied().unwrap_or(self.gate)
        }
    }

    pub fn check(&self) -> Result<(), AnalysisError> {
        let zero = [self.gate, self.fa_sum, self.fa_carry].contains(&0)
            || self.per_kind.values().any(|&d| d == 0);
        if zero {
            return Err(AnalysisError::InvalidModel(
                "gate delays must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutputDepth {
    pub name: String,
    pub depth: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPath {
    pub output: String,
    pub depth: u64,
    pub gates: Vec<GateId>,
    /// Nets along the path, from the launching input to the output.
    pub nets: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelayReport {
    pub circuit: String,
    pub outputs: Vec<OutputDepth>,
    pub critical: Option<CriticalPath>,
}

impl DelayReport {
    pub fn depth_of(&self, output: &str) -> Option<u64> {
        self.outputs
            .iter()
            .find(|o| o.name == output)
            .map(|o| o.depth)
    }

    pub fn max_depth(&self) -> u64 {
        self.outputs.iter().map(|o| o.depth).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
struct Arrival {
    time: u64,
    origin: NetId,
    path: Vec<(GateId, NetId)>,
}

impl Arrival {
    fn path_order(&self, other: &Arrival) -> Ordering {
        let a = self.path.iter().map(|(g, _)| *g);
        let b = other.path.iter().map(|(g, _)| *g);
        a.cmp(b).then(self.origin.cmp(&other.origin))
    }
}

/// Longest weighted input-to-output path for every primary output. Ties
/// between equally long paths go to the lexicographically smallest gate-id
/// sequence.
pub fn delay_topological(
    netlist: &Netlist,
    model: &DelayModel,
) -> Result<DelayReport, AnalysisError> {
    netlist.ensure_valid()?;
    let mut arrival: Vec<Option<Arrival>> = netlist
        .nets()
        .iter()
        .map(|n| {
            n.role.is_source().then(|| Arrival {
                time: 0,
                origin: n.id,
                path: Vec::new(),
            })
        })
        .collect();
    for &gid in netlist.order() {
        let gate = netlist.gate(gid);
        let mut best: Option<&Arrival> = None;
        for net in &gate.inputs {
            let cand = arrival[net.index()]
                .as_ref()
                .expect("inputs arrive before their readers");
            best = match best {
                None => Some(cand),
                Some(b)
                    if cand.time > b.time
                        || (cand.time == b.time && cand.path_order(b) == Ordering::Less) =>
                {
                    Some(cand)
                }
                keep => keep,
            };
        }
        let best = best.expect("every gate has inputs").clone();
        for (pin, &out) in gate.outputs.iter().enumerate() {
            let mut path = best.path.clone();
            path.push((gid, out));
            arrival[out.index()] = Some(Arrival {
                time: best.time + u64::from(model.pin_delay(gate.kind, pin)),
                origin: best.origin,
                path,
            });
        }
    }

    let outputs: Vec<OutputDepth> = netlist
        .outputs()
        .iter()
        .map(|&n| OutputDepth {
            name: netlist.net(n).name.clone(),
            depth: arrival[n.index()].as_ref().map_or(0, |a| a.time),
        })
        .collect();
    let critical = netlist
        .outputs()
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| {
            let (ta, tb) = (outputs[*i].depth, outputs[*j].depth);
            ta.cmp(&tb).then(j.cmp(i)).then(a.cmp(b))
        })
        .map(|(_, &n)| {
            let arr = arrival[n.index()].as_ref().expect("output has an arrival");
            let mut nets = vec![netlist.net(arr.origin).name.clone()];
            nets.extend(
                arr.path
                    .iter()
                    .map(|(_, net)| netlist.net(*net).name.clone()),
            );
            CriticalPath {
                output: netlist.net(n).name.clone(),
                depth: arr.time,
                gates: arr.path.iter().map(|(g, _)| *g).collect(),
                nets,
            }
        });
    Ok(DelayReport {
        circuit: netlist.name().to_owned(),
        outputs,
        critical,
    })
}

/// Piecewise-constant logic waveform. `changes` holds strictly increasing
/// times, each flipping the value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Waveform {
    pub initial: bool,
    pub changes: Vec<u64>,
}

impl Waveform {
    pub fn constant(value: bool) -> Self {
        Waveform {
            initial: value,
            changes: Vec::new(),
        }
    }

    /// `from` before `t = 0`, `to` from `t = 0` on.
    pub fn step(from: bool, to: bool) -> Self {
        Waveform {
            initial: from,
            changes: if from == to { Vec::new() } else { vec![0] },
        }
    }

    pub fn final_value(&self) -> bool {
        self.initial ^ (self.changes.len() % 2 == 1)
    }

    pub fn last_change(&self) -> Option<u64> {
        self.changes.last().copied()
    }
}

/// Outcome of one event-driven run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimOutcome {
    /// Time of the last primary-output change, 0 when no output moved.
    pub settle_time: u64,
    pub probes: Vec<Waveform>,
}

/// Reusable transport-delay event simulator over one netlist.
#[derive(Clone, Debug)]
pub struct EventSim<'a> {
    netlist: &'a Netlist,
    delays: Vec<[u32; 2]>,
    values: Vec<bool>,
    is_output: Vec<bool>,
    wheel: Vec<Vec<(NetId, bool)>>,
    stamp: Vec<u64>,
    epoch: u64,
    changed: Vec<NetId>,
    touched: Vec<GateId>,
    pins: Vec<bool>,
}

impl<'a> EventSim<'a> {
    pub fn new(netlist: &'a Netlist, model: &DelayModel) -> Result<Self, AnalysisError> {
        netlist.ensure_valid()?;
        model.check()?;
        let delays = netlist
            .gates()
            .iter()
            .map(|g| [model.pin_delay(g.kind, 0), model.pin_delay(g.kind, 1)])
            .collect();
        let mut is_output = vec![false; netlist.nets().len()];
        for &o in netlist.outputs() {
            is_output[o.index()] = true;
        }
        Ok(EventSim {
            netlist,
            delays,
            values: vec![false; netlist.nets().len()],
            is_output,
            wheel: Vec::new(),
            stamp: vec![0; netlist.gates().len()],
            epoch: 0,
            changed: Vec::new(),
            touched: Vec::new(),
            pins: Vec::with_capacity(4),
        })
    }

    fn settle_static(&mut self) {
        let nl = self.netlist;
        let mut out = [false; 2];
        for &gid in nl.order() {
            let gate = nl.gate(gid);
            self.pins.clear();
            self.pins
                .extend(gate.inputs.iter().map(|n| self.values[n.index()]));
            gate.kind.eval(&self.pins, &mut out[..gate.outputs.len()]);
            for (k, &net) in gate.outputs.iter().enumerate() {
                self.values[net.index()] = out[k];
            }
        }
    }

    fn schedule(&mut self, time: u64, net: NetId, value: bool) {
        let t = time as usize;
        if self.wheel.len() <= t {
            self.wheel.resize_with(t + 1, Vec::new);
        }
        self.wheel[t].push((net, value));
    }

    /// Runs one stimulus (one waveform per primary input, in input order),
    /// recording the waveform of every net in `probes`.
    pub fn run(
        &mut self,
        stimulus: &[Waveform],
        probes: &[NetId],
    ) -> Result<SimOutcome, AnalysisError> {
        let nl = self.netlist;
        if stimulus.len() != nl.inputs().len() {
            return Err(AnalysisError::Stimulus(format!(
                "{} waveforms for {} inputs",
                stimulus.len(),
                nl.inputs().len()
            )));
        }
        for net in nl.nets() {
            self.values[net.id.index()] = net.role == NetRole::Constant1;
        }
        for (&net, wave) in nl.inputs().iter().zip(stimulus) {
            self.values[net.index()] = wave.initial;
        }
        self.settle_static();

        let mut probe_waves: Vec<Waveform> = probes
            .iter()
            .map(|n| Waveform::constant(self.values[n.index()]))
            .collect();
        for bucket in &mut self.wheel {
            bucket.clear();
        }
        for (&net, wave) in nl.inputs().iter().zip(stimulus) {
            let mut v = wave.initial;
            for &t in &wave.changes {
                v = !v;
                self.schedule(t, net, v);
            }
        }

        let mut settle_time = 0;
        let mut t = 0usize;
        let mut bucket = Vec::new();
        while t < self.wheel.len() {
            if self.wheel[t].is_empty() {
                t += 1;
                continue;
            }
            std::mem::swap(&mut bucket, &mut self.wheel[t]);
            self.changed.clear();
            for &(net, value) in &bucket {
                if self.values[net.index()] != value {
                    self.values[net.index()] = value;
                    self.changed.push(net);
                }
            }
            bucket.clear();
            self.epoch += 1;
            self.touched.clear();
            for i in 0..self.changed.len() {
                let net = self.changed[i];
                if self.is_output[net.index()] {
                    settle_time = t as u64;
                }
                if let Some(p) = probes.iter().position(|&p| p == net) {
                    let w = &mut probe_waves[p];
                    if w.final_value() != self.values[net.index()] {
                        w.changes.push(t as u64);
                    }
                }
                for &g in nl.fanout(net) {
                    if self.stamp[g.index()] != self.epoch {
                        self.stamp[g.index()] = self.epoch;
                        self.touched.push(g);
                    }
                }
            }
            let mut out = [false; 2];
            for i in 0..self.touched.len() {
                let gid = self.touched[i];
                let gate = nl.gate(gid);
                self.pins.clear();
                self.pins
                    .extend(gate.inputs.iter().map(|n| self.values[n.index()]));
                gate.kind.eval(&self.pins, &mut out[..gate.outputs.len()]);
                for (k, &net) in gate.outputs.iter().enumerate() {
                    let at = t as u64 + u64::from(self.delays[gid.index()][k]);
                    self.schedule(at, net, out[k]);
                }
            }
            t += 1;
        }
        Ok(SimOutcome {
            settle_time,
            probes: probe_waves,
        })
    }

    /// Settle time of the transition `u -> v` applied at `t = 0`.
    pub fn transition(&mut self, u: &[bool], v: &[bool]) -> Result<u64, AnalysisError> {
        let stim: Vec<Waveform> = u
            .iter()
            .zip(v)
            .map(|(&a, &b)| Waveform::step(a, b))
            .collect();
        Ok(self.run(&stim, &[])?.settle_time)
    }
}

/// How input pairs are drawn for functional delay.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMode {
    /// Exhaustive when the space has at most `exhaustive_inputs` inputs,
    /// sampled otherwise.
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairStimulus {
    pub space: InputSpace,
    pub mode: PairMode,
    pub exhaustive_inputs: usize,
    pub seed: u64,
    pub samples: u64,
}

impl PairStimulus {
    pub fn auto(space: InputSpace, seed: u64, samples: u64) -> Self {
        PairStimulus {
            space,
            mode: PairMode::Auto,
            exhaustive_inputs: DEFAULT_EXHAUSTIVE_INPUTS,
            seed,
            samples,
        }
    }

    pub fn exhaustive(space: InputSpace) -> Self {
        PairStimulus {
            space,
            mode: PairMode::Exhaustive,
            exhaustive_inputs: DEFAULT_EXHAUSTIVE_INPUTS,
            seed: 0,
            samples: 0,
        }
    }

    pub fn sampled(space: InputSpace, seed: u64, samples: u64) -> Self {
        PairStimulus {
            space,
            mode: PairMode::Sampled,
            exhaustive_inputs: DEFAULT_EXHAUSTIVE_INPUTS,
            seed,
            samples,
        }
    }

    fn is_exhaustive(&self) -> bool {
        match self.mode {
            PairMode::Exhaustive => true,
            PairMode::Sampled => false,
            PairMode::Auto => self.space.width() <= self.exhaustive_inputs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FunctionalMethod {
    ExhaustivePairs,
    SampledPairs {
        seed: u64,
    },
    /// Exact digit-by-digit enumeration of a BCD chain; lists how many
    /// distinct decimal-carry waveforms entered each digit.
    DigitSerial {
        carry_waveforms: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionalDelay {
    pub circuit: String,
    pub worst: u64,
    /// Pair `(u, v)` in primary-input order achieving `worst`.
    pub witness: Option<(Vec<bool>, Vec<bool>)>,
    pub pairs: u64,
    pub method: FunctionalMethod,
}

#[derive(Clone, Debug, Default)]
struct Best {
    time: u64,
    witness: Option<(Vec<bool>, Vec<bool>)>,
    pairs: u64,
}

impl Best {
    fn offer(&mut self, time: u64, u: &[bool], v: &[bool]) {
        self.pairs += 1;
        if self.witness.is_none() || time > self.time {
            self.time = time;
            self.witness = Some((u.to_vec(), v.to_vec()));
        }
    }

    /// Associative merge; ties keep the earlier block.
    fn merge(mut self, later: Best) -> Best {
        if later.witness.is_some() && (self.witness.is_none() || later.time > self.time) {
            self.time = later.time;
            self.witness = later.witness;
        }
        self.pairs += later.pairs;
        self
    }
}

/// Worst-case settle time over a set of input transitions.
pub fn delay_functional(
    netlist: &Netlist,
    model: &DelayModel,
    stimulus: &PairStimulus,
    parallel: bool,
) -> Result<FunctionalDelay, AnalysisError> {
    EventSim::new(netlist, model)?;
    let space = stimulus.space;
    if space.width() != netlist.inputs().len() {
        return Err(AnalysisError::Stimulus(format!(
            "space has {} inputs, netlist has {}",
            space.width(),
            netlist.inputs().len()
        )));
    }
    let exhaustive = stimulus.is_exhaustive();
    let total = if exhaustive {
        space
            .size()
            .checked_mul(space.size())
            .filter(|&n| n <= MAX_EXHAUSTIVE_PAIRS)
            .ok_or_else(|| {
                AnalysisError::Stimulus(format!(
                    "{} inputs are too many for exhaustive pairs",
                    space.width()
                ))
            })?
    } else {
        stimulus.samples
    };
    let blocks = total.div_ceil(BLOCK);
    let run_block = |block: u64| -> Result<Best, AnalysisError> {
        let mut sim = EventSim::new(netlist, model)?;
        let mut best = Best::default();
        let (mut u, mut v) = (Vec::new(), Vec::new());
        let start = block * BLOCK;
        let end = (start + BLOCK).min(total);
        if exhaustive {
            let size = space.size();
            for p in start..end {
                space.vector(p / size, &mut u);
                space.vector(p % size, &mut v);
                best.offer(sim.transition(&u, &v)?, &u, &v);
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(stimulus.seed);
            rng.set_stream(block);
            for _ in start..end {
                space.sample(&mut rng, &mut u);
                space.sample(&mut rng, &mut v);
                best.offer(sim.transition(&u, &v)?, &u, &v);
            }
        }
        Ok(best)
    };
    let results: Result<Vec<Best>, AnalysisError> = if parallel {
        (0..blocks).into_par_iter().map(run_block).collect()
    } else {
        (0..blocks).map(run_block).collect()
    };
    let best = results?.into_iter().fold(Best::default(), Best::merge);
    Ok(FunctionalDelay {
        circuit: netlist.name().to_owned(),
        worst: best.time,
        witness: best.witness,
        pairs: best.pairs,
        method: if exhaustive {
            FunctionalMethod::ExhaustivePairs
        } else {
            FunctionalMethod::SampledPairs {
                seed: stimulus.seed,
            }
        },
    })
}

/// Operand digits of one digit position across a transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct DigitPair {
    from: (u8, u8),
    to: (u8, u8),
}

/// How a decimal-carry waveform was first reached: carry-in transition plus
/// the operand transitions of every lower digit.
#[derive(Clone, Debug, PartialEq, Eq)]
struct CarryOrigin {
    cin: (bool, bool),
    digits: Vec<DigitPair>,
}

#[derive(Clone, Debug, Default)]
struct StageBlock {
    best: Option<(u64, u64)>,
    outgoing: BTreeMap<Waveform, u64>,
    pairs: u64,
}

/// Exact worst-case settle time of a BCD chain over every transition
/// between chain inputs whose operand digits come from `alphabet`.
///
/// Each digit's outputs depend only on its own operands and the waveform of
/// its incoming decimal carry, so the chain is enumerated one digit at a
/// time over the set of distinct carry waveforms that can reach it.
pub fn delay_functional_bcd(
    spec: BcdChainSpec,
    model: &DelayModel,
    alphabet: &[u8],
    parallel: bool,
) -> Result<FunctionalDelay, AnalysisError> {
    if alphabet.is_empty() || alphabet.iter().any(|&d| d > 9) {
        return Err(AnalysisError::Stimulus(
            "digit alphabet must be non-empty and within 0..=9".into(),
        ));
    }
    let digit = gen_bcd_digit(spec.style)?;
    EventSim::new(&digit, model)?;
    let cout = *digit.outputs().last().expect("digit has a carry output");
    let sums: Vec<NetId> = digit.outputs()[..4].to_vec();

    let operands: Vec<(u8, u8)> = alphabet
        .iter()
        .flat_map(|&a| alphabet.iter().map(move |&b| (a, b)))
        .collect();
    let op_pairs = (operands.len() * operands.len()) as u64;

    let mut incoming: Vec<(Waveform, CarryOrigin)> =
        [(false, false), (false, true), (true, false), (true, true)]
            .into_iter()
            .map(|(a, b)| {
                (
                    Waveform::step(a, b),
                    CarryOrigin {
                        cin: (a, b),
                        digits: Vec::new(),
                    },
                )
            })
            .collect();
    let mut carry_counts = Vec::with_capacity(spec.digits as usize);
    let mut overall: Option<(u64, CarryOrigin, DigitPair, usize)> = None;
    let mut total_pairs = 0u64;

    for stage in 0..spec.digits as usize {
        let last = stage + 1 == spec.digits as usize;
        carry_counts.push(incoming.len());
        let tasks = incoming.len() as u64 * op_pairs;
        let blocks = tasks.div_ceil(BLOCK);
        let incoming_ref = &incoming;
        let operands_ref = &operands;
        let digit_ref = &digit;
        let sums_ref = &sums;
        let decode = move |task: u64| -> (usize, DigitPair) {
            let w = (task / op_pairs) as usize;
            let r = task % op_pairs;
            let n = operands_ref.len() as u64;
            let pair = DigitPair {
                from: operands_ref[(r / n) as usize],
                to: operands_ref[(r % n) as usize],
            };
            (w, pair)
        };
        let run_block = |block: u64| -> Result<StageBlock, AnalysisError> {
            let mut sim = EventSim::new(digit_ref, model)?;
            let mut out = StageBlock::default();
            let mut stim = vec![Waveform::constant(false); 9];
            let probes = [sums_ref[0], sums_ref[1], sums_ref[2], sums_ref[3], cout];
            let start = block * BLOCK;
            for task in start..(start + BLOCK).min(tasks) {
                let (w, pair) = decode(task);
                for bit in 0..4 {
                    stim[bit] =
                        Waveform::step(pair.from.0 >> bit & 1 == 1, pair.to.0 >> bit & 1 == 1);
                    stim[4 + bit] =
                        Waveform::step(pair.from.1 >> bit & 1 == 1, pair.to.1 >> bit & 1 == 1);
                }
                stim[8] = incoming_ref[w].0.clone();
                let outcome = sim.run(&stim, &probes)?;
                // intermediate decimal carries are internal nets of the chain
                let observed = if last { probes.len() } else { probes.len() - 1 };
                let time = outcome.probes[..observed]
                    .iter()
                    .filter_map(Waveform::last_change)
                    .max()
                    .unwrap_or(0);
                out.pairs += 1;
                if out.best.is_none_or(|(bt, _)| time > bt) {
                    out.best = Some((time, task));
                }
                if !last {
                    let wave = outcome.probes[4].clone();
                    out.outgoing.entry(wave).or_insert(task);
                }
            }
            Ok(out)
        };
        let results: Result<Vec<StageBlock>, AnalysisError> = if parallel {
            (0..blocks).into_par_iter().map(run_block).collect()
        } else {
            (0..blocks).map(run_block).collect()
        };
        let mut best: Option<(u64, u64)> = None;
        let mut outgoing: BTreeMap<Waveform, u64> = BTreeMap::new();
        for block in results? {
            total_pairs += block.pairs;
            if let Some((t, task)) = block.best {
                if best.is_none_or(|(bt, _)| t > bt) {
                    best = Some((t, task));
                }
            }
            for (wave, task) in block.outgoing {
                let slot = outgoing.entry(wave).or_insert(task);
                *slot = (*slot).min(task);
            }
        }
        if let Some((t, task)) = best {
            if overall.as_ref().is_none_or(|(bt, ..)| t > *bt) {
                let (w, pair) = decode(task);
                overall = Some((t, incoming[w].1.clone(), pair, stage));
            }
        }
        let mut next: Vec<(u64, Waveform, CarryOrigin)> = outgoing
            .into_iter()
            .map(|(wave, task)| {
                let (w, pair) = decode(task);
                let mut origin = incoming[w].1.clone();
                origin.digits.push(pair);
                (task, wave, origin)
            })
            .collect();
        next.sort_by(|a, b| a.1.cmp(&b.1));
        incoming = next
            .into_iter()
            .map(|(_, wave, origin)| (wave, origin))
            .collect();
    }

    let witness = overall.map(|(time, origin, pair, stage)| {
        let n = spec.digits as usize;
        let mut from_digits = vec![(0u8, 0u8); n];
        let mut to_digits = vec![(0u8, 0u8); n];
        for (d, p) in origin.digits.iter().enumerate() {
            from_digits[d] = p.from;
            to_digits[d] = p.to;
        }
        from_digits[stage] = pair.from;
        to_digits[stage] = pair.to;
        let layout = |digits: &[(u8, u8)], cin: bool| -> Vec<bool> {
            let mut bits = Vec::with_capacity(8 * n + 1);
            for &(a, _) in digits {
                bits.extend((0..4).map(|i| a >> i & 1 == 1));
            }
            for &(_, b) in digits {
                bits.extend((0..4).map(|i| b >> i & 1 == 1));
            }
            bits.push(cin);
            bits
        };
        (
            time,
            (
                layout(&from_digits, origin.cin.0),
                layout(&to_digits, origin.cin.1),
            ),
        )
    });
    Ok(FunctionalDelay {
        circuit: format!(
            "{}x{}",
            spec.digits,
            crate::generators::Circuit::Bcd(spec.style).name()
        ),
        worst: witness.as_ref().map_or(0, |(t, _)| *t),
        witness: witness.map(|(_, w)| w),
        pairs: total_pairs,
        method: FunctionalMethod::DigitSerial {
            carry_waveforms: carry_counts,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_bcd_chain, gen_ncla4, gen_ripple4, AdderStyle};
    use crate::netlist::NetlistBuilder;

    fn not_gate() -> Netlist {
        let mut b = NetlistBuilder::new("not");
        let a = b.input("a").unwrap();
        let y = b.output("y").unwrap();
        b.add_gate(GateKind::Not, &[a], &[y]).unwrap();
        b.finish()
    }

    #[test]
    fn not_gate_depth_and_settle() {
        let nl = not_gate();
        let m = DelayModel::default();
        assert_eq!(delay_topological(&nl, &m).unwrap().max_depth(), 1);
        let mut sim = EventSim::new(&nl, &m).unwrap();
        assert_eq!(sim.transition(&[false], &[true]).unwrap(), 1);
        assert_eq!(sim.transition(&[true], &[true]).unwrap(), 0);
    }

    #[test]
    fn carry_depths() {
        let m = DelayModel::default();
        assert_eq!(
            delay_topological(&gen_ripple4(), &m)
                .unwrap()
                .depth_of("C4"),
            Some(8)
        );
        let ncla = delay_topological(&gen_ncla4(), &m).unwrap();
        assert_eq!(ncla.depth_of("C4"), Some(5));
        let crit = ncla.critical.as_ref().unwrap();
        assert_eq!(crit.depth, ncla.max_depth());
        assert_eq!(crit.gates.len() + 1, crit.nets.len());
    }

    #[test]
    fn ripple_functional_exhaustive() {
        let nl = gen_ripple4();
        let m = DelayModel::default();
        let stim = PairStimulus::exhaustive(InputSpace::AllBinary { width: 9 });
        let serial = delay_functional(&nl, &m, &stim, false).unwrap();
        assert_eq!(serial.worst, 8);
        assert_eq!(serial.pairs, 512 * 512);
        let (u, v) = serial.witness.clone().unwrap();
        assert_eq!(
            EventSim::new(&nl, &m).unwrap().transition(&u, &v).unwrap(),
            8
        );
        assert_eq!(delay_functional(&nl, &m, &stim, true).unwrap(), serial);
    }

    #[test]
    fn sampled_is_deterministic() {
        let nl = gen_ncla4();
        let m = DelayModel::default();
        let stim = PairStimulus::sampled(InputSpace::AllBinary { width: 9 }, 42, 10_000);
        let a = delay_functional(&nl, &m, &stim, false).unwrap();
        let b = delay_functional(&nl, &m, &stim, true).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.pairs, 10_000);
        assert!(a.worst <= delay_topological(&nl, &m).unwrap().max_depth());
    }

    #[test]
    fn zero_delay_rejected() {
        let m = DelayModel {
            gate: 0,
            ..Default::default()
        };
        assert!(m.check().is_err());
        assert!(EventSim::new(&gen_ripple4(), &m).is_err());
    }

    #[test]
    fn waveform_helpers() {
        let w = Waveform {
            initial: true,
            changes: vec![1, 4],
        };
        assert!(w.final_value());
        assert_eq!(w.last_change(), Some(4));
        assert_eq!(Waveform::step(true, true), Waveform::constant(true));
    }

    #[test]
    fn digit_serial_matches_brute_force() {
        let m = DelayModel::default();
        let alphabet = [0u8, 5, 9];
        for style in [AdderStyle::Ripple, AdderStyle::CarrySkip, AdderStyle::Ncla] {
            let spec = BcdChainSpec { digits: 2, style };
            let fast = delay_functional_bcd(spec, &m, &alphabet, false).unwrap();
            let chain = gen_bcd_chain(spec).unwrap();
            let mut sim = EventSim::new(&chain, &m).unwrap();
            let vectors: Vec<Vec<bool>> = (0..alphabet.len().pow(4) * 2)
                .map(|mut i| {
                    let cin = i % 2 == 1;
                    i /= 2;
                    let mut bits = Vec::new();
                    for _ in 0..4 {
                        let d = alphabet[i % alphabet.len()];
                        i /= alphabet.len();
                        bits.extend((0..4).map(|b| d >> b & 1 == 1));
                    }
                    bits.push(cin);
                    bits
                })
                .collect();
            let mut worst = 0;
            for u in &vectors {
                for v in &vectors {
                    worst = worst.max(sim.transition(u, v).unwrap());
                }
            }
            assert_eq!(fast.worst, worst, "{style}");
            let (u, v) = fast.witness.unwrap();
            assert_eq!(sim.transition(&u, &v).unwrap(), worst, "{style}");
        }
    }
}
