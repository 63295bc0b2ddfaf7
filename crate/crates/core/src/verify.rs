//! Arithmetic oracles, exhaustive/sampled sweeps, and simulation-based
//! equivalence checking.
//!
//! Sweeps split the vector space into fixed-size blocks. Each block is
//! checked independently and the per-block results are merged in block
//! order, so a report never depends on how many workers ran.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::generators::Circuit;
use crate::netlist::{Evaluator, Netlist, NetlistError};

/// Counterexample lists are truncated to this many entries.
pub const MAX_COUNTEREXAMPLES: usize = 16;
/// Largest space `exhaustive_check` will enumerate.
pub const MAX_EXHAUSTIVE_VECTORS: u64 = 1 << 24;
/// `equiv_check` enumerates every vector up to this many inputs.
pub const EQUIV_EXHAUSTIVE_INPUTS: usize = 20;
pub const DEFAULT_SEED: u64 = 0x0062_6364_5f6b_6974;
pub const DEFAULT_SAMPLES: u64 = 100_000;

const BLOCK: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("operand {0} does not fit in the adder width")]
    OutOfRange(u64),
    #[error("{0} is not a decimal digit")]
    InvalidDigit(u8),
    #[error("operands have different digit counts ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("space of {0} vectors is too large to enumerate; use sampling")]
    SpaceTooLarge(u64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Netlist(#[from] NetlistError),
}

/// `(a + b + cin) mod 2^width` and the carry out of the top bit.
pub fn oracle_binary_add(
    a: u64,
    b: u64,
    cin: bool,
    width: u32,
) -> Result<(u64, bool), VerifyError> {
    assert!((1..=63).contains(&width), "width must be 1..=63");
    let limit = 1u64 << width;
    for v in [a, b] {
        if v >= limit {
            return Err(VerifyError::OutOfRange(v));
        }
    }
    let total = a + b + u64::from(cin);
    Ok((total % limit, total >= limit))
}

/// Digit-serial decimal addition. Digit lists are little-endian.
pub fn oracle_bcd_add(a: &[u8], b: &[u8], cin: bool) -> Result<(Vec<u8>, bool), VerifyError> {
    if a.len() != b.len() {
        return Err(VerifyError::LengthMismatch(a.len(), b.len()));
    }
    if let Some(&bad) = a.iter().chain(b).find(|&&d| d > 9) {
        return Err(VerifyError::InvalidDigit(bad));
    }
    let mut carry = u8::from(cin);
    let digits = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| {
            let t = x + y + carry;
            carry = u8::from(t > 9);
            t % 10
        })
        .collect();
    Ok((digits, carry == 1))
}

fn bits_to_u64(bits: &[bool]) -> u64 {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (u64::from(b) << i))
}

fn push_bits(out: &mut Vec<bool>, value: u64, width: usize) {
    out.extend((0..width).map(|i| value >> i & 1 == 1));
}

/// Reference behaviour of a generated circuit, in the generators' port order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Oracle {
    /// Inputs `A[w], B[w], cin`; outputs `S[w], cout`.
    BinaryAdd { width: usize },
    /// Inputs `A[4n], B[4n], Cin`; outputs `S[4n], Cout`.
    BcdAdd { digits: usize },
    /// Inputs `A, B, Cin`; outputs `S, G, P`.
    Pga,
}

impl Oracle {
    pub fn for_circuit(circuit: Circuit, digits: u32) -> Oracle {
        match circuit {
            Circuit::Pga => Oracle::Pga,
            Circuit::Bcd(_) => Oracle::BcdAdd {
                digits: digits as usize,
            },
            _ => Oracle::BinaryAdd { width: 4 },
        }
    }

    /// Oracle matching a netlist's recorded circuit name, if any.
    pub fn for_netlist(netlist: &Netlist) -> Option<Oracle> {
        let circuit: Circuit = netlist.name().parse().ok()?;
        Some(Oracle::for_circuit(
            circuit,
            netlist.metadata().digits.unwrap_or(1),
        ))
    }

    pub fn input_width(&self) -> usize {
        match *self {
            Oracle::BinaryAdd { width } => 2 * width + 1,
            Oracle::BcdAdd { digits } => 8 * digits + 1,
            Oracle::Pga => 3,
        }
    }

    pub fn output_width(&self) -> usize {
        match *self {
            Oracle::BinaryAdd { width } => width + 1,
            Oracle::BcdAdd { digits } => 4 * digits + 1,
            Oracle::Pga => 3,
        }
    }

    pub fn expected(&self, inputs: &[bool], out: &mut Vec<bool>) {
        out.clear();
        match *self {
            Oracle::BinaryAdd { width } => {
                let a = bits_to_u64(&inputs[..width]);
                let b = bits_to_u64(&inputs[width..2 * width]);
                let (s, c) = oracle_binary_add(a, b, inputs[2 * width], width as u32)
                    .expect("operands fit by construction");
                push_bits(out, s, width);
                out.push(c);
            }
            Oracle::BcdAdd { digits } => {
                let n = 4 * digits;
                let nibble = |bits: &[bool], d: usize| bits_to_u64(&bits[4 * d..4 * d + 4]) as u8;
                let a: Vec<u8> = (0..digits).map(|d| nibble(&inputs[..n], d)).collect();
                let b: Vec<u8> = (0..digits).map(|d| nibble(&inputs[n..2 * n], d)).collect();
                let (s, c) = oracle_bcd_add(&a, &b, inputs[2 * n]).expect("bcd-valid inputs");
                for d in s {
                    push_bits(out, u64::from(d), 4);
                }
                out.push(c);
            }
            Oracle::Pga => {
                let (a, b, c) = (inputs[0], inputs[1], inputs[2]);
                out.extend([a ^ b ^ c, a & b, a ^ b]);
            }
        }
    }
}

/// Set of input vectors a sweep ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InputSpace {
    /// Every bit pattern over `width` inputs.
    AllBinary { width: usize },
    /// Every pair of `digits`-digit decimal operands with carry-in 0/1, in
    /// the BCD chain input layout.
    BcdValid { digits: usize },
}

impl InputSpace {
    pub fn width(&self) -> usize {
        match *self {
            InputSpace::AllBinary { width } => width,
            InputSpace::BcdValid { digits } => 8 * digits + 1,
        }
    }

    /// Number of vectors, saturating at `u64::MAX`.
    pub fn size(&self) -> u64 {
        match *self {
            InputSpace::AllBinary { width } => 1u64.checked_shl(width as u32).unwrap_or(u64::MAX),
            InputSpace::BcdValid { digits } => 10u64
                .checked_pow(2 * digits as u32)
                .and_then(|v| v.checked_mul(2))
                .unwrap_or(u64::MAX),
        }
    }

    /// The `index`-th vector of the space. For BCD spaces the carry-in is
    /// the least significant component, then A digits, then B digits.
    pub fn vector(&self, index: u64, out: &mut Vec<bool>) {
        out.clear();
        match *self {
            InputSpace::AllBinary { width } => push_bits(out, index, width),
            InputSpace::BcdValid { digits } => {
                let cin = index & 1 == 1;
                let mut rest = index >> 1;
                let mut operand = |out: &mut Vec<bool>| {
                    for _ in 0..digits {
                        push_bits(out, rest % 10, 4);
                        rest /= 10;
                    }
                };
                operand(out);
                operand(out);
                out.push(cin);
            }
        }
    }

    /// Uniform random vector from the space.
    pub fn sample<R: Rng>(&self, rng: &mut R, out: &mut Vec<bool>) {
        out.clear();
        match *self {
            InputSpace::AllBinary { width } => out.extend((0..width).map(|_| rng.gen::<bool>())),
            InputSpace::BcdValid { digits } => {
                for _ in 0..2 * digits {
                    push_bits(out, rng.gen_range(0..10), 4);
                }
                out.push(rng.gen());
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub inputs: Vec<bool>,
    pub expected: Vec<bool>,
    pub actual: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub circuit: String,
    pub vectors: u64,
    pub passed: u64,
    /// Seed used when the space was sampled rather than enumerated.
    pub sampled_seed: Option<u64>,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckReport {
    pub fn failed(&self) -> u64 {
        self.vectors - self.passed
    }

    pub fn is_pass(&self) -> bool {
        self.passed == self.vectors
    }
}

fn render_bits(bits: &[bool]) -> String {
    // most significant bit first
    bits.iter()
        .rev()
        .map(|&b| if b { '1' } else { '0' })
        .collect()
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.sampled_seed {
            Some(seed) => format!("sampled, seed {seed}"),
            None => "exhaustive".to_owned(),
        };
        writeln!(
            f,
            "{}: {}/{} pass ({mode})",
            self.circuit, self.passed, self.vectors
        )?;
        for cx in &self.counterexamples {
            writeln!(
                f,
                "  inputs {} expected {} got {}",
                render_bits(&cx.inputs),
                render_bits(&cx.expected),
                render_bits(&cx.actual)
            )?;
        }
        if self.failed() as usize > self.counterexamples.len() {
            writeln!(
                f,
                "  ... {} more failures",
                self.failed() as usize - self.counterexamples.len()
            )?;
        }
        Ok(())
    }
}

/// How sweeps are executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub parallel: bool,
    pub seed: u64,
    pub samples: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            parallel: true,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }
}

impl SweepOptions {
    pub fn serial() -> Self {
        SweepOptions {
            parallel: false,
            ..Self::default()
        }
    }
}

#[derive(Default)]
struct BlockResult {
    vectors: u64,
    passed: u64,
    counterexamples: Vec<Counterexample>,
}

fn merge(blocks: Vec<BlockResult>) -> BlockResult {
    blocks
        .into_iter()
        .fold(BlockResult::default(), |mut acc, b| {
            acc.vectors += b.vectors;
            acc.passed += b.passed;
            let room = MAX_COUNTEREXAMPLES - acc.counterexamples.len();
            acc.counterexamples
                .extend(b.counterexamples.into_iter().take(room));
            acc
        })
}

fn run_blocks<F>(blocks: u64, parallel: bool, f: F) -> Result<BlockResult, VerifyError>
where
    F: Fn(u64) -> Result<BlockResult, VerifyError> + Sync,
{
    let results: Result<Vec<BlockResult>, VerifyError> = if parallel {
        (0..blocks).into_par_iter().map(&f).collect()
    } else {
        (0..blocks).map(&f).collect()
    };
    Ok(merge(results?))
}

/// Where the vectors of a sweep come from.
#[derive(Clone, Copy, Debug)]
enum Vectors {
    Enumerate(InputSpace),
    Sample {
        space: InputSpace,
        seed: u64,
        count: u64,
    },
}

impl Vectors {
    fn count(&self) -> u64 {
        match *self {
            Vectors::Enumerate(space) => space.size(),
            Vectors::Sample { count, .. } => count,
        }
    }

    fn for_each_in_block(
        &self,
        block: u64,
        mut f: impl FnMut(&[bool]) -> Result<(), VerifyError>,
    ) -> Result<(), VerifyError> {
        let start = block * BLOCK;
        let end = (start + BLOCK).min(self.count());
        let mut buf = Vec::new();
        match *self {
            Vectors::Enumerate(space) => {
                for i in start..end {
                    space.vector(i, &mut buf);
                    f(&buf)?;
                }
            }
            Vectors::Sample { space, seed, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(block);
                for _ in start..end {
                    space.sample(&mut rng, &mut buf);
                    f(&buf)?;
                }
            }
        }
        Ok(())
    }

    fn seed(&self) -> Option<u64> {
        match *self {
            Vectors::Enumerate(_) => None,
            Vectors::Sample { seed, .. } => Some(seed),
        }
    }
}

fn sweep(
    name: &str,
    vectors: Vectors,
    parallel: bool,
    check: impl Fn(&[bool], &mut Vec<bool>, &mut Vec<bool>) -> Result<bool, VerifyError> + Sync,
) -> Result<CheckReport, VerifyError> {
    let blocks = vectors.count().div_ceil(BLOCK);
    let merged = run_blocks(blocks, parallel, |block| {
        let mut res = BlockResult::default();
        let (mut expected, mut actual) = (Vec::new(), Vec::new());
        vectors.for_each_in_block(block, |v| {
            res.vectors += 1;
            if check(v, &mut expected, &mut actual)? {
                res.passed += 1;
            } else if res.counterexamples.len() < MAX_COUNTEREXAMPLES {
                res.counterexamples.push(Counterexample {
                    inputs: v.to_vec(),
                    expected: expected.clone(),
                    actual: actual.clone(),
                });
            }
            Ok(())
        })?;
        Ok(res)
    })?;
    Ok(CheckReport {
        circuit: name.to_owned(),
        vectors: merged.vectors,
        passed: merged.passed,
        sampled_seed: vectors.seed(),
        counterexamples: merged.counterexamples,
    })
}

/// Evaluates every vector of `space` and compares the leading outputs of the
/// netlist with the oracle.
pub fn exhaustive_check(
    netlist: &Netlist,
    oracle: Oracle,
    space: InputSpace,
) -> Result<CheckReport, VerifyError> {
    exhaustive_check_with(netlist, oracle, space, SweepOptions::default())
}

pub fn exhaustive_check_with(
    netlist: &Netlist,
    oracle: Oracle,
    space: InputSpace,
    opts: SweepOptions,
) -> Result<CheckReport, VerifyError> {
    netlist.ensure_valid()?;
    if space.size() > MAX_EXHAUSTIVE_VECTORS {
        return Err(VerifyError::SpaceTooLarge(space.size()));
    }
    check_shape(netlist, oracle, space)?;
    sweep(
        netlist.name(),
        Vectors::Enumerate(space),
        opts.parallel,
        oracle_checker(netlist, oracle),
    )
}

/// Same comparison as [`exhaustive_check`] over `opts.samples` seeded random vectors.
pub fn sampled_check(
    netlist: &Netlist,
    oracle: Oracle,
    space: InputSpace,
    opts: SweepOptions,
) -> Result<CheckReport, VerifyError> {
    netlist.ensure_valid()?;
    check_shape(netlist, oracle, space)?;
    let vectors = Vectors::Sample {
        space,
        seed: opts.seed,
        count: opts.samples,
    };
    sweep(
        netlist.name(),
        vectors,
        opts.parallel,
        oracle_checker(netlist, oracle),
    )
}

fn check_shape(netlist: &Netlist, oracle: Oracle, space: InputSpace) -> Result<(), VerifyError> {
    if netlist.inputs().len() != oracle.input_width() || space.width() != oracle.input_width() {
        return Err(VerifyError::ShapeMismatch(format!(
            "netlist has {} inputs, oracle expects {}, space provides {}",
            netlist.inputs().len(),
            oracle.input_width(),
            space.width()
        )));
    }
    if netlist.outputs().len() < oracle.output_width() {
        return Err(VerifyError::ShapeMismatch(format!(
            "netlist has {} outputs, oracle produces {}",
            netlist.outputs().len(),
            oracle.output_width()
        )));
    }
    Ok(())
}

fn oracle_checker(
    netlist: &Netlist,
    oracle: Oracle,
) -> impl Fn(&[bool], &mut Vec<bool>, &mut Vec<bool>) -> Result<bool, VerifyError> + Sync + '_ {
    let width = oracle.output_width();
    move |v, expected, actual| {
        let mut ev = Evaluator::new(netlist)?;
        ev.run(v)?;
        ev.outputs_into(actual);
        actual.truncate(width);
        oracle.expected(v, expected);
        Ok(expected == actual)
    }
}

/// Pairs of output positions `(in a, in b)` that must agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputMapping(pub Vec<(usize, usize)>);

impl OutputMapping {
    pub fn identity(n: usize) -> Self {
        OutputMapping((0..n).map(|i| (i, i)).collect())
    }

    /// Outputs that carry the same name in both netlists, in `a`'s order.
    pub fn common_names(a: &Netlist, b: &Netlist) -> Self {
        let names_b = b.output_names();
        OutputMapping(
            a.output_names()
                .iter()
                .enumerate()
                .filter_map(|(i, name)| names_b.iter().position(|n| n == name).map(|j| (i, j)))
                .collect(),
        )
    }
}

/// Exhaustive when the netlists have at most 20 inputs, otherwise seeded
/// random sampling. Every output must match.
pub fn equiv_check(a: &Netlist, b: &Netlist) -> Result<CheckReport, VerifyError> {
    if a.outputs().len() != b.outputs().len() {
        return Err(VerifyError::ShapeMismatch(format!(
            "{} has {} outputs, {} has {}",
            a.name(),
            a.outputs().len(),
            b.name(),
            b.outputs().len()
        )));
    }
    let space = InputSpace::AllBinary {
        width: a.inputs().len(),
    };
    equiv_check_with(
        a,
        b,
        space,
        &OutputMapping::identity(a.outputs().len()),
        SweepOptions::default(),
    )
}

pub fn equiv_check_with(
    a: &Netlist,
    b: &Netlist,
    space: InputSpace,
    mapping: &OutputMapping,
    opts: SweepOptions,
) -> Result<CheckReport, VerifyError> {
    a.ensure_valid()?;
    b.ensure_valid()?;
    if a.inputs().len() != b.inputs().len() || space.width() != a.inputs().len() {
        return Err(VerifyError::ShapeMismatch(format!(
            "{} has {} inputs, {} has {}, space provides {}",
            a.name(),
            a.inputs().len(),
            b.name(),
            b.inputs().len(),
            space.width()
        )));
    }
    if let Some(&(i, j)) = mapping
        .0
        .iter()
        .find(|&&(i, j)| i >= a.outputs().len() || j >= b.outputs().len())
    {
        return Err(VerifyError::ShapeMismatch(format!(
            "output pair ({i}, {j}) is out of range"
        )));
    }
    let vectors = if space.width() <= EQUIV_EXHAUSTIVE_INPUTS || space.size() <= opts.samples {
        Vectors::Enumerate(space)
    } else {
        Vectors::Sample {
            space,
            seed: opts.seed,
            count: opts.samples,
        }
    };
    let name = format!("{} == {}", a.name(), b.name());
    sweep(&name, vectors, opts.parallel, |v, expected, actual| {
        let mut ea = Evaluator::new(a)?;
        let mut eb = Evaluator::new(b)?;
        ea.run(v)?;
        eb.run(v)?;
        expected.clear();
        actual.clear();
        for &(i, j) in &mapping.0 {
            expected.push(ea.value(a.outputs()[i]));
            actual.push(eb.value(b.outputs()[j]));
        }
        Ok(expected == actual)
    })
}
