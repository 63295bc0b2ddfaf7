//! Netlist generators for the 4-bit adders and BCD digit adders.
//!
//! Port conventions shared by every generator (all little-endian):
//!
//! * 4-bit adders: inputs `A0..A3`, `B0..B3`, `C0`; outputs `S0..S3`, `C4`.
//!   The NAND-based lookahead baseline has one extra trailing output, `PG`.
//! * BCD chains of `n` digits: inputs `A0..A{4n-1}`, `B0..B{4n-1}`, `Cin`;
//!   outputs `S0..S{4n-1}`, `Cout`. Digit `d` occupies bits `4d..4d+3`.
//!
//! Internal nets of digit `d` are prefixed `d{d}.`; the upper binary adder
//! uses `d{d}.top.` and the correction adder `d{d}.bot.`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::netlist::{GateKind, NetId, Netlist, NetlistBuilder, NetlistError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdderStyle {
    Ripple,
    Ncla,
    Mcla,
    CarrySkip,
}

impl AdderStyle {
    pub const ALL: [AdderStyle; 4] = [
        AdderStyle::Ripple,
        AdderStyle::Ncla,
        AdderStyle::Mcla,
        AdderStyle::CarrySkip,
    ];

    /// Styles that can be wrapped as a BCD digit adder.
    pub const BCD: [AdderStyle; 3] = [AdderStyle::Ripple, AdderStyle::Ncla, AdderStyle::CarrySkip];

    /// Style of the +6 correction adder under a digit of this style. The
    /// correction adder's carry-out is discarded, so the carry-skip digit
    /// uses a plain ripple adder there.
    fn correction_style(self) -> AdderStyle {
        match self {
            AdderStyle::CarrySkip => AdderStyle::Ripple,
            other => other,
        }
    }
}

impl fmt::Display for AdderStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdderStyle::Ripple => "ripple",
            AdderStyle::Ncla => "ncla",
            AdderStyle::Mcla => "mcla",
            AdderStyle::CarrySkip => "carry-skip",
        })
    }
}

impl FromStr for AdderStyle {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ripple" => Ok(AdderStyle::Ripple),
            "ncla" => Ok(AdderStyle::Ncla),
            "mcla" => Ok(AdderStyle::Mcla),
            "carry-skip" | "cs" => Ok(AdderStyle::CarrySkip),
            other => Err(GenError::UnknownCircuit(other.to_owned())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BcdChainSpec {
    pub digits: u32,
    pub style: AdderStyle,
}

impl BcdChainSpec {
    /// Significand widths of the three decimal interchange formats.
    pub const PRESET_DIGITS: [u32; 3] = [7, 16, 34];

    pub fn new(digits: u32, style: AdderStyle) -> Self {
        BcdChainSpec { digits, style }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("adder style `{0}` is a comparison baseline and cannot be wrapped as a BCD adder")]
    UnsupportedStyle(AdderStyle),
    #[error("a BCD chain needs at least one digit")]
    ZeroDigits,
    #[error("unknown circuit `{0}`")]
    UnknownCircuit(String),
    #[error(transparent)]
    Netlist(#[from] NetlistError),
}

type Nibble = [NetId; 4];

fn nets(
    b: &mut NetlistBuilder,
    prefix: &str,
    stem: &str,
    count: usize,
    make: fn(&mut NetlistBuilder, String) -> Result<NetId, NetlistError>,
) -> Result<Vec<NetId>, NetlistError> {
    (0..count)
        .map(|i| make(b, format!("{prefix}{stem}{i}")))
        .collect()
}

fn nibble(v: &[NetId]) -> Nibble {
    [v[0], v[1], v[2], v[3]]
}

fn wire(b: &mut NetlistBuilder, name: String) -> Result<NetId, NetlistError> {
    b.wire(name)
}

fn input(b: &mut NetlistBuilder, name: String) -> Result<NetId, NetlistError> {
    b.input(name)
}

fn output(b: &mut NetlistBuilder, name: String) -> Result<NetId, NetlistError> {
    b.output(name)
}

/// Propagate/generate/sum cell: `P = A^B`, `G = A&B`, `S = P^Cin`.
#[allow(clippy::too_many_arguments)]
fn pga_cell(
    b: &mut NetlistBuilder,
    instance: &str,
    a: NetId,
    bb: NetId,
    cin: NetId,
    s: NetId,
    g: NetId,
    p: NetId,
) -> Result<(), NetlistError> {
    b.begin_cell("PGA", instance);
    b.add_gate(GateKind::Xor2, &[a, bb], &[p])?;
    b.add_gate(GateKind::And(2), &[a, bb], &[g])?;
    b.add_gate(GateKind::Xor2, &[p, cin], &[s])?;
    b.end_cell();
    Ok(())
}

fn ripple_into(
    b: &mut NetlistBuilder,
    prefix: &str,
    a: Nibble,
    bb: Nibble,
    c0: NetId,
    s: Nibble,
    cout: NetId,
) -> Result<(), NetlistError> {
    let mut carry = c0;
    for i in 0..4 {
        let next = if i == 3 {
            cout
        } else {
            b.wire(format!("{prefix}C{}", i + 1))?
        };
        b.add_gate(GateKind::Fa10T, &[a[i], bb[i], carry], &[s[i], next])?;
        carry = next;
    }
    Ok(())
}

fn ncla_into(
    b: &mut NetlistBuilder,
    prefix: &str,
    a: Nibble,
    bb: Nibble,
    c0: NetId,
    s: Nibble,
    cout: NetId,
) -> Result<(), NetlistError> {
    let c = [
        c0,
        b.wire(format!("{prefix}C1"))?,
        b.wire(format!("{prefix}C2"))?,
        b.wire(format!("{prefix}C3"))?,
    ];
    let p = nets(b, prefix, "P", 3, wire)?;
    let g = nets(b, prefix, "G", 3, wire)?;
    for i in 0..3 {
        pga_cell(
            b,
            &format!("{prefix}pga{i}"),
            a[i],
            bb[i],
            c[i],
            s[i],
            g[i],
            p[i],
        )?;
    }
    let (and2, and3, and4) = (GateKind::And(2), GateKind::And(3), GateKind::And(4));

    let p0c0 = b.gate(and2, &[p[0], c0], format!("{prefix}P0C0"))?;
    b.add_gate(GateKind::Or(2), &[g[0], p0c0], &[c[1]])?;

    let p1g0 = b.gate(and2, &[p[1], g[0]], format!("{prefix}P1G0"))?;
    let p1p0c0 = b.gate(and3, &[p[1], p[0], c0], format!("{prefix}P1P0C0"))?;
    b.add_gate(GateKind::Or(3), &[g[1], p1g0, p1p0c0], &[c[2]])?;

    let p2g1 = b.gate(and2, &[p[2], g[1]], format!("{prefix}P2G1"))?;
    let p2p1g0 = b.gate(and3, &[p[2], p[1], g[0]], format!("{prefix}P2P1G0"))?;
    let p2p1p0c0 = b.gate(and4, &[p[2], p[1], p[0], c0], format!("{prefix}P2P1P0C0"))?;
    b.add_gate(GateKind::Or(4), &[g[2], p2g1, p2p1g0, p2p1p0c0], &[c[3]])?;

    b.add_gate(GateKind::FaMux12, &[a[3], bb[3], c[3]], &[s[3], cout])?;
    Ok(())
}

fn carry_skip_into(
    b: &mut NetlistBuilder,
    prefix: &str,
    a: Nibble,
    bb: Nibble,
    c0: NetId,
    s: Nibble,
    cout: NetId,
) -> Result<(), NetlistError> {
    let rippled = b.wire(format!("{prefix}C4r"))?;
    ripple_into(b, prefix, a, bb, c0, s, rippled)?;
    let mut props = [c0; 4];
    for i in 0..4 {
        props[i] = b.gate(GateKind::Xor2, &[a[i], bb[i]], format!("{prefix}P{i}"))?;
    }
    let block = b.gate(GateKind::And(4), &props, format!("{prefix}P"))?;
    let skip = b.gate(GateKind::And(2), &[block, c0], format!("{prefix}skip"))?;
    b.add_gate(GateKind::Or(2), &[skip, rippled], &[cout])?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn adder4_into(
    b: &mut NetlistBuilder,
    style: AdderStyle,
    prefix: &str,
    a: Nibble,
    bb: Nibble,
    c0: NetId,
    s: Nibble,
    cout: NetId,
) -> Result<(), GenError> {
    match style {
        AdderStyle::Ripple => ripple_into(b, prefix, a, bb, c0, s, cout)?,
        AdderStyle::Ncla => ncla_into(b, prefix, a, bb, c0, s, cout)?,
        AdderStyle::CarrySkip => carry_skip_into(b, prefix, a, bb, c0, s, cout)?,
        AdderStyle::Mcla => return Err(GenError::UnsupportedStyle(style)),
    }
    Ok(())
}

fn adder4_ports(
    b: &mut NetlistBuilder,
) -> Result<(Nibble, Nibble, NetId, Nibble, NetId), NetlistError> {
    let a = nibble(&nets(b, "", "A", 4, input)?);
    let bb = nibble(&nets(b, "", "B", 4, input)?);
    let c0 = b.input("C0")?;
    let s = nibble(&nets(b, "", "S", 4, output)?);
    let c4 = b.output("C4")?;
    Ok((a, bb, c0, s, c4))
}

fn gen_adder4(name: &str, style: AdderStyle) -> Result<Netlist, GenError> {
    let mut b = NetlistBuilder::new(name);
    let (a, bb, c0, s, c4) = adder4_ports(&mut b)?;
    adder4_into(&mut b, style, "", a, bb, c0, s, c4)?;
    Ok(b.finish())
}

/// One propagate/generate/sum block.
pub fn gen_pga() -> Netlist {
    let build = || -> Result<Netlist, NetlistError> {
        let mut b = NetlistBuilder::new("pga");
        let a = b.input("A")?;
        let bb = b.input("B")?;
        let cin = b.input("Cin")?;
        let s = b.output("S")?;
        let g = b.output("G")?;
        let p = b.output("P")?;
        pga_cell(&mut b, "pga", a, bb, cin, s, g, p)?;
        Ok(b.finish())
    };
    build().expect("fixed structure")
}

/// AND/OR carry-lookahead adder: three PGA blocks, a two-level lookahead
/// network for C1..C3, and a mux-based full adder in bit 3.
pub fn gen_ncla4() -> Netlist {
    gen_adder4("ncla4", AdderStyle::Ncla).expect("fixed structure")
}

/// Conventional ripple-carry adder of four 10T full adders.
pub fn gen_ripple4() -> Netlist {
    gen_adder4("ripple4", AdderStyle::Ripple).expect("fixed structure")
}

/// Ripple adder with a block-propagate skip path on the carry-out.
pub fn gen_carry_skip4() -> Netlist {
    gen_adder4("cs4", AdderStyle::CarrySkip).expect("fixed structure")
}

/// NAND-NAND lookahead baseline assembled from four MPFA cells
/// (`P = A^B`, `S = P^C`, `/G = NAND(A,B)`).
///
/// The carry-out is factored through C1 so the gate inventory comes out at
/// 3 NOT, 5 NAND2, 4 NAND3, 4 NAND4 and one AND4 for the group propagate,
/// which is exposed as the extra `PG` output.
pub fn gen_mcla4() -> Netlist {
    let build = || -> Result<Netlist, NetlistError> {
        let mut b = NetlistBuilder::new("mcla4");
        let (a, bb, c0, s, c4) = adder4_ports(&mut b)?;
        let pg = b.output("PG")?;
        let c = [c0, b.wire("C1")?, b.wire("C2")?, b.wire("C3")?];
        let p = nets(&mut b, "", "P", 4, wire)?;
        let gn = nets(&mut b, "", "Gn", 4, wire)?;
        for i in 0..4 {
            b.begin_cell("MPFA", format!("mpfa{i}"));
            b.add_gate(GateKind::Xor2, &[a[i], bb[i]], &[p[i]])?;
            b.add_gate(GateKind::Xor2, &[p[i], c[i]], &[s[i]])?;
            b.add_gate(GateKind::Nand(2), &[a[i], bb[i]], &[gn[i]])?;
            b.end_cell();
        }
        let mut g = Vec::with_capacity(3);
        for (i, &n) in gn.iter().take(3).enumerate() {
            g.push(b.gate(GateKind::Not, &[n], format!("G{i}"))?);
        }
        let (nand2, nand3, nand4) = (GateKind::Nand(2), GateKind::Nand(3), GateKind::Nand(4));

        let t = b.gate(nand2, &[p[0], c0], "n_P0C0")?;
        b.add_gate(nand2, &[gn[0], t], &[c[1]])?;

        let t1 = b.gate(nand2, &[p[1], g[0]], "n_P1G0")?;
        let t2 = b.gate(nand3, &[p[1], p[0], c0], "n_P1P0C0")?;
        b.add_gate(nand3, &[gn[1], t1, t2], &[c[2]])?;

        let t1 = b.gate(nand2, &[p[2], g[1]], "n_P2G1")?;
        let t2 = b.gate(nand3, &[p[2], p[1], g[0]], "n_P2P1G0")?;
        let t3 = b.gate(nand4, &[p[2], p[1], p[0], c0], "n_P2P1P0C0")?;
        b.add_gate(nand4, &[gn[2], t1, t2, t3], &[c[3]])?;

        let t1 = b.gate(nand2, &[p[3], g[2]], "n_P3G2")?;
        let t2 = b.gate(nand3, &[p[3], p[2], g[1]], "n_P3P2G1")?;
        let t3 = b.gate(nand4, &[p[3], p[2], p[1], c[1]], "n_P3P2P1C1")?;
        b.add_gate(nand4, &[gn[3], t1, t2, t3], &[c4])?;

        b.add_gate(GateKind::And(4), &[p[3], p[2], p[1], p[0]], &[pg])?;
        Ok(b.finish())
    };
    build().expect("fixed structure")
}

/// Wires one BCD digit adder: binary add, sum>9 detection, and +6
/// correction by adding `(0, K, K, 0)` with a constant-0 carry-in.
#[allow(clippy::too_many_arguments)]
fn bcd_digit_into(
    b: &mut NetlistBuilder,
    style: AdderStyle,
    digit: u32,
    a: Nibble,
    bb: Nibble,
    cin: NetId,
    s: Nibble,
    k: NetId,
) -> Result<(), GenError> {
    let prefix = format!("d{digit}.");
    let z = nibble(&nets(b, &prefix, "Z", 4, wire)?);
    let c4 = b.wire(format!("{prefix}C4"))?;
    adder4_into(b, style, &format!("{prefix}top."), a, bb, cin, z, c4)?;

    let z3z2 = b.gate(GateKind::And(2), &[z[3], z[2]], format!("{prefix}Z3Z2"))?;
    let z3z1 = b.gate(GateKind::And(2), &[z[3], z[1]], format!("{prefix}Z3Z1"))?;
    b.add_gate(GateKind::Or(3), &[c4, z3z2, z3z1], &[k])?;

    let zero = b.zero();
    let unused = b.wire(format!("{prefix}bot.C4"))?;
    adder4_into(
        b,
        style.correction_style(),
        &format!("{prefix}bot."),
        z,
        [zero, k, k, zero],
        zero,
        s,
        unused,
    )?;
    Ok(())
}

/// `digits` BCD digit adders with each decimal carry feeding the next digit.
pub fn gen_bcd_chain(spec: BcdChainSpec) -> Result<Netlist, GenError> {
    if spec.digits == 0 {
        return Err(GenError::ZeroDigits);
    }
    if !AdderStyle::BCD.contains(&spec.style) {
        return Err(GenError::UnsupportedStyle(spec.style));
    }
    let n = spec.digits as usize;
    let mut b = NetlistBuilder::new(Circuit::Bcd(spec.style).name());
    b.set_digits(spec.digits);
    let a = nets(&mut b, "", "A", 4 * n, input)?;
    let bb = nets(&mut b, "", "B", 4 * n, input)?;
    let mut carry = b.input("Cin")?;
    let s = nets(&mut b, "", "S", 4 * n, output)?;
    let cout = b.output("Cout")?;
    for d in 0..n {
        let k = if d + 1 == n {
            cout
        } else {
            b.wire(format!("d{d}.K"))?
        };
        let span = 4 * d..4 * d + 4;
        bcd_digit_into(
            &mut b,
            spec.style,
            d as u32,
            nibble(&a[span.clone()]),
            nibble(&bb[span.clone()]),
            carry,
            nibble(&s[span]),
            k,
        )?;
        carry = k;
    }
    Ok(b.finish())
}

/// Single-digit BCD adder: inputs `A0..A3, B0..B3, Cin`, outputs `S0..S3, Cout`.
pub fn gen_bcd_digit(style: AdderStyle) -> Result<Netlist, GenError> {
    gen_bcd_chain(BcdChainSpec::new(1, style))
}

/// Circuits addressable by name from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Circuit {
    Pga,
    Ncla4,
    Mcla4,
    Ripple4,
    CarrySkip4,
    Bcd(AdderStyle),
}

impl Circuit {
    pub const NAMED: [Circuit; 8] = [
        Circuit::Pga,
        Circuit::Ncla4,
        Circuit::Mcla4,
        Circuit::Ripple4,
        Circuit::CarrySkip4,
        Circuit::Bcd(AdderStyle::Ripple),
        Circuit::Bcd(AdderStyle::Ncla),
        Circuit::Bcd(AdderStyle::CarrySkip),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Circuit::Pga => "pga",
            Circuit::Ncla4 => "ncla4",
            Circuit::Mcla4 => "mcla4",
            Circuit::Ripple4 => "ripple4",
            Circuit::CarrySkip4 => "cs4",
            Circuit::Bcd(AdderStyle::Ripple) => "bcd-ripple",
            Circuit::Bcd(AdderStyle::Ncla) => "bcd-ncla",
            Circuit::Bcd(AdderStyle::CarrySkip) => "bcd-cs",
            Circuit::Bcd(AdderStyle::Mcla) => "bcd-mcla",
        }
    }

    pub fn is_bcd(self) -> bool {
        matches!(self, Circuit::Bcd(_))
    }

    pub fn build(self, digits: u32) -> Result<Netlist, GenError> {
        match self {
            Circuit::Pga => Ok(gen_pga()),
            Circuit::Ncla4 => Ok(gen_ncla4()),
            Circuit::Mcla4 => Ok(gen_mcla4()),
            Circuit::Ripple4 => Ok(gen_ripple4()),
            Circuit::CarrySkip4 => Ok(gen_carry_skip4()),
            Circuit::Bcd(style) => gen_bcd_chain(BcdChainSpec::new(digits, style)),
        }
    }
}

impl FromStr for Circuit {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Circuit::NAMED
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| GenError::UnknownCircuit(s.to_owned()))
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
