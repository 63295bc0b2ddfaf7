//! Acceptance suite. Runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line per criterion.
//!
//! A criterion listed in `KNOWN_FAILURES` is still evaluated in full and
//! reported as FAIL, but does not fail the run; if it starts passing the run
//! fails so the list gets updated.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use bcdkit::analysis::{
    delay_functional, delay_functional_bcd, delay_topological, estimate_activity, estimate_power,
    power_equation, random_stimulus, transistor_cost, ActivityReport, BomItem, CostModel,
    CostReport, DelayModel, PairStimulus, PowerParams, PowerTerm, PowerVariant, TABLE_ONE,
};
use bcdkit::cli::document::{netlist_from_json, netlist_to_json};
use bcdkit::generators::{
    gen_bcd_chain, gen_bcd_digit, gen_mcla4, gen_ncla4, gen_ripple4, AdderStyle, BcdChainSpec,
    Circuit,
};
use bcdkit::netlist::{GateKind, Netlist};
use bcdkit::switchlevel::{
    build_two_t_and, build_two_t_or, logical_readout, Level, SignalState, Strength, SwitchNetwork,
};
use bcdkit::verify::{exhaustive_check_with, CheckReport, InputSpace, Oracle, SweepOptions};

const KNOWN_FAILURES: &[u32] = &[4];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

struct Ctx {
    failures: Vec<String>,
    pass: bool,
}

impl Ctx {
    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.failures.push(what.into());
        }
    }

    fn finish(self, summary: String) -> Outcome {
        let detail = if self.failures.is_empty() {
            summary
        } else {
            format!("{summary}; failed: {}", self.failures.join("; "))
        };
        Outcome {
            pass: self.pass,
            detail,
        }
    }

    fn new() -> Self {
        Ctx {
            failures: Vec::new(),
            pass: true,
        }
    }
}

fn within(ctx: &mut Ctx, start: Instant, limit: Duration) -> Duration {
    let elapsed = start.elapsed();
    ctx.require(
        elapsed < limit,
        format!("runtime {elapsed:?} exceeds {limit:?}"),
    );
    elapsed
}

fn bom_set(report: &CostReport) -> BTreeSet<(String, u32, u32, u32)> {
    report
        .bom
        .iter()
        .map(|r| (r.item.to_string(), r.count, r.each, r.subtotal))
        .collect()
}

fn rows(spec: &[(&str, u32, u32)]) -> BTreeSet<(String, u32, u32, u32)> {
    spec.iter()
        .map(|&(item, count, each)| (item.to_owned(), count, each, count * each))
        .collect()
}

fn criterion_1() -> Outcome {
    let mut ctx = Ctx::new();
    let start = Instant::now();
    let model = CostModel::default();
    let ncla = transistor_cost(&gen_ncla4(), &model).unwrap();
    let mcla = transistor_cost(&gen_mcla4(), &model).unwrap();
    ctx.require(ncla.total == 74, format!("NCLA total {}", ncla.total));
    ctx.require(mcla.total == 136, format!("MCLA total {}", mcla.total));
    // rows of the two published bills of materials
    let mcla_rows = rows(&[
        ("MPFA", 4, 12),
        ("NOT", 3, 2),
        ("NAND2", 5, 4),
        ("NAND3", 4, 6),
        ("NAND4", 4, 8),
        ("AND4", 1, 6),
    ]);
    let ncla_rows = rows(&[
        ("PGA", 3, 10),
        ("AND2", 3, 2),
        ("AND3", 2, 4),
        ("AND4", 1, 6),
        ("OR2", 1, 2),
        ("OR3", 1, 4),
        ("OR4", 1, 6),
        ("FA_MUX12", 1, 12),
    ]);
    ctx.require(
        bom_set(&mcla) == mcla_rows,
        format!("MCLA rows {:?}", bom_set(&mcla)),
    );
    ctx.require(
        bom_set(&ncla) == ncla_rows,
        format!("NCLA rows {:?}", bom_set(&ncla)),
    );
    let t = within(&mut ctx, start, Duration::from_secs(1));
    ctx.finish(format!(
        "NCLA {} / MCLA {} transistors, {} + {} BOM rows matched in {t:?}",
        ncla.total,
        mcla.total,
        ncla_rows.len(),
        mcla_rows.len()
    ))
}

fn criterion_2() -> Outcome {
    let mut ctx = Ctx::new();
    let expected: [(GateKind, u32); 12] = [
        (GateKind::Not, 2),
        (GateKind::Xor2, 4),
        (GateKind::Nand(2), 4),
        (GateKind::Nand(3), 6),
        (GateKind::Nand(4), 8),
        (GateKind::Fa10T, 10),
        (GateKind::FaMux12, 12),
        (GateKind::And(2), 2),
        (GateKind::Or(2), 2),
        (GateKind::And(3), 4),
        (GateKind::And(4), 6),
        (GateKind::Or(4), 6),
    ];
    let model = CostModel::default();
    for (row, (kind, count)) in TABLE_ONE.iter().zip(expected) {
        ctx.require(
            row.kind == kind && row.transistors == count,
            format!("table row {}", row.label),
        );
        ctx.require(
            model.get(kind) == Some(count),
            format!("model entry {kind}"),
        );
    }
    let mpfa = transistor_cost(&gen_mcla4(), &model).unwrap();
    let each = mpfa.row(&BomItem::Cell("MPFA".into())).map(|r| r.each);
    ctx.require(each == Some(12), format!("MPFA cell costs {each:?}"));
    ctx.require(
        2 * model.get(GateKind::Xor2).unwrap() + model.get(GateKind::Nand(2)).unwrap() == 12,
        "MPFA composition",
    );
    ctx.finish("12 per-function rows and the 12-transistor MPFA cell match".into())
}

fn functional_checks(parallel: bool) -> Vec<CheckReport> {
    let opts = SweepOptions {
        parallel,
        ..SweepOptions::default()
    };
    let mut reports = Vec::new();
    for nl in [gen_ripple4(), gen_ncla4(), gen_mcla4()] {
        let space = InputSpace::AllBinary { width: 9 };
        reports
            .push(exhaustive_check_with(&nl, Oracle::BinaryAdd { width: 4 }, space, opts).unwrap());
    }
    for style in AdderStyle::BCD {
        let nl = gen_bcd_digit(style).unwrap();
        reports.push(
            exhaustive_check_with(
                &nl,
                Oracle::BcdAdd { digits: 1 },
                InputSpace::BcdValid { digits: 1 },
                opts,
            )
            .unwrap(),
        );
    }
    for style in AdderStyle::BCD {
        let nl = gen_bcd_chain(BcdChainSpec::new(2, style)).unwrap();
        reports.push(
            exhaustive_check_with(
                &nl,
                Oracle::BcdAdd { digits: 2 },
                InputSpace::BcdValid { digits: 2 },
                opts,
            )
            .unwrap(),
        );
    }
    reports
}

fn criterion_3() -> Outcome {
    let mut ctx = Ctx::new();
    let start = Instant::now();
    let reports = functional_checks(true);
    let expected = [512, 512, 512, 200, 200, 200, 20_000, 20_000, 20_000];
    for (r, n) in reports.iter().zip(expected) {
        ctx.require(
            r.vectors == n && r.passed == n && r.counterexamples.is_empty(),
            format!("{}: {}/{}", r.circuit, r.passed, r.vectors),
        );
    }
    let t = within(&mut ctx, start, Duration::from_secs(10));
    let summary: Vec<String> = reports
        .iter()
        .map(|r| format!("{} {}/{}", r.circuit, r.passed, r.vectors))
        .collect();
    ctx.finish(format!("{} in {t:?}", summary.join(", ")))
}

fn chain(digits: u32, style: AdderStyle) -> Netlist {
    gen_bcd_chain(BcdChainSpec::new(digits, style)).unwrap()
}

struct DelayResults {
    exact2: [u64; 2],
    sampled4: [u64; 2],
    ripple4: u64,
    witnesses: Vec<Option<(Vec<bool>, Vec<bool>)>>,
}

fn delay_runs(parallel: bool, ctx: &mut Ctx) -> DelayResults {
    let model = DelayModel::default();
    let digits: Vec<u8> = (0..10).collect();
    let mut witnesses = Vec::new();
    let mut exact2 = [0; 2];
    for (i, style) in [AdderStyle::CarrySkip, AdderStyle::Ripple]
        .into_iter()
        .enumerate()
    {
        let r =
            delay_functional_bcd(BcdChainSpec::new(2, style), &model, &digits, parallel).unwrap();
        let topo = delay_topological(&chain(2, style), &model)
            .unwrap()
            .max_depth();
        ctx.require(
            r.worst <= topo,
            format!(
                "2-digit {style}: functional {} > topological {topo}",
                r.worst
            ),
        );
        exact2[i] = r.worst;
        witnesses.push(r.witness);
    }
    let mut sampled4 = [0; 2];
    for (i, style) in [AdderStyle::CarrySkip, AdderStyle::Ripple]
        .into_iter()
        .enumerate()
    {
        let nl = chain(4, style);
        let stim = PairStimulus::sampled(InputSpace::BcdValid { digits: 4 }, 2024, 10_000);
        let r = delay_functional(&nl, &model, &stim, parallel).unwrap();
        let topo = delay_topological(&nl, &model).unwrap().max_depth();
        ctx.require(r.pairs >= 10_000, "fewer than 10,000 pairs");
        ctx.require(
            r.worst <= topo,
            format!(
                "4-digit {style}: functional {} > topological {topo}",
                r.worst
            ),
        );
        sampled4[i] = r.worst;
        witnesses.push(r.witness);
    }
    let r = delay_functional(
        &gen_ripple4(),
        &model,
        &PairStimulus::exhaustive(InputSpace::AllBinary { width: 9 }),
        parallel,
    )
    .unwrap();
    witnesses.push(r.witness);
    DelayResults {
        exact2,
        sampled4,
        ripple4: r.worst,
        witnesses,
    }
}

fn criterion_4() -> Outcome {
    let mut ctx = Ctx::new();
    let start = Instant::now();
    let model = DelayModel::default();
    let ncla = delay_topological(&gen_ncla4(), &model)
        .unwrap()
        .depth_of("C4")
        .unwrap();
    let ripple = delay_topological(&gen_ripple4(), &model)
        .unwrap()
        .depth_of("C4")
        .unwrap();
    ctx.require(
        ncla == 5 && ripple == 8 && ncla < ripple,
        format!("C4 depths ncla {ncla}, ripple {ripple}"),
    );

    let runs = delay_runs(true, &mut ctx);
    ctx.require(
        runs.ripple4 == 8,
        format!("ripple4 functional {}", runs.ripple4),
    );
    let [skip2, ripple2] = runs.exact2;
    let [skip4, ripple4] = runs.sampled4;
    ctx.require(
        skip2 < ripple2,
        format!("n=2 exhaustive: skip {skip2} is not below ripple {ripple2}"),
    );
    ctx.require(
        skip4 < ripple4,
        format!("n=4 sampled: skip {skip4} is not below ripple {ripple4}"),
    );

    // functional never exceeds the static bound, for every generated circuit
    for circuit in [
        Circuit::Pga,
        Circuit::Ncla4,
        Circuit::Mcla4,
        Circuit::Ripple4,
        Circuit::CarrySkip4,
    ] {
        let nl = circuit.build(1).unwrap();
        let topo = delay_topological(&nl, &model).unwrap().max_depth();
        let stim = PairStimulus::exhaustive(InputSpace::AllBinary {
            width: nl.inputs().len(),
        });
        let f = delay_functional(&nl, &model, &stim, true).unwrap().worst;
        ctx.require(
            f <= topo,
            format!("{circuit}: functional {f} > topological {topo}"),
        );
    }
    for style in AdderStyle::BCD {
        let nl = gen_bcd_digit(style).unwrap();
        let topo = delay_topological(&nl, &model).unwrap().max_depth();
        let f = delay_functional(
            &nl,
            &model,
            &PairStimulus::exhaustive(InputSpace::BcdValid { digits: 1 }),
            true,
        )
        .unwrap()
        .worst;
        ctx.require(
            f <= topo,
            format!("bcd-{style}: functional {f} > topological {topo}"),
        );
    }
    let t = within(&mut ctx, start, Duration::from_secs(60));
    ctx.finish(format!(
        "C4 depth ncla {ncla} < ripple {ripple}; 2-digit exhaustive skip {skip2} vs ripple {ripple2}; \
         4-digit sampled skip {skip4} vs ripple {ripple4}; {t:?}"
    ))
}

fn gate_table(
    ctx: &mut Ctx,
    name: &str,
    net: &SwitchNetwork,
    f: fn(bool, bool) -> bool,
    expected: [SignalState; 4],
) {
    ctx.require(net.devices().len() == 2, format!("{name} device count"));
    let out = net.outputs()[0];
    for (i, want) in expected.into_iter().enumerate() {
        let (a, b) = (i & 2 != 0, i & 1 != 0);
        let settled = net.settle_bits(&[a, b]).unwrap();
        let got = settled.state(out);
        ctx.require(
            logical_readout(got, 1) == Some(f(a, b)),
            format!("{name}({a},{b}) reads {:?}", logical_readout(got, 1)),
        );
        ctx.require(
            got == want,
            format!("{name}({a},{b}) settled to {got}, expected {want}"),
        );
        let strong = settled
            .conflicts
            .iter()
            .filter(|c| c.strength == Strength::Strong)
            .count();
        ctx.require(
            strong == 0,
            format!("{name}({a},{b}) has a strong-strong conflict"),
        );
    }
}

fn criterion_5() -> Outcome {
    let mut ctx = Ctx::new();
    let w = SignalState::weak;
    let s = SignalState::strong;
    // inputs (A,B) = 00, 01, 10, 11
    gate_table(
        &mut ctx,
        "AND",
        &build_two_t_and(),
        |a, b| a && b,
        [w(false, 1), w(false, 1), s(false), w(true, 1)],
    );
    gate_table(
        &mut ctx,
        "OR",
        &build_two_t_or(),
        |a, b| a || b,
        [w(false, 1), s(true), w(true, 1), w(true, 1)],
    );
    let floating = SignalState {
        level: Level::Unknown,
        strength: Strength::Floating,
        drops: 0,
    };
    ctx.require(logical_readout(floating, 1).is_none(), "floating readout");
    ctx.finish(
        "AND and OR truth tables, strength/drops table and conflict freedom hold for all 8 cases"
            .into(),
    )
}

fn scaled(activity: &ActivityReport, k: f64) -> ActivityReport {
    ActivityReport {
        probability: activity.probability.iter().map(|p| p * k).collect(),
        ..activity.clone()
    }
}

fn nondecreasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] <= w[1])
}

fn criterion_6() -> Outcome {
    let mut ctx = Ctx::new();
    let term = PowerTerm {
        capacitance: 0.01e-12,
        swing: 3.3,
        probability: 0.5,
    };
    let p = power_equation(&[term], 100e6, 0.0, 0.0, 1, 3.3, PowerVariant::AsPrinted).total;
    let rel = (p - 1.65e-6).abs() / 1.65e-6;
    ctx.require(
        rel <= 1e-12,
        format!("worked example {p:e} (relative error {rel:e})"),
    );

    let nl = gen_ncla4();
    let costs = CostModel::default();
    let activity = estimate_activity(
        &nl,
        &random_stimulus(InputSpace::AllBinary { width: 9 }, 2000, 5),
    )
    .unwrap();
    let base = PowerParams {
        i_sc: 1e-6,
        i_leak: 1e-9,
        ..PowerParams::default()
    };
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let eval =
        |a: &ActivityReport, p: &PowerParams| estimate_power(&nl, a, p, &costs).unwrap().total;

    let by_activity: Vec<f64> = grid
        .iter()
        .map(|&k| eval(&scaled(&activity, k), &base))
        .collect();
    let by_freq: Vec<f64> = grid
        .iter()
        .map(|&k| {
            eval(
                &activity,
                &PowerParams {
                    f_clk: k * 200e6,
                    ..base.clone()
                },
            )
        })
        .collect();
    let by_isc: Vec<f64> = grid
        .iter()
        .map(|&k| {
            eval(
                &activity,
                &PowerParams {
                    i_sc: k * 1e-5,
                    ..base.clone()
                },
            )
        })
        .collect();
    let by_leak: Vec<f64> = grid
        .iter()
        .map(|&k| {
            eval(
                &activity,
                &PowerParams {
                    i_leak: k * 1e-8,
                    ..base.clone()
                },
            )
        })
        .collect();
    for (name, v) in [
        ("activity", &by_activity),
        ("f_clk", &by_freq),
        ("I_sc", &by_isc),
        ("I_leak", &by_leak),
    ] {
        ctx.require(nondecreasing(v), format!("not monotone in {name}: {v:?}"));
    }
    let zero = eval(&scaled(&activity, 0.0), &PowerParams::default());
    ctx.require(
        zero == 0.0,
        format!("zero activity and statics gave {zero:e}"),
    );
    ctx.finish(format!("worked example {p:e} (rel err {rel:.1e}); monotone over 4 x 5-point grids; zero case exactly 0"))
}

fn criterion_7() -> Outcome {
    let mut ctx = Ctx::new();
    let mut documents = 0;
    for circuit in Circuit::NAMED {
        for digits in [1, 2] {
            let a = netlist_to_json(&circuit.build(digits).unwrap());
            let b = netlist_to_json(&circuit.build(digits).unwrap());
            ctx.require(
                a == b,
                format!("{circuit} x{digits}: two generations differ"),
            );
            let reloaded = netlist_to_json(&netlist_from_json(&a).unwrap());
            ctx.require(
                reloaded == a,
                format!("{circuit} x{digits}: load/save not byte-identical"),
            );
            documents += 1;
        }
    }
    let parallel = functional_checks(true);
    let serial = functional_checks(false);
    ctx.require(
        parallel == serial,
        "parallel and serial check reports differ",
    );
    let mut scratch = Ctx::new();
    let p = delay_runs(true, &mut scratch);
    let s = delay_runs(false, &mut scratch);
    ctx.require(
        p.exact2 == s.exact2 && p.sampled4 == s.sampled4 && p.ripple4 == s.ripple4,
        "parallel and serial delays differ",
    );
    ctx.require(
        p.witnesses == s.witnesses,
        "parallel and serial delay witnesses differ",
    );
    ctx.finish(format!("{documents} documents byte-stable; {} check reports and 5 delay sweeps identical serial vs parallel", parallel.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        (1, "area reproduction", criterion_1),
        (2, "per-function cost table", criterion_2),
        (3, "functional correctness", criterion_3),
        (4, "delay ordering", criterion_4),
        (5, "two-transistor gate semantics", criterion_5),
        (6, "power-model properties", criterion_6),
        (7, "determinism and round-trip", criterion_7),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let outcome = run();
        let known = KNOWN_FAILURES.contains(&id);
        let verdict = match (outcome.pass, known) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (known)",
            (true, true) => "PASS (listed as known failure)",
        };
        println!("criterion {id} [{name}]: {verdict}: {}", outcome.detail);
        if outcome.pass == known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected results for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
