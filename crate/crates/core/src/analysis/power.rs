//! Switching activity and the dynamic power equation
//! `P = (sum_i C_i * Vswing_i * P_i) * f_clk + I_sc * VDD + sum_i I_leak * VDD`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cost::CostModel;
use super::AnalysisError;
use crate::netlist::{Evaluator, GateKind, NetRole, Netlist};
use crate::verify::InputSpace;

/// Output loads swept by default, in farads.
pub const DEFAULT_LOADS: [f64; 6] = [0.01e-12, 0.02e-12, 0.05e-12, 0.1e-12, 0.3e-12, 0.5e-12];
/// Clock frequencies swept by default, in hertz.
pub const DEFAULT_FREQUENCIES: [f64; 4] = [1e6, 50e6, 100e6, 200e6];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ActivityReport {
    pub length: usize,
    /// Toggle count per net, indexed by net id.
    pub toggles: Vec<u64>,
    /// `toggles / (length - 1)` per net.
    pub probability: Vec<f64>,
}

/// Zero-delay toggle counting over a vector sequence.
pub fn estimate_activity(
    netlist: &Netlist,
    stimulus: &[Vec<bool>],
) -> Result<ActivityReport, AnalysisError> {
    if stimulus.len() < 2 {
        return Err(AnalysisError::SequenceTooShort(stimulus.len()));
    }
    let mut ev = Evaluator::new(netlist)?;
    let mut toggles = vec![0u64; netlist.nets().len()];
    let mut previous: Option<Vec<bool>> = None;
    for vector in stimulus {
        ev.run(vector)?;
        if let Some(prev) = &previous {
            for (i, (&a, &b)) in prev.iter().zip(ev.values()).enumerate() {
                toggles[i] += u64::from(a != b);
            }
        }
        previous = Some(ev.values().to_vec());
    }
    let steps = (stimulus.len() - 1) as f64;
    let probability = toggles.iter().map(|&t| t as f64 / steps).collect();
    Ok(ActivityReport {
        length: stimulus.len(),
        toggles,
        probability,
    })
}

/// Seeded random vector sequence drawn from `space`.
pub fn random_stimulus(space: InputSpace, length: usize, seed: u64) -> Vec<Vec<bool>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..length)
        .map(|_| {
            let mut v = Vec::new();
            space.sample(&mut rng, &mut v);
            v
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerVariant {
    /// The equation exactly as written: one voltage factor in the dynamic term.
    #[default]
    AsPrinted,
    /// Textbook `C * Vswing * VDD * P * f` dynamic term.
    Conventional,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PowerParams {
    /// Load per driving transistor, in farads.
    pub unit_capacitance: f64,
    /// Absolute per-output load for selected gate kinds, in farads.
    pub capacitance_overrides: BTreeMap<GateKind, f64>,
    /// External load added to every primary output, in farads.
    pub output_load: f64,
    pub vdd: f64,
    /// Threshold drop applied to nets driven by pass-transistor AND/OR gates.
    pub vt: f64,
    /// Model AND/OR outputs as reduced-swing (`VDD - Vt`) nets.
    pub pass_gate_swing: bool,
    pub f_clk: f64,
    pub i_sc: f64,
    /// Leakage per gate, in amperes.
    pub i_leak: f64,
    pub variant: PowerVariant,
}

impl Default for PowerParams {
    fn default() -> Self {
        PowerParams {
            unit_capacitance: 0.5e-15,
            capacitance_overrides: BTreeMap::new(),
            output_load: 0.0,
            vdd: 3.3,
            vt: 0.7,
            pass_gate_swing: true,
            f_clk: 100e6,
            i_sc: 0.0,
            i_leak: 0.0,
            variant: PowerVariant::AsPrinted,
        }
    }
}

impl PowerParams {
    pub fn check(&self) -> Result<(), AnalysisError> {
        let scalars = [
            ("unit_capacitance", self.unit_capacitance),
            ("output_load", self.output_load),
            ("vdd", self.vdd),
            ("vt", self.vt),
            ("f_clk", self.f_clk),
            ("i_sc", self.i_sc),
            ("i_leak", self.i_leak),
        ];
        for (name, v) in scalars {
            if !(v.is_finite() && v >= 0.0) {
                return Err(AnalysisError::InvalidModel(format!(
                    "{name} must be a non-negative number"
                )));
            }
        }
        if self
            .capacitance_overrides
            .values()
            .any(|c| !(c.is_finite() && *c >= 0.0))
        {
            return Err(AnalysisError::InvalidModel(
                "capacitance overrides must be non-negative".into(),
            ));
        }
        if self.vt > self.vdd {
            return Err(AnalysisError::InvalidModel("vt exceeds vdd".into()));
        }
        Ok(())
    }
}

/// One switching node of the dynamic term.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowerTerm {
    pub capacitance: f64,
    pub swing: f64,
    pub probability: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowerEstimate {
    pub dynamic: f64,
    pub short_circuit: f64,
    pub leakage: f64,
    pub total: f64,
}

/// Evaluates the power equation over explicit terms. `leaking` is the number
/// of leakage contributors.
pub fn power_equation(
    terms: &[PowerTerm],
    f_clk: f64,
    i_sc: f64,
    i_leak: f64,
    leaking: usize,
    vdd: f64,
    variant: PowerVariant,
) -> PowerEstimate {
    let switched: f64 = terms
        .iter()
        .map(|t| t.capacitance * t.swing * t.probability)
        .sum();
    let dynamic = match variant {
        PowerVariant::AsPrinted => switched * f_clk,
        PowerVariant::Conventional => switched * vdd * f_clk,
    };
    let short_circuit = i_sc * vdd;
    let leakage = leaking as f64 * i_leak * vdd;
    PowerEstimate {
        dynamic,
        short_circuit,
        leakage,
        total: dynamic + short_circuit + leakage,
    }
}

/// Power of a netlist under measured activity. Every gate-driven net is a
/// term whose load is proportional to the driving gate's transistor count.
pub fn estimate_power(
    netlist: &Netlist,
    activity: &ActivityReport,
    params: &PowerParams,
    costs: &CostModel,
) -> Result<PowerEstimate, AnalysisError> {
    params.check()?;
    if activity.probability.len() != netlist.nets().len() {
        return Err(AnalysisError::MissingActivity {
            nets: netlist.nets().len(),
            covered: activity.probability.len(),
        });
    }
    let mut terms = Vec::new();
    for gate in netlist.gates() {
        let load = match params.capacitance_overrides.get(&gate.kind) {
            Some(&c) => c,
            None => {
                let transistors = costs
                    .get(gate.kind)
                    .ok_or(AnalysisError::UnknownKind(gate.kind))?;
                f64::from(transistors) * params.unit_capacitance
            }
        };
        let reduced =
            params.pass_gate_swing && matches!(gate.kind, GateKind::And(_) | GateKind::Or(_));
        let swing = if reduced {
            params.vdd - params.vt
        } else {
            params.vdd
        };
        for &net in &gate.outputs {
            let external = if netlist.net(net).role == NetRole::PrimaryOutput {
                params.output_load
            } else {
                0.0
            };
            terms.push(PowerTerm {
                capacitance: load + external,
                swing,
                probability: activity.probability[net.index()],
            });
        }
    }
    Ok(power_equation(
        &terms,
        params.f_clk,
        params.i_sc,
        params.i_leak,
        netlist.gates().len(),
        params.vdd,
        params.variant,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::NetlistBuilder;

    fn one_gate(kind: GateKind) -> Netlist {
        let mut b = NetlistBuilder::new("g");
        let ins: Vec<_> = (0..kind.input_count())
            .map(|i| b.input(format!("i{i}")).unwrap())
            .collect();
        let y = b.output("y").unwrap();
        b.add_gate(kind, &ins, &[y]).unwrap();
        b.finish()
    }

    #[test]
    fn worked_example() {
        let term = PowerTerm {
            capacitance: 0.01e-12,
            swing: 3.3,
            probability: 0.5,
        };
        let p = power_equation(&[term], 100e6, 0.0, 0.0, 1, 3.3, PowerVariant::AsPrinted);
        assert!((p.total - 1.65e-6).abs() <= 1.65e-6 * 1e-12);
        let c = power_equation(&[term], 100e6, 0.0, 0.0, 1, 3.3, PowerVariant::Conventional);
        assert!((c.total - 1.65e-6 * 3.3).abs() < 1e-15);
    }

    #[test]
    fn not_gate_alternating() {
        let nl = one_gate(GateKind::Not);
        let seq: Vec<Vec<bool>> = [false, true, false, true]
            .iter()
            .map(|&b| vec![b])
            .collect();
        let act = estimate_activity(&nl, &seq).unwrap();
        assert_eq!(act.probability, vec![1.0, 1.0]);
        let flat: Vec<Vec<bool>> = vec![vec![true]; 5];
        let act = estimate_activity(&nl, &flat).unwrap();
        assert!(act.probability.iter().all(|&p| p == 0.0));
        let p = estimate_power(&nl, &act, &PowerParams::default(), &CostModel::default()).unwrap();
        assert_eq!(p.total, 0.0);
        assert_eq!(
            estimate_activity(&nl, &seq[..1]),
            Err(AnalysisError::SequenceTooShort(1))
        );
    }

    #[test]
    fn and2_random_activity() {
        let nl = one_gate(GateKind::And(2));
        let seq = random_stimulus(InputSpace::AllBinary { width: 2 }, 10_000, 7);
        let act = estimate_activity(&nl, &seq).unwrap();
        let y = nl.outputs()[0].index();
        assert!(
            (act.probability[y] - 0.375).abs() < 0.03,
            "{}",
            act.probability[y]
        );
    }

    #[test]
    fn activity_must_cover_netlist() {
        let nl = one_gate(GateKind::Xor2);
        let act = ActivityReport {
            length: 2,
            toggles: vec![0],
            probability: vec![0.0],
        };
        assert!(matches!(
            estimate_power(&nl, &act, &PowerParams::default(), &CostModel::default()),
            Err(AnalysisError::MissingActivity { .. })
        ));
    }

    #[test]
    fn reduced_swing_lowers_dynamic_power() {
        let nl = one_gate(GateKind::And(2));
        let seq = random_stimulus(InputSpace::AllBinary { width: 2 }, 200, 1);
        let act = estimate_activity(&nl, &seq).unwrap();
        let costs = CostModel::default();
        let reduced = estimate_power(&nl, &act, &PowerParams::default(), &costs).unwrap();
        let full = estimate_power(
            &nl,
            &act,
            &PowerParams {
                pass_gate_swing: false,
                ..Default::default()
            },
            &costs,
        )
        .unwrap();
        assert!(reduced.dynamic < full.dynamic);
    }

    #[test]
    fn bad_params_rejected() {
        let p = PowerParams {
            f_clk: -1.0,
            ..Default::default()
        };
        assert!(p.check().is_err());
    }
}
