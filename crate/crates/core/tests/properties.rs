use bcdkit::analysis::{
    estimate_activity, estimate_power, random_stimulus, transistor_cost, CostModel, PowerParams,
};
use bcdkit::cli::document::{netlist_from_json, netlist_to_json};
use bcdkit::generators::{gen_bcd_chain, gen_bcd_digit, AdderStyle, BcdChainSpec};
use bcdkit::verify::{oracle_bcd_add, InputSpace, Oracle};
use proptest::prelude::*;

fn style() -> impl Strategy<Value = AdderStyle> {
    prop::sample::select(AdderStyle::BCD.to_vec())
}

fn digits_of(mut v: u64, n: usize) -> Vec<u8> {
    (0..n)
        .map(|_| {
            let d = (v % 10) as u8;
            v /= 10;
            d
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_matches_oracle(style in style(), n in 1usize..9, a in any::<u64>(), b in any::<u64>(), cin: bool) {
        let m = 10u64.pow(n as u32);
        let (a, b) = (a % m, b % m);
        let nl = gen_bcd_chain(BcdChainSpec::new(n as u32, style)).unwrap();
        let mut input = Vec::new();
        InputSpace::BcdValid { digits: n }.vector(u64::from(cin) + 2 * (a + m * b), &mut input);
        let got = nl.evaluate(&input).unwrap();
        let mut want = Vec::new();
        Oracle::BcdAdd { digits: n }.expected(&input, &mut want);
        prop_assert_eq!(&got, &want);
        prop_assert_eq!(nl.evaluate(&input).unwrap(), got);
    }

    #[test]
    fn bcd_oracle_is_decimal_addition(n in 1usize..12, a in any::<u64>(), b in any::<u64>(), cin: bool) {
        let m = 10u64.pow(n as u32);
        let (a, b) = (a % m, b % m);
        let (sum, cout) = oracle_bcd_add(&digits_of(a, n), &digits_of(b, n), cin).unwrap();
        let total = a + b + u64::from(cin);
        prop_assert_eq!(sum, digits_of(total % m, n));
        prop_assert_eq!(cout, total >= m);
    }

    #[test]
    fn chain_cost_is_additive(style in style(), n in 1u32..20) {
        let model = CostModel::default();
        let digit = transistor_cost(&gen_bcd_digit(style).unwrap(), &model).unwrap().total;
        let chain = transistor_cost(&gen_bcd_chain(BcdChainSpec::new(n, style)).unwrap(), &model).unwrap().total;
        prop_assert_eq!(chain, n * digit);
    }

    #[test]
    fn documents_round_trip(style in style(), n in 1u32..6) {
        let text = netlist_to_json(&gen_bcd_chain(BcdChainSpec::new(n, style)).unwrap());
        prop_assert_eq!(netlist_to_json(&netlist_from_json(&text).unwrap()), text);
    }

    #[test]
    fn power_is_monotone(seed: u64, f1 in 1e6f64..1e9, f2 in 1e6f64..1e9, load1 in 0.0f64..1e-12, load2 in 0.0f64..1e-12) {
        let nl = gen_bcd_digit(AdderStyle::Ncla).unwrap();
        let activity = estimate_activity(&nl, &random_stimulus(InputSpace::BcdValid { digits: 1 }, 64, seed)).unwrap();
        let costs = CostModel::default();
        let at = |f: f64, load: f64| {
            let p = PowerParams { f_clk: f, output_load: load, i_leak: 1e-9, ..PowerParams::default() };
            estimate_power(&nl, &activity, &p, &costs).unwrap().total
        };
        let (flo, fhi) = (f1.min(f2), f1.max(f2));
        let (llo, lhi) = (load1.min(load2), load1.max(load2));
        prop_assert!(at(flo, llo) <= at(fhi, llo));
        prop_assert!(at(flo, llo) <= at(flo, lhi));
    }
}
