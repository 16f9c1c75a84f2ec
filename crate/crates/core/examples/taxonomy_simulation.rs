//! Classify simulated keyword pairs from each causal scenario.

use discourse_dynamics::classify::{causal_class, CausalClass};
use discourse_dynamics::granger::{bidirectional, GrangerConfig};
use discourse_dynamics::synth::{child_seed, CausalScenario, ScenarioParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = ScenarioParams::default();
    let cfg = GrangerConfig::default();
    let scenarios = [
        CausalScenario::AdsLead,
        CausalScenario::ArticlesLead,
        CausalScenario::CommonDriver,
        CausalScenario::Independent,
    ];
    for (i, scenario) in scenarios.into_iter().enumerate() {
        let mut counts = [0usize; 4];
        for rep in 0..50 {
            let (ads, art) = scenario.generate(&params, child_seed(i as u64, rep))?;
            let r = bidirectional(&ads, &art, &cfg)?;
            let class = causal_class(r.p_xy, r.p_yx, cfg.alpha);
            counts[CausalClass::ALL.iter().position(|c| *c == class).unwrap()] += 1;
        }
        let row: Vec<String> = CausalClass::ALL
            .iter()
            .zip(counts)
            .map(|(c, n)| format!("{c} {n}"))
            .collect();
        println!("{scenario:?}: {}", row.join(", "));
    }
    Ok(())
}
