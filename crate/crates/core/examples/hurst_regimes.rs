//! AFA on fractional Gaussian noise across persistence regimes, plus a
//! random walk.

use discourse_dynamics::afa::{estimate_hurst, AfaConfig};
use discourse_dynamics::synth::{cumulative_sum, gen_fgn, FgnSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = AfaConfig::default();
    for hurst in [0.2, 0.5, 0.8] {
        let x = gen_fgn(&FgnSpec { n: 8192, hurst, seed: 1 })?;
        let r = estimate_hurst(&x, &cfg)?;
        println!("fGn H={hurst}: estimate {:.3} ± {:.3}", r.hurst, r.slope_stderr);
    }
    let walk = cumulative_sum(&gen_fgn(&FgnSpec { n: 8192, hurst: 0.5, seed: 2 })?);
    println!("random walk: estimate {:.3}", estimate_hurst(&walk, &cfg)?.hurst);
    Ok(())
}
