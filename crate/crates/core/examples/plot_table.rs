//! Smoothed frequency table with 95% bands for one keyword.

use discourse_dynamics::classify::{plot_data, window_bins};
use discourse_dynamics::config::RunConfig;
use discourse_dynamics::pipeline::ingest;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/mini_corpus.toml");
    let cfg = RunConfig::load(&path)?;
    let out = ingest(&cfg)?;
    let radio = out.series.iter().find(|s| s.keyword == "radio").unwrap();
    let table = plot_data(&radio.articles, &radio.ads, window_bins(5.0, cfg.bin_width_days))?;
    println!("bin_start   articles (±ci)        ads (±ci)");
    for r in table.rows.iter().step_by(40) {
        println!(
            "{}  {:.4} (±{:.4})  {:.4} (±{:.4})",
            r.bin_start, r.art_smooth, r.art_ci, r.ads_smooth, r.ads_ci
        );
    }
    Ok(())
}
