//! Bin the bundled mini-corpus into biennial keyword series.

use discourse_dynamics::config::RunConfig;
use discourse_dynamics::pipeline::ingest;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/mini_corpus.toml");
    let cfg = RunConfig {
        bin_width_days: 730,
        ..RunConfig::load(&path)?
    };
    let out = ingest(&cfg)?;
    println!("{} documents, {} bins", out.n_documents, out.grid.n_bins);
    for ks in &out.series {
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        println!(
            "{:<10} articles {:.4}  ads {:.4}",
            ks.keyword,
            mean(ks.articles.values()),
            mean(ks.ads.values())
        );
    }
    Ok(())
}
