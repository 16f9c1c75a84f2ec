//! Generate a small corpus with planted dynamics and write it to a
//! temporary directory.

use discourse_dynamics::ingest::{write_corpus, write_keywords};
use discourse_dynamics::synth::MiniCorpusSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = MiniCorpusSpec {
        n_bins: 120,
        ..MiniCorpusSpec::default()
    };
    let docs = spec.generate()?;
    let dir = std::env::temp_dir().join("mini_corpus_example");
    std::fs::create_dir_all(&dir)?;
    write_corpus(&dir.join("corpus.jsonl"), &docs)?;
    write_keywords(&dir.join("keywords.csv"), &spec.keyword_specs()?)?;
    println!("{} documents written to {}", docs.len(), dir.display());
    for kw in &spec.keywords {
        println!("  {:<8} {:?}", kw.canonical, kw.scenario);
    }
    Ok(())
}
