//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the process exit status.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::afa::estimate_hurst;
use crate::config::{ReportFormatSetting, RunConfig};
use crate::error::{Error, Result};
use crate::granger::{bidirectional, LagSelection};
use crate::ingest::{write_corpus, write_keywords, Aggregation};
use crate::pipeline;
use crate::synth::{gen_fgn, gen_var, FgnSpec, MiniCorpusSpec, VarSpec, RNG_ALGORITHM};
use crate::validate;

#[derive(Debug, Parser)]
#[command(name = "discourse-dynamics", version, about = "Keyword dynamics across articles and advertisements")]
pub struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory (overrides the config).
    #[arg(long, global = true, value_name = "DIR")]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Suppress progress output and warnings.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bin keyword frequencies into per-discourse series files.
    Ingest(CorpusArgs),
    /// Classify every keyword and write report.csv / summary.json.
    Analyze {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        granger: GrangerArgs,
        #[arg(long)]
        format: Option<FormatArg>,
    },
    /// Hurst exponent of a single-column series.
    Afa {
        series: PathBuf,
        #[arg(long)]
        poly_order: Option<usize>,
    },
    /// Bidirectional Granger test between two single-column series (x then y).
    Granger {
        x: PathBuf,
        y: PathBuf,
        #[command(flatten)]
        granger: GrangerArgs,
        /// Test the series as given instead of their first differences.
        #[arg(long)]
        no_difference: bool,
    },
    /// Generate synthetic signals.
    Synth {
        #[command(subcommand)]
        kind: SynthCommand,
    },
    /// Run the calibration batteries.
    Validate {
        #[arg(long)]
        hurst: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        reps: Option<usize>,
    },
    /// Write smoothed plot tables per keyword and print the last summary.
    Report(CorpusArgs),
}

#[derive(Debug, Subcommand)]
pub enum SynthCommand {
    Fgn {
        #[arg(long, default_value_t = 8192)]
        n: usize,
        #[arg(long, default_value_t = 0.7)]
        hurst: f64,
    },
    Var {
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        axy: f64,
        #[arg(long, default_value_t = 0.0)]
        ayx: f64,
        #[arg(long, default_value_t = 0.3)]
        axx: f64,
        #[arg(long, default_value_t = 0.3)]
        ayy: f64,
        #[arg(long, default_value_t = 1.0)]
        noise_sd: f64,
    },
    /// The bundled mini-corpus and its keyword list.
    Corpus,
}

#[derive(Debug, Clone, Args)]
pub struct CorpusArgs {
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long)]
    pub keywords: Option<PathBuf>,
    #[arg(long, value_name = "DAYS")]
    pub bin_width: Option<u32>,
    #[arg(long)]
    pub aggregation: Option<AggregationArg>,
}

#[derive(Debug, Clone, Args)]
pub struct GrangerArgs {
    #[arg(long)]
    pub max_lag: Option<usize>,
    #[arg(long, conflicts_with = "max_lag")]
    pub fixed_lag: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AggregationArg {
    PerDocMean,
    Pooled,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

/// Parses `args` (including the program name), runs and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let level = if cli.quiet { log::LevelFilter::Error } else { log::LevelFilter::Warn };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .format_target(false)
        .try_init();
    log::set_max_level(level);
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

struct Ctx {
    cfg: RunConfig,
    quiet: bool,
}

impl Ctx {
    fn say(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            let _ = writeln!(std::io::stdout(), "{}", msg.as_ref());
        }
    }

    fn out_dir(&self) -> Result<&Path> {
        let dir = self.cfg.output_dir.as_path();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        Ok(dir)
    }
}

fn base_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(o) = &cli.output {
        cfg.output_dir = o.clone();
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn apply_corpus(cfg: &mut RunConfig, a: &CorpusArgs) {
    if let Some(p) = &a.corpus {
        cfg.corpus_path = Some(p.clone());
    }
    if let Some(p) = &a.keywords {
        cfg.keywords_path = Some(p.clone());
    }
    if let Some(w) = a.bin_width {
        cfg.bin_width_days = w;
    }
    if let Some(agg) = a.aggregation {
        cfg.aggregation = match agg {
            AggregationArg::PerDocMean => Aggregation::PerDocMean,
            AggregationArg::Pooled => Aggregation::Pooled,
        };
    }
}

fn apply_granger(cfg: &mut RunConfig, a: &GrangerArgs) {
    if let Some(k) = a.max_lag {
        cfg.granger.max_lag = k;
        cfg.granger.lag_selection = LagSelection::Bic;
    }
    if let Some(k) = a.fixed_lag {
        cfg.granger.lag_selection = LagSelection::Fixed(k);
    }
    if let Some(alpha) = a.alpha {
        cfg.alpha = alpha;
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let mut cfg = base_config(cli)?;
    match &cli.command {
        Command::Ingest(a) | Command::Report(a) => apply_corpus(&mut cfg, a),
        Command::Analyze { corpus, granger, format } => {
            apply_corpus(&mut cfg, corpus);
            apply_granger(&mut cfg, granger);
            if let Some(f) = format {
                cfg.report_format = match f {
                    FormatArg::Csv => ReportFormatSetting::Csv,
                    FormatArg::Json => ReportFormatSetting::Json,
                };
            }
        }
        Command::Granger { granger, no_difference, .. } => {
            apply_granger(&mut cfg, granger);
            if *no_difference {
                cfg.granger.difference = false;
            }
        }
        Command::Afa { poly_order: Some(m), .. } => cfg.afa.poly_order = *m,
        _ => {}
    }
    cfg.validate()?;
    let ctx = Ctx { cfg, quiet: cli.quiet };

    match &cli.command {
        Command::Ingest(_) => cmd_ingest(&ctx),
        Command::Analyze { .. } => cmd_analyze(&ctx),
        Command::Afa { series, .. } => cmd_afa(&ctx, series),
        Command::Granger { x, y, .. } => cmd_granger(&ctx, x, y),
        Command::Synth { kind } => cmd_synth(&ctx, kind),
        Command::Validate { hurst, n, reps } => cmd_validate(&ctx, *hurst, *n, *reps),
        Command::Report(_) => cmd_report(&ctx),
    }
}

fn cmd_ingest(ctx: &Ctx) -> Result<()> {
    let out = pipeline::ingest(&ctx.cfg)?;
    let paths = pipeline::write_series(ctx.out_dir()?, &out)?;
    ctx.say(format!(
        "{} documents ({} without tokens), {} keywords, {} bins of {} days; wrote {} series files",
        out.n_documents,
        out.degenerate_documents,
        out.series.len(),
        out.grid.n_bins,
        out.grid.width_days,
        paths.len()
    ));
    Ok(())
}

fn cmd_analyze(ctx: &Ctx) -> Result<()> {
    let dir = ctx.out_dir()?;
    let a = pipeline::run_analysis(&ctx.cfg, dir)?;
    let s = &a.summary;
    ctx.say(format!(
        "{} keywords ({} skipped): shaping {:.1}%, reflecting {:.1}%, complex {:.1}%, none {:.1}%",
        s.n_keywords,
        s.skipped.len(),
        s.pct_shaping,
        s.pct_reflecting,
        s.pct_complex,
        s.pct_none
    ));
    ctx.say(format!(
        "mean H articles {:.3}, advertisements {:.3}; report in {}",
        s.mean_h_art,
        s.mean_h_ads,
        dir.display()
    ));
    Ok(())
}

/// Reads a single-column numeric file; a non-numeric first line is a header.
pub fn read_column(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let field = line.trim();
        if field.is_empty() {
            continue;
        }
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Err(_) if i == 0 && !field.contains(',') => {}
            _ => {
                return Err(Error::MalformedRecord {
                    path: path.to_path_buf(),
                    line: i + 1,
                    message: format!("expected one finite number, got `{field}`"),
                })
            }
        }
    }
    Ok(values)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::io(path, e.into()))?;
    s.push('\n');
    std::fs::write(path, s).map_err(|e| Error::io(path, e))
}

fn cmd_afa(ctx: &Ctx, series: &Path) -> Result<()> {
    let values = read_column(series)?;
    let res = estimate_hurst(&values, &ctx.cfg.afa)?;
    let dir = ctx.out_dir()?;
    write_json(&dir.join("afa.json"), &res)?;
    let mut csv = String::from("log2w,log2F\n");
    for (w, f) in res.log2_w.iter().zip(&res.log2_f) {
        csv.push_str(&format!("{w},{f}\n"));
    }
    let p = dir.join("afa_loglog.csv");
    std::fs::write(&p, csv).map_err(|e| Error::io(&p, e))?;
    ctx.say(format!(
        "H = {:.4} (se {:.4}, R² {:.4}) over {} windows",
        res.hurst,
        res.slope_stderr,
        res.r_squared,
        res.window_sizes.len()
    ));
    Ok(())
}

fn cmd_granger(ctx: &Ctx, x: &Path, y: &Path) -> Result<()> {
    let res = bidirectional(&read_column(x)?, &read_column(y)?, &ctx.cfg.granger_config())?;
    write_json(&ctx.out_dir()?.join("granger.json"), &res)?;
    ctx.say(serde_json::to_string_pretty(&res).map_err(|e| Error::io(x, e.into()))?);
    Ok(())
}

#[derive(Serialize)]
struct SynthMeta<'a, T: Serialize> {
    rng: &'a str,
    spec: T,
}

fn cmd_synth(ctx: &Ctx, kind: &SynthCommand) -> Result<()> {
    let dir = ctx.out_dir()?;
    let seed = ctx.cfg.seed;
    match *kind {
        SynthCommand::Fgn { n, hurst } => {
            let spec = FgnSpec { n, hurst, seed };
            let values = gen_fgn(&spec)?;
            let mut csv = String::from("value\n");
            for v in &values {
                csv.push_str(&format!("{v}\n"));
            }
            let p = dir.join("fgn.csv");
            std::fs::write(&p, csv).map_err(|e| Error::io(&p, e))?;
            write_json(&dir.join("fgn.meta.json"), &SynthMeta { rng: RNG_ALGORITHM, spec })?;
            ctx.say(format!("wrote {} fGn samples to {}", values.len(), p.display()));
        }
        SynthCommand::Var { n, axy, ayx, axx, ayy, noise_sd } => {
            let spec = VarSpec {
                n,
                a_xx: axx,
                a_yy: ayy,
                a_xy: axy,
                a_yx: ayx,
                noise_sd,
                seed,
            };
            let (x, y) = gen_var(&spec)?;
            let mut csv = String::from("x,y\n");
            for (a, b) in x.iter().zip(&y) {
                csv.push_str(&format!("{a},{b}\n"));
            }
            let p = dir.join("var.csv");
            std::fs::write(&p, csv).map_err(|e| Error::io(&p, e))?;
            write_json(&dir.join("var.meta.json"), &SynthMeta { rng: RNG_ALGORITHM, spec })?;
            ctx.say(format!("wrote {} VAR pairs to {}", x.len(), p.display()));
        }
        SynthCommand::Corpus => {
            let spec = MiniCorpusSpec {
                seed,
                ..MiniCorpusSpec::default()
            };
            let docs = spec.generate()?;
            write_corpus(&dir.join("mini_corpus.jsonl"), &docs)?;
            write_keywords(&dir.join("keywords.csv"), &spec.keyword_specs()?)?;
            write_json(&dir.join("mini_corpus.meta.json"), &SynthMeta { rng: RNG_ALGORITHM, spec })?;
            ctx.say(format!("wrote {} documents to {}", docs.len(), dir.display()));
        }
    }
    Ok(())
}

fn cmd_validate(ctx: &Ctx, hurst: Option<f64>, n: Option<usize>, reps: Option<usize>) -> Result<()> {
    let seed = ctx.cfg.seed;
    let outcomes = if hurst.is_some() || n.is_some() || reps.is_some() {
        let reps = reps.unwrap_or(20);
        let n = n.unwrap_or(8192);
        match hurst {
            Some(h) => vec![validate::hurst_battery(h, n, reps, seed)?],
            None => [0.3, 0.5, 0.7, 0.9]
                .into_iter()
                .map(|h| validate::hurst_battery(h, n, reps, seed))
                .collect::<Result<_>>()?,
        }
    } else {
        validate::default_batteries(seed)?
    };
    ctx.say(validate::format_table(&outcomes));
    write_json(&ctx.out_dir()?.join("validation.json"), &outcomes)?;
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.name.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::ValidationFailed(failed.join("; ")))
    }
}

fn cmd_report(ctx: &Ctx) -> Result<()> {
    let input = pipeline::ingest(&ctx.cfg)?;
    let dir = ctx.out_dir()?;
    let plots = pipeline::write_plots(dir, &input.series, ctx.cfg.smoothing_window())?;
    ctx.say(format!(
        "wrote {} plot tables (window {} bins) to {}",
        plots.len(),
        ctx.cfg.smoothing_window(),
        dir.join("plots").display()
    ));
    let summary = dir.join("summary.json");
    if summary.exists() {
        let text = std::fs::read_to_string(&summary).map_err(|e| Error::io(&summary, e))?;
        ctx.say(text.trim_end());
    }
    Ok(())
}
