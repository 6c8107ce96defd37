//! `docmine` CLI: a full-run command plus a per-stage command that
//! streams JSON lines, so every stage can be audited in isolation.
//!
//! Exit codes: 0 success, 1 usage, 2 I/O, 3 validation.

use std::fs;
use std::io::{BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use docmine::configfile::{self, load_config};
use docmine::core::config::PipelineConfig;
use docmine::ingest::load_repo_manifest;
use docmine::output::Manifest;
use docmine::packs::load_packs;
use docmine::run::{assemble, extract_corpus, run_pipeline, RunSummary};
use docmine::stages::{
    aiflag_stage, dedup_stage, filter_stage, score_stage, FunnelCounts, RejectEntry, StagedSample,
};
use docmine::{PipelineError, Result};

#[derive(Parser)]
#[command(
    name = "docmine",
    version,
    about = "Curate function-documentation pairs from multi-language source trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run all stages end to end and write the dataset, manifest,
    /// reports, and reject logs
    Run {
        /// Pipeline configuration (TOML; empty file = defaults)
        #[arg(long)]
        config: PathBuf,
        /// Repository manifest listing local checkouts to mine
        #[arg(long)]
        repos: PathBuf,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Worker threads for the parallel sections
        #[arg(long)]
        workers: Option<usize>,
        /// Override both the dedup and split seeds
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run exactly one stage over JSON-lines streams (stdin -> stdout)
    Stage {
        /// One of: extract, filter, score, dedup, aiflag, assemble
        #[arg(long)]
        stage: String,
        /// Pipeline configuration; defaults apply when omitted
        #[arg(long)]
        config: Option<PathBuf>,
        /// Repository manifest (required for the extract stage)
        #[arg(long)]
        repos: Option<PathBuf>,
        /// Output directory (required for the assemble stage)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Shared funnel-counts file updated by each stage so a chained
        /// run produces the same manifest as `docmine run`
        #[arg(long)]
        funnel: Option<PathBuf>,
        /// Where to write this stage's reject log (JSONL)
        #[arg(long)]
        reject_log: Option<PathBuf>,
        /// Worker threads for the parallel sections
        #[arg(long)]
        workers: Option<usize>,
        /// Override both the dedup and split seeds
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1u8,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn configure_workers(flag: Option<usize>) -> Result<()> {
    let workers = match flag {
        Some(w) => Some(w),
        None => configfile::env_workers()?,
    };
    if let Some(workers) = workers {
        if workers == 0 {
            return Err(PipelineError::usage("--workers must be at least 1"));
        }
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    Ok(())
}

fn load_or_default_config(
    path: Option<&Path>,
    seed: Option<u64>,
) -> Result<(PipelineConfig, PathBuf)> {
    let (mut config, base_dir) = match path {
        Some(path) => {
            let config = load_config(path)?;
            let dir = path
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .unwrap_or_else(|| Path::new("."))
                .to_path_buf();
            (config, dir)
        }
        None => {
            let mut config = PipelineConfig::default();
            configfile::apply_env_overrides(&mut config)?;
            (config, PathBuf::from("."))
        }
    };
    if let Some(seed) = seed {
        config.dedup.seed = seed;
        config.split.seed = seed;
    }
    config.validate()?;
    Ok((config, base_dir))
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run {
            config,
            repos,
            out,
            workers,
            seed,
        } => {
            configure_workers(workers)?;
            let (config, base_dir) = load_or_default_config(Some(&config), seed)?;
            let repos = load_repo_manifest(&repos)?;
            let packs = load_packs(&config.ai, &base_dir)?;
            let summary = run_pipeline(&config, &repos, &out, &packs)?;
            print_summary(&summary);
            Ok(())
        }
        Command::Stage {
            stage,
            config,
            repos,
            out,
            funnel,
            reject_log,
            workers,
            seed,
        } => {
            configure_workers(workers)?;
            let (config, base_dir) = load_or_default_config(config.as_deref(), seed)?;
            run_stage(
                &stage,
                &config,
                &base_dir,
                repos.as_deref(),
                out.as_deref(),
                funnel.as_deref(),
                reject_log.as_deref(),
            )
        }
    }
}

fn print_summary(summary: &RunSummary) {
    println!("funnel:");
    println!("  extracted      {}", summary.funnel.extracted);
    println!("  after stage 1  {}", summary.funnel.after_stage1);
    println!("  after stage 2  {}", summary.funnel.after_stage2);
    println!("  after stage 3  {}", summary.funnel.after_stage3);
    println!("  flagged        {}", summary.funnel.flagged);
    println!("  final          {}", summary.funnel.final_count);
    println!(
        "splits: train {} / validation {} / test {}",
        summary.splits.train, summary.splits.validation, summary.splits.test
    );
    let timings: Vec<String> = summary
        .stage_millis
        .iter()
        .map(|(stage, ms)| format!("{stage} {ms}ms"))
        .collect();
    println!("timings: {}", timings.join(", "));
    println!("dataset: {}", summary.dataset_path.display());
    println!("manifest: {}", summary.manifest_path.display());
    for log in &summary.reject_logs {
        println!("rejects: {}", log.display());
    }
}

fn read_stdin_samples() -> Result<Vec<StagedSample>> {
    let stdin = std::io::stdin();
    let mut samples = Vec::new();
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| PipelineError::io(PathBuf::from("<stdin>"), e))?;
        if line.trim().is_empty() {
            continue;
        }
        let sample: StagedSample = serde_json::from_str(&line)
            .map_err(|e| PipelineError::validation(format!("bad input line: {e}")))?;
        samples.push(sample);
    }
    Ok(samples)
}

fn write_stdout_samples(samples: &[StagedSample]) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for sample in samples {
        let line = serde_json::to_string(sample)
            .map_err(|e| PipelineError::validation(e.to_string()))?;
        out.write_all(line.as_bytes())
            .and_then(|_| out.write_all(b"\n"))
            .map_err(|e| PipelineError::io(PathBuf::from("<stdout>"), e))?;
    }
    out.flush()
        .map_err(|e| PipelineError::io(PathBuf::from("<stdout>"), e))
}

fn write_rejects(path: Option<&Path>, rejects: &[RejectEntry]) -> Result<()> {
    let Some(path) = path else {
        return Ok(());
    };
    let mut text = String::new();
    for entry in rejects {
        text.push_str(
            &serde_json::to_string(entry).map_err(|e| PipelineError::validation(e.to_string()))?,
        );
        text.push('\n');
    }
    fs::write(path, text).map_err(|e| PipelineError::io(path.to_path_buf(), e))
}

fn read_funnel(path: &Path) -> Result<FunnelCounts> {
    if !path.exists() {
        return Ok(FunnelCounts::default());
    }
    let text = fs::read_to_string(path).map_err(|e| PipelineError::io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| PipelineError::validation(e.to_string()))
}

fn update_funnel(path: Option<&Path>, update: impl FnOnce(&mut FunnelCounts)) -> Result<()> {
    let Some(path) = path else {
        return Ok(());
    };
    let mut counts = read_funnel(path)?;
    update(&mut counts);
    let text = serde_json::to_string_pretty(&counts)
        .map_err(|e| PipelineError::validation(e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| PipelineError::io(path.to_path_buf(), e))
}

fn run_stage(
    stage: &str,
    config: &PipelineConfig,
    base_dir: &Path,
    repos: Option<&Path>,
    out: Option<&Path>,
    funnel: Option<&Path>,
    reject_log: Option<&Path>,
) -> Result<()> {
    match stage {
        "extract" => {
            let repos_path = repos.ok_or_else(|| {
                PipelineError::usage("--repos is required for the extract stage")
            })?;
            let repos = load_repo_manifest(repos_path)?;
            let records = extract_corpus(&repos, config)?;
            let samples: Vec<StagedSample> = records.into_iter().map(StagedSample::new).collect();
            update_funnel(funnel, |f| f.extracted = samples.len() as u64)?;
            write_stdout_samples(&samples)
        }
        "filter" => {
            let (kept, rejects) = filter_stage(read_stdin_samples()?, config);
            write_rejects(reject_log, &rejects)?;
            update_funnel(funnel, |f| f.after_stage1 = kept.len() as u64)?;
            write_stdout_samples(&kept)
        }
        "score" => {
            let (kept, rejects) = score_stage(read_stdin_samples()?, config);
            write_rejects(reject_log, &rejects)?;
            update_funnel(funnel, |f| f.after_stage2 = kept.len() as u64)?;
            write_stdout_samples(&kept)
        }
        "dedup" => {
            let (kept, rejects) = dedup_stage(read_stdin_samples()?, config);
            write_rejects(reject_log, &rejects)?;
            update_funnel(funnel, |f| f.after_stage3 = kept.len() as u64)?;
            write_stdout_samples(&kept)
        }
        "aiflag" => {
            let packs = load_packs(&config.ai, base_dir)?;
            let samples = aiflag_stage(read_stdin_samples()?, config, &packs);
            let flagged = samples
                .iter()
                .filter(|s| s.ai.as_ref().map(|a| a.flagged).unwrap_or(false))
                .count() as u64;
            update_funnel(funnel, |f| f.flagged = flagged)?;
            write_stdout_samples(&samples)
        }
        "assemble" => {
            let out_dir = out.ok_or_else(|| {
                PipelineError::usage("--out is required for the assemble stage")
            })?;
            let samples = read_stdin_samples()?;
            let counts = match funnel {
                Some(path) => read_funnel(path)?,
                None => {
                    // Without stage-chained counts the funnel degenerates
                    // to the assembled corpus size at every stage.
                    let n = samples.len() as u64;
                    FunnelCounts {
                        extracted: n,
                        after_stage1: n,
                        after_stage2: n,
                        after_stage3: n,
                        flagged: 0,
                        final_count: n,
                    }
                }
            };
            let (splits, dataset_path, manifest_path) =
                assemble(samples, config, out_dir, counts)?;
            let manifest_text = fs::read_to_string(&manifest_path)
                .map_err(|e| PipelineError::io(manifest_path.clone(), e))?;
            let manifest: Manifest = serde_json::from_str(&manifest_text)
                .map_err(|e| PipelineError::validation(e.to_string()))?;
            update_funnel(funnel, |f| {
                f.final_count = manifest.funnel.final_count;
                f.flagged = manifest.funnel.flagged;
            })?;
            eprintln!(
                "assembled {} samples (train {} / validation {} / test {}) -> {}",
                splits.train + splits.validation + splits.test,
                splits.train,
                splits.validation,
                splits.test,
                dataset_path.display()
            );
            Ok(())
        }
        other => Err(PipelineError::usage(format!(
            "unknown stage `{other}`; expected one of extract, filter, score, dedup, aiflag, assemble"
        ))),
    }
}
