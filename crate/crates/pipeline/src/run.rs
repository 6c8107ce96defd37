//! End-to-end orchestration: extract, filter, score, dedup, flag,
//! assemble. Each stage's rejects go to a JSONL audit log and the funnel
//! counts land in the manifest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use docmine_core::config::PipelineConfig;
use docmine_core::dataset::{compute_stats, DatasetSample};
use docmine_core::record::FunctionRecord;
use docmine_core::split::stratified_split;
use rayon::prelude::*;
use serde::Serialize;

use crate::extract::extract_from_source;
use crate::ingest::{discover_sources, RepoSource, SourceFileRef};
use crate::output::{
    write_dataset, write_manifest, write_reports, Manifest, SplitSizes, DATASET_FILE,
    MANIFEST_FILE, REJECTS_DIR, REPORTS_DIR,
};
use crate::packs::LoadedPacks;
use crate::stages::{
    aiflag_stage, dedup_stage, filter_stage, score_stage, FunnelCounts, RejectEntry, StagedSample,
};
use crate::{PipelineError, Result};

/// Everything a run produced, for the CLI summary. Timings never reach
/// the files on disk, so outputs stay byte-reproducible.
#[derive(Debug, Serialize)]
pub struct RunSummary {
    pub funnel: FunnelCounts,
    pub splits: SplitSizes,
    pub stage_millis: Vec<(String, u128)>,
    pub dataset_path: PathBuf,
    pub manifest_path: PathBuf,
    pub reject_logs: Vec<PathBuf>,
}

/// Read every discovered file and extract its functions, in parallel,
/// merged back in deterministic (repo order, then path order) sequence.
pub fn extract_corpus(repos: &[RepoSource], config: &PipelineConfig) -> Result<Vec<FunctionRecord>> {
    let mut files: Vec<(String, SourceFileRef)> = Vec::new();
    for repo in repos {
        for file in discover_sources(repo, &config.ignore_globs)? {
            files.push((repo.repo_name.clone(), file));
        }
    }
    let batches: Vec<Vec<FunctionRecord>> = files
        .par_iter()
        .map(|(repo_name, file)| {
            let bytes = match fs::read(&file.path) {
                Ok(bytes) => bytes,
                Err(e) => {
                    log::warn!("skipping {}: {e}", file.path.display());
                    return Vec::new();
                }
            };
            let contents = String::from_utf8_lossy(&bytes);
            match extract_from_source(&contents, repo_name, &file.rel_path, file.language) {
                Some(records) => records,
                None => {
                    log::warn!("parser failure, skipping {}", file.path.display());
                    Vec::new()
                }
            }
        })
        .collect();
    Ok(batches.into_iter().flatten().collect())
}

fn write_reject_log(path: &Path, rejects: &[RejectEntry]) -> Result<()> {
    let mut file =
        fs::File::create(path).map_err(|e| PipelineError::io(path.to_path_buf(), e))?;
    for entry in rejects {
        let line = serde_json::to_string(entry)
            .map_err(|e| PipelineError::validation(e.to_string()))?;
        file.write_all(line.as_bytes())
            .and_then(|_| file.write_all(b"\n"))
            .map_err(|e| PipelineError::io(path.to_path_buf(), e))?;
    }
    Ok(())
}

/// Split, sort, and serialize the final corpus; returns the split sizes.
pub fn assemble(
    samples: Vec<StagedSample>,
    config: &PipelineConfig,
    out_dir: &Path,
    funnel: FunnelCounts,
) -> Result<(SplitSizes, PathBuf, PathBuf)> {
    fs::create_dir_all(out_dir).map_err(|e| PipelineError::io(out_dir.to_path_buf(), e))?;

    let mut dataset: Vec<DatasetSample> = Vec::with_capacity(samples.len());
    for sample in samples {
        let quality = sample.quality.ok_or_else(|| {
            PipelineError::validation(format!(
                "record {} reached assembly without a quality assessment",
                sample.record.id
            ))
        })?;
        let ai = sample.ai.ok_or_else(|| {
            PipelineError::validation(format!(
                "record {} reached assembly without an AI detection result",
                sample.record.id
            ))
        })?;
        dataset.push(DatasetSample {
            record: sample.record,
            quality,
            ai,
            split: docmine_core::split::Split::Train, // assigned below
        });
    }

    let languages: Vec<_> = dataset.iter().map(|s| s.record.language).collect();
    let (assignment, warnings) =
        stratified_split(&languages, &config.split.ratios, config.split.seed);
    for warning in warnings {
        log::warn!(
            "language group {} has only {} samples; assigning all to train",
            warning.language,
            warning.group_size
        );
    }
    for (sample, split) in dataset.iter_mut().zip(assignment) {
        sample.split = split;
    }
    dataset.sort_by(|a, b| a.record.id.cmp(&b.record.id));

    let mut funnel = funnel;
    funnel.final_count = dataset.len() as u64;
    funnel.flagged = dataset.iter().filter(|s| s.ai.flagged).count() as u64;

    let splits = SplitSizes::tally(&dataset);
    let stats = compute_stats(&dataset);

    let dataset_path = out_dir.join(DATASET_FILE);
    write_dataset(&dataset, &dataset_path)?;
    let manifest_path = out_dir.join(MANIFEST_FILE);
    write_manifest(&Manifest::new(config, funnel, splits, stats.clone()), &manifest_path)?;
    write_reports(&dataset, &funnel, &stats, &out_dir.join(REPORTS_DIR))?;
    Ok((splits, dataset_path, manifest_path))
}

/// Run every stage in order against the repos in the manifest.
pub fn run_pipeline(
    config: &PipelineConfig,
    repos: &[RepoSource],
    out_dir: &Path,
    packs: &LoadedPacks,
) -> Result<RunSummary> {
    config.validate()?;
    fs::create_dir_all(out_dir).map_err(|e| PipelineError::io(out_dir.to_path_buf(), e))?;
    let rejects_dir = out_dir.join(REJECTS_DIR);
    fs::create_dir_all(&rejects_dir).map_err(|e| PipelineError::io(rejects_dir.clone(), e))?;

    let mut funnel = FunnelCounts::default();
    let mut stage_millis = Vec::new();
    let mut reject_logs = Vec::new();

    let t = Instant::now();
    let records = extract_corpus(repos, config)?;
    funnel.extracted = records.len() as u64;
    stage_millis.push(("extract".to_string(), t.elapsed().as_millis()));

    let samples: Vec<StagedSample> = records.into_iter().map(StagedSample::new).collect();

    let t = Instant::now();
    let (samples, rejects) = filter_stage(samples, config);
    funnel.after_stage1 = samples.len() as u64;
    let log_path = rejects_dir.join("stage1_filter.jsonl");
    write_reject_log(&log_path, &rejects)?;
    reject_logs.push(log_path);
    stage_millis.push(("filter".to_string(), t.elapsed().as_millis()));

    let t = Instant::now();
    let (samples, rejects) = score_stage(samples, config);
    funnel.after_stage2 = samples.len() as u64;
    let log_path = rejects_dir.join("stage2_quality.jsonl");
    write_reject_log(&log_path, &rejects)?;
    reject_logs.push(log_path);
    stage_millis.push(("score".to_string(), t.elapsed().as_millis()));

    let t = Instant::now();
    let (samples, rejects) = dedup_stage(samples, config);
    funnel.after_stage3 = samples.len() as u64;
    let log_path = rejects_dir.join("stage3_dedup.jsonl");
    write_reject_log(&log_path, &rejects)?;
    reject_logs.push(log_path);
    stage_millis.push(("dedup".to_string(), t.elapsed().as_millis()));

    let t = Instant::now();
    let samples = aiflag_stage(samples, config, packs);
    stage_millis.push(("aiflag".to_string(), t.elapsed().as_millis()));

    let t = Instant::now();
    let (splits, dataset_path, manifest_path) = assemble(samples, config, out_dir, funnel)?;
    stage_millis.push(("assemble".to_string(), t.elapsed().as_millis()));

    // assemble fills in the flagged/final counts
    let manifest_text = fs::read_to_string(&manifest_path)
        .map_err(|e| PipelineError::io(manifest_path.clone(), e))?;
    let manifest: Manifest = serde_json::from_str(&manifest_text)
        .map_err(|e| PipelineError::validation(e.to_string()))?;

    Ok(RunSummary {
        funnel: manifest.funnel,
        splits,
        stage_millis,
        dataset_path,
        manifest_path,
        reject_logs,
    })
}
