//! Serialized outputs: the JSON-lines dataset, the run manifest, and the
//! report tables. Everything written here is byte-identical across reruns
//! with the same inputs, config, and seeds: records are sorted by id,
//! maps are ordered, and no timestamps or wall-clock values appear.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use docmine_core::aidetect::Heuristic;
use docmine_core::config::PipelineConfig;
use docmine_core::dataset::{CorpusStats, DatasetSample};
use docmine_core::dedup::{choose_bands, component_seeds};
use docmine_core::quality::QualityDimensions;
use docmine_core::record::Language;
use docmine_core::split::Split;
use serde::{Deserialize, Serialize};

use crate::stages::FunnelCounts;
use crate::{PipelineError, Result};

pub const DATASET_FILE: &str = "dataset.jsonl";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const REPORTS_DIR: &str = "reports";
pub const REJECTS_DIR: &str = "rejects";

/// Version stamp for the dataset schema below.
pub const SCHEMA_VERSION: u32 = 1;

/// One dataset line. Field order is the schema; serde preserves it.
#[derive(Debug, Serialize, Deserialize)]
pub struct OutputRecord {
    pub id: String,
    pub repo: String,
    pub path: String,
    pub language: Language,
    pub name: String,
    pub signature: String,
    pub code: String,
    pub documentation: String,
    pub start_line: u32,
    pub end_line: u32,
    pub complexity: u32,
    pub logical_lines: u32,
    pub has_type_annotations: bool,
    pub quality_score: f64,
    pub quality_dimensions: QualityDimensions,
    pub ai_score: f64,
    pub ai_flagged: bool,
    pub ai_evidence: Vec<OutputEvidence>,
    pub split: Split,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OutputEvidence {
    pub heuristic: Heuristic,
    pub alpha: f64,
    pub evidence: String,
}

fn to_output_record(sample: &DatasetSample) -> OutputRecord {
    let r = &sample.record;
    OutputRecord {
        id: r.id.clone(),
        repo: r.repo_name.clone(),
        path: r.path.clone(),
        language: r.language,
        name: r.name.clone(),
        signature: r.signature.clone(),
        code: r.code.clone(),
        documentation: r.documentation.clone(),
        start_line: r.start_line,
        end_line: r.end_line,
        complexity: r.complexity,
        logical_lines: r.logical_lines,
        has_type_annotations: r.has_type_annotations,
        quality_score: sample.quality.score,
        quality_dimensions: sample.quality.dimensions,
        ai_score: sample.ai.score,
        ai_flagged: sample.ai.flagged,
        ai_evidence: sample
            .ai
            .hits
            .iter()
            .map(|h| OutputEvidence {
                heuristic: h.heuristic,
                alpha: h.alpha,
                evidence: h.evidence.clone(),
            })
            .collect(),
        split: sample.split,
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> PipelineError + '_ {
    move |e| PipelineError::io(path.to_path_buf(), e)
}

/// Write the dataset: one JSON object per line, UTF-8, sorted by id.
pub fn write_dataset(samples: &[DatasetSample], path: &Path) -> Result<()> {
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| samples[a].record.id.cmp(&samples[b].record.id));
    let mut file = fs::File::create(path).map_err(io_err(path))?;
    for i in order {
        let line = serde_json::to_string(&to_output_record(&samples[i]))
            .map_err(|e| PipelineError::validation(e.to_string()))?;
        file.write_all(line.as_bytes()).map_err(io_err(path))?;
        file.write_all(b"\n").map_err(io_err(path))?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSizes {
    pub train: u64,
    pub validation: u64,
    pub test: u64,
}

impl SplitSizes {
    pub fn tally(samples: &[DatasetSample]) -> Self {
        let mut sizes = SplitSizes::default();
        for sample in samples {
            match sample.split {
                Split::Train => sizes.train += 1,
                Split::Validation => sizes.validation += 1,
                Split::Test => sizes.test += 1,
            }
        }
        sizes
    }
}

/// Replay parameters for the dedup stage: layout plus every derived
/// component seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DedupReplay {
    pub minhash_k: usize,
    pub tau_lsh: f64,
    pub bands: usize,
    pub rows: usize,
    pub seed: u64,
    pub component_seeds: Vec<u64>,
}

impl DedupReplay {
    pub fn from_config(config: &PipelineConfig) -> Self {
        let (bands, rows) = choose_bands(config.dedup.minhash_k, config.dedup.tau_lsh);
        Self {
            minhash_k: config.dedup.minhash_k,
            tau_lsh: config.dedup.tau_lsh,
            bands,
            rows,
            seed: config.dedup.seed,
            component_seeds: component_seeds(config.dedup.seed, config.dedup.minhash_k),
        }
    }
}

/// The run manifest: full config snapshot, funnel counts, split sizes,
/// and corpus statistics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub pipeline_version: String,
    pub schema_version: u32,
    pub config: PipelineConfig,
    pub dedup: DedupReplay,
    pub funnel: FunnelCounts,
    pub splits: SplitSizes,
    pub stats: CorpusStats,
}

impl Manifest {
    pub fn new(
        config: &PipelineConfig,
        funnel: FunnelCounts,
        splits: SplitSizes,
        stats: CorpusStats,
    ) -> Self {
        Self {
            pipeline_version: env!("CARGO_PKG_VERSION").to_string(),
            schema_version: SCHEMA_VERSION,
            config: config.clone(),
            dedup: DedupReplay::from_config(config),
            funnel,
            splits,
            stats,
        }
    }
}

pub fn write_manifest(manifest: &Manifest, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(manifest)
        .map_err(|e| PipelineError::validation(e.to_string()))?;
    fs::write(path, text + "\n").map_err(io_err(path))
}

fn median_sorted(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values[(values.len() - 1) / 2]
    }
}

/// Histogram bin width for quality scores.
pub const HISTOGRAM_BIN_WIDTH: f64 = 0.25;

/// Bin index over [0,10]; a score of exactly 10.0 lands in the last bin.
pub fn histogram_bin(score: f64) -> usize {
    let bins = (10.0 / HISTOGRAM_BIN_WIDTH) as usize;
    ((score / HISTOGRAM_BIN_WIDTH) as usize).min(bins - 1)
}

/// Write the four report tables as CSV under `out_dir`.
pub fn write_reports(
    samples: &[DatasetSample],
    funnel: &FunnelCounts,
    stats: &CorpusStats,
    reports_dir: &Path,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(reports_dir).map_err(io_err(reports_dir))?;
    let mut written = Vec::new();

    // (a) language distribution
    let path = reports_dir.join("language_distribution.csv");
    let mut text = String::from("language,count,share_pct\n");
    for (language, count) in &stats.language_counts {
        let share = if stats.total == 0 {
            0.0
        } else {
            *count as f64 / stats.total as f64 * 100.0
        };
        text.push_str(&format!("{language},{count},{share:.6}\n"));
    }
    fs::write(&path, text).map_err(io_err(&path))?;
    written.push(path);

    // (b) quality-score histogram, bin width 0.25 over [0,10]
    let path = reports_dir.join("quality_histogram.csv");
    let bins = (10.0 / HISTOGRAM_BIN_WIDTH) as usize;
    let mut counts = vec![0u64; bins];
    for sample in samples {
        counts[histogram_bin(sample.quality.score)] += 1;
    }
    let mut text = String::from("bin_start,bin_end,count\n");
    for (i, count) in counts.iter().enumerate() {
        let start = i as f64 * HISTOGRAM_BIN_WIDTH;
        text.push_str(&format!(
            "{start:.2},{:.2},{count}\n",
            start + HISTOGRAM_BIN_WIDTH
        ));
    }
    fs::write(&path, text).map_err(io_err(&path))?;
    written.push(path);

    // (c) per-language quality summary
    let path = reports_dir.join("per_language_quality.csv");
    let mut text = String::from("language,count,mean,median,stddev,min,max\n");
    for (language, _) in &stats.language_counts {
        let mut scores: Vec<f64> = samples
            .iter()
            .filter(|s| s.record.language.as_str() == language)
            .map(|s| s.quality.score)
            .collect();
        scores.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = scores.len() as f64;
        let mean = scores.iter().sum::<f64>() / n;
        let stddev =
            (scores.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n).sqrt();
        text.push_str(&format!(
            "{language},{},{mean:.6},{:.6},{stddev:.6},{:.6},{:.6}\n",
            scores.len(),
            median_sorted(&scores),
            scores[0],
            scores[scores.len() - 1],
        ));
    }
    fs::write(&path, text).map_err(io_err(&path))?;
    written.push(path);

    // (d) funnel with retention relative to extraction
    let path = reports_dir.join("funnel.csv");
    let retention = |count: u64| {
        if funnel.extracted == 0 {
            0.0
        } else {
            count as f64 / funnel.extracted as f64 * 100.0
        }
    };
    let mut text = String::from("stage,count,retention_pct\n");
    for (stage, count) in [
        ("extracted", funnel.extracted),
        ("after_stage1_basic_filter", funnel.after_stage1),
        ("after_stage2_quality", funnel.after_stage2),
        ("after_stage3_dedup", funnel.after_stage3),
        ("final", funnel.final_count),
    ] {
        text.push_str(&format!("{stage},{count},{:.6}\n", retention(count)));
    }
    fs::write(&path, text).map_err(io_err(&path))?;
    written.push(path);

    Ok(written)
}

/// Parse one dataset line back into a record (used by verification
/// tooling and tests).
pub fn parse_dataset_line(line: &str) -> Result<OutputRecord> {
    serde_json::from_str(line).map_err(|e| PipelineError::validation(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use docmine_core::aidetect::AiDetectionResult;
    use docmine_core::quality::{QualityAssessment, QualityWeights};
    use docmine_core::record::FunctionRecord;

    fn sample(id_line: u32, score: f64) -> DatasetSample {
        DatasetSample {
            record: FunctionRecord {
                id: FunctionRecord::make_id("repo", "src/a.py", id_line, "f"),
                repo_name: "repo".into(),
                path: "src/a.py".into(),
                language: Language::Python,
                name: "f".into(),
                signature: "def f(x)".into(),
                code: "def f(x):\n    return x\n".into(),
                documentation: "Returns x unchanged for identity tests.".into(),
                start_line: id_line,
                end_line: id_line + 1,
                complexity: 2,
                logical_lines: 5,
                has_type_annotations: false,
            },
            quality: QualityAssessment {
                dimensions: QualityDimensions {
                    completeness: 1.0,
                    param_coverage: 1.0,
                    return_coverage: 1.0,
                    type_annotations: 0.0,
                    clarity: 1.0,
                    structural_consistency: 1.0,
                    appropriate_complexity: 1.0,
                    code_quality: 1.0,
                },
                weights: QualityWeights::default(),
                score,
                passed: true,
            },
            ai: AiDetectionResult {
                score: 0.0,
                hits: Vec::new(),
                flagged: false,
            },
            split: Split::Train,
        }
    }

    #[test]
    fn dataset_lines_parse_and_are_sorted_by_id() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(DATASET_FILE);
        let samples = vec![sample(30, 7.0), sample(11, 6.5), sample(2, 8.0)];
        write_dataset(&samples, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let ids: Vec<String> = text
            .lines()
            .map(|l| parse_dataset_line(l).unwrap().id)
            .collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        assert_eq!(ids.len(), 3);
    }

    #[test]
    fn empty_dataset_is_an_empty_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(DATASET_FILE);
        write_dataset(&[], &path).unwrap();
        assert_eq!(std::fs::read(&path).unwrap().len(), 0);
    }

    #[test]
    fn rerun_produces_identical_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.jsonl");
        let b = dir.path().join("b.jsonl");
        let samples = vec![sample(1, 6.123456789), sample(2, 9.0)];
        write_dataset(&samples, &a).unwrap();
        write_dataset(&samples, &b).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }

    #[test]
    fn histogram_bins_quarter_width() {
        assert_eq!(histogram_bin(6.0), 24);
        assert_eq!(histogram_bin(6.24), 24);
        assert_eq!(histogram_bin(6.25), 25);
        assert_eq!(histogram_bin(0.0), 0);
        assert_eq!(histogram_bin(10.0), 39);
    }

    #[test]
    fn reports_have_expected_shapes() {
        let dir = tempfile::tempdir().unwrap();
        let samples = vec![sample(1, 6.0), sample(2, 6.0), sample(3, 6.0)];
        let stats = docmine_core::dataset::compute_stats(&samples);
        let funnel = FunnelCounts {
            extracted: 4,
            after_stage1: 4,
            after_stage2: 3,
            after_stage3: 3,
            flagged: 0,
            final_count: 3,
        };
        let written = write_reports(&samples, &funnel, &stats, dir.path()).unwrap();
        assert_eq!(written.len(), 4);

        let lang = std::fs::read_to_string(&written[0]).unwrap();
        assert_eq!(lang, "language,count,share_pct\npython,3,100.000000\n");

        // all-6.0 corpus puts the whole mass in the [6.00, 6.25) bin
        let hist = std::fs::read_to_string(&written[1]).unwrap();
        for line in hist.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            let expected = if fields[0] == "6.00" { "3" } else { "0" };
            assert_eq!(fields[2], expected, "line: {line}");
        }

        let funnel_csv = std::fs::read_to_string(&written[3]).unwrap();
        assert!(funnel_csv.contains("final,3,75.000000"));
    }
}
