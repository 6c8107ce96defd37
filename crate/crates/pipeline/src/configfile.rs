//! The on-disk configuration format: a flat, human-editable TOML document
//! where every pipeline threshold is a top-level key. Missing keys take
//! the built-in defaults, so an empty file is a valid configuration.
//!
//! `DOCMINE_SEED` overrides both the dedup and split seeds;
//! `DOCMINE_WORKERS` sets the worker count (the CLI flag wins over both).

use std::fs;
use std::path::Path;

use docmine_core::config::PipelineConfig;
use docmine_core::quality::QualityWeights;
use docmine_core::split::SplitRatios;
use serde::Deserialize;

use crate::{PipelineError, Result};

pub const SEED_ENV_VAR: &str = "DOCMINE_SEED";
pub const WORKERS_ENV_VAR: &str = "DOCMINE_WORKERS";

/// Every recognized key, all optional. Unknown keys are rejected so typos
/// surface as validation errors naming the key.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlatConfig {
    // stage 1
    min_doc_chars: Option<usize>,
    max_doc_chars: Option<usize>,
    min_complexity: Option<u32>,
    max_complexity: Option<u32>,
    min_logical_lines: Option<u32>,
    accessor_prefixes: Option<Vec<String>>,
    accessor_max_logical_lines: Option<u32>,
    test_patterns: Option<Vec<String>>,
    placeholder_markers: Option<Vec<String>>,
    // discovery
    ignore_globs: Option<Vec<String>>,
    // stage 2
    weight_completeness: Option<f64>,
    weight_param_coverage: Option<f64>,
    weight_return_coverage: Option<f64>,
    weight_type_annotations: Option<f64>,
    weight_clarity: Option<f64>,
    weight_structural_consistency: Option<f64>,
    weight_appropriate_complexity: Option<f64>,
    weight_code_quality: Option<f64>,
    min_quality_score: Option<f64>,
    // stage 3
    minhash_k: Option<usize>,
    tau_lsh: Option<f64>,
    dedup_seed: Option<u64>,
    cross_language_dedup: Option<bool>,
    // stage 4
    alpha_gpt_phrase: Option<f64>,
    alpha_suspicious_structure: Option<f64>,
    alpha_perfect_structure: Option<f64>,
    alpha_generic_language: Option<f64>,
    tau_ai: Option<f64>,
    gpt_phrase_pack: Option<String>,
    generic_phrase_pack: Option<String>,
    // splits
    train_ratio: Option<f64>,
    validation_ratio: Option<f64>,
    test_ratio: Option<f64>,
    split_seed: Option<u64>,
}

fn build(flat: FlatConfig) -> PipelineConfig {
    let mut cfg = PipelineConfig::default();
    cfg.ignore_globs = flat
        .ignore_globs
        .unwrap_or_else(PipelineConfig::default_ignore_globs);

    let f = &mut cfg.filter;
    if let Some(v) = flat.min_doc_chars {
        f.min_doc_chars = v;
    }
    if let Some(v) = flat.max_doc_chars {
        f.max_doc_chars = v;
    }
    if let Some(v) = flat.min_complexity {
        f.min_complexity = v;
    }
    if let Some(v) = flat.max_complexity {
        f.max_complexity = v;
    }
    if let Some(v) = flat.min_logical_lines {
        f.min_logical_lines = v;
    }
    if let Some(v) = flat.accessor_prefixes {
        f.accessor_prefixes = v;
    }
    if let Some(v) = flat.accessor_max_logical_lines {
        f.accessor_max_logical_lines = v;
    }
    if let Some(v) = flat.test_patterns {
        f.test_patterns = v;
    }
    if let Some(v) = flat.placeholder_markers {
        f.placeholder_markers = v;
    }

    let defaults = QualityWeights::default();
    cfg.quality.weights = QualityWeights {
        completeness: flat.weight_completeness.unwrap_or(defaults.completeness),
        param_coverage: flat.weight_param_coverage.unwrap_or(defaults.param_coverage),
        return_coverage: flat
            .weight_return_coverage
            .unwrap_or(defaults.return_coverage),
        type_annotations: flat
            .weight_type_annotations
            .unwrap_or(defaults.type_annotations),
        clarity: flat.weight_clarity.unwrap_or(defaults.clarity),
        structural_consistency: flat
            .weight_structural_consistency
            .unwrap_or(defaults.structural_consistency),
        appropriate_complexity: flat
            .weight_appropriate_complexity
            .unwrap_or(defaults.appropriate_complexity),
        code_quality: flat.weight_code_quality.unwrap_or(defaults.code_quality),
    };
    if let Some(v) = flat.min_quality_score {
        cfg.quality.min_quality_score = v;
    }

    if let Some(v) = flat.minhash_k {
        cfg.dedup.minhash_k = v;
    }
    if let Some(v) = flat.tau_lsh {
        cfg.dedup.tau_lsh = v;
    }
    if let Some(v) = flat.dedup_seed {
        cfg.dedup.seed = v;
    }
    if let Some(v) = flat.cross_language_dedup {
        cfg.dedup.cross_language = v;
    }

    if let Some(v) = flat.alpha_gpt_phrase {
        cfg.ai.alpha_gpt_phrase = v;
    }
    if let Some(v) = flat.alpha_suspicious_structure {
        cfg.ai.alpha_suspicious_structure = v;
    }
    if let Some(v) = flat.alpha_perfect_structure {
        cfg.ai.alpha_perfect_structure = v;
    }
    if let Some(v) = flat.alpha_generic_language {
        cfg.ai.alpha_generic_language = v;
    }
    if let Some(v) = flat.tau_ai {
        cfg.ai.tau_ai = v;
    }
    if let Some(v) = flat.gpt_phrase_pack {
        cfg.ai.gpt_phrase_pack = v;
    }
    if let Some(v) = flat.generic_phrase_pack {
        cfg.ai.generic_phrase_pack = v;
    }

    cfg.split.ratios = SplitRatios {
        train: flat.train_ratio.unwrap_or(0.8),
        validation: flat.validation_ratio.unwrap_or(0.1),
        test: flat.test_ratio.unwrap_or(0.1),
    };
    if let Some(v) = flat.split_seed {
        cfg.split.seed = v;
    }
    cfg
}

/// Parse a config document; missing keys take defaults.
pub fn parse_config(text: &str) -> Result<PipelineConfig> {
    let flat: FlatConfig =
        toml::from_str(text).map_err(|e| PipelineError::validation(e.to_string()))?;
    let cfg = build(flat);
    cfg.validate()?;
    Ok(cfg)
}

/// Load and validate a config file, then apply environment overrides.
pub fn load_config(path: &Path) -> Result<PipelineConfig> {
    let text = fs::read_to_string(path).map_err(|e| PipelineError::io(path.to_path_buf(), e))?;
    let mut cfg =
        parse_config(&text).map_err(|e| PipelineError::validation(format!("{}: {e}", path.display())))?;
    apply_env_overrides(&mut cfg)?;
    Ok(cfg)
}

/// `DOCMINE_SEED` replaces both seeds so one variable pins a whole run.
pub fn apply_env_overrides(cfg: &mut PipelineConfig) -> Result<()> {
    if let Ok(raw) = std::env::var(SEED_ENV_VAR) {
        let seed: u64 = raw.parse().map_err(|_| {
            PipelineError::validation(format!("{SEED_ENV_VAR} must be an unsigned integer, got `{raw}`"))
        })?;
        cfg.dedup.seed = seed;
        cfg.split.seed = seed;
    }
    Ok(())
}

/// Worker-count override from the environment (the CLI flag wins).
pub fn env_workers() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV_VAR) {
        Ok(raw) => raw
            .parse::<usize>()
            .map(Some)
            .map_err(|_| {
                PipelineError::validation(format!(
                    "{WORKERS_ENV_VAR} must be an unsigned integer, got `{raw}`"
                ))
            }),
        Err(_) => Ok(None),
    }
}
