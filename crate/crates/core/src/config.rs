//! Central pipeline configuration. Every threshold, weight, and seed used
//! by any stage lives here so a manifest snapshot fully describes a run.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::vec;
use serde::{Deserialize, Serialize};

use crate::aidetect::AiParams;
use crate::dedup::DedupParams;
use crate::quality::QualityWeights;
use crate::split::SplitRatios;

/// Stage-1 thresholds and name/content heuristics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterParams {
    /// Minimum documentation length in characters, inclusive.
    pub min_doc_chars: usize,
    /// Maximum documentation length in characters, inclusive.
    pub max_doc_chars: usize,
    /// Minimum cyclomatic complexity, inclusive. McCabe complexity is
    /// always >= 1, so the default of 1 never fires; the key is kept so
    /// the full threshold table stays configurable.
    pub min_complexity: u32,
    /// Maximum cyclomatic complexity, inclusive.
    pub max_complexity: u32,
    /// Minimum logical (non-blank, non-comment) lines, inclusive.
    pub min_logical_lines: u32,
    /// Name prefixes that mark trivial accessors when the body is small.
    pub accessor_prefixes: Vec<String>,
    /// Accessor prefix only rejects when logical lines <= this bound.
    pub accessor_max_logical_lines: u32,
    /// Patterns matched against function names (prefix/suffix) and path
    /// segments (containment) to exclude test code.
    pub test_patterns: Vec<String>,
    /// Tokens that mark placeholder documentation.
    pub placeholder_markers: Vec<String>,
}

impl Default for FilterParams {
    fn default() -> Self {
        Self {
            min_doc_chars: 20,
            max_doc_chars: 10_000,
            min_complexity: 1,
            max_complexity: 50,
            min_logical_lines: 5,
            accessor_prefixes: vec![
                "get".to_string(),
                "set".to_string(),
                "is".to_string(),
                "has".to_string(),
            ],
            accessor_max_logical_lines: 3,
            test_patterns: vec![
                "test_".to_string(),
                "test".to_string(),
                "Test".to_string(),
                "TEST".to_string(),
                "_test".to_string(),
            ],
            placeholder_markers: vec![
                "TODO".to_string(),
                "FIXME".to_string(),
                "XXX".to_string(),
            ],
        }
    }
}

/// Stage-2 parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityParams {
    pub weights: QualityWeights,
    /// Retention gate on the combined [0,10] score, inclusive.
    pub min_quality_score: f64,
}

impl Default for QualityParams {
    fn default() -> Self {
        Self {
            weights: QualityWeights::default(),
            min_quality_score: 6.0,
        }
    }
}

/// Split ratios plus the shuffle seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitParams {
    pub ratios: SplitRatios,
    pub seed: u64,
}

impl Default for SplitParams {
    fn default() -> Self {
        Self {
            ratios: SplitRatios::default(),
            seed: 42,
        }
    }
}

/// Full pipeline configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub filter: FilterParams,
    pub quality: QualityParams,
    pub dedup: DedupParams,
    pub ai: AiParams,
    pub split: SplitParams,
    /// Directory names (or simple `*` globs) excluded during discovery.
    pub ignore_globs: Vec<String>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            filter: FilterParams::default(),
            quality: QualityParams::default(),
            dedup: DedupParams::default(),
            ai: AiParams::default(),
            split: SplitParams::default(),
            ignore_globs: Self::default_ignore_globs(),
        }
    }
}

impl PipelineConfig {
    pub fn default_ignore_globs() -> Vec<String> {
        vec![
            "node_modules".to_string(),
            "build".to_string(),
            "dist".to_string(),
            "target".to_string(),
            ".git".to_string(),
        ]
    }

    /// Check every cross-field invariant; returns the offending key.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let f = &self.filter;
        if f.min_doc_chars > f.max_doc_chars {
            return Err(ConfigError::invalid(
                "min_doc_chars",
                "must not exceed max_doc_chars",
            ));
        }
        if f.min_complexity > f.max_complexity {
            return Err(ConfigError::invalid(
                "min_complexity",
                "must not exceed max_complexity",
            ));
        }

        let w = &self.quality.weights;
        for (key, value) in w.entries() {
            if !(value > 0.0) {
                return Err(ConfigError::invalid(key, "quality weights must be > 0"));
            }
        }
        if !(0.0..=10.0).contains(&self.quality.min_quality_score) {
            return Err(ConfigError::invalid(
                "min_quality_score",
                "must lie in [0, 10]",
            ));
        }

        let d = &self.dedup;
        if d.minhash_k == 0 {
            return Err(ConfigError::invalid("minhash_k", "must be >= 1"));
        }
        if !(d.tau_lsh > 0.0 && d.tau_lsh < 1.0) {
            return Err(ConfigError::invalid(
                "tau_lsh",
                "must lie strictly in (0, 1)",
            ));
        }

        let a = &self.ai;
        if !(a.tau_ai > 0.0 && a.tau_ai <= 1.0) {
            return Err(ConfigError::invalid("tau_ai", "must lie in (0, 1]"));
        }
        for (key, value) in [
            ("alpha_gpt_phrase", a.alpha_gpt_phrase),
            ("alpha_suspicious_structure", a.alpha_suspicious_structure),
            ("alpha_perfect_structure", a.alpha_perfect_structure),
            ("alpha_generic_language", a.alpha_generic_language),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(ConfigError::invalid(key, "alpha must lie in [0, 1]"));
            }
        }

        let r = &self.split.ratios;
        for (key, value) in [
            ("train_ratio", r.train),
            ("validation_ratio", r.validation),
            ("test_ratio", r.test),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(ConfigError::invalid(key, "ratio must lie in [0, 1]"));
            }
        }
        let sum = r.train + r.validation + r.test;
        if (sum - 1.0).abs() > 1e-9 {
            return Err(ConfigError::invalid(
                "train_ratio",
                "train/validation/test ratios must sum to 1.0",
            ));
        }
        Ok(())
    }
}

/// Configuration rejected during validation; carries the offending key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl ConfigError {
    fn invalid(key: &str, message: &str) -> Self {
        Self {
            key: key.to_string(),
            message: message.to_string(),
        }
    }
}

impl core::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "invalid config key `{}`: {}", self.key, self.message)
    }
}

impl core::error::Error for ConfigError {}
