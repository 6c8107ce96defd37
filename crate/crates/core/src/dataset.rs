//! Final dataset samples and corpus summary statistics.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::aidetect::AiDetectionResult;
use crate::quality::QualityAssessment;
use crate::record::FunctionRecord;
use crate::split::Split;

/// One retained sample with its scoring metadata and split assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSample {
    pub record: FunctionRecord,
    pub quality: QualityAssessment,
    pub ai: AiDetectionResult,
    pub split: Split,
}

/// Corpus-level summary metrics.
///
/// Medians use the lower-middle convention on even counts; the standard
/// deviation is the population form.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub total: u64,
    pub quality_mean: f64,
    pub quality_median: f64,
    pub quality_stddev: f64,
    pub quality_min: f64,
    pub quality_max: f64,
    pub complexity_mean: f64,
    pub complexity_median: f64,
    pub annotated_count: u64,
    pub annotated_rate: f64,
    pub flagged_count: u64,
    pub flagged_rate: f64,
    pub language_counts: BTreeMap<String, u64>,
    pub language_rates: BTreeMap<String, f64>,
    pub repository_counts: BTreeMap<String, u64>,
}

fn median_sorted(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values[(values.len() - 1) / 2]
}

pub fn compute_stats(samples: &[DatasetSample]) -> CorpusStats {
    let mut stats = CorpusStats::default();
    let n = samples.len();
    stats.total = n as u64;
    if n == 0 {
        return stats;
    }

    let mut scores: Vec<f64> = samples.iter().map(|s| s.quality.score).collect();
    let mut complexities: Vec<f64> = samples
        .iter()
        .map(|s| f64::from(s.record.complexity))
        .collect();

    let score_sum: f64 = scores.iter().sum();
    stats.quality_mean = score_sum / n as f64;
    let variance: f64 = scores
        .iter()
        .map(|s| (s - stats.quality_mean) * (s - stats.quality_mean))
        .sum::<f64>()
        / n as f64;
    stats.quality_stddev = libm::sqrt(variance);
    scores.sort_by(|a, b| a.partial_cmp(b).unwrap());
    stats.quality_median = median_sorted(&scores);
    stats.quality_min = scores[0];
    stats.quality_max = scores[n - 1];

    stats.complexity_mean = complexities.iter().sum::<f64>() / n as f64;
    complexities.sort_by(|a, b| a.partial_cmp(b).unwrap());
    stats.complexity_median = median_sorted(&complexities);

    for sample in samples {
        if sample.record.has_type_annotations {
            stats.annotated_count += 1;
        }
        if sample.ai.flagged {
            stats.flagged_count += 1;
        }
        *stats
            .language_counts
            .entry(sample.record.language.as_str().to_string())
            .or_insert(0) += 1;
        *stats
            .repository_counts
            .entry(sample.record.repo_name.clone())
            .or_insert(0) += 1;
    }
    stats.annotated_rate = stats.annotated_count as f64 / n as f64;
    stats.flagged_rate = stats.flagged_count as f64 / n as f64;
    for (language, count) in &stats.language_counts {
        stats
            .language_rates
            .insert(language.clone(), *count as f64 / n as f64);
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aidetect::AiDetectionResult;
    use crate::quality::{QualityDimensions, QualityWeights};
    use crate::record::Language;
    use alloc::vec;
    use alloc::vec::Vec;

    pub(crate) fn sample(
        language: Language,
        repo: &str,
        score: f64,
        complexity: u32,
        annotated: bool,
        flagged: bool,
    ) -> DatasetSample {
        let dims = QualityDimensions {
            completeness: 1.0,
            param_coverage: 1.0,
            return_coverage: 1.0,
            type_annotations: 1.0,
            clarity: 1.0,
            structural_consistency: 1.0,
            appropriate_complexity: 1.0,
            code_quality: 1.0,
        };
        DatasetSample {
            record: FunctionRecord {
                id: FunctionRecord::make_id(repo, "p", complexity, "f"),
                repo_name: repo.to_string(),
                path: "p".to_string(),
                language,
                name: "f".to_string(),
                signature: String::new(),
                code: String::new(),
                documentation: String::new(),
                start_line: 1,
                end_line: 2,
                complexity,
                logical_lines: 5,
                has_type_annotations: annotated,
            },
            quality: QualityAssessment {
                dimensions: dims,
                weights: QualityWeights::default(),
                score,
                passed: true,
            },
            ai: AiDetectionResult {
                score: if flagged { 0.5 } else { 0.0 },
                hits: Vec::new(),
                flagged,
            },
            split: Split::Train,
        }
    }

    #[test]
    fn uniform_scores_have_zero_stddev() {
        let samples: Vec<DatasetSample> = (0..7)
            .map(|_| sample(Language::Java, "r", 6.0, 2, true, false))
            .collect();
        let stats = compute_stats(&samples);
        assert_eq!(stats.quality_mean, 6.0);
        assert_eq!(stats.quality_stddev, 0.0);
        assert_eq!(stats.quality_min, 6.0);
        assert_eq!(stats.quality_max, 6.0);
    }

    #[test]
    fn complexity_median_uses_lower_middle() {
        let samples: Vec<DatasetSample> = [1u32, 2, 2, 3, 9]
            .iter()
            .map(|&c| sample(Language::Python, "r", 7.0, c, false, false))
            .collect();
        let stats = compute_stats(&samples);
        assert_eq!(stats.complexity_median, 2.0);
        assert!((stats.complexity_mean - 3.4).abs() < 1e-12);

        // even count: lower middle of [1,2,3,9] is 2
        let samples: Vec<DatasetSample> = [3u32, 1, 9, 2]
            .iter()
            .map(|&c| sample(Language::Python, "r", 7.0, c, false, false))
            .collect();
        assert_eq!(compute_stats(&samples).complexity_median, 2.0);
    }

    #[test]
    fn annotation_rate_13_of_11() {
        let samples: Vec<DatasetSample> = (0..13)
            .map(|i| sample(Language::Java, "r", 6.5, 2, i < 11, false))
            .collect();
        let stats = compute_stats(&samples);
        assert_eq!(stats.annotated_count, 11);
        assert_eq!(stats.annotated_rate, 11.0 / 13.0);
    }

    #[test]
    fn language_counts_sum_to_total_and_rates_are_shares() {
        let mut samples = vec![
            sample(Language::Java, "a", 6.0, 2, true, false),
            sample(Language::Java, "a", 7.0, 3, true, false),
            sample(Language::Python, "b", 8.0, 4, false, true),
        ];
        samples.push(sample(Language::Cpp, "c", 9.0, 5, true, false));
        let stats = compute_stats(&samples);
        let counted: u64 = stats.language_counts.values().sum();
        assert_eq!(counted, stats.total);
        assert_eq!(stats.language_rates["java"], 0.5);
        assert_eq!(stats.flagged_count, 1);
        assert_eq!(stats.repository_counts["a"], 2);
    }

    #[test]
    fn empty_corpus_yields_zeroed_stats() {
        let stats = compute_stats(&[]);
        assert_eq!(stats.total, 0);
        assert_eq!(stats.quality_mean, 0.0);
        assert!(stats.language_counts.is_empty());
    }
}
