//! Stage transforms over the staged-record stream, shared by the full
//! pipeline run and the single-stage CLI. Each transform is a pure
//! function of (records, config), so chaining the stages reproduces the
//! end-to-end run exactly.

use std::collections::{BTreeMap, BTreeSet};

use docmine_core::aidetect::{ai_likelihood, AiDetectionResult};
use docmine_core::config::PipelineConfig;
use docmine_core::dedup::{self, DuplicateKind, TokenSet};
use docmine_core::filter::apply_basic_filters;
use docmine_core::quality::{self, QualityAssessment};
use docmine_core::record::{FunctionRecord, Language};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::packs::LoadedPacks;

/// One record flowing between stages, with scoring metadata attached as
/// it progresses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StagedSample {
    pub record: FunctionRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quality: Option<QualityAssessment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ai: Option<AiDetectionResult>,
}

impl StagedSample {
    pub fn new(record: FunctionRecord) -> Self {
        Self {
            record,
            quality: None,
            ai: None,
        }
    }
}

/// One reject-log line: `{id, reason}` plus dedup attribution when the
/// reason is a duplicate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectEntry {
    pub id: String,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duplicate_of: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub similarity: Option<f64>,
}

impl RejectEntry {
    fn simple(id: &str, reason: impl Into<String>) -> Self {
        Self {
            id: id.to_string(),
            reason: reason.into(),
            duplicate_of: None,
            similarity: None,
        }
    }
}

/// Per-stage corpus counts. Stages 1-3 only remove; stage 4 only marks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunnelCounts {
    pub extracted: u64,
    pub after_stage1: u64,
    pub after_stage2: u64,
    pub after_stage3: u64,
    pub flagged: u64,
    #[serde(rename = "final")]
    pub final_count: u64,
}

/// Stage 1: hard thresholds; first violated criterion is logged.
pub fn filter_stage(
    samples: Vec<StagedSample>,
    config: &PipelineConfig,
) -> (Vec<StagedSample>, Vec<RejectEntry>) {
    let mut kept = Vec::with_capacity(samples.len());
    let mut rejects = Vec::new();
    for sample in samples {
        let verdict = apply_basic_filters(&sample.record, &config.filter);
        if verdict.passed {
            kept.push(sample);
        } else {
            let reason = serde_json::to_value(verdict.reason)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_else(|| format!("{:?}", verdict.reason));
            rejects.push(RejectEntry::simple(&sample.record.id, reason));
        }
    }
    (kept, rejects)
}

/// Stage 2: score every sample, keep those at or above the gate.
pub fn score_stage(
    samples: Vec<StagedSample>,
    config: &PipelineConfig,
) -> (Vec<StagedSample>, Vec<RejectEntry>) {
    let weights = config.quality.weights;
    let min_score = config.quality.min_quality_score;
    let scored: Vec<StagedSample> = samples
        .into_par_iter()
        .map(|mut sample| {
            sample.quality = Some(quality::assess(&sample.record, &weights, min_score));
            sample
        })
        .collect();
    let mut kept = Vec::with_capacity(scored.len());
    let mut rejects = Vec::new();
    for sample in scored {
        let passed = sample.quality.as_ref().map(|q| q.passed).unwrap_or(false);
        if passed {
            kept.push(sample);
        } else {
            rejects.push(RejectEntry::simple(&sample.record.id, "below_quality_gate"));
        }
    }
    (kept, rejects)
}

/// Stage 3: exact dedup over normalized code (first occurrence wins),
/// then the near-duplicate pass. Languages are indexed separately unless
/// `cross_language_dedup` is set.
pub fn dedup_stage(
    samples: Vec<StagedSample>,
    config: &PipelineConfig,
) -> (Vec<StagedSample>, Vec<RejectEntry>) {
    let normalized: Vec<String> = samples
        .par_iter()
        .map(|s| dedup::normalize_code(&s.record.code, s.record.language).text)
        .collect();

    let exact = dedup::exact_dedup_by_text(normalized.iter().map(String::as_str));
    let mut rejects: Vec<RejectEntry> = exact
        .rejects
        .iter()
        .map(|r| RejectEntry {
            id: samples[r.index].record.id.clone(),
            reason: "exact_duplicate".to_string(),
            duplicate_of: Some(samples[r.duplicate_of].record.id.clone()),
            similarity: Some(r.similarity),
        })
        .collect();

    let survivors: Vec<usize> = exact.keep;
    let token_sets: Vec<TokenSet> = survivors
        .par_iter()
        .map(|&i| TokenSet::from_normalized(&normalized[i]))
        .collect();

    // (global survivor slot -> keep?) decided per language partition
    let mut keep_flags = vec![true; survivors.len()];
    let mut partitions: BTreeMap<Language, Vec<usize>> = BTreeMap::new();
    for (slot, &original) in survivors.iter().enumerate() {
        let key = if config.dedup.cross_language {
            Language::Python // single shared partition; the key is arbitrary
        } else {
            samples[original].record.language
        };
        partitions.entry(key).or_default().push(slot);
    }

    for slots in partitions.values() {
        let subset: Vec<TokenSet> = slots.iter().map(|&s| token_sets[s].clone()).collect();
        let outcome = dedup::near_dedup_pass(&subset, &config.dedup);
        let kept_local: BTreeSet<usize> = outcome.keep.iter().copied().collect();
        for (local, &slot) in slots.iter().enumerate() {
            if !kept_local.contains(&local) {
                keep_flags[slot] = false;
            }
        }
        for reject in outcome.rejects {
            debug_assert_eq!(reject.kind, DuplicateKind::Near);
            let original = survivors[slots[reject.index]];
            let survivor = survivors[slots[reject.duplicate_of]];
            rejects.push(RejectEntry {
                id: samples[original].record.id.clone(),
                reason: "near_duplicate".to_string(),
                duplicate_of: Some(samples[survivor].record.id.clone()),
                similarity: Some(reject.similarity),
            });
        }
    }

    let kept_positions: BTreeSet<usize> = survivors
        .iter()
        .enumerate()
        .filter(|(slot, _)| keep_flags[*slot])
        .map(|(_, &original)| original)
        .collect();
    let kept = samples
        .into_iter()
        .enumerate()
        .filter(|(i, _)| kept_positions.contains(i))
        .map(|(_, s)| s)
        .collect();
    (kept, rejects)
}

/// Stage 4: attach the AI-likelihood result to every sample; nothing is
/// removed.
pub fn aiflag_stage(
    samples: Vec<StagedSample>,
    config: &PipelineConfig,
    packs: &LoadedPacks,
) -> Vec<StagedSample> {
    samples
        .into_par_iter()
        .map(|mut sample| {
            sample.ai = Some(ai_likelihood(
                &sample.record.documentation,
                &packs.gpt,
                &packs.generic,
                &config.ai,
            ));
            sample
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use docmine_core::record::Language;

    fn sample(name: &str, doc: &str, complexity: u32, lines: u32) -> StagedSample {
        sample_with_code(
            name,
            doc,
            complexity,
            lines,
            &format!("def {name}():\n    return 1\n"),
        )
    }

    fn sample_with_code(
        name: &str,
        doc: &str,
        complexity: u32,
        lines: u32,
        code: &str,
    ) -> StagedSample {
        StagedSample::new(FunctionRecord {
            id: FunctionRecord::make_id("r", "src/m.py", 1, name),
            repo_name: "r".into(),
            path: "src/m.py".into(),
            language: Language::Python,
            name: name.into(),
            signature: format!("def {name}(rows, scale)"),
            code: code.into(),
            documentation: doc.into(),
            start_line: 1,
            end_line: lines.max(1),
            complexity,
            logical_lines: lines,
            has_type_annotations: true,
        })
    }

    const GOOD_DOC: &str = "Computes aggregate totals for ledger rows.\n\nArgs:\n    rows: Ledger rows to fold.\n    scale: Unit multiplier.\n\nReturns:\n    The grand total.";

    #[test]
    fn filter_stage_splits_pass_and_reject_with_reasons() {
        let samples = vec![
            sample("keep_me", GOOD_DOC, 3, 7),
            sample("short_doc", "tiny", 3, 7),
            sample("test_thing", GOOD_DOC, 3, 7),
        ];
        let (kept, rejects) = filter_stage(samples, &PipelineConfig::default());
        assert_eq!(kept.len(), 1);
        assert_eq!(rejects.len(), 2);
        assert_eq!(rejects[0].reason, "doc_too_short");
        assert_eq!(rejects[1].reason, "is_test");
    }

    #[test]
    fn score_stage_attaches_quality_and_gates() {
        let samples = vec![
            sample("rich_doc", GOOD_DOC, 3, 7),
            sample("bare", "Twenty characters!!x", 1, 7),
        ];
        let (kept, rejects) = score_stage(samples, &PipelineConfig::default());
        assert_eq!(kept.len() + rejects.len(), 2);
        for s in &kept {
            let q = s.quality.as_ref().unwrap();
            assert!(q.passed && q.score >= 6.0);
        }
        for r in &rejects {
            assert_eq!(r.reason, "below_quality_gate");
        }
    }

    #[test]
    fn dedup_stage_collapses_comment_only_variants() {
        let code_a = "def f(x):\n    return x + 1\n";
        let code_b = "def f(x):  # same thing\n    return x + 1\n";
        let samples = vec![
            sample_with_code("f1", GOOD_DOC, 2, 5, code_a),
            sample_with_code("f2", GOOD_DOC, 2, 5, code_b),
        ];
        let (kept, rejects) = dedup_stage(samples, &PipelineConfig::default());
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].record.name, "f1");
        assert_eq!(rejects[0].reason, "exact_duplicate");
        assert_eq!(rejects[0].similarity, Some(1.0));
    }

    #[test]
    fn dedup_stage_is_language_partitioned_by_default() {
        // High-Jaccard (but not byte-equal) code in different languages
        // survives partitioned indexing and collapses when merged.
        let shared: String = (0..60).map(|i| format!("tok{i} ")).collect();
        let a = sample_with_code("py_fn", GOOD_DOC, 2, 5, &format!("{shared}only_py"));
        let mut b = sample_with_code("js_fn", GOOD_DOC, 2, 5, &format!("{shared}only_js"));
        b.record.language = Language::JavaScript;
        b.record.id = "r:src/m.js:1:js_fn".into();
        let (kept, _) = dedup_stage(vec![a.clone(), b.clone()], &PipelineConfig::default());
        assert_eq!(kept.len(), 2);

        let mut cfg = PipelineConfig::default();
        cfg.dedup.cross_language = true;
        let (kept, rejects) = dedup_stage(vec![a, b], &cfg);
        assert_eq!(kept.len(), 1);
        assert_eq!(rejects[0].reason, "near_duplicate");
    }

    #[test]
    fn aiflag_stage_preserves_cardinality() {
        let samples = vec![
            sample("one", GOOD_DOC, 3, 7),
            sample(
                "two",
                "This function takes the given input and returns the result as appropriate.",
                3,
                7,
            ),
        ];
        let packs = LoadedPacks::builtin();
        let out = aiflag_stage(samples, &PipelineConfig::default(), &packs);
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|s| s.ai.is_some()));
    }
}
