//! Stage 2: eight-dimension quality scoring with a weighted gate.
//!
//! Each dimension is a deterministic heuristic scored on [0,1]; the
//! combined score is the weighted mean scaled to [0,10] and samples below
//! the gate are dropped. The dimension heuristics are documented on each
//! scoring function; weights are configuration, not constants.

use serde::{Deserialize, Serialize};

use crate::doctext;
use crate::lang;
use crate::record::FunctionRecord;

/// Per-dimension scores, each on [0,1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QualityDimensions {
    pub completeness: f64,
    pub param_coverage: f64,
    pub return_coverage: f64,
    pub type_annotations: f64,
    pub clarity: f64,
    pub structural_consistency: f64,
    pub appropriate_complexity: f64,
    pub code_quality: f64,
}

impl QualityDimensions {
    pub fn as_array(&self) -> [f64; 8] {
        [
            self.completeness,
            self.param_coverage,
            self.return_coverage,
            self.type_annotations,
            self.clarity,
            self.structural_consistency,
            self.appropriate_complexity,
            self.code_quality,
        ]
    }
}

/// Strictly positive weight per dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QualityWeights {
    pub completeness: f64,
    pub param_coverage: f64,
    pub return_coverage: f64,
    pub type_annotations: f64,
    pub clarity: f64,
    pub structural_consistency: f64,
    pub appropriate_complexity: f64,
    pub code_quality: f64,
}

impl QualityWeights {
    pub fn as_array(&self) -> [f64; 8] {
        [
            self.completeness,
            self.param_coverage,
            self.return_coverage,
            self.type_annotations,
            self.clarity,
            self.structural_consistency,
            self.appropriate_complexity,
            self.code_quality,
        ]
    }

    /// (config key, value) pairs for validation messages.
    pub fn entries(&self) -> [(&'static str, f64); 8] {
        [
            ("weight_completeness", self.completeness),
            ("weight_param_coverage", self.param_coverage),
            ("weight_return_coverage", self.return_coverage),
            ("weight_type_annotations", self.type_annotations),
            ("weight_clarity", self.clarity),
            ("weight_structural_consistency", self.structural_consistency),
            ("weight_appropriate_complexity", self.appropriate_complexity),
            ("weight_code_quality", self.code_quality),
        ]
    }

    pub fn uniform() -> Self {
        Self {
            completeness: 1.0,
            param_coverage: 1.0,
            return_coverage: 1.0,
            type_annotations: 1.0,
            clarity: 1.0,
            structural_consistency: 1.0,
            appropriate_complexity: 1.0,
            code_quality: 1.0,
        }
    }
}

impl Default for QualityWeights {
    /// Documentation-content dimensions dominate by default.
    fn default() -> Self {
        Self {
            completeness: 0.20,
            param_coverage: 0.15,
            return_coverage: 0.15,
            clarity: 0.15,
            type_annotations: 0.10,
            structural_consistency: 0.10,
            code_quality: 0.10,
            appropriate_complexity: 0.05,
        }
    }
}

/// A scored sample: dimensions, the weights used, the combined [0,10]
/// score, and the gate verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityAssessment {
    pub dimensions: QualityDimensions,
    pub weights: QualityWeights,
    pub score: f64,
    pub passed: bool,
}

/// Weighted mean of the dimensions scaled to [0,10].
pub fn combine_scores(dims: &QualityDimensions, weights: &QualityWeights) -> f64 {
    let q = dims.as_array();
    let w = weights.as_array();
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..8 {
        num += w[i] * q[i];
        den += w[i];
    }
    10.0 * num / den
}

/// Inclusive retention gate.
pub fn quality_gate(score: f64, min_score: f64) -> bool {
    score >= min_score
}

/// Score one record and apply the gate.
pub fn assess(record: &FunctionRecord, weights: &QualityWeights, min_score: f64) -> QualityAssessment {
    let dimensions = assess_dimensions(record);
    let score = combine_scores(&dimensions, weights);
    QualityAssessment {
        dimensions,
        weights: *weights,
        score,
        passed: quality_gate(score, min_score),
    }
}

/// Compute all eight dimension scores for a record.
pub fn assess_dimensions(record: &FunctionRecord) -> QualityDimensions {
    let doc = record.documentation.as_str();
    let sections = doctext::scan_sections(doc);
    let declared = lang::parameter_names(&record.signature, record.language);
    let documented = doctext::documented_parameter_names(doc);
    let non_void = lang::returns_value(&record.signature, &record.code, record.language);

    QualityDimensions {
        completeness: completeness_score(&sections, !declared.is_empty(), non_void, !documented.is_empty()),
        param_coverage: param_coverage_score(&declared, &documented),
        return_coverage: return_coverage_score(sections.returns, non_void),
        type_annotations: if record.has_type_annotations { 1.0 } else { 0.0 },
        clarity: clarity_score(doc),
        structural_consistency: structural_consistency_score(&declared, &documented),
        appropriate_complexity: appropriate_complexity_score(record.complexity),
        code_quality: code_quality_score(record, &declared),
    }
}

/// Fraction of the applicable elements {summary sentence, parameter
/// section when parameters exist, return section when non-void} that are
/// present.
fn completeness_score(
    sections: &doctext::SectionScan,
    has_params: bool,
    non_void: bool,
    has_documented_params: bool,
) -> f64 {
    let mut applicable = 1u32;
    let mut present = u32::from(sections.description);
    if has_params {
        applicable += 1;
        present += u32::from(sections.parameters || has_documented_params);
    }
    if non_void {
        applicable += 1;
        present += u32::from(sections.returns);
    }
    f64::from(present) / f64::from(applicable)
}

/// Documented-and-declared over declared; 1.0 when nothing is declared.
fn param_coverage_score(declared: &[alloc::string::String], documented: &[alloc::string::String]) -> f64 {
    if declared.is_empty() {
        return 1.0;
    }
    let covered = declared.iter().filter(|d| documented.contains(d)).count();
    covered as f64 / declared.len() as f64
}

/// 1.0 when void or when a return description exists; 0.0 otherwise.
fn return_coverage_score(has_return_section: bool, non_void: bool) -> f64 {
    if !non_void || has_return_section {
        1.0
    } else {
        0.0
    }
}

/// Composite of: summary of at least one real sentence (>= 3 words), an
/// imperative/declarative opening verb, and the doc not being a single
/// word.
fn clarity_score(doc: &str) -> f64 {
    let summary_ok = doctext::summary_line(doc)
        .map(|s| doctext::word_count(s) >= 3)
        .unwrap_or(false);
    let verb_ok = doctext::opens_with_verb(doc);
    let not_single_word = doctext::word_count(doc) > 1;
    (u32::from(summary_ok) + u32::from(verb_ok) + u32::from(not_single_word)) as f64 / 3.0
}

/// Fraction of documented parameter names that actually exist in the
/// declaration; phantom parameters are penalized proportionally.
fn structural_consistency_score(
    declared: &[alloc::string::String],
    documented: &[alloc::string::String],
) -> f64 {
    if documented.is_empty() {
        return 1.0;
    }
    let real = documented.iter().filter(|d| declared.contains(d)).count();
    real as f64 / documented.len() as f64
}

/// 1.0 inside the [2,10] sweet spot, decaying linearly to 0.2 at the
/// extremes (complexity 1 and the stage-1 ceiling of 50).
fn appropriate_complexity_score(complexity: u32) -> f64 {
    match complexity {
        0 | 1 => 0.2,
        2..=10 => 1.0,
        11..=50 => 1.0 - 0.8 * ((complexity - 10) as f64 / 40.0),
        _ => 0.2,
    }
}

/// Composite of: name length >= 3, non-single-letter parameter ratio, and
/// the body not being dominated by commented-out code.
fn code_quality_score(record: &FunctionRecord, declared: &[alloc::string::String]) -> f64 {
    let name_ok = record.name.chars().count() >= 3;
    let param_ratio = if declared.is_empty() {
        1.0
    } else {
        declared.iter().filter(|p| p.chars().count() >= 2).count() as f64 / declared.len() as f64
    };
    let (comment_only, non_blank) = lang::comment_line_stats(&record.code, record.language);
    let comments_ok = non_blank == 0 || f64::from(comment_only) / f64::from(non_blank) <= 0.5;
    (f64::from(u8::from(name_ok)) + param_ratio + f64::from(u8::from(comments_ok))) / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::Language;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn record(signature: &str, code: &str, doc: &str, language: Language) -> FunctionRecord {
        FunctionRecord {
            id: "t".to_string(),
            repo_name: "r".to_string(),
            path: "p".to_string(),
            language,
            name: "compute_total".to_string(),
            signature: signature.to_string(),
            code: code.to_string(),
            documentation: doc.to_string(),
            start_line: 1,
            end_line: 5,
            complexity: 3,
            logical_lines: 6,
            has_type_annotations: true,
        }
    }

    #[test]
    fn fully_covered_function_maxes_param_return_type_dimensions() {
        let doc = "Computes totals for the ledger rows.\n\nArgs:\n    rows (list): Ledger rows.\n    scale (int): Multiplier.\n\nReturns:\n    The grand total.\n";
        let r = record(
            "def compute_total(rows: list, scale: int) -> int",
            "def compute_total(rows, scale):\n    return 1\n",
            doc,
            Language::Python,
        );
        let d = assess_dimensions(&r);
        assert_eq!(d.param_coverage, 1.0);
        assert_eq!(d.return_coverage, 1.0);
        assert_eq!(d.type_annotations, 1.0);
        assert_eq!(d.completeness, 1.0);
        assert_eq!(d.structural_consistency, 1.0);
    }

    #[test]
    fn half_documented_params_score_half() {
        let doc = "Scales values in place and reports progress to the sink.\n\nArgs:\n    rows: Ledger rows.\n    scale: Multiplier.\n";
        let r = record(
            "def compute_total(rows, scale, sink, verbose)",
            "def compute_total(rows, scale, sink, verbose):\n    pass\n",
            doc,
            Language::Python,
        );
        let d = assess_dimensions(&r);
        assert_eq!(d.param_coverage, 0.5);
    }

    #[test]
    fn void_function_without_returns_section_scores_full_return_coverage() {
        let doc = "Flushes buffered events to the journal synchronously now.";
        let r = record(
            "public void flush(int retries)",
            "public void flush(int retries) { }",
            doc,
            Language::Java,
        );
        let d = assess_dimensions(&r);
        assert_eq!(d.return_coverage, 1.0);
    }

    #[test]
    fn nonvoid_without_return_description_scores_zero() {
        let doc = "Counts widgets across the active partition set quickly.";
        let r = record(
            "public int count(int limit)",
            "public int count(int limit) { return 0; }",
            doc,
            Language::Java,
        );
        assert_eq!(assess_dimensions(&r).return_coverage, 0.0);
    }

    #[test]
    fn phantom_documented_params_are_penalized() {
        let doc = "Does the thing.\n@param real the actual one\n@param ghost not declared\n";
        let r = record(
            "public void f(int real)",
            "public void f(int real) { }",
            doc,
            Language::Java,
        );
        let d = assess_dimensions(&r);
        assert_eq!(d.structural_consistency, 0.5);
    }

    #[test]
    fn appropriate_complexity_profile() {
        assert_eq!(appropriate_complexity_score(1), 0.2);
        assert_eq!(appropriate_complexity_score(2), 1.0);
        assert_eq!(appropriate_complexity_score(10), 1.0);
        assert!((appropriate_complexity_score(30) - 0.6).abs() < 1e-12);
        assert!((appropriate_complexity_score(50) - 0.2).abs() < 1e-12);
        assert_eq!(appropriate_complexity_score(80), 0.2);
    }

    #[test]
    fn combine_all_ones_is_ten_and_all_zeros_is_zero() {
        let ones = QualityDimensions {
            completeness: 1.0,
            param_coverage: 1.0,
            return_coverage: 1.0,
            type_annotations: 1.0,
            clarity: 1.0,
            structural_consistency: 1.0,
            appropriate_complexity: 1.0,
            code_quality: 1.0,
        };
        let zeros = QualityDimensions {
            completeness: 0.0,
            param_coverage: 0.0,
            return_coverage: 0.0,
            type_annotations: 0.0,
            clarity: 0.0,
            structural_consistency: 0.0,
            appropriate_complexity: 0.0,
            code_quality: 0.0,
        };
        assert_eq!(combine_scores(&ones, &QualityWeights::default()), 10.0);
        assert_eq!(combine_scores(&zeros, &QualityWeights::default()), 0.0);
    }

    #[test]
    fn uniform_weights_reduce_to_scaled_mean() {
        // q = (1,1,1,1,0,0,0,0) with uniform weights -> 5.0
        let dims = QualityDimensions {
            completeness: 1.0,
            param_coverage: 1.0,
            return_coverage: 1.0,
            type_annotations: 1.0,
            clarity: 0.0,
            structural_consistency: 0.0,
            appropriate_complexity: 0.0,
            code_quality: 0.0,
        };
        let got = combine_scores(&dims, &QualityWeights::uniform());
        assert!((got - 5.0).abs() < 1e-12);
    }

    #[test]
    fn gate_is_inclusive_at_the_threshold() {
        assert!(quality_gate(6.0, 6.0));
        assert!(!quality_gate(5.999, 6.0));
        assert!(quality_gate(9.68, 6.0));
    }

    fn dims_strategy() -> impl Strategy<Value = QualityDimensions> {
        proptest::array::uniform8(0.0f64..=1.0).prop_map(|q| QualityDimensions {
            completeness: q[0],
            param_coverage: q[1],
            return_coverage: q[2],
            type_annotations: q[3],
            clarity: q[4],
            structural_consistency: q[5],
            appropriate_complexity: q[6],
            code_quality: q[7],
        })
    }

    fn weights_strategy() -> impl Strategy<Value = QualityWeights> {
        proptest::array::uniform8(0.001f64..=10.0).prop_map(|w| QualityWeights {
            completeness: w[0],
            param_coverage: w[1],
            return_coverage: w[2],
            type_annotations: w[3],
            clarity: w[4],
            structural_consistency: w[5],
            appropriate_complexity: w[6],
            code_quality: w[7],
        })
    }

    proptest! {
        #[test]
        fn score_is_bounded(dims in dims_strategy(), weights in weights_strategy()) {
            let s = combine_scores(&dims, &weights);
            prop_assert!((-1e-9..=10.0 + 1e-9).contains(&s));
        }

        #[test]
        fn raising_one_dimension_never_lowers_score(
            dims in dims_strategy(),
            weights in weights_strategy(),
            idx in 0usize..8,
            bump in 0.0f64..=1.0,
        ) {
            let before = combine_scores(&dims, &weights);
            let mut q = dims.as_array();
            q[idx] = (q[idx] + bump).min(1.0);
            let bumped = QualityDimensions {
                completeness: q[0],
                param_coverage: q[1],
                return_coverage: q[2],
                type_annotations: q[3],
                clarity: q[4],
                structural_consistency: q[5],
                appropriate_complexity: q[6],
                code_quality: q[7],
            };
            let after = combine_scores(&bumped, &weights);
            prop_assert!(after >= before - 1e-9);
        }

        #[test]
        fn weight_scaling_leaves_score_unchanged(
            dims in dims_strategy(),
            weights in weights_strategy(),
            c in 0.01f64..=100.0,
        ) {
            let w = weights.as_array();
            let scaled = QualityWeights {
                completeness: w[0] * c,
                param_coverage: w[1] * c,
                return_coverage: w[2] * c,
                type_annotations: w[3] * c,
                clarity: w[4] * c,
                structural_consistency: w[5] * c,
                appropriate_complexity: w[6] * c,
                code_quality: w[7] * c,
            };
            let a = combine_scores(&dims, &weights);
            let b = combine_scores(&dims, &scaled);
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}
