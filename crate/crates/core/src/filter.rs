//! Stage 1: hard thresholds and name/content heuristics that remove
//! degenerate samples before any scoring happens.
//!
//! The checks run in a fixed order and the verdict reports the first
//! violated criterion, so funnel attribution in reject logs is
//! deterministic. All length bounds are inclusive.

use serde::{Deserialize, Serialize};

use crate::config::FilterParams;
use crate::record::FunctionRecord;

/// Why a record failed stage 1 (or `Ok` when it passed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterReason {
    DocTooShort,
    DocTooLong,
    ComplexityTooLow,
    ComplexityTooHigh,
    TooFewLogicalLines,
    IsTest,
    IsTrivialAccessor,
    HasPlaceholder,
    MissingDocumentation,
    Ok,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterVerdict {
    pub passed: bool,
    pub reason: FilterReason,
}

impl FilterVerdict {
    pub fn pass() -> Self {
        Self {
            passed: true,
            reason: FilterReason::Ok,
        }
    }

    pub fn fail(reason: FilterReason) -> Self {
        debug_assert!(reason != FilterReason::Ok);
        Self {
            passed: false,
            reason,
        }
    }
}

/// Apply every stage-1 criterion in the documented order and report the
/// first violation.
pub fn apply_basic_filters(record: &FunctionRecord, params: &FilterParams) -> FilterVerdict {
    let doc_chars = record.documentation.chars().count();
    if doc_chars == 0 {
        return FilterVerdict::fail(FilterReason::MissingDocumentation);
    }
    if doc_chars < params.min_doc_chars {
        return FilterVerdict::fail(FilterReason::DocTooShort);
    }
    if doc_chars > params.max_doc_chars {
        return FilterVerdict::fail(FilterReason::DocTooLong);
    }
    if record.complexity < params.min_complexity {
        return FilterVerdict::fail(FilterReason::ComplexityTooLow);
    }
    if record.complexity > params.max_complexity {
        return FilterVerdict::fail(FilterReason::ComplexityTooHigh);
    }
    if record.logical_lines < params.min_logical_lines {
        return FilterVerdict::fail(FilterReason::TooFewLogicalLines);
    }
    if is_test_function(record, &params.test_patterns) {
        return FilterVerdict::fail(FilterReason::IsTest);
    }
    if is_trivial_accessor(record, params) {
        return FilterVerdict::fail(FilterReason::IsTrivialAccessor);
    }
    if has_placeholder_text(&record.documentation, &params.placeholder_markers) {
        return FilterVerdict::fail(FilterReason::HasPlaceholder);
    }
    FilterVerdict::pass()
}

/// Matching rule: a pattern matches the function name as a prefix or a
/// suffix (never a bare substring, so `attestation` survives `test`), and
/// matches the file path when any path segment contains it.
pub fn is_test_function<S: AsRef<str>>(record: &FunctionRecord, patterns: &[S]) -> bool {
    for pattern in patterns {
        let p = pattern.as_ref();
        if p.is_empty() {
            continue;
        }
        if record.name.starts_with(p) || record.name.ends_with(p) {
            return true;
        }
        if record.path.split(['/', '\\']).any(|seg| seg.contains(p)) {
            return true;
        }
    }
    false
}

/// Accessor prefixes only match at a word boundary: the name ends there,
/// or continues with `_` or an uppercase letter. `hash_block` therefore
/// does not match `has`.
fn name_has_accessor_prefix(name: &str, prefix: &str) -> bool {
    if name.len() < prefix.len() || prefix.is_empty() {
        return false;
    }
    let (head, tail) = name.split_at(prefix.len());
    if !head.eq_ignore_ascii_case(prefix) {
        return false;
    }
    match tail.chars().next() {
        None => true,
        Some(c) => c == '_' || c.is_ascii_uppercase(),
    }
}

/// A trivial accessor needs BOTH an accessor name prefix and a small
/// body; the conjunction keeps substantial functions like
/// `getShortestPath` out of the reject pile.
pub fn is_trivial_accessor(record: &FunctionRecord, params: &FilterParams) -> bool {
    if record.logical_lines > params.accessor_max_logical_lines {
        return false;
    }
    params
        .accessor_prefixes
        .iter()
        .any(|p| name_has_accessor_prefix(&record.name, p))
}

/// Placeholder markers match as whole tokens, case-sensitively: `TODO:`
/// fires, `XXXL` and `todo` do not.
pub fn has_placeholder_text<S: AsRef<str>>(documentation: &str, markers: &[S]) -> bool {
    let bytes = documentation.as_bytes();
    for marker in markers {
        let m = marker.as_ref();
        if m.is_empty() {
            continue;
        }
        let mut from = 0usize;
        while let Some(p) = documentation[from..].find(m) {
            let at = from + p;
            let end = at + m.len();
            let left_ok = at == 0 || !is_word_byte(bytes[at - 1]);
            let right_ok = end >= bytes.len() || !is_word_byte(bytes[end]);
            if left_ok && right_ok {
                return true;
            }
            from = at + 1;
        }
    }
    false
}

fn is_word_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}
