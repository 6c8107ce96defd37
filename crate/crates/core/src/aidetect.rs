//! Stage 4: heuristic AI-likelihood scoring for documentation strings.
//!
//! Four independent signals each contribute a fixed increment when they
//! fire; the capped sum is compared against a conservative threshold.
//! Flagged samples are never removed, only marked, so this stage always
//! preserves corpus cardinality.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::doctext::{scan_sections, SectionKind};

/// The four detection heuristics, in scoring order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Heuristic {
    GptPhrase,
    SuspiciousStructure,
    PerfectStructure,
    GenericLanguage,
}

/// One fired heuristic with its increment and matched evidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeuristicHit {
    pub heuristic: Heuristic,
    pub alpha: f64,
    pub evidence: String,
}

/// Capped score, the hits behind it, and the flag verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AiDetectionResult {
    pub score: f64,
    pub hits: Vec<HeuristicHit>,
    pub flagged: bool,
}

/// Stage-4 parameters. Empty pack paths select the packs built into the
/// pipeline binary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AiParams {
    pub alpha_gpt_phrase: f64,
    pub alpha_suspicious_structure: f64,
    pub alpha_perfect_structure: f64,
    pub alpha_generic_language: f64,
    /// Flagging threshold on (0,1], inclusive.
    pub tau_ai: f64,
    pub gpt_phrase_pack: String,
    pub generic_phrase_pack: String,
}

impl Default for AiParams {
    fn default() -> Self {
        Self {
            alpha_gpt_phrase: 0.3,
            alpha_suspicious_structure: 0.2,
            alpha_perfect_structure: 0.2,
            alpha_generic_language: 0.1,
            tau_ai: 0.5,
            gpt_phrase_pack: String::new(),
            generic_phrase_pack: String::new(),
        }
    }
}

/// A list of case-insensitive substring patterns loaded from a plain-text
/// file: one pattern per line, `#` comments, blank lines ignored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PhrasePack {
    patterns: Vec<String>,
}

impl PhrasePack {
    pub fn parse(text: &str) -> Self {
        let patterns = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.to_lowercase())
            .collect();
        Self { patterns }
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Patterns matching `haystack_lower`, in pack order.
    fn matches<'a>(&'a self, haystack_lower: &str) -> Vec<&'a str> {
        self.patterns
            .iter()
            .filter(|p| haystack_lower.contains(p.as_str()))
            .map(String::as_str)
            .collect()
    }
}

/// One hit regardless of how many pack phrases match; the evidence is the
/// first matching phrase.
pub fn match_gpt_phrases(doc: &str, pack: &PhrasePack, alpha: f64) -> Option<HeuristicHit> {
    let lower = doc.to_lowercase();
    let matched = pack.matches(&lower);
    matched.first().map(|phrase| HeuristicHit {
        heuristic: Heuristic::GptPhrase,
        alpha,
        evidence: (*phrase).to_string(),
    })
}

/// Punctuation skeleton of a line: word runs (including inner spaces)
/// collapse to `w`, punctuation is kept verbatim.
fn line_skeleton(line: &str) -> String {
    let mut skeleton = String::new();
    let mut in_word = false;
    for ch in line.trim().chars() {
        if ch.is_alphanumeric() || ch == '_' || ch == ' ' || ch == '\t' {
            if !in_word {
                skeleton.push('w');
                in_word = true;
            }
        } else {
            skeleton.push(ch);
            in_word = false;
        }
    }
    skeleton
}

/// Templated skeletons carry at least one structural punctuation mark, so
/// plain prose sentences (skeleton `w.`) never count.
fn is_templated_skeleton(skeleton: &str) -> bool {
    skeleton.chars().any(|c| matches!(c, ':' | '-' | '*' | '|' | '=' | '•'))
}

/// Fires on uniform formatting: at least four consecutive non-blank lines
/// sharing one templated punctuation skeleton, or a section-marker
/// sequence that repeats itself (identical ordering across multi-part
/// docs).
pub fn detect_suspicious_structure(doc: &str, alpha: f64) -> Option<HeuristicHit> {
    const MIN_RUN: usize = 4;
    let mut run_skeleton = String::new();
    let mut run_len = 0usize;
    for line in doc.lines() {
        if line.trim().is_empty() {
            run_len = 0;
            continue;
        }
        let skeleton = line_skeleton(line);
        if skeleton == run_skeleton && is_templated_skeleton(&skeleton) {
            run_len += 1;
            if run_len >= MIN_RUN {
                return Some(HeuristicHit {
                    heuristic: Heuristic::SuspiciousStructure,
                    alpha,
                    evidence: skeleton,
                });
            }
        } else {
            run_skeleton = skeleton;
            run_len = 1;
        }
    }

    let ordered = scan_sections(doc).ordered;
    let explicit: Vec<SectionKind> = ordered
        .into_iter()
        .filter(|k| *k != SectionKind::Description)
        .collect();
    if explicit.len() >= 4 && explicit.len() % 2 == 0 {
        let (first, second) = explicit.split_at(explicit.len() / 2);
        if first == second {
            return Some(HeuristicHit {
                heuristic: Heuristic::SuspiciousStructure,
                alpha,
                evidence: "repeated section ordering".to_string(),
            });
        }
    }
    None
}

/// Fires when at least four of the five canonical sections (description,
/// parameters, returns, raises, examples) are present.
pub fn detect_perfect_structure(doc: &str, alpha: f64) -> Option<HeuristicHit> {
    let scan = scan_sections(doc);
    if scan.present_count() >= 4 {
        Some(HeuristicHit {
            heuristic: Heuristic::PerfectStructure,
            alpha,
            evidence: scan.present_names().join(","),
        })
    } else {
        None
    }
}

/// Fires when at least two distinct generic-pack phrases match.
pub fn detect_generic_language(doc: &str, pack: &PhrasePack, alpha: f64) -> Option<HeuristicHit> {
    let lower = doc.to_lowercase();
    let matched = pack.matches(&lower);
    if matched.len() >= 2 {
        Some(HeuristicHit {
            heuristic: Heuristic::GenericLanguage,
            alpha,
            evidence: matched[..2].join(", "),
        })
    } else {
        None
    }
}

/// Run all four heuristics, sum the increments of those that fire, cap at
/// 1.0, and compare against the flagging threshold (inclusive).
pub fn ai_likelihood(
    doc: &str,
    gpt_pack: &PhrasePack,
    generic_pack: &PhrasePack,
    params: &AiParams,
) -> AiDetectionResult {
    let mut hits = Vec::new();
    if let Some(hit) = match_gpt_phrases(doc, gpt_pack, params.alpha_gpt_phrase) {
        hits.push(hit);
    }
    if let Some(hit) = detect_suspicious_structure(doc, params.alpha_suspicious_structure) {
        hits.push(hit);
    }
    if let Some(hit) = detect_perfect_structure(doc, params.alpha_perfect_structure) {
        hits.push(hit);
    }
    if let Some(hit) = detect_generic_language(doc, generic_pack, params.alpha_generic_language) {
        hits.push(hit);
    }
    let raw = hits.iter().fold(0.0f64, |acc, h| acc + h.alpha);
    let score = if raw > 1.0 { 1.0 } else { raw };
    AiDetectionResult {
        score,
        flagged: score >= params.tau_ai,
        hits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gpt_pack() -> PhrasePack {
        PhrasePack::parse("# test pack\nthis function takes\nit is important to note\n")
    }

    fn generic_pack() -> PhrasePack {
        PhrasePack::parse("the given\ngiven input\nreturns the result\nas appropriate\nhandles the\n")
    }

    #[test]
    fn pack_parsing_skips_comments_and_blanks() {
        let pack = PhrasePack::parse("# c\n\n  Foo Bar  \nbaz\n");
        assert_eq!(pack.len(), 2);
        assert!(pack.matches("foo bar baz").len() == 2);
    }

    #[test]
    fn gpt_phrase_single_hit_with_first_evidence() {
        let hit = match_gpt_phrases(
            "This function takes a list and returns a sorted copy.",
            &gpt_pack(),
            0.3,
        )
        .unwrap();
        assert_eq!(hit.heuristic, Heuristic::GptPhrase);
        assert_eq!(hit.alpha, 0.3);
        assert_eq!(hit.evidence, "this function takes");
        assert!(match_gpt_phrases("Binary-searches the frame table.", &gpt_pack(), 0.3).is_none());
        assert!(match_gpt_phrases("", &gpt_pack(), 0.3).is_none());
    }

    #[test]
    fn perfect_structure_needs_four_of_five_sections() {
        let four = "Reads a frame.\n\nArgs:\n    idx: Frame index.\n\nReturns:\n    The frame.\n\nRaises:\n    IndexError: Out of range.\n";
        assert!(detect_perfect_structure(four, 0.2).is_some());
        let three = "Reads a frame.\n\nArgs:\n    idx: Frame index.\n\nReturns:\n    The frame.\n";
        assert!(detect_perfect_structure(three, 0.2).is_none());
        let five = "Reads a frame.\n\nArgs:\n    idx: Frame index.\n\nReturns:\n    The frame.\n\nRaises:\n    IndexError.\n\nExample:\n    read_frame(0)\n";
        let hit = detect_perfect_structure(five, 0.2).unwrap();
        assert_eq!(hit.evidence, "description,parameters,returns,raises,examples");
    }

    #[test]
    fn suspicious_structure_needs_four_parallel_lines() {
        let five_bullets = "alpha: Selects the mode.\nbeta: Limits the depth.\ngamma: Sets the root.\ndelta: Names the sink.\nepsilon: Caps the width.\n";
        let hit = detect_suspicious_structure(five_bullets, 0.2).unwrap();
        assert_eq!(hit.heuristic, Heuristic::SuspiciousStructure);

        let prose = "Walks the tree twice.\nThe first pass collects labels, and the second pass rewrites them.\nNothing is mutated on error.\nCallers own the buffer.\nLifetime rules apply.\n";
        assert!(detect_suspicious_structure(prose, 0.2).is_none());

        let two_lines = "alpha: Selects the mode.\nbeta: Limits the depth.\n";
        assert!(detect_suspicious_structure(two_lines, 0.2).is_none());
    }

    #[test]
    fn suspicious_structure_fires_on_repeated_section_ordering() {
        let doc = "Part one.\n\nArgs:\n    a: One.\n\nReturns:\n    X.\n\nArgs:\n    b: Two.\n\nReturns:\n    Y.\n";
        let hit = detect_suspicious_structure(doc, 0.2).unwrap();
        assert_eq!(hit.evidence, "repeated section ordering");
    }

    #[test]
    fn generic_language_needs_two_distinct_phrases() {
        let hit = detect_generic_language(
            "Handles the given input and returns the result as appropriate.",
            &generic_pack(),
            0.1,
        )
        .unwrap();
        assert_eq!(hit.alpha, 0.1);
        assert!(detect_generic_language(
            "Parses RFC 3339 timestamps into epoch nanos.",
            &generic_pack(),
            0.1
        )
        .is_none());
        assert!(detect_generic_language("", &generic_pack(), 0.1).is_none());
        // one phrase is not enough
        assert!(detect_generic_language("Uses the given name.", &generic_pack(), 0.1).is_none());
    }

    #[test]
    fn score_is_capped_sum_and_flagging_is_inclusive() {
        let params = AiParams::default();
        let clean = ai_likelihood("Splits a path into segments.", &gpt_pack(), &generic_pack(), &params);
        assert_eq!(clean.score, 0.0);
        assert!(!clean.flagged);
        assert!(clean.hits.is_empty());

        let generic_only = ai_likelihood(
            "Handles the given input and returns the result as appropriate.",
            &gpt_pack(),
            &generic_pack(),
            &params,
        );
        assert!((generic_only.score - 0.1).abs() < 1e-9);
        assert!(!generic_only.flagged);

        let mut strict = params.clone();
        strict.tau_ai = 0.1;
        let at_threshold = ai_likelihood(
            "Handles the given input and returns the result as appropriate.",
            &gpt_pack(),
            &generic_pack(),
            &strict,
        );
        assert!(at_threshold.flagged);
    }

    #[test]
    fn all_four_heuristics_fire_for_the_composite_doc() {
        let doc = "This function takes the frame table and handles the given input, then returns the result as appropriate.\n\nArgs:\n    table: The frame table.\n\nReturns:\n    A processed table.\n\nRaises:\n    ValueError: On bad frames.\n\nExample:\n    run(table)\n\nNotes list:\nalpha: Selects the mode.\nbeta: Limits the depth.\ngamma: Sets the root.\ndelta: Names the sink.\n";
        let params = AiParams::default();
        let result = ai_likelihood(doc, &gpt_pack(), &generic_pack(), &params);
        assert_eq!(result.hits.len(), 4);
        let expected = 0.3 + 0.2 + 0.2 + 0.1;
        assert!((result.score - expected).abs() < 1e-12);
        assert!((result.score - 0.8).abs() < 1e-9);
        assert!(result.flagged);
    }

    #[test]
    fn cap_applies_when_alphas_exceed_one() {
        let mut params = AiParams::default();
        params.alpha_gpt_phrase = 0.9;
        params.alpha_generic_language = 0.9;
        let doc = "This function takes the given input and returns the result as appropriate.";
        let result = ai_likelihood(doc, &gpt_pack(), &generic_pack(), &params);
        assert_eq!(result.score, 1.0);
    }

    #[test]
    fn determinism_same_doc_same_result() {
        let doc = "This function takes a config and handles the given input, returning the result as appropriate.";
        let params = AiParams::default();
        let a = ai_likelihood(doc, &gpt_pack(), &generic_pack(), &params);
        let b = ai_likelihood(doc, &gpt_pack(), &generic_pack(), &params);
        assert_eq!(a, b);
    }
}
