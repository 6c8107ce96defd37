//! Per-language grammar profiles: which node kinds are functions, which
//! count as decision points, and how documentation attaches.

use docmine_core::record::Language;

/// How documentation attaches to a function definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocAttachment {
    /// Leading string literal in the function body (Python).
    DocstringInBody,
    /// Doc comment immediately preceding the definition, no blank-line
    /// gap (Java, C++, JS, TS).
    CommentPreceding,
}

/// Grammar-level knowledge for one language.
///
/// `decision_node_kinds` is the fixed decision-point inventory for
/// cyclomatic complexity: if/elif/else-if, loops (including comprehension
/// clauses), case/when clauses, catch clauses, ternaries, and
/// short-circuit boolean operators. Else branches are not decisions.
/// Decision points are counted lexically over the whole body, nested
/// definitions included.
pub struct LanguageProfile {
    pub language: Language,
    pub doc_attachment: DocAttachment,
    /// Comment openers that mark a documentation comment.
    pub doc_comment_markers: &'static [&'static str],
    pub function_node_kinds: &'static [&'static str],
    /// Nodes that wrap a single definition and belong to it for slicing
    /// and doc attachment (decorators, `export`, `template<...>`).
    pub wrapper_node_kinds: &'static [&'static str],
    pub decision_node_kinds: &'static [&'static str],
    /// Label kinds that cover both `case` and `default`; only labels
    /// whose first token is `case` count as decisions.
    pub case_label_kinds: &'static [&'static str],
    /// Count `binary_expression` nodes whose operator is `&&` or `||`.
    pub short_circuit_binary: bool,
    pub comment_node_kinds: &'static [&'static str],
}

const PYTHON: LanguageProfile = LanguageProfile {
    language: Language::Python,
    doc_attachment: DocAttachment::DocstringInBody,
    doc_comment_markers: &[],
    function_node_kinds: &["function_definition"],
    wrapper_node_kinds: &["decorated_definition"],
    decision_node_kinds: &[
        "if_statement",
        "elif_clause",
        "for_statement",
        "while_statement",
        "except_clause",
        "case_clause",
        "conditional_expression",
        "boolean_operator",
        "for_in_clause",
        "if_clause",
    ],
    case_label_kinds: &[],
    short_circuit_binary: false,
    comment_node_kinds: &["comment"],
};

const JAVA: LanguageProfile = LanguageProfile {
    language: Language::Java,
    doc_attachment: DocAttachment::CommentPreceding,
    doc_comment_markers: &["/**"],
    function_node_kinds: &["method_declaration", "constructor_declaration"],
    wrapper_node_kinds: &[],
    decision_node_kinds: &[
        "if_statement",
        "for_statement",
        "enhanced_for_statement",
        "while_statement",
        "do_statement",
        "catch_clause",
        "ternary_expression",
    ],
    case_label_kinds: &["switch_label"],
    short_circuit_binary: true,
    comment_node_kinds: &["block_comment", "line_comment"],
};

const TYPESCRIPT: LanguageProfile = LanguageProfile {
    language: Language::TypeScript,
    doc_attachment: DocAttachment::CommentPreceding,
    doc_comment_markers: &["/**"],
    function_node_kinds: &[
        "function_declaration",
        "generator_function_declaration",
        "method_definition",
    ],
    wrapper_node_kinds: &["export_statement"],
    decision_node_kinds: &[
        "if_statement",
        "for_statement",
        "for_in_statement",
        "while_statement",
        "do_statement",
        "catch_clause",
        "ternary_expression",
        "switch_case",
    ],
    case_label_kinds: &[],
    short_circuit_binary: true,
    comment_node_kinds: &["comment"],
};

const JAVASCRIPT: LanguageProfile = LanguageProfile {
    language: Language::JavaScript,
    doc_attachment: DocAttachment::CommentPreceding,
    doc_comment_markers: &["/**"],
    function_node_kinds: &[
        "function_declaration",
        "generator_function_declaration",
        "method_definition",
    ],
    wrapper_node_kinds: &["export_statement"],
    decision_node_kinds: &[
        "if_statement",
        "for_statement",
        "for_in_statement",
        "while_statement",
        "do_statement",
        "catch_clause",
        "ternary_expression",
        "switch_case",
    ],
    case_label_kinds: &[],
    short_circuit_binary: true,
    comment_node_kinds: &["comment"],
};

const CPP: LanguageProfile = LanguageProfile {
    language: Language::Cpp,
    doc_attachment: DocAttachment::CommentPreceding,
    doc_comment_markers: &["/**", "/*!", "///", "//!"],
    function_node_kinds: &["function_definition"],
    wrapper_node_kinds: &["template_declaration"],
    decision_node_kinds: &[
        "if_statement",
        "for_statement",
        "for_range_loop",
        "while_statement",
        "do_statement",
        "catch_clause",
        "conditional_expression",
    ],
    case_label_kinds: &["case_statement"],
    short_circuit_binary: true,
    comment_node_kinds: &["comment"],
};

pub fn profile_for(language: Language) -> &'static LanguageProfile {
    match language {
        Language::Python => &PYTHON,
        Language::Java => &JAVA,
        Language::TypeScript => &TYPESCRIPT,
        Language::JavaScript => &JAVASCRIPT,
        Language::Cpp => &CPP,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_profile_has_decision_kinds() {
        for language in Language::ALL {
            let profile = profile_for(language);
            assert!(!profile.decision_node_kinds.is_empty());
            assert!(!profile.function_node_kinds.is_empty());
            assert_eq!(profile.language, language);
        }
    }
}
