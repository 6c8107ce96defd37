//! Documentation-text analysis shared by the quality and AI stages.
//!
//! All functions operate on delimiter-stripped documentation (the form
//! extraction stores). Section recognition unifies the common spellings
//! across ecosystems: docstring headers (`Args:`, NumPy underlines),
//! Javadoc/JSDoc tags (`@param`), Doxygen tags (`\param`), and Sphinx
//! fields (`:param x:`).

use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// The five canonical documentation section kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SectionKind {
    Description,
    Parameters,
    Returns,
    Raises,
    Examples,
}

impl SectionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SectionKind::Description => "description",
            SectionKind::Parameters => "parameters",
            SectionKind::Returns => "returns",
            SectionKind::Raises => "raises",
            SectionKind::Examples => "examples",
        }
    }
}

/// Which canonical sections a documentation string contains, plus the
/// order in which explicit section markers appear.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SectionScan {
    pub description: bool,
    pub parameters: bool,
    pub returns: bool,
    pub raises: bool,
    pub examples: bool,
    /// Explicit markers in line order, consecutive duplicates collapsed.
    pub ordered: Vec<SectionKind>,
}

impl SectionScan {
    pub fn present_count(&self) -> u32 {
        [
            self.description,
            self.parameters,
            self.returns,
            self.raises,
            self.examples,
        ]
        .iter()
        .filter(|p| **p)
        .count() as u32
    }

    pub fn present_names(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        if self.description {
            names.push(SectionKind::Description.as_str());
        }
        if self.parameters {
            names.push(SectionKind::Parameters.as_str());
        }
        if self.returns {
            names.push(SectionKind::Returns.as_str());
        }
        if self.raises {
            names.push(SectionKind::Raises.as_str());
        }
        if self.examples {
            names.push(SectionKind::Examples.as_str());
        }
        names
    }
}

fn header_kind(line: &str) -> Option<SectionKind> {
    let trimmed = line.trim();
    let bare = trimmed.trim_end_matches(':').trim().to_lowercase();
    match bare.as_str() {
        "args" | "arguments" | "parameters" | "params" => Some(SectionKind::Parameters),
        "returns" | "return" | "return value" | "return values" => Some(SectionKind::Returns),
        "raises" | "throws" | "exceptions" => Some(SectionKind::Raises),
        "example" | "examples" | "usage" => Some(SectionKind::Examples),
        "description" | "summary" | "overview" => Some(SectionKind::Description),
        _ => None,
    }
}

fn tag_kind(line: &str) -> Option<SectionKind> {
    let t = line.trim_start();
    const PARAM_TAGS: [&str; 3] = ["@param", ":param", "\\param"];
    const RETURN_TAGS: [&str; 7] = [
        "@return", "@returns", ":return", ":returns", ":rtype", "\\return", "\\returns",
    ];
    const RAISE_TAGS: [&str; 9] = [
        "@throws",
        "@exception",
        "@raise",
        "@raises",
        ":raises",
        ":raise",
        "\\throws",
        "\\throw",
        "\\exception",
    ];
    if PARAM_TAGS.iter().any(|p| t.starts_with(p)) {
        return Some(SectionKind::Parameters);
    }
    if RETURN_TAGS.iter().any(|p| t.starts_with(p)) {
        return Some(SectionKind::Returns);
    }
    if RAISE_TAGS.iter().any(|p| t.starts_with(p)) {
        return Some(SectionKind::Raises);
    }
    if t.starts_with("@example") || t.starts_with(">>>") {
        return Some(SectionKind::Examples);
    }
    None
}

fn marker_kind(line: &str) -> Option<SectionKind> {
    header_kind(line).or_else(|| tag_kind(line))
}

/// Scan a documentation string for the canonical sections.
///
/// A description is counted when the first non-blank line is plain prose
/// (not itself a section marker) or when an explicit `Description:`
/// header appears.
pub fn scan_sections(doc: &str) -> SectionScan {
    let mut scan = SectionScan::default();
    if let Some(first) = doc.lines().find(|l| !l.trim().is_empty()) {
        if marker_kind(first).is_none() {
            scan.description = true;
            scan.ordered.push(SectionKind::Description);
        }
    }
    for line in doc.lines() {
        let Some(kind) = marker_kind(line) else {
            continue;
        };
        match kind {
            SectionKind::Description => scan.description = true,
            SectionKind::Parameters => scan.parameters = true,
            SectionKind::Returns => scan.returns = true,
            SectionKind::Raises => scan.raises = true,
            SectionKind::Examples => scan.examples = true,
        }
        if scan.ordered.last() != Some(&kind) {
            scan.ordered.push(kind);
        }
    }
    scan
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '$'
}

fn leading_identifier(s: &str) -> Option<&str> {
    let s = s.trim_start();
    let end = s.find(|c: char| !is_ident_char(c)).unwrap_or(s.len());
    let first = s.chars().next()?;
    if end == 0 || first.is_ascii_digit() {
        return None;
    }
    Some(&s[..end])
}

/// Name documented by a `@param`/`\param` tag: the token after the tag,
/// skipping an optional JSDoc `{type}` group and `[name]` brackets.
fn tag_param_name(rest: &str) -> Option<String> {
    let mut s = rest.trim_start();
    if let Some(stripped) = s.strip_prefix('{') {
        let close = stripped.find('}')?;
        s = stripped[close + 1..].trim_start();
    }
    let token = s.split_whitespace().next()?;
    let token = token
        .trim_start_matches('[')
        .trim_end_matches(':')
        .trim_end_matches(']');
    let token = token.split('=').next()?;
    leading_identifier(token).map(|n| n.to_string())
}

/// Parameter names the documentation claims to describe, in order of
/// first mention.
pub fn documented_parameter_names(doc: &str) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    let mut push = |name: String| {
        if !names.contains(&name) {
            names.push(name);
        }
    };

    let mut in_param_section = false;
    for line in doc.lines() {
        let trimmed = line.trim_start();

        if let Some(rest) = trimmed
            .strip_prefix("@param")
            .or_else(|| trimmed.strip_prefix("\\param"))
        {
            // `@param[in]` style Doxygen direction annotations
            let rest = if let Some(r) = rest.strip_prefix('[') {
                r.find(']').map_or(r, |p| &r[p + 1..])
            } else {
                rest
            };
            if let Some(name) = tag_param_name(rest) {
                push(name);
            }
            in_param_section = false;
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix(":param") {
            let field = rest.split(':').next().unwrap_or("");
            if let Some(word) = field.split_whitespace().last() {
                if let Some(name) = leading_identifier(word) {
                    push(name.to_string());
                }
            }
            in_param_section = false;
            continue;
        }

        match header_kind(line) {
            Some(SectionKind::Parameters) => {
                in_param_section = true;
                continue;
            }
            Some(_) => {
                in_param_section = false;
                continue;
            }
            None => {}
        }
        if tag_kind(line).is_some() {
            in_param_section = false;
            continue;
        }

        if in_param_section {
            // Google style "name (type): desc", NumPy "name : type",
            // plain "name: desc", optionally bulleted.
            let item = trimmed
                .trim_start_matches(['-', '*', '•'])
                .trim_start();
            if let Some(name) = leading_identifier(item) {
                let after = item[name.len()..].trim_start();
                if after.starts_with(':') || after.starts_with('(') {
                    push(name.to_string());
                }
            }
        }
    }
    names
}

/// First non-blank prose line, when the doc leads with one.
pub fn summary_line(doc: &str) -> Option<&str> {
    let first = doc.lines().find(|l| !l.trim().is_empty())?;
    if marker_kind(first).is_some() {
        return None;
    }
    Some(first.trim())
}

/// Imperative verbs that commonly open function documentation. Third
/// person forms are covered by the trailing-`s` rule in
/// [`opens_with_verb`].
const OPENING_VERBS: &[&str] = &[
    "add", "allocate", "append", "apply", "build", "calculate", "call", "check", "clear",
    "close", "collect", "compare", "compute", "configure", "connect", "convert", "copy",
    "count", "create", "decode", "delete", "determine", "encode", "ensure", "evaluate",
    "execute", "extract", "fetch", "filter", "find", "format", "free", "generate", "get",
    "handle", "initialize", "insert", "load", "log", "lookup", "make", "map", "merge",
    "normalize", "open", "parse", "perform", "populate", "prepare", "print", "process",
    "read", "register", "remove", "render", "replace", "report", "reset", "resolve",
    "retrieve", "return", "run", "save", "scan", "schedule", "search", "send", "set",
    "sort", "split", "start", "stop", "store", "transform", "translate", "update",
    "validate", "verify", "visit", "wrap", "write",
];

/// Non-verbs that happen to end in `s`.
const TRAILING_S_EXCEPTIONS: &[&str] = &[
    "this", "is", "was", "has", "its", "as", "thus", "always", "whereas", "less", "various",
];

/// Does the documentation open with an imperative or third-person verb?
pub fn opens_with_verb(doc: &str) -> bool {
    let Some(summary) = summary_line(doc) else {
        return false;
    };
    let Some(word) = summary
        .split(|c: char| !c.is_ascii_alphabetic())
        .find(|w| !w.is_empty())
    else {
        return false;
    };
    let lower = word.to_lowercase();
    if OPENING_VERBS.contains(&lower.as_str()) {
        return true;
    }
    lower.len() >= 3 && lower.ends_with('s') && !TRAILING_S_EXCEPTIONS.contains(&lower.as_str())
}

pub fn word_count(text: &str) -> usize {
    text.split_whitespace().count()
}
