//! Language-aware text scanning shared across stages.
//!
//! A single left-to-right scanner splits source text into code, string,
//! and comment segments using each language's comment and string-literal
//! syntax. On top of it sit code normalization for dedup, logical-line
//! counting, and the signature analysis used by the quality dimensions
//! (parameter names, return-value detection).
//!
//! The scanner is lexical, not a parser: JS regex literals and C
//! preprocessor tricks are out of scope. String literals are honored so
//! that comment markers inside them are never treated as comments.

use alloc::string::String;
use alloc::vec::Vec;

use crate::record::Language;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    Code,
    Str,
    Comment,
}

/// Half-open byte range of one segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    pub kind: SegmentKind,
}

struct CommentSyntax {
    line_prefix: &'static str,
    block: Option<(&'static str, &'static str)>,
    quotes: &'static [u8],
    triple_quotes: bool,
    raw_strings: bool,
    // quote character whose literals may span lines (JS/TS templates)
    multiline_quote: Option<u8>,
}

const PYTHON_SYNTAX: CommentSyntax = CommentSyntax {
    line_prefix: "#",
    block: None,
    quotes: b"\"'",
    triple_quotes: true,
    raw_strings: false,
    multiline_quote: None,
};

const C_FAMILY_SYNTAX: CommentSyntax = CommentSyntax {
    line_prefix: "//",
    block: Some(("/*", "*/")),
    quotes: b"\"'",
    triple_quotes: false,
    raw_strings: false,
    multiline_quote: None,
};

const CPP_SYNTAX: CommentSyntax = CommentSyntax {
    line_prefix: "//",
    block: Some(("/*", "*/")),
    quotes: b"\"'",
    triple_quotes: false,
    raw_strings: true,
    multiline_quote: None,
};

const JS_SYNTAX: CommentSyntax = CommentSyntax {
    line_prefix: "//",
    block: Some(("/*", "*/")),
    quotes: b"\"'`",
    triple_quotes: false,
    raw_strings: false,
    multiline_quote: Some(b'`'),
};

fn syntax_for(language: Language) -> &'static CommentSyntax {
    match language {
        Language::Python => &PYTHON_SYNTAX,
        Language::Java => &C_FAMILY_SYNTAX,
        Language::Cpp => &CPP_SYNTAX,
        Language::TypeScript | Language::JavaScript => &JS_SYNTAX,
    }
}

fn starts_with_at(bytes: &[u8], at: usize, pat: &str) -> bool {
    bytes[at..].starts_with(pat.as_bytes())
}

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

/// End index (exclusive) of a quoted literal starting at `start`.
fn scan_quoted(bytes: &[u8], start: usize, quote: u8, multiline: bool) -> usize {
    let mut j = start + 1;
    while j < bytes.len() {
        match bytes[j] {
            b'\\' => j += 2,
            b'\n' if !multiline => return j, // unterminated; newline stays code
            b if b == quote => return j + 1,
            _ => j += 1,
        }
    }
    bytes.len()
}

fn scan_triple(bytes: &[u8], start: usize, quote: u8) -> usize {
    let delim = [quote, quote, quote];
    let mut j = start + 3;
    while j < bytes.len() {
        if bytes[j] == b'\\' {
            j += 2;
            continue;
        }
        if bytes[j..].starts_with(&delim) {
            return j + 3;
        }
        j += 1;
    }
    bytes.len()
}

/// Detects `R"`, `LR"`, `uR"`, `UR"`, `u8R"` at `at`, returning the raw
/// string's end when present.
fn scan_raw_string(bytes: &[u8], at: usize) -> Option<usize> {
    const PREFIXES: [&str; 5] = ["R\"", "LR\"", "uR\"", "UR\"", "u8R\""];
    if at > 0 && is_ident_byte(bytes[at - 1]) {
        return None;
    }
    let prefix = PREFIXES
        .iter()
        .find(|p| bytes[at..].starts_with(p.as_bytes()))?;
    let mut j = at + prefix.len();
    let delim_start = j;
    while j < bytes.len() && bytes[j] != b'(' {
        if j - delim_start > 16 || bytes[j] == b'"' || bytes[j] == b'\\' {
            return None;
        }
        j += 1;
    }
    if j >= bytes.len() {
        return None;
    }
    let delim = &bytes[delim_start..j];
    let mut close = Vec::with_capacity(delim.len() + 2);
    close.push(b')');
    close.extend_from_slice(delim);
    close.push(b'"');
    let mut k = j + 1;
    while k < bytes.len() {
        if bytes[k..].starts_with(&close) {
            return Some(k + close.len());
        }
        k += 1;
    }
    Some(bytes.len())
}

/// Split `code` into code/string/comment segments for `language`.
pub fn scan_segments(code: &str, language: Language) -> Vec<Segment> {
    let syn = syntax_for(language);
    let bytes = code.as_bytes();
    let mut segments = Vec::new();
    let mut code_start = 0usize;
    let mut i = 0usize;

    let flush = |segments: &mut Vec<Segment>, from: usize, to: usize| {
        if to > from {
            segments.push(Segment {
                start: from,
                end: to,
                kind: SegmentKind::Code,
            });
        }
    };

    while i < bytes.len() {
        if starts_with_at(bytes, i, syn.line_prefix) {
            flush(&mut segments, code_start, i);
            let end = bytes[i..]
                .iter()
                .position(|&b| b == b'\n')
                .map_or(bytes.len(), |p| i + p);
            segments.push(Segment {
                start: i,
                end,
                kind: SegmentKind::Comment,
            });
            i = end;
            code_start = i;
            continue;
        }
        if let Some((open, close)) = syn.block {
            if starts_with_at(bytes, i, open) {
                flush(&mut segments, code_start, i);
                let body = i + open.len();
                let end = code[body..]
                    .find(close)
                    .map_or(bytes.len(), |p| body + p + close.len());
                segments.push(Segment {
                    start: i,
                    end,
                    kind: SegmentKind::Comment,
                });
                i = end;
                code_start = i;
                continue;
            }
        }
        if syn.raw_strings {
            if let Some(end) = scan_raw_string(bytes, i) {
                flush(&mut segments, code_start, i);
                segments.push(Segment {
                    start: i,
                    end,
                    kind: SegmentKind::Str,
                });
                i = end;
                code_start = i;
                continue;
            }
        }
        let b = bytes[i];
        if syn.quotes.contains(&b) {
            flush(&mut segments, code_start, i);
            let end = if syn.triple_quotes && bytes[i..].starts_with(&[b, b, b]) {
                scan_triple(bytes, i, b)
            } else {
                scan_quoted(bytes, i, b, syn.multiline_quote == Some(b))
            };
            segments.push(Segment {
                start: i,
                end,
                kind: SegmentKind::Str,
            });
            i = end;
            code_start = i;
            continue;
        }
        i += 1;
    }
    flush(&mut segments, code_start, bytes.len());
    segments
}

/// Replace comments with a single space; code and strings stay verbatim.
pub fn strip_comments(code: &str, language: Language) -> String {
    let mut out = String::with_capacity(code.len());
    for seg in scan_segments(code, language) {
        match seg.kind {
            SegmentKind::Comment => out.push(' '),
            _ => out.push_str(&code[seg.start..seg.end]),
        }
    }
    out
}

/// Strip comments and collapse whitespace runs outside string literals to
/// a single space; string literals are preserved byte for byte.
pub fn normalize_source(code: &str, language: Language) -> String {
    let mut out = String::with_capacity(code.len());
    let mut pending_space = false;
    for seg in scan_segments(code, language) {
        let text = &code[seg.start..seg.end];
        match seg.kind {
            SegmentKind::Comment => pending_space = true,
            SegmentKind::Str => {
                if pending_space && !out.is_empty() {
                    out.push(' ');
                }
                pending_space = false;
                out.push_str(text);
            }
            SegmentKind::Code => {
                for ch in text.chars() {
                    if ch.is_whitespace() {
                        pending_space = true;
                    } else {
                        if pending_space && !out.is_empty() {
                            out.push(' ');
                        }
                        pending_space = false;
                        out.push(ch);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineKind {
    Blank,
    CommentOnly,
    Code,
}

/// Classify every line as blank, comment-only, or code-bearing. String
/// literal content counts as code, so a multi-line literal marks all of
/// its lines.
pub fn classify_lines(code: &str, language: Language) -> Vec<LineKind> {
    let n_lines = code.split('\n').count();
    let mut has_code = alloc::vec![false; n_lines];
    let mut has_comment = alloc::vec![false; n_lines];

    let mut line = 0usize;
    let mut pos = 0usize;
    for seg in scan_segments(code, language) {
        // advance line counter over any gap (only newlines occur in gaps)
        for &b in &code.as_bytes()[pos..seg.start] {
            if b == b'\n' {
                line += 1;
            }
        }
        let mut l = line;
        for &b in &code.as_bytes()[seg.start..seg.end] {
            if b == b'\n' {
                l += 1;
                continue;
            }
            match seg.kind {
                SegmentKind::Code => {
                    if !(b as char).is_whitespace() {
                        has_code[l] = true;
                    }
                }
                SegmentKind::Str => has_code[l] = true,
                SegmentKind::Comment => has_comment[l] = true,
            }
        }
        for &b in &code.as_bytes()[seg.start..seg.end] {
            if b == b'\n' {
                line += 1;
            }
        }
        pos = seg.end;
    }

    (0..n_lines)
        .map(|l| {
            if has_code[l] {
                LineKind::Code
            } else if has_comment[l] {
                LineKind::CommentOnly
            } else {
                LineKind::Blank
            }
        })
        .collect()
}

/// Lines that are neither blank nor comment-only.
pub fn count_logical_lines(code: &str, language: Language) -> u32 {
    classify_lines(code, language)
        .iter()
        .filter(|k| **k == LineKind::Code)
        .count() as u32
}

/// (comment-only lines, non-blank lines); used by the code-quality
/// dimension to spot bodies dominated by commented-out code.
pub fn comment_line_stats(code: &str, language: Language) -> (u32, u32) {
    let mut comment_only = 0u32;
    let mut non_blank = 0u32;
    for kind in classify_lines(code, language) {
        match kind {
            LineKind::CommentOnly => {
                comment_only += 1;
                non_blank += 1;
            }
            LineKind::Code => non_blank += 1,
            LineKind::Blank => {}
        }
    }
    (comment_only, non_blank)
}

// ---------------------------------------------------------------------------
// Signature analysis
// ---------------------------------------------------------------------------

fn tracks_angle_brackets(language: Language) -> bool {
    !matches!(language, Language::Python | Language::JavaScript)
}

/// Byte span of the parameter list interior (between the opening paren of
/// the parameter list and its matching close).
fn param_list_span(signature: &str, language: Language) -> Option<(usize, usize)> {
    let bytes = signature.as_bytes();
    let mut open = signature.find('(')?;
    // `operator()` in C++: the parameter list is the following paren pair.
    if language == Language::Cpp {
        if let Some(p) = signature.find("operator()") {
            if p + "operator()".len() <= signature.len() && open >= p && open < p + 9 {
                open = signature[p + "operator()".len()..]
                    .find('(')
                    .map(|q| p + "operator()".len() + q)?;
            }
        }
    }
    let mut depth = 0i32;
    let mut angle = 0i32;
    let mut i = open;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' | b'{' => depth += 1,
            b')' | b']' | b'}' => {
                depth -= 1;
                if depth == 0 && bytes[i] == b')' {
                    return Some((open + 1, i));
                }
            }
            b'<' if tracks_angle_brackets(language) => angle += 1,
            b'>' if tracks_angle_brackets(language) && angle > 0 => angle -= 1,
            b'\'' | b'"' => {
                i = scan_quoted(bytes, i, bytes[i], false);
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    None
}

/// Split a parameter list on top-level commas (commas nested in brackets,
/// generics, or string defaults do not split).
fn split_top_level(inner: &str, language: Language) -> Vec<&str> {
    let bytes = inner.as_bytes();
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut angle = 0i32;
    let mut start = 0usize;
    let mut i = 0usize;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' | b'{' => depth += 1,
            b')' | b']' | b'}' => depth -= 1,
            b'<' if tracks_angle_brackets(language) => angle += 1,
            b'>' if tracks_angle_brackets(language) && angle > 0 => angle -= 1,
            b'\'' | b'"' => {
                i = scan_quoted(bytes, i, bytes[i], false);
                continue;
            }
            b',' if depth == 0 && angle == 0 => {
                parts.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    parts.push(&inner[start..]);
    parts
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '$' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '$')
}

const CPP_TYPE_WORDS: &[&str] = &[
    "void", "int", "char", "float", "double", "long", "short", "unsigned", "signed", "bool",
    "auto", "const", "constexpr", "volatile", "struct", "class", "enum", "union", "size_t",
    "wchar_t", "int8_t", "int16_t", "int32_t", "int64_t", "uint8_t", "uint16_t", "uint32_t",
    "uint64_t",
];

fn python_param_name(segment: &str, index: usize) -> Option<String> {
    let mut s = segment.trim();
    s = s.trim_start_matches('*').trim();
    if s.is_empty() || s == "/" {
        return None;
    }
    let cut = s.find([':', '=']).unwrap_or(s.len());
    let name = s[..cut].trim();
    if name.is_empty() || !is_identifier(name) {
        return None;
    }
    if index == 0 && (name == "self" || name == "cls") {
        return None;
    }
    Some(String::from(name))
}

fn ts_js_param_name(segment: &str) -> Option<String> {
    let mut s = segment.trim();
    s = s.strip_prefix("...").unwrap_or(s).trim();
    if s.starts_with('{') || s.starts_with('[') {
        return None; // destructuring pattern has no single name
    }
    let cut = s.find([':', '=', '?']).unwrap_or(s.len());
    let name = s[..cut].trim();
    if name.is_empty() || name == "this" || !is_identifier(name) {
        return None;
    }
    Some(String::from(name))
}

fn java_param_name(segment: &str) -> Option<String> {
    let cleaned = segment.replace("...", " ");
    let name = cleaned
        .split_whitespace()
        .filter(|t| !t.starts_with('@'))
        .last()?
        .trim_end_matches("[]");
    if is_identifier(name) {
        Some(String::from(name))
    } else {
        None
    }
}

fn cpp_param_name(segment: &str) -> Option<String> {
    let s = segment.trim();
    if s.is_empty() || s == "void" || s == "..." {
        return None;
    }
    let before_default = s.split('=').next().unwrap_or(s);
    let spaced: String = before_default
        .chars()
        .map(|c| if c == '*' || c == '&' { ' ' } else { c })
        .collect();
    for token in spaced.split_whitespace().rev() {
        let token = token.split('[').next().unwrap_or(token);
        if is_identifier(token) && !CPP_TYPE_WORDS.contains(&token) {
            return Some(String::from(token));
        }
    }
    None
}

/// Declared parameter names parsed from a signature. Best effort: exotic
/// declarators (function pointers, destructuring) yield no name rather
/// than a wrong one. Python `self`/`cls` and TS `this` receivers are not
/// parameters to document and are skipped.
pub fn parameter_names(signature: &str, language: Language) -> Vec<String> {
    let Some((start, end)) = param_list_span(signature, language) else {
        return Vec::new();
    };
    let inner = &signature[start..end];
    if inner.trim().is_empty() {
        return Vec::new();
    }
    let mut names = Vec::new();
    for (index, segment) in split_top_level(inner, language).into_iter().enumerate() {
        let name = match language {
            Language::Python => python_param_name(segment, index),
            Language::TypeScript | Language::JavaScript => ts_js_param_name(segment),
            Language::Java => java_param_name(segment),
            Language::Cpp => cpp_param_name(segment),
        };
        if let Some(name) = name {
            names.push(name);
        }
    }
    names
}

/// Does the body contain a `return` with a value (after comment removal)?
fn body_returns_value(code: &str, language: Language) -> bool {
    let stripped = strip_comments(code, language);
    let bytes = stripped.as_bytes();
    let mut i = 0usize;
    while let Some(p) = stripped[i..].find("return") {
        let at = i + p;
        let end = at + "return".len();
        let left_ok = at == 0 || !is_ident_byte(bytes[at - 1]);
        let right_ok = end >= bytes.len() || !is_ident_byte(bytes[end]);
        if left_ok && right_ok {
            let mut j = end;
            while j < bytes.len() && (bytes[j] == b' ' || bytes[j] == b'\t') {
                j += 1;
            }
            let bare = j >= bytes.len() || matches!(bytes[j], b';' | b'}' | b'\n' | b'\r');
            if !bare {
                return true;
            }
        }
        i = end;
    }
    false
}

/// Whether the function produces a value the documentation could describe.
///
/// Statically typed signatures are inspected for a `void` return; Python
/// uses the `->` annotation when present. Otherwise the body is scanned
/// for a `return <expr>`.
pub fn returns_value(signature: &str, code: &str, language: Language) -> bool {
    match language {
        Language::Java | Language::Cpp => {
            let open = param_list_span(signature, language)
                .map(|(s, _)| s - 1)
                .unwrap_or(signature.len());
            let head = &signature[..open];
            let tokens: Vec<&str> = head.split_whitespace().collect();
            match tokens.split_last() {
                None => false,
                Some((name, rest)) => {
                    if name.starts_with('~') || rest.is_empty() {
                        return false; // destructor or constructor
                    }
                    !rest.contains(&"void")
                }
            }
        }
        Language::Python => match signature.find("->") {
            Some(p) => {
                let ret = signature[p + 2..].trim().trim_end_matches(':').trim();
                ret != "None"
            }
            None => body_returns_value(code, language),
        },
        Language::TypeScript => {
            if let Some((_, close)) = param_list_span(signature, language) {
                let rest = signature[close + 1..].trim();
                if let Some(ann) = rest.strip_prefix(':') {
                    let ty = ann.trim();
                    return !(ty == "void" || ty == "undefined" || ty == "never");
                }
            }
            body_returns_value(code, language)
        }
        Language::JavaScript => body_returns_value(code, language),
    }
}
