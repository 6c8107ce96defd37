//! Strip comment delimiters from documentation so downstream scoring
//! operates on prose, not comment syntax.

/// Remove quotes and prefix letters from a Python string literal and
/// dedent the remainder (inspect.cleandoc style).
pub fn strip_python_docstring(raw: &str) -> String {
    let t = raw
        .trim()
        .trim_start_matches(|c: char| "rRbBuUfF".contains(c));
    for delim in ["\"\"\"", "'''", "\"", "'"] {
        if t.len() >= delim.len() * 2 && t.starts_with(delim) && t.ends_with(delim) {
            return cleandoc(&t[delim.len()..t.len() - delim.len()]);
        }
    }
    cleandoc(t)
}

/// Dedent every line after the first by their common leading whitespace,
/// then trim surrounding blank space.
fn cleandoc(text: &str) -> String {
    let lines: Vec<&str> = text.split('\n').collect();
    let min_indent = lines
        .iter()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.len() - l.trim_start().len())
        .min()
        .unwrap_or(0);
    let mut out = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        if i == 0 {
            out.push(line.trim_start());
        } else if line.len() >= min_indent {
            out.push(&line[min_indent..]);
        } else {
            out.push(line.trim_start());
        }
    }
    let joined: String = out
        .iter()
        .map(|l| l.trim_end())
        .collect::<Vec<_>>()
        .join("\n");
    joined.trim_matches('\n').trim().to_string()
}

/// Strip one doc comment (block `/** .. */` style or a run of `///`-style
/// lines) down to its prose.
pub fn strip_doc_comment(raw: &str) -> String {
    let trimmed = raw.trim();
    if trimmed.starts_with("/*") {
        strip_block_comment(trimmed)
    } else {
        strip_line_comments(trimmed)
    }
}

fn strip_block_comment(raw: &str) -> String {
    let mut inner = raw.strip_prefix("/*").unwrap_or(raw);
    inner = inner.strip_suffix("*/").unwrap_or(inner);
    // opener decoration: `/**` and `/*!` leave a leading `*` or `!`
    inner = inner.trim_start_matches(['*', '!']);
    let mut lines = Vec::new();
    for line in inner.split('\n') {
        let t = line.trim_start();
        let t = if let Some(rest) = t.strip_prefix('*') {
            rest.strip_prefix(' ').unwrap_or(rest)
        } else {
            t
        };
        lines.push(t.trim_end());
    }
    lines.join("\n").trim_matches('\n').trim().to_string()
}

fn strip_line_comments(raw: &str) -> String {
    let mut lines = Vec::new();
    for line in raw.split('\n') {
        let t = line.trim_start();
        let t = t
            .strip_prefix("///")
            .or_else(|| t.strip_prefix("//!"))
            .or_else(|| t.strip_prefix("//"))
            .unwrap_or(t);
        let t = t.strip_prefix(' ').unwrap_or(t);
        lines.push(t.trim_end());
    }
    lines.join("\n").trim_matches('\n').trim().to_string()
}
