//! Tree-sitter extraction: parse a source file, walk the syntax tree for
//! named function definitions, attach documentation, and compute the
//! structural metadata (cyclomatic complexity, logical lines, type
//! annotations) the filter stages key on.

pub mod docstrip;
pub mod profile;

use docmine_core::lang::count_logical_lines;
use docmine_core::record::{FunctionRecord, Language};
use tree_sitter::{Node, Parser, Tree};

use profile::{profile_for, DocAttachment, LanguageProfile};

/// Grammar for a file. `.tsx` files need the TSX dialect of the
/// TypeScript grammar; `.jsx` is handled by the JavaScript grammar.
fn grammar_for(language: Language, path: &str) -> tree_sitter::Language {
    match language {
        Language::Python => tree_sitter_python::language(),
        Language::Java => tree_sitter_java::language(),
        Language::TypeScript => {
            if path.ends_with(".tsx") {
                tree_sitter_typescript::language_tsx()
            } else {
                tree_sitter_typescript::language_typescript()
            }
        }
        Language::JavaScript => tree_sitter_javascript::language(),
        Language::Cpp => tree_sitter_cpp::language(),
    }
}

/// Parse file contents into a concrete syntax tree. Files with syntax
/// errors still parse (error subtrees are skipped during extraction);
/// `None` signals a catastrophic parser failure and the caller skips the
/// file.
pub fn parse_source(contents: &str, language: Language, path: &str) -> Option<Tree> {
    let mut parser = Parser::new();
    parser.set_language(&grammar_for(language, path)).ok()?;
    parser.parse(contents, None)
}

/// Extract every named function definition from one parsed file.
/// Deterministic: records come out in source order.
pub fn extract_functions(
    tree: &Tree,
    contents: &str,
    repo_name: &str,
    rel_path: &str,
    language: Language,
) -> Vec<FunctionRecord> {
    let profile = profile_for(language);
    let lines: Vec<&str> = contents.split('\n').collect();
    let mut records = Vec::new();
    walk(
        tree.root_node(),
        &Ctx {
            contents,
            lines: &lines,
            repo_name,
            rel_path,
            profile,
        },
        &mut records,
    );
    records
}

/// Convenience wrapper: parse + extract. Returns `None` when the parser
/// itself fails.
pub fn extract_from_source(
    contents: &str,
    repo_name: &str,
    rel_path: &str,
    language: Language,
) -> Option<Vec<FunctionRecord>> {
    let tree = parse_source(contents, language, rel_path)?;
    Some(extract_functions(
        &tree, contents, repo_name, rel_path, language,
    ))
}

struct Ctx<'a> {
    contents: &'a str,
    lines: &'a [&'a str],
    repo_name: &'a str,
    rel_path: &'a str,
    profile: &'a LanguageProfile,
}

fn walk(node: Node, ctx: &Ctx, out: &mut Vec<FunctionRecord>) {
    if node.is_error() {
        return; // error-node subtrees yield nothing
    }
    if ctx.profile.function_node_kinds.contains(&node.kind()) {
        if let Some(record) = build_record(node, ctx) {
            out.push(record);
        }
    }
    let mut cursor = node.walk();
    for child in node.children(&mut cursor) {
        walk(child, ctx, out);
    }
}

/// Climb through wrapper nodes (decorators, `export`, `template<...>`)
/// that belong to this single definition.
fn anchor_of<'t>(node: Node<'t>, profile: &LanguageProfile) -> Node<'t> {
    let mut anchor = node;
    while let Some(parent) = anchor.parent() {
        if profile.wrapper_node_kinds.contains(&parent.kind()) {
            anchor = parent;
        } else {
            break;
        }
    }
    anchor
}

fn node_text<'a>(node: Node, contents: &'a str) -> &'a str {
    &contents[node.byte_range()]
}

fn build_record(node: Node, ctx: &Ctx) -> Option<FunctionRecord> {
    let language = ctx.profile.language;
    let name = function_name(node, ctx.contents, language)?;
    let body = node.child_by_field_name("body")?; // body-less declarations are not definitions

    let anchor = anchor_of(node, ctx.profile);
    let start_row = anchor.start_position().row;
    let end_row = anchor.end_position().row;
    let code = ctx.lines[start_row..=end_row.min(ctx.lines.len() - 1)].join("\n");

    let signature = signature_text(node, body, ctx.contents);
    let documentation = match ctx.profile.doc_attachment {
        DocAttachment::DocstringInBody => python_docstring(body, ctx.contents),
        DocAttachment::CommentPreceding => preceding_doc_comment(anchor, ctx),
    }
    .unwrap_or_default();

    let complexity = 1 + count_decisions(body, ctx.contents, ctx.profile);
    let has_type_annotations = detect_type_annotations(node, &documentation, language);

    let start_line = (start_row + 1) as u32;
    Some(FunctionRecord {
        id: FunctionRecord::make_id(ctx.repo_name, ctx.rel_path, start_line, &name),
        repo_name: ctx.repo_name.to_string(),
        path: ctx.rel_path.to_string(),
        language,
        name,
        signature,
        documentation,
        start_line,
        end_line: (end_row + 1) as u32,
        complexity,
        logical_lines: count_logical_lines(&code, language),
        has_type_annotations,
        code,
    })
}

/// The declared name. Anonymous definitions (lambdas, arrow functions,
/// unnamed function expressions) have no name node and are excluded
/// upstream by the function-kind inventory.
fn function_name(node: Node, contents: &str, language: Language) -> Option<String> {
    if language == Language::Cpp {
        // function_definition -> (pointer/reference wrappers) ->
        // function_declarator -> declarator holds the name
        let declarator = node.child_by_field_name("declarator")?;
        let fn_decl = find_function_declarator(declarator)?;
        let name_node = fn_decl.child_by_field_name("declarator")?;
        return Some(rightmost_name(name_node, contents));
    }
    let name = node.child_by_field_name("name")?;
    Some(node_text(name, contents).to_string())
}

fn find_function_declarator(node: Node) -> Option<Node> {
    if node.kind() == "function_declarator" {
        return Some(node);
    }
    let mut cursor = node.walk();
    let children: Vec<Node> = node.children(&mut cursor).collect();
    children.into_iter().find_map(find_function_declarator)
}

/// For qualified C++ names (`Widget::resize`, `operator==`, `~Widget`)
/// take the whole declarator text; it reads as the function's name.
fn rightmost_name(node: Node, contents: &str) -> String {
    node_text(node, contents).to_string()
}

/// Header slice from definition start to body start, whitespace-collapsed
/// and with Python's trailing colon removed.
fn signature_text(node: Node, body: Node, contents: &str) -> String {
    let raw = &contents[node.start_byte()..body.start_byte()];
    let collapsed: String = raw.split_whitespace().collect::<Vec<_>>().join(" ");
    collapsed.trim_end_matches(':').trim().to_string()
}

/// Python: leading string literal in the body.
fn python_docstring(body: Node, contents: &str) -> Option<String> {
    let first = body.named_child(0)?;
    if first.kind() != "expression_statement" || first.named_child_count() != 1 {
        return None;
    }
    let literal = first.named_child(0)?;
    if literal.kind() != "string" {
        return None;
    }
    let text = docstrip::strip_python_docstring(node_text(literal, contents));
    (!text.is_empty()).then_some(text)
}

fn is_doc_comment(text: &str, markers: &[&str]) -> bool {
    markers.iter().any(|m| text.starts_with(m))
}

/// Doc comment(s) immediately preceding the definition with no blank-line
/// gap. Block comments attach alone; `///`-style line comments attach as
/// a contiguous adjacent run.
fn preceding_doc_comment(anchor: Node, ctx: &Ctx) -> Option<String> {
    let mut parts: Vec<&str> = Vec::new();
    let mut expected_row = anchor.start_position().row;
    let mut cursor = anchor;
    loop {
        let Some(prev) = cursor.prev_sibling() else {
            break;
        };
        if !ctx.profile.comment_node_kinds.contains(&prev.kind()) {
            break;
        }
        let end_row = prev.end_position().row;
        let adjacent = end_row + 1 == expected_row || end_row == expected_row;
        if !adjacent {
            break;
        }
        let text = node_text(prev, ctx.contents);
        if !is_doc_comment(text, ctx.profile.doc_comment_markers) {
            break;
        }
        parts.push(text);
        if text.starts_with("/*") {
            break; // one block comment is a complete doc
        }
        expected_row = prev.start_position().row;
        cursor = prev;
    }
    if parts.is_empty() {
        return None;
    }
    parts.reverse();
    let stripped = docstrip::strip_doc_comment(&parts.join("\n"));
    (!stripped.is_empty()).then_some(stripped)
}

/// Count decision points lexically within the body subtree.
fn count_decisions(body: Node, contents: &str, profile: &LanguageProfile) -> u32 {
    let mut count = 0u32;
    let mut stack = vec![body];
    while let Some(node) = stack.pop() {
        let mut cursor = node.walk();
        for child in node.children(&mut cursor) {
            if is_decision(child, contents, profile) {
                count += 1;
            }
            stack.push(child);
        }
    }
    count
}

fn is_decision(node: Node, contents: &str, profile: &LanguageProfile) -> bool {
    let kind = node.kind();
    if profile.decision_node_kinds.contains(&kind) {
        return true;
    }
    if profile.case_label_kinds.contains(&kind) {
        // `case X:` counts; `default:` does not
        return node.child(0).map(|c| c.kind() == "case").unwrap_or(false);
    }
    if profile.short_circuit_binary && kind == "binary_expression" {
        if let Some(op) = node.child_by_field_name("operator") {
            let text = node_text(op, contents);
            return text == "&&" || text == "||";
        }
    }
    false
}

/// Type-annotation presence. Statically typed signatures (Java, C++, TS)
/// always carry types; Python needs annotation syntax; JavaScript counts
/// JSDoc type tags in the documentation.
fn detect_type_annotations(node: Node, documentation: &str, language: Language) -> bool {
    match language {
        Language::Java | Language::Cpp | Language::TypeScript => true,
        Language::Python => {
            if node.child_by_field_name("return_type").is_some() {
                return true;
            }
            let Some(params) = node.child_by_field_name("parameters") else {
                return false;
            };
            let mut cursor = params.walk();
            let annotated = params
                .children(&mut cursor)
                .any(|p| matches!(p.kind(), "typed_parameter" | "typed_default_parameter"));
            annotated
        }
        Language::JavaScript => {
            documentation.contains("@param {")
                || documentation.contains("@returns {")
                || documentation.contains("@return {")
                || documentation.contains("@type")
        }
    }
}
