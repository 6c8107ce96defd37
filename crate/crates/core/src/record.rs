//! The unit sample of the pipeline: one extracted function together with
//! its documentation and structural metadata.

use alloc::format;
use alloc::string::String;
use serde::{Deserialize, Serialize};

/// Source languages the pipeline supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Python,
    Java,
    TypeScript,
    JavaScript,
    Cpp,
}

impl Language {
    pub const ALL: [Language; 5] = [
        Language::Python,
        Language::Java,
        Language::TypeScript,
        Language::JavaScript,
        Language::Cpp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Language::Python => "python",
            Language::Java => "java",
            Language::TypeScript => "typescript",
            Language::JavaScript => "javascript",
            Language::Cpp => "cpp",
        }
    }

    /// Extension-based detection; anything unlisted maps to `None`.
    pub fn from_extension(ext: &str) -> Option<Language> {
        match ext {
            "py" => Some(Language::Python),
            "java" => Some(Language::Java),
            "ts" | "tsx" => Some(Language::TypeScript),
            "js" | "jsx" => Some(Language::JavaScript),
            "cpp" | "cc" | "cxx" | "h" | "hpp" => Some(Language::Cpp),
            _ => None,
        }
    }
}

impl core::fmt::Display for Language {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One extracted function-documentation pair.
///
/// `code` is the verbatim slice of full source lines `start_line..=end_line`
/// (1-based, joined with `\n`), so a record can always be re-located in the
/// original file. `documentation` is stored with comment delimiters and
/// leading asterisks/indentation already stripped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionRecord {
    pub id: String,
    pub repo_name: String,
    pub path: String,
    pub language: Language,
    pub name: String,
    pub signature: String,
    pub code: String,
    pub documentation: String,
    pub start_line: u32,
    pub end_line: u32,
    pub complexity: u32,
    pub logical_lines: u32,
    pub has_type_annotations: bool,
}

impl FunctionRecord {
    /// Stable id: unique within a run by construction.
    pub fn make_id(repo_name: &str, path: &str, start_line: u32, name: &str) -> String {
        format!("{repo_name}:{path}:{start_line}:{name}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extension_mapping() {
        assert_eq!(Language::from_extension("py"), Some(Language::Python));
        assert_eq!(Language::from_extension("hpp"), Some(Language::Cpp));
        assert_eq!(Language::from_extension("tsx"), Some(Language::TypeScript));
        assert_eq!(Language::from_extension("md"), None);
        assert_eq!(Language::from_extension("rs"), None);
    }

    #[test]
    fn id_embeds_provenance() {
        let id = FunctionRecord::make_id("repo", "src/a.py", 10, "f");
        assert_eq!(id, "repo:src/a.py:10:f");
    }
}
