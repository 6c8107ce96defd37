//! Repository discovery: walk local checkouts, detect languages by
//! extension, and load the repo manifest.

use std::fs;
use std::path::{Path, PathBuf};

use docmine_core::record::Language;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::{PipelineError, Result};

/// One locally checked-out repository to mine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepoSource {
    pub repo_name: String,
    pub root_path: PathBuf,
    pub license_tag: String,
    pub domain_tag: String,
}

/// A discovered source file with provenance metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFileRef {
    /// Absolute (or manifest-relative) path used for reading.
    pub path: PathBuf,
    /// Repo-relative path with forward slashes; the deterministic sort
    /// key and the `path` stored on records.
    pub rel_path: String,
    pub language: Language,
    pub byte_size: u64,
    /// SHA-256 of the file bytes, hex encoded.
    pub content_digest: String,
}

/// Extension-based language detection; anything unsupported is `None`.
pub fn detect_language(path: &Path) -> Option<Language> {
    let ext = path.extension()?.to_str()?;
    Language::from_extension(ext)
}

/// Minimal glob match supporting `*` and `?`; everything else is literal.
fn glob_match(pattern: &str, name: &str) -> bool {
    fn inner(p: &[u8], n: &[u8]) -> bool {
        match (p.first(), n.first()) {
            (None, None) => true,
            (Some(b'*'), _) => inner(&p[1..], n) || (!n.is_empty() && inner(p, &n[1..])),
            (Some(b'?'), Some(_)) => inner(&p[1..], &n[1..]),
            (Some(a), Some(b)) if a == b => inner(&p[1..], &n[1..]),
            _ => false,
        }
    }
    inner(pattern.as_bytes(), name.as_bytes())
}

fn is_ignored(name: &str, ignore_globs: &[String]) -> bool {
    ignore_globs.iter().any(|g| glob_match(g, name))
}

/// Walk a repository and return every supported source file in
/// lexicographic `rel_path` order. Directories whose name matches an
/// ignore glob are pruned whole.
pub fn discover_sources(repo: &RepoSource, ignore_globs: &[String]) -> Result<Vec<SourceFileRef>> {
    if !repo.root_path.is_dir() {
        return Err(PipelineError::io(
            repo.root_path.clone(),
            std::io::Error::new(std::io::ErrorKind::NotFound, "repo root is not a directory"),
        ));
    }
    let mut refs = Vec::new();
    let walker = walkdir::WalkDir::new(&repo.root_path)
        .follow_links(false)
        .into_iter()
        .filter_entry(|e| {
            if e.depth() == 0 || !e.file_type().is_dir() {
                return true;
            }
            let name = e.file_name().to_string_lossy();
            !is_ignored(&name, ignore_globs)
        });
    for entry in walker {
        let entry = entry.map_err(|e| {
            let path = e
                .path()
                .map(Path::to_path_buf)
                .unwrap_or_else(|| repo.root_path.clone());
            let source = e
                .into_io_error()
                .unwrap_or_else(|| std::io::Error::other("walk error"));
            PipelineError::io(path, source)
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let Some(language) = detect_language(entry.path()) else {
            continue;
        };
        let bytes = fs::read(entry.path())
            .map_err(|e| PipelineError::io(entry.path().to_path_buf(), e))?;
        let rel = entry
            .path()
            .strip_prefix(&repo.root_path)
            .unwrap_or(entry.path());
        let rel_path = rel
            .components()
            .map(|c| c.as_os_str().to_string_lossy())
            .collect::<Vec<_>>()
            .join("/");
        refs.push(SourceFileRef {
            path: entry.path().to_path_buf(),
            rel_path,
            language,
            byte_size: bytes.len() as u64,
            content_digest: hex::encode(Sha256::digest(&bytes)),
        });
    }
    refs.sort_by(|a, b| a.rel_path.cmp(&b.rel_path));
    Ok(refs)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepoManifestFile {
    #[serde(default)]
    repos: Vec<RepoEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepoEntry {
    name: String,
    root: PathBuf,
    #[serde(default)]
    license: String,
    #[serde(default)]
    domain: String,
}

/// Load a TOML manifest of `[[repos]]` entries. Relative roots resolve
/// against the manifest's directory.
pub fn load_repo_manifest(path: &Path) -> Result<Vec<RepoSource>> {
    let text = fs::read_to_string(path).map_err(|e| PipelineError::io(path.to_path_buf(), e))?;
    let parsed: RepoManifestFile = toml::from_str(&text)
        .map_err(|e| PipelineError::validation(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut repos = Vec::with_capacity(parsed.repos.len());
    for entry in parsed.repos {
        if entry.name.is_empty() {
            return Err(PipelineError::validation(format!(
                "{}: repo entry with empty name",
                path.display()
            )));
        }
        let root_path = if entry.root.is_absolute() {
            entry.root
        } else {
            base.join(entry.root)
        };
        if !root_path.is_dir() {
            return Err(PipelineError::validation(format!(
                "repo `{}`: root {} does not exist or is not a directory",
                entry.name,
                root_path.display()
            )));
        }
        repos.push(RepoSource {
            repo_name: entry.name,
            root_path,
            license_tag: entry.license,
            domain_tag: entry.domain,
        });
    }
    Ok(repos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn write(dir: &Path, rel: &str, contents: &str) {
        let path = dir.join(rel);
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(path, contents).unwrap();
    }

    fn repo(root: &Path) -> RepoSource {
        RepoSource {
            repo_name: "fixture".into(),
            root_path: root.to_path_buf(),
            license_tag: "Apache-2.0".into(),
            domain_tag: "testing".into(),
        }
    }

    #[test]
    fn detect_language_by_extension() {
        assert_eq!(detect_language(Path::new("src/util.py")), Some(Language::Python));
        assert_eq!(detect_language(Path::new("lib/foo.hpp")), Some(Language::Cpp));
        assert_eq!(detect_language(Path::new("README.md")), None);
        assert_eq!(detect_language(Path::new("Makefile")), None);
    }

    #[test]
    fn discovery_drops_unsupported_and_sorts() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "b.java", "class B {}");
        write(dir.path(), "a.py", "x = 1");
        write(dir.path(), "c.txt", "not code");
        let refs = discover_sources(&repo(dir.path()), &[]).unwrap();
        let rels: Vec<&str> = refs.iter().map(|r| r.rel_path.as_str()).collect();
        assert_eq!(rels, ["a.py", "b.java"]);
    }

    #[test]
    fn discovery_of_empty_directory_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        assert!(discover_sources(&repo(dir.path()), &[]).unwrap().is_empty());
    }

    #[test]
    fn nested_tree_is_lexicographic_and_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let files = [
            "z.py", "a/a.py", "a/b.java", "b/a.ts", "b/c/d.cpp", "a/c.js",
            "m.cc", "n/deep/f.hpp", "a0.py", "b/b.tsx",
        ];
        for f in files {
            write(dir.path(), f, "");
        }
        let refs = discover_sources(&repo(dir.path()), &[]).unwrap();
        assert_eq!(refs.len(), 10);
        let rels: Vec<String> = refs.iter().map(|r| r.rel_path.clone()).collect();
        let mut sorted = rels.clone();
        sorted.sort();
        assert_eq!(rels, sorted);
        let again = discover_sources(&repo(dir.path()), &[]).unwrap();
        assert_eq!(refs, again);
    }

    #[test]
    fn ignore_globs_prune_directories() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "src/ok.py", "x = 1");
        write(dir.path(), "node_modules/pkg/index.js", "x");
        write(dir.path(), "build/gen.py", "x");
        let ignore = vec!["node_modules".to_string(), "build".to_string()];
        let refs = discover_sources(&repo(dir.path()), &ignore).unwrap();
        let rels: Vec<&str> = refs.iter().map(|r| r.rel_path.as_str()).collect();
        assert_eq!(rels, ["src/ok.py"]);
    }

    #[test]
    fn digest_is_deterministic_over_bytes() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "a.py", "x = 1\n");
        let one = discover_sources(&repo(dir.path()), &[]).unwrap();
        let two = discover_sources(&repo(dir.path()), &[]).unwrap();
        assert_eq!(one[0].content_digest, two[0].content_digest);
        assert_eq!(one[0].byte_size, 6);
    }

    #[test]
    fn manifest_roundtrip_and_validation() {
        let dir = tempfile::tempdir().unwrap();
        fs::create_dir(dir.path().join("lib")).unwrap();
        let manifest = dir.path().join("repos.toml");
        fs::write(
            &manifest,
            "[[repos]]\nname = \"lib\"\nroot = \"lib\"\nlicense = \"MIT\"\ndomain = \"library\"\n",
        )
        .unwrap();
        let repos = load_repo_manifest(&manifest).unwrap();
        assert_eq!(repos.len(), 1);
        assert_eq!(repos[0].repo_name, "lib");
        assert!(repos[0].root_path.is_dir());

        fs::write(&manifest, "[[repos]]\nname = \"x\"\nroot = \"missing\"\n").unwrap();
        assert!(load_repo_manifest(&manifest).is_err());
    }

    #[test]
    fn glob_matching_rules() {
        assert!(glob_match("node_modules", "node_modules"));
        assert!(glob_match("*.egg-info", "pkg.egg-info"));
        assert!(glob_match("build*", "build-out"));
        assert!(!glob_match("build", "builder"));
    }
}
