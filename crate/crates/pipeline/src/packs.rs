//! Phrase-pack loading. The packs shipped under `packs/` are compiled in
//! as defaults; a config may point at external files instead (paths
//! resolve against the config file's directory).

use std::fs;
use std::path::Path;

use docmine_core::aidetect::{AiParams, PhrasePack};

use crate::{PipelineError, Result};

pub const BUILTIN_GPT_PACK: &str = include_str!("../packs/gpt_phrases.txt");
pub const BUILTIN_GENERIC_PACK: &str = include_str!("../packs/generic_phrases.txt");

#[derive(Debug, Clone)]
pub struct LoadedPacks {
    pub gpt: PhrasePack,
    pub generic: PhrasePack,
}

impl LoadedPacks {
    pub fn builtin() -> Self {
        Self {
            gpt: PhrasePack::parse(BUILTIN_GPT_PACK),
            generic: PhrasePack::parse(BUILTIN_GENERIC_PACK),
        }
    }
}

fn load_one(path_field: &str, base_dir: &Path, builtin: &str) -> Result<PhrasePack> {
    if path_field.is_empty() {
        return Ok(PhrasePack::parse(builtin));
    }
    let path = {
        let p = Path::new(path_field);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            base_dir.join(p)
        }
    };
    let text = fs::read_to_string(&path).map_err(|e| PipelineError::io(path, e))?;
    Ok(PhrasePack::parse(&text))
}

/// Resolve the configured packs, falling back to the built-in ones.
pub fn load_packs(ai: &AiParams, base_dir: &Path) -> Result<LoadedPacks> {
    Ok(LoadedPacks {
        gpt: load_one(&ai.gpt_phrase_pack, base_dir, BUILTIN_GPT_PACK)?,
        generic: load_one(&ai.generic_phrase_pack, base_dir, BUILTIN_GENERIC_PACK)?,
    })
}
