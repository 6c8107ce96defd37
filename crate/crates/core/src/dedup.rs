//! Stage 3: exact duplicate removal over normalized code, then
//! near-duplicate removal with MinHash signatures in a banded LSH index,
//! in one deterministic pass.
//!
//! The pass contract: records are visited in corpus order; a record is
//! discarded only when its verified signature similarity against some
//! prior survivor reaches the threshold (bucket collisions alone never
//! discard); survivors are inserted in visit order. Same input order and
//! seed, same survivor set, always.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::lang;
use crate::record::Language;
use crate::rng::{mix64, SplitMix64};

/// Stage-3 parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DedupParams {
    /// Number of MinHash components (hash functions).
    pub minhash_k: usize,
    /// Signature-similarity threshold on (0,1) for near-duplicate removal.
    pub tau_lsh: f64,
    /// Base seed; the k per-component seeds derive from it.
    pub seed: u64,
    /// Index token sets from different languages together. Off by
    /// default so coincidental keyword overlap cannot collapse records
    /// across languages.
    pub cross_language: bool,
}

impl Default for DedupParams {
    fn default() -> Self {
        Self {
            minhash_k: 128,
            tau_lsh: 0.8,
            seed: 42,
            cross_language: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DedupError {
    /// MinHash over an empty token set is undefined; callers route
    /// empty-token records straight to retention instead.
    EmptyTokenSet,
    SignatureLengthMismatch { left: usize, right: usize },
}

impl core::fmt::Display for DedupError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DedupError::EmptyTokenSet => f.write_str("cannot sign an empty token set"),
            DedupError::SignatureLengthMismatch { left, right } => write!(
                f,
                "signature length mismatch: {left} components vs {right}"
            ),
        }
    }
}

impl core::error::Error for DedupError {}

/// Code with comments removed and whitespace collapsed; the exact-dedup
/// key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedCode {
    pub text: String,
    pub digest: [u8; 32],
}

/// Strip comments per the language's comment syntax and collapse
/// whitespace runs outside string literals.
pub fn normalize_code(code: &str, language: Language) -> NormalizedCode {
    let text = lang::normalize_source(code, language);
    let digest = Sha256::digest(text.as_bytes()).into();
    NormalizedCode { text, digest }
}

/// Set of lowercase alphanumeric identifier tokens; multiplicity ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenSet {
    tokens: BTreeSet<String>,
}

impl TokenSet {
    /// Tokenize normalized code: maximal `[A-Za-z0-9_]+` runs, lowercased.
    pub fn from_normalized(text: &str) -> Self {
        let mut tokens = BTreeSet::new();
        let mut current = String::new();
        for ch in text.chars() {
            if ch.is_ascii_alphanumeric() || ch == '_' {
                current.push(ch.to_ascii_lowercase());
            } else if !current.is_empty() {
                tokens.insert(core::mem::take(&mut current));
            }
        }
        if !current.is_empty() {
            tokens.insert(current);
        }
        Self { tokens }
    }

    pub fn from_tokens<I: IntoIterator<Item = String>>(iter: I) -> Self {
        Self {
            tokens: iter.into_iter().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }

    /// Exact Jaccard similarity by set arithmetic; the oracle the MinHash
    /// estimate approximates.
    pub fn jaccard(&self, other: &TokenSet) -> f64 {
        if self.tokens.is_empty() && other.tokens.is_empty() {
            return 1.0;
        }
        let intersection = self.tokens.intersection(&other.tokens).count();
        let union = self.tokens.len() + other.tokens.len() - intersection;
        intersection as f64 / union as f64
    }
}

/// k-component MinHash signature approximating a token set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinHashSignature {
    components: Vec<u64>,
}

impl MinHashSignature {
    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[u64] {
        &self.components
    }
}

/// Derive the k per-component seeds from one base seed.
pub fn component_seeds(base_seed: u64, k: usize) -> Vec<u64> {
    let mut rng = SplitMix64::new(base_seed);
    (0..k).map(|_| rng.next_u64()).collect()
}

/// Component j is the minimum of hash function j over all tokens.
pub fn minhash_signature(tokens: &TokenSet, seeds: &[u64]) -> Result<MinHashSignature, DedupError> {
    if tokens.is_empty() {
        return Err(DedupError::EmptyTokenSet);
    }
    let mut components = alloc::vec![u64::MAX; seeds.len()];
    for token in tokens.iter() {
        let base = crate::rng::fnv1a64(token.as_bytes());
        for (slot, &seed) in components.iter_mut().zip(seeds) {
            let h = mix64(base ^ seed);
            if h < *slot {
                *slot = h;
            }
        }
    }
    Ok(MinHashSignature { components })
}

/// Fraction of equal components: the unbiased Jaccard estimator.
pub fn jaccard_estimate(a: &MinHashSignature, b: &MinHashSignature) -> Result<f64, DedupError> {
    if a.k() != b.k() || a.k() == 0 {
        return Err(DedupError::SignatureLengthMismatch {
            left: a.k(),
            right: b.k(),
        });
    }
    let equal = a
        .components
        .iter()
        .zip(&b.components)
        .filter(|(x, y)| x == y)
        .count();
    Ok(equal as f64 / a.k() as f64)
}

/// Pick the band/row layout with b*r = k whose threshold curve
/// `(1/b)^(1/r)` lands closest to tau. Ties go to the smaller band count.
pub fn choose_bands(k: usize, tau: f64) -> (usize, usize) {
    debug_assert!(k >= 1);
    let mut best = (1usize, k);
    let mut best_err = f64::INFINITY;
    for bands in 1..=k {
        if k % bands != 0 {
            continue;
        }
        let rows = k / bands;
        let curve = libm::pow(1.0 / bands as f64, 1.0 / rows as f64);
        let err = libm::fabs(curve - tau);
        if err < best_err {
            best_err = err;
            best = (bands, rows);
        }
    }
    best
}

/// Banded LSH index over MinHash signatures. Insertion ids are assigned
/// in call order; queries return candidate ids in ascending (insertion)
/// order.
#[derive(Debug, Clone)]
pub struct LshIndex {
    bands: usize,
    rows: usize,
    buckets: BTreeMap<(u32, u64), Vec<u32>>,
    signatures: Vec<MinHashSignature>,
}

impl LshIndex {
    pub fn new(k: usize, tau_lsh: f64) -> Self {
        let (bands, rows) = choose_bands(k, tau_lsh);
        Self {
            bands,
            rows,
            buckets: BTreeMap::new(),
            signatures: Vec::new(),
        }
    }

    pub fn bands(&self) -> usize {
        self.bands
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.signatures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signatures.is_empty()
    }

    pub fn signature(&self, id: u32) -> &MinHashSignature {
        &self.signatures[id as usize]
    }

    fn band_digest(&self, signature: &MinHashSignature, band: usize) -> u64 {
        let start = band * self.rows;
        let mut h = 0x243f_6a88_85a3_08d3u64 ^ band as u64;
        for &component in &signature.components()[start..start + self.rows] {
            h = mix64(h ^ component);
        }
        h
    }

    /// Ids of previously inserted signatures sharing at least one band
    /// bucket.
    pub fn candidates(&self, signature: &MinHashSignature) -> Vec<u32> {
        let mut seen = BTreeSet::new();
        for band in 0..self.bands {
            let key = (band as u32, self.band_digest(signature, band));
            if let Some(ids) = self.buckets.get(&key) {
                seen.extend(ids.iter().copied());
            }
        }
        seen.into_iter().collect()
    }

    pub fn insert(&mut self, signature: MinHashSignature) -> u32 {
        let id = self.signatures.len() as u32;
        for band in 0..self.bands {
            let key = (band as u32, self.band_digest(&signature, band));
            self.buckets.entry(key).or_default().push(id);
        }
        self.signatures.push(signature);
        id
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DuplicateKind {
    Exact,
    Near,
}

/// One discarded record, pointing at the survivor that shadowed it.
#[derive(Debug, Clone, PartialEq)]
pub struct DuplicateReject {
    pub index: usize,
    pub duplicate_of: usize,
    pub kind: DuplicateKind,
    /// Verified signature similarity (1.0 for exact duplicates).
    pub similarity: f64,
}

/// Survivor positions (ascending) plus reject audit records.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DedupOutcome {
    pub keep: Vec<usize>,
    pub rejects: Vec<DuplicateReject>,
}

/// Keep the first occurrence of every normalized text; order preserved.
pub fn exact_dedup_by_text<'a, I>(texts: I) -> DedupOutcome
where
    I: IntoIterator<Item = &'a str>,
{
    let mut first_seen: BTreeMap<&str, usize> = BTreeMap::new();
    let mut outcome = DedupOutcome::default();
    for (index, text) in texts.into_iter().enumerate() {
        match first_seen.get(text) {
            Some(&survivor) => outcome.rejects.push(DuplicateReject {
                index,
                duplicate_of: survivor,
                kind: DuplicateKind::Exact,
                similarity: 1.0,
            }),
            None => {
                first_seen.insert(text, index);
                outcome.keep.push(index);
            }
        }
    }
    outcome
}

/// Single deterministic near-duplicate pass over token sets (exact dedup
/// is expected to have run already). Empty token sets bypass the index
/// and are retained.
pub fn near_dedup_pass(token_sets: &[TokenSet], params: &DedupParams) -> DedupOutcome {
    let seeds = component_seeds(params.seed, params.minhash_k);
    let mut index = LshIndex::new(params.minhash_k, params.tau_lsh);
    let mut inserted_positions: Vec<usize> = Vec::new();
    let mut outcome = DedupOutcome::default();

    'records: for (position, tokens) in token_sets.iter().enumerate() {
        if tokens.is_empty() {
            outcome.keep.push(position);
            continue;
        }
        let signature =
            minhash_signature(tokens, &seeds).expect("non-empty token set always signs");
        for candidate in index.candidates(&signature) {
            let similarity = jaccard_estimate(&signature, index.signature(candidate))
                .expect("index signatures share k");
            if similarity >= params.tau_lsh {
                outcome.rejects.push(DuplicateReject {
                    index: position,
                    duplicate_of: inserted_positions[candidate as usize],
                    kind: DuplicateKind::Near,
                    similarity,
                });
                continue 'records;
            }
        }
        index.insert(signature);
        inserted_positions.push(position);
        outcome.keep.push(position);
    }
    outcome
}
