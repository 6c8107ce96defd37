//! Stratified train/validation/test assignment.
//!
//! Within each language group, samples are shuffled by a seeded RNG and
//! partitioned by largest-remainder rounding. Group counts are then
//! balanced so the global split sizes hit the largest-remainder targets
//! for the whole corpus exactly, while every language stays within one
//! sample of its ideal share per split.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::record::Language;
use crate::rng::{fnv1a64, mix64, SplitMix64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Validation,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Validation, Split::Test];

    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Validation => "validation",
            Split::Test => "test",
        }
    }
}

/// Target fractions; must sum to 1 within 1e-9.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitRatios {
    pub train: f64,
    pub validation: f64,
    pub test: f64,
}

impl Default for SplitRatios {
    fn default() -> Self {
        Self {
            train: 0.8,
            validation: 0.1,
            test: 0.1,
        }
    }
}

impl SplitRatios {
    fn as_array(&self) -> [f64; 3] {
        [self.train, self.validation, self.test]
    }
}

/// Emitted when a language group is too small to split (< 3 samples);
/// everything in it goes to train.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitWarning {
    pub language: Language,
    pub group_size: usize,
}

/// Integer apportionment by largest remainder; ties break toward the
/// earlier split.
fn largest_remainder(n: usize, ratios: [f64; 3]) -> [usize; 3] {
    let ideals = [
        ratios[0] * n as f64,
        ratios[1] * n as f64,
        ratios[2] * n as f64,
    ];
    let mut counts = [ideals[0] as usize, ideals[1] as usize, ideals[2] as usize];
    let assigned: usize = counts.iter().sum();
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| {
        let fa = ideals[a] - counts[a] as f64;
        let fb = ideals[b] - counts[b] as f64;
        fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
    });
    for &slot in order.iter().take(n.saturating_sub(assigned)) {
        counts[slot] += 1;
    }
    counts
}

struct GroupPlan {
    language: Language,
    indices: Vec<usize>,
    counts: [usize; 3],
    floors: [usize; 3],
    ceils: [usize; 3],
    pinned: bool,
}

/// Assign one split per sample, stratified by language.
///
/// Deterministic for a fixed seed: group shuffles are seeded per
/// language, and the balancing moves that reconcile per-group rounding
/// with the global targets visit groups in language order.
pub fn stratified_split(
    languages: &[Language],
    ratios: &SplitRatios,
    seed: u64,
) -> (Vec<Split>, Vec<SplitWarning>) {
    let n = languages.len();
    let mut assignment = alloc::vec![Split::Train; n];
    let mut warnings = Vec::new();
    if n == 0 {
        return (assignment, warnings);
    }
    let r = ratios.as_array();
    let targets = largest_remainder(n, r);

    let mut by_language: BTreeMap<Language, Vec<usize>> = BTreeMap::new();
    for (i, &language) in languages.iter().enumerate() {
        by_language.entry(language).or_default().push(i);
    }

    let mut plans: Vec<GroupPlan> = Vec::with_capacity(by_language.len());
    for (language, indices) in by_language {
        let size = indices.len();
        if size < 3 {
            warnings.push(SplitWarning {
                language,
                group_size: size,
            });
            plans.push(GroupPlan {
                language,
                indices,
                counts: [size, 0, 0],
                floors: [0; 3],
                ceils: [0; 3],
                pinned: true,
            });
            continue;
        }
        let ideals = [r[0] * size as f64, r[1] * size as f64, r[2] * size as f64];
        let floors = [ideals[0] as usize, ideals[1] as usize, ideals[2] as usize];
        let ceils = [
            floors[0] + usize::from(ideals[0] - floors[0] as f64 > 0.0),
            floors[1] + usize::from(ideals[1] - floors[1] as f64 > 0.0),
            floors[2] + usize::from(ideals[2] - floors[2] as f64 > 0.0),
        ];
        plans.push(GroupPlan {
            language,
            indices,
            counts: largest_remainder(size, r),
            floors,
            ceils,
            pinned: false,
        });
    }

    // Reconcile per-group rounding with the global targets. Guarded moves
    // keep each group inside [floor, ceil] per split; if none is possible
    // (tiny corpora pinned to train) fall back to any legal move.
    let mut totals = [0usize; 3];
    for plan in &plans {
        for s in 0..3 {
            totals[s] += plan.counts[s];
        }
    }
    loop {
        let Some(over) = (0..3).find(|&s| totals[s] > targets[s]) else {
            break;
        };
        let Some(under) = (0..3).find(|&s| totals[s] < targets[s]) else {
            break;
        };
        let guarded = plans.iter_mut().find(|p| {
            !p.pinned && p.counts[over] > p.floors[over] && p.counts[under] < p.ceils[under]
        });
        let plan = match guarded {
            Some(plan) => plan,
            None => match plans.iter_mut().find(|p| !p.pinned && p.counts[over] > 0) {
                Some(plan) => plan,
                None => break,
            },
        };
        plan.counts[over] -= 1;
        plan.counts[under] += 1;
        totals[over] -= 1;
        totals[under] += 1;
    }

    for plan in &mut plans {
        let mut rng = SplitMix64::new(mix64(
            seed ^ fnv1a64(plan.language.as_str().as_bytes()),
        ));
        rng.shuffle(&mut plan.indices);
        let train_end = plan.counts[0];
        let val_end = plan.counts[0] + plan.counts[1];
        for (pos, &sample) in plan.indices.iter().enumerate() {
            assignment[sample] = if pos < train_end {
                Split::Train
            } else if pos < val_end {
                Split::Validation
            } else {
                Split::Test
            };
        }
    }
    (assignment, warnings)
}
