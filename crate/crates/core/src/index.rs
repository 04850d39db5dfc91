//! The residual-key index and its lossless query.
//!
//! Every dictionary word of length at most `m` is indexed through all of its
//! residuals with up to `d` deletions. Longer words are split in half and each
//! half is indexed with a budget of `ceil(d / 2)` deletions, which shrinks the
//! index at the price of probing several split positions per query.

use crate::dictionary::{Dictionary, WordId};
use crate::distance::{banded_edit_distance_chars, DistanceOutcome};
use crate::error::{Error, Result};
use crate::neighborhood::{push_residual_keys, HalfTag, ResidualKey};

/// Build-time parameters. Queries always use the same `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexParams {
    d: usize,
    m: Option<usize>,
}

impl IndexParams {
    /// `m = None` means words are never split.
    pub fn new(d: usize, m: Option<usize>) -> Result<Self> {
        if d > usize::from(u8::MAX) {
            return Err(Error::usage(format!("d = {d} exceeds 255")));
        }
        match m {
            Some(0) => return Err(Error::usage("split threshold m must be at least 1")),
            Some(m) if m >= u32::MAX as usize => {
                return Err(Error::usage(format!(
                    "split threshold m = {m} is too large"
                )))
            }
            _ => {}
        }
        Ok(IndexParams { d, m })
    }

    pub fn unsplit(d: usize) -> Result<Self> {
        Self::new(d, None)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> Option<usize> {
        self.m
    }

    /// Error budget of each half of a split word.
    pub fn half_budget(&self) -> usize {
        self.d.div_ceil(2)
    }

    fn splits(&self, len: usize) -> bool {
        self.m.is_some_and(|m| len > m)
    }
}

/// One verified query result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Match {
    pub distance: usize,
    pub word_id: WordId,
}

/// Splits `w` after its first `ceil(|w| / 2)` characters.
pub fn split_word(w: &str) -> Result<(String, String)> {
    let chars: Vec<char> = w.chars().collect();
    if chars.len() < 2 {
        return Err(Error::usage(format!(
            "cannot split {w:?}: words shorter than 2 characters are never split"
        )));
    }
    let (p, s) = split_chars(&chars);
    Ok((p.iter().collect(), s.iter().collect()))
}

fn split_chars(w: &[char]) -> (&[char], &[char]) {
    w.split_at(w.len().div_ceil(2))
}

/// Split positions probed for a query of length `len`: the interval
/// `ceil(len/2) ± ceil(d/2)`, restricted to positions leaving both halves
/// non-empty.
pub fn split_positions(len: usize, d: usize) -> Vec<usize> {
    if len < 2 {
        return Vec::new();
    }
    probe_interval(len, d)
        .filter(|&p| p >= 1 && p < len)
        .collect()
}

/// The same interval clamped to `[0, len]`. The query probes this wider range:
/// when a split word has a half no longer than `ceil(d/2)`, the best alignment
/// may map that half onto an empty piece of the query.
fn probe_interval(len: usize, d: usize) -> std::ops::RangeInclusive<usize> {
    let mid = len.div_ceil(2);
    let r = d.div_ceil(2);
    mid.saturating_sub(r)..=(mid + r).min(len)
}

/// Immutable residual-key index over an owned dictionary.
///
/// The key table is stored as parallel sorted arrays: `keys[i]` owns the
/// ascending ids in `ids[offsets[i]..offsets[i + 1]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastSSIndex {
    dict: Dictionary,
    params: IndexParams,
    keys: Vec<ResidualKey>,
    offsets: Vec<usize>,
    ids: Vec<WordId>,
}

impl FastSSIndex {
    pub fn build(dict: Dictionary, params: IndexParams) -> Self {
        let half = params.half_budget();
        let mut pairs: Vec<(ResidualKey, WordId)> = Vec::new();
        let mut word_keys = Vec::new();
        for (id, _) in dict.iter() {
            let w = dict.chars(id);
            word_keys.clear();
            if params.splits(w.len()) {
                let (prefix, suffix) = split_chars(w);
                push_residual_keys(prefix, half, HalfTag::Prefix, &mut word_keys);
                push_residual_keys(suffix, half, HalfTag::Suffix, &mut word_keys);
            } else {
                push_residual_keys(w, params.d, HalfTag::Whole, &mut word_keys);
            }
            word_keys.sort_unstable();
            word_keys.dedup();
            pairs.extend(word_keys.iter().map(|&k| (k, id)));
        }
        pairs.sort_unstable();

        let mut keys = Vec::new();
        let mut offsets = vec![0];
        let mut ids = Vec::with_capacity(pairs.len());
        for (key, id) in pairs {
            if keys.last() != Some(&key) {
                if !keys.is_empty() {
                    offsets.push(ids.len());
                }
                keys.push(key);
            }
            ids.push(id);
        }
        if !keys.is_empty() {
            offsets.push(ids.len());
        }
        FastSSIndex {
            dict,
            params,
            keys,
            offsets,
            ids,
        }
    }

    /// Reassembles an index from its table; used by the file decoder, which
    /// validates ordering before calling this.
    pub(crate) fn from_parts(
        dict: Dictionary,
        params: IndexParams,
        keys: Vec<ResidualKey>,
        offsets: Vec<usize>,
        ids: Vec<WordId>,
    ) -> Self {
        FastSSIndex {
            dict,
            params,
            keys,
            offsets,
            ids,
        }
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dict
    }

    pub fn params(&self) -> IndexParams {
        self.params
    }

    /// Total number of stored (key, WordId) pairs.
    pub fn stored_pairs(&self) -> usize {
        self.ids.len()
    }

    pub fn distinct_keys(&self) -> usize {
        self.keys.len()
    }

    /// Iterates the table in ascending key order.
    pub fn entries(&self) -> impl Iterator<Item = (ResidualKey, &[WordId])> + '_ {
        self.keys
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, &self.ids[self.offsets[i]..self.offsets[i + 1]]))
    }

    pub fn lookup(&self, key: ResidualKey) -> &[WordId] {
        match self.keys.binary_search(&key) {
            Ok(i) => &self.ids[self.offsets[i]..self.offsets[i + 1]],
            Err(_) => &[],
        }
    }

    fn probe_keys(&self, q: &[char]) -> Vec<ResidualKey> {
        let d = self.params.d;
        let len = q.len();
        let mut keys = Vec::new();
        let whole = self.params.m.is_none_or(|m| len <= m + d);
        if whole {
            push_residual_keys(q, d, HalfTag::Whole, &mut keys);
        }
        let split = self.params.m.is_some_and(|m| len + d > m);
        if split {
            let half = self.params.half_budget();
            for p in probe_interval(len, d) {
                let (prefix, suffix) = q.split_at(p);
                push_residual_keys(prefix, half, HalfTag::Prefix, &mut keys);
                push_residual_keys(suffix, half, HalfTag::Suffix, &mut keys);
            }
        }
        keys.sort_unstable();
        keys.dedup();
        keys
    }

    /// Deduplicated, ascending ids of every word sharing a residual key with `q`.
    pub fn candidate_set(&self, q: &str) -> Vec<WordId> {
        let q: Vec<char> = q.chars().collect();
        self.candidates_chars(&q)
    }

    fn candidates_chars(&self, q: &[char]) -> Vec<WordId> {
        let mut out: Vec<WordId> = self
            .probe_keys(q)
            .into_iter()
            .flat_map(|k| self.lookup(k).iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// All dictionary words within distance `d` of `q`, sorted by distance
    /// then id.
    pub fn query(&self, q: &str) -> Vec<Match> {
        self.query_with_candidates(q).0
    }

    /// Like [`query`](Self::query), also returning the candidate-set size.
    pub fn query_with_candidates(&self, q: &str) -> (Vec<Match>, usize) {
        let q: Vec<char> = q.chars().collect();
        let candidates = self.candidates_chars(&q);
        let mut matches: Vec<Match> = candidates
            .iter()
            .filter_map(|&id| {
                match banded_edit_distance_chars(self.dict.chars(id), &q, self.params.d) {
                    DistanceOutcome::Exact(distance) => Some(Match {
                        distance,
                        word_id: id,
                    }),
                    DistanceOutcome::ExceedsBound => None,
                }
            })
            .collect();
        matches.sort_unstable();
        (matches, candidates.len())
    }
}
