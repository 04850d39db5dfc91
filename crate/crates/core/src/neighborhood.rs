//! Deletion neighborhoods and the residual hash used as index key.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

const FNV_OFFSET_BASIS: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// Which part of a dictionary word a residual was generated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HalfTag {
    Whole,
    Prefix,
    Suffix,
}

impl HalfTag {
    pub fn byte(self) -> u8 {
        match self {
            HalfTag::Whole => 0x00,
            HalfTag::Prefix => 0x01,
            HalfTag::Suffix => 0x02,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidualKey(pub u64);

#[derive(Clone, Copy)]
struct Fnv1a(u64);

impl Fnv1a {
    fn new() -> Self {
        Fnv1a(FNV_OFFSET_BASIS)
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(FNV_PRIME);
        }
    }

    fn write_char(&mut self, c: char) {
        let mut buf = [0u8; 4];
        self.write(c.encode_utf8(&mut buf).as_bytes());
    }
}

/// FNV-1a 64 over the tag byte followed by the UTF-8 bytes of `residual`.
pub fn hash_residual(tag: HalfTag, residual: &str) -> ResidualKey {
    let mut h = Fnv1a::new();
    h.write(&[tag.byte()]);
    h.write(residual.as_bytes());
    ResidualKey(h.0)
}

/// Removes the characters at `positions`, which must be strictly increasing
/// and in range.
pub fn delete_positions(w: &str, positions: &[usize]) -> Result<String> {
    let len = w.chars().count();
    for pair in positions.windows(2) {
        if pair[0] >= pair[1] {
            return Err(Error::usage(format!(
                "deletion positions must be strictly increasing, got {positions:?}"
            )));
        }
    }
    if let Some(&last) = positions.last() {
        if last >= len {
            return Err(Error::usage(format!(
                "deletion position {last} out of range for word of length {len}"
            )));
        }
    }
    let mut next = positions.iter().peekable();
    Ok(w.chars()
        .enumerate()
        .filter(|(i, _)| {
            if next.peek() == Some(&i) {
                next.next();
                false
            } else {
                true
            }
        })
        .map(|(_, c)| c)
        .collect())
}

/// All distinct words obtained by deleting exactly `k` positions of `w`.
/// Empty when `k > |w|`.
pub fn deletion_neighborhood(w: &str, k: usize) -> BTreeSet<String> {
    let chars: Vec<char> = w.chars().collect();
    let mut out = BTreeSet::new();
    if k > chars.len() {
        return out;
    }
    let mut buf = String::new();
    collect_residuals(&chars, k, true, &mut buf, &mut out);
    out
}

/// Union of the exact-`k` neighborhoods for `k = 0..=min(d, |w|)`.
pub fn full_neighborhood(w: &str, d: usize) -> BTreeSet<String> {
    let chars: Vec<char> = w.chars().collect();
    let mut out = BTreeSet::new();
    let mut buf = String::new();
    collect_residuals(&chars, d, false, &mut buf, &mut out);
    out
}

fn collect_residuals(
    rest: &[char],
    budget: usize,
    exact: bool,
    buf: &mut String,
    out: &mut BTreeSet<String>,
) {
    let Some((&c, tail)) = rest.split_first() else {
        if !exact || budget == 0 {
            out.insert(buf.clone());
        }
        return;
    };
    if exact && budget > rest.len() {
        return;
    }
    buf.push(c);
    collect_residuals(tail, budget, exact, buf, out);
    buf.pop();
    if budget > 0 {
        collect_residuals(tail, budget - 1, exact, buf, out);
    }
}

/// Distinct keys of every residual with at most `d` deletions, sorted.
pub fn residual_keys(w: &str, d: usize, tag: HalfTag) -> Vec<ResidualKey> {
    let chars: Vec<char> = w.chars().collect();
    let mut keys = Vec::new();
    push_residual_keys(&chars, d, tag, &mut keys);
    keys.sort_unstable();
    keys.dedup();
    keys
}

/// Appends the key of every at-most-`d`-deletion residual of `w` to `out`,
/// one per deletion set, without deduplication.
pub(crate) fn push_residual_keys(w: &[char], d: usize, tag: HalfTag, out: &mut Vec<ResidualKey>) {
    let mut h = Fnv1a::new();
    h.write(&[tag.byte()]);
    hash_subsequences(w, d, h, out);
}

fn hash_subsequences(rest: &[char], budget: usize, h: Fnv1a, out: &mut Vec<ResidualKey>) {
    let Some((&c, tail)) = rest.split_first() else {
        out.push(ResidualKey(h.0));
        return;
    };
    let mut kept = h;
    kept.write_char(c);
    hash_subsequences(tail, budget, kept, out);
    if budget > 0 {
        hash_subsequences(tail, budget - 1, h, out);
    }
}
