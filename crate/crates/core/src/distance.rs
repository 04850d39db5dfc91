//! Levenshtein distance with unit costs for insert, delete and substitute.
//!
//! Words are compared as sequences of Unicode scalar values. The `*_chars`
//! variants take pre-decoded slices so hot loops avoid re-decoding UTF-8.

/// Result of a distance computation that only cares about values up to a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceOutcome {
    Exact(usize),
    ExceedsBound,
}

impl DistanceOutcome {
    pub fn exact(self) -> Option<usize> {
        match self {
            DistanceOutcome::Exact(v) => Some(v),
            DistanceOutcome::ExceedsBound => None,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, DistanceOutcome::Exact(_))
    }
}

pub fn full_edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    full_edit_distance_chars(&a, &b)
}

/// Full dynamic-programming table, no early exit.
pub fn full_edit_distance_chars(a: &[char], b: &[char]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

pub fn banded_edit_distance(a: &str, b: &str, bound: usize) -> DistanceOutcome {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    banded_edit_distance_chars(&a, &b, bound)
}

/// Fills only the diagonal band of width `2 * bound + 1`.
///
/// Returns [`DistanceOutcome::ExceedsBound`] as soon as every cell of a row
/// is above `bound`, since row minima never decrease.
pub fn banded_edit_distance_chars(a: &[char], b: &[char], bound: usize) -> DistanceOutcome {
    // Rows run over the shorter word so the band costs O(bound * min(|a|, |b|)).
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let (n, m) = (short.len(), long.len());
    if m - n > bound {
        return DistanceOutcome::ExceedsBound;
    }
    let k = bound;
    let inf = k + 1;

    let mut prev = vec![inf; m + 1];
    for (j, cell) in prev.iter_mut().enumerate().take(k.min(m) + 1) {
        *cell = j;
    }
    let mut cur = vec![inf; m + 1];

    for i in 1..=n {
        let lo = i.saturating_sub(k);
        let hi = (i + k).min(m);
        let mut row_min = inf;
        let mut start = lo;
        if lo == 0 {
            cur[0] = i;
            row_min = i;
            start = 1;
        } else {
            cur[lo - 1] = inf;
        }
        let ca = short[i - 1];
        for j in start..=hi {
            let sub = prev[j - 1] + usize::from(ca != long[j - 1]);
            let v = sub.min(prev[j] + 1).min(cur[j - 1] + 1).min(inf);
            cur[j] = v;
            row_min = row_min.min(v);
        }
        if hi < m {
            cur[hi + 1] = inf;
        }
        if row_min > k {
            return DistanceOutcome::ExceedsBound;
        }
        std::mem::swap(&mut prev, &mut cur);
    }

    if prev[m] <= k {
        DistanceOutcome::Exact(prev[m])
    } else {
        DistanceOutcome::ExceedsBound
    }
}
