use crate::dictionary::Dictionary;
use crate::distance::full_edit_distance_chars;
use crate::index::Match;

/// Full edit distance against every word; the ground truth for all other
/// methods.
pub fn naive_scan(dict: &Dictionary, q: &str, d: usize) -> Vec<Match> {
    let q: Vec<char> = q.chars().collect();
    let mut out: Vec<Match> = dict
        .iter()
        .filter_map(|(id, _)| {
            let distance = full_edit_distance_chars(dict.chars(id), &q);
            (distance <= d).then_some(Match {
                distance,
                word_id: id,
            })
        })
        .collect();
    out.sort_unstable();
    out
}
