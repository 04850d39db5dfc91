//! Lossless approximate dictionary matching.
//!
//! [`FastSSIndex`] maps hashed deletion residuals of dictionary words to word
//! ids. A query looks up the residuals of the query word, and the resulting
//! candidate set is verified with a banded edit distance, so the result always
//! equals a full scan of the dictionary. Words longer than a threshold `m` can
//! be split in half and indexed with half the error budget, which makes the
//! index considerably smaller.
//!
//! ```
//! use fastss::{Dictionary, FastSSIndex, IndexParams};
//!
//! let dict = Dictionary::new(["hello", "jello", "world"]).unwrap();
//! let index = FastSSIndex::build(dict, IndexParams::new(1, Some(4)).unwrap());
//! let hits = index.query("hellp");
//! assert_eq!(hits.len(), 1);
//! assert_eq!(index.dictionary().word(hits[0].word_id), "hello");
//! ```

pub mod analysis;
pub mod baselines;
pub mod bench;
pub mod dictionary;
pub mod distance;
pub mod error;
pub mod format;
pub mod index;
pub mod neighborhood;

pub use baselines::{naive_scan, BkQueryResult, BkTree};
pub use dictionary::{load_dictionary, Dictionary, WordId};
pub use distance::{banded_edit_distance, full_edit_distance, DistanceOutcome};
pub use error::{Error, LosslessViolation, Result};
pub use format::{deserialize_index, load_index, save_index, serialize_index};
pub use index::{split_positions, split_word, FastSSIndex, IndexParams, Match};
pub use neighborhood::{HalfTag, ResidualKey};

/// Lowercase English word list (19,538 words, one per line) sampled from
/// Webster's Second International, used by the tests and benchmarks.
pub const BUNDLED_WORDS: &str = include_str!("../data/words.txt");

pub fn bundled_dictionary() -> Dictionary {
    Dictionary::from_lines(BUNDLED_WORDS).expect("bundled word list is valid")
}
