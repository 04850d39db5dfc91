use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Position of a word in its [`Dictionary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordId(pub u32);

impl WordId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered list of unique, non-empty words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dictionary {
    words: Vec<String>,
    chars: Vec<Vec<char>>,
}

impl Dictionary {
    /// Rejects duplicate and empty words.
    pub fn new<I, S>(words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut seen = HashSet::new();
        let mut dict = Dictionary::default();
        for word in words {
            let word = word.into();
            if word.is_empty() {
                return Err(Error::usage("dictionary words must be non-empty"));
            }
            if !seen.insert(word.clone()) {
                return Err(Error::usage(format!("duplicate dictionary word {word:?}")));
            }
            dict.push(word)?;
        }
        Ok(dict)
    }

    /// Builds a dictionary from text with one word per line, skipping empty
    /// lines and later duplicates.
    pub fn from_lines(text: &str) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut dict = Dictionary::default();
        for line in text.lines() {
            if line.is_empty() || !seen.insert(line) {
                continue;
            }
            dict.push(line.to_string())?;
        }
        Ok(dict)
    }

    fn push(&mut self, word: String) -> Result<()> {
        if word.len() > usize::from(u16::MAX) {
            return Err(Error::usage(format!(
                "word of {} bytes exceeds the 65535-byte limit",
                word.len()
            )));
        }
        if self.words.len() >= u32::MAX as usize {
            return Err(Error::usage("dictionary exceeds u32::MAX words"));
        }
        self.chars.push(word.chars().collect());
        self.words.push(word);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Panics if `id` is out of range.
    pub fn word(&self, id: WordId) -> &str {
        &self.words[id.index()]
    }

    pub(crate) fn chars(&self, id: WordId) -> &[char] {
        &self.chars[id.index()]
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = (WordId, &str)> + '_ {
        self.words
            .iter()
            .enumerate()
            .map(|(i, w)| (WordId(i as u32), w.as_str()))
    }

    pub fn id_of(&self, word: &str) -> Option<WordId> {
        self.words
            .iter()
            .position(|w| w == word)
            .map(|i| WordId(i as u32))
    }

    /// Mean length in characters, 0 for an empty dictionary.
    pub fn mean_length(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let total: usize = self.chars.iter().map(Vec::len).sum();
        total as f64 / self.len() as f64
    }
}

/// Reads a UTF-8 word list, one word per line. Trailing `\r` is stripped.
pub fn load_dictionary(path: impl AsRef<Path>) -> Result<Dictionary> {
    let path = path.as_ref();
    let bytes = fs::read(path)?;
    let mut seen = HashSet::new();
    let mut dict = Dictionary::default();
    for (i, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let line = std::str::from_utf8(raw).map_err(|e| Error::Input {
            path: path.to_path_buf(),
            line: i + 1,
            message: format!("invalid UTF-8: {e}"),
        })?;
        if line.is_empty() || !seen.insert(line) {
            continue;
        }
        dict.push(line.to_string()).map_err(|e| Error::Input {
            path: path.to_path_buf(),
            line: i + 1,
            message: e.to_string(),
        })?;
    }
    Ok(dict)
}
