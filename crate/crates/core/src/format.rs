//! Binary index file format, little-endian throughout:
//!
//! ```text
//! magic      "FSSI"
//! version    u16 = 1
//! d          u8
//! m          u32   (0xFFFFFFFF = never split)
//! words      u32, then per word: u16 byte length + UTF-8 bytes
//! keys       u64, then per key: key u64, id count u32, ids u32 ascending
//! ```
//!
//! Keys are written in ascending order and must be read back that way.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::dictionary::{Dictionary, WordId};
use crate::error::{Error, Result};
use crate::index::{FastSSIndex, IndexParams};
use crate::neighborhood::ResidualKey;

pub const MAGIC: &[u8; 4] = b"FSSI";
pub const VERSION: u16 = 1;
const UNBOUNDED_M: u32 = u32::MAX;

pub fn serialize_index(index: &FastSSIndex) -> Vec<u8> {
    let mut out = Vec::new();
    write_index(index, &mut out).expect("writing to a Vec cannot fail");
    out
}

pub fn write_index<W: Write>(index: &FastSSIndex, mut w: W) -> std::io::Result<()> {
    let params = index.params();
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&[params.d() as u8])?;
    let m = params.m().map_or(UNBOUNDED_M, |m| m as u32);
    w.write_all(&m.to_le_bytes())?;

    let dict = index.dictionary();
    w.write_all(&(dict.len() as u32).to_le_bytes())?;
    for word in dict.words() {
        w.write_all(&(word.len() as u16).to_le_bytes())?;
        w.write_all(word.as_bytes())?;
    }

    w.write_all(&(index.distinct_keys() as u64).to_le_bytes())?;
    for (key, ids) in index.entries() {
        w.write_all(&key.0.to_le_bytes())?;
        w.write_all(&(ids.len() as u32).to_le_bytes())?;
        for id in ids {
            w.write_all(&id.0.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn save_index(index: &FastSSIndex, path: impl AsRef<Path>) -> Result<()> {
    let file = fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    write_index(index, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn load_index(path: impl AsRef<Path>) -> Result<FastSSIndex> {
    deserialize_index(&fs::read(path)?)
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        if self.buf.len() - self.pos < n {
            return Err(Error::format(
                self.pos,
                format!(
                    "truncated while reading {what}: need {n} bytes, {} left",
                    self.buf.len() - self.pos
                ),
            ));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn array<const N: usize>(&mut self, what: &str) -> Result<[u8; N]> {
        Ok(self.take(N, what)?.try_into().unwrap())
    }

    fn u8(&mut self, what: &str) -> Result<u8> {
        Ok(self.array::<1>(what)?[0])
    }

    fn u16(&mut self, what: &str) -> Result<u16> {
        self.array(what).map(u16::from_le_bytes)
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        self.array(what).map(u32::from_le_bytes)
    }

    fn u64(&mut self, what: &str) -> Result<u64> {
        self.array(what).map(u64::from_le_bytes)
    }
}

pub fn deserialize_index(bytes: &[u8]) -> Result<FastSSIndex> {
    let mut r = Reader { buf: bytes, pos: 0 };

    let magic = r.take(4, "magic")?;
    if magic != MAGIC {
        return Err(Error::format(0, format!("bad magic {magic:02x?}")));
    }
    let version = r.u16("version")?;
    if version != VERSION {
        return Err(Error::format(
            4,
            format!("unsupported version {version}, expected {VERSION}"),
        ));
    }
    let d = r.u8("d")?;
    let m_pos = r.pos;
    let m = match r.u32("m")? {
        UNBOUNDED_M => None,
        m => Some(m as usize),
    };
    let params =
        IndexParams::new(usize::from(d), m).map_err(|e| Error::format(m_pos, e.to_string()))?;

    let word_count = r.u32("word count")? as usize;
    let mut words = Vec::with_capacity(word_count.min(bytes.len() / 2));
    for _ in 0..word_count {
        let len = usize::from(r.u16("word length")?);
        let at = r.pos;
        let raw = r.take(len, "word bytes")?;
        let word = std::str::from_utf8(raw)
            .map_err(|e| Error::format(at, format!("word is not UTF-8: {e}")))?;
        words.push(word.to_string());
    }
    let dict_end = r.pos;
    let dict = Dictionary::new(words).map_err(|e| Error::format(dict_end, e.to_string()))?;

    let key_count = r.u64("key count")?;
    let key_count = usize::try_from(key_count)
        .map_err(|_| Error::format(r.pos - 8, "key count does not fit in memory"))?;
    let mut keys: Vec<ResidualKey> = Vec::with_capacity(key_count.min(bytes.len() / 12));
    let mut offsets = vec![0];
    let mut ids = Vec::new();
    for _ in 0..key_count {
        let at = r.pos;
        let key = ResidualKey(r.u64("key")?);
        if keys.last().is_some_and(|&prev| prev >= key) {
            return Err(Error::format(at, "keys are not strictly ascending"));
        }
        let count = r.u32("id count")?;
        if count == 0 {
            return Err(Error::format(at + 8, "key with an empty id list"));
        }
        let mut prev: Option<u32> = None;
        for _ in 0..count {
            let at = r.pos;
            let id = r.u32("word id")?;
            if id as usize >= dict.len() {
                return Err(Error::format(
                    at,
                    format!("word id {id} out of range for {} words", dict.len()),
                ));
            }
            if prev.is_some_and(|p| p >= id) {
                return Err(Error::format(at, "word ids are not strictly ascending"));
            }
            prev = Some(id);
            ids.push(WordId(id));
        }
        keys.push(key);
        offsets.push(ids.len());
    }
    if r.pos != bytes.len() {
        return Err(Error::format(
            r.pos,
            format!("{} trailing bytes", bytes.len() - r.pos),
        ));
    }
    Ok(FastSSIndex::from_parts(dict, params, keys, offsets, ids))
}
