//! Workload generation and benchmark runs.
//!
//! Every run doubles as a correctness check: each method's match set is
//! compared with a naive scan for every query, and any difference aborts the
//! run with [`Error::Lossless`].

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::baselines::{naive_scan, BkTree};
use crate::dictionary::{Dictionary, WordId};
use crate::error::{Error, LosslessViolation, Result};
use crate::index::{FastSSIndex, IndexParams, Match};

const LETTERS: &[u8; 26] = b"abcdefghijklmnopqrstuvwxyz";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkloadQuery {
    pub query: String,
    pub source: WordId,
    /// Number of random edits applied; the true distance may be smaller.
    pub edits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workload {
    pub seed: u64,
    pub d: usize,
    pub queries: Vec<WorkloadQuery>,
}

/// Picks `count` dictionary words uniformly with replacement and applies
/// `uniform{0..=d}` random single-character edits to each.
pub fn perturb(dict: &Dictionary, count: usize, d: usize, seed: u64) -> Result<Workload> {
    if dict.is_empty() {
        return Err(Error::usage(
            "cannot generate queries from an empty dictionary",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let queries = (0..count)
        .map(|_| {
            let source = WordId(rng.random_range(0..dict.len()) as u32);
            let edits = rng.random_range(0..=d);
            let mut w: Vec<char> = dict.chars(source).to_vec();
            for _ in 0..edits {
                apply_random_edit(&mut w, &mut rng);
            }
            WorkloadQuery {
                query: w.into_iter().collect(),
                source,
                edits,
            }
        })
        .collect();
    Ok(Workload { seed, d, queries })
}

fn random_letter(rng: &mut impl Rng) -> char {
    char::from(LETTERS[rng.random_range(0..LETTERS.len())])
}

fn apply_random_edit(w: &mut Vec<char>, rng: &mut impl Rng) {
    // Only insertion applies to an empty word.
    let op = if w.is_empty() {
        0
    } else {
        rng.random_range(0..3)
    };
    match op {
        0 => {
            let at = rng.random_range(0..=w.len());
            w.insert(at, random_letter(rng));
        }
        1 => {
            let at = rng.random_range(0..w.len());
            w.remove(at);
        }
        _ => {
            let at = rng.random_range(0..w.len());
            w[at] = random_letter(rng);
        }
    }
}

/// `n` distinct words over the first `sigma` lowercase letters with lengths
/// uniform in `min_len..=max_len`.
pub fn random_dictionary(
    n: usize,
    min_len: usize,
    max_len: usize,
    sigma: usize,
    seed: u64,
) -> Result<Dictionary> {
    if sigma == 0 || sigma > LETTERS.len() || min_len == 0 || min_len > max_len {
        return Err(Error::usage(format!(
            "invalid random dictionary shape: lengths {min_len}..={max_len}, sigma {sigma}"
        )));
    }
    let capacity: f64 = (min_len..=max_len)
        .map(|l| (sigma as f64).powi(l as i32))
        .sum();
    if (n as f64) > capacity / 2.0 {
        return Err(Error::usage(format!(
            "{n} distinct words requested from a space of {capacity}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(n);
    let mut words = Vec::with_capacity(n);
    while words.len() < n {
        let len = rng.random_range(min_len..=max_len);
        let w: String = (0..len)
            .map(|_| char::from(LETTERS[rng.random_range(0..sigma)]))
            .collect();
        if seen.insert(w.clone()) {
            words.push(w);
        }
    }
    Dictionary::new(words)
}

/// `count` uniform random words of length `len` over `sigma` letters;
/// repeats allowed.
pub fn random_words(count: usize, len: usize, sigma: usize, seed: u64) -> Vec<String> {
    let sigma = sigma.clamp(1, LETTERS.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..len)
                .map(|_| char::from(LETTERS[rng.random_range(0..sigma)]))
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Naive,
    Bktree,
    Fastss,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Naive => "naive",
            Method::Bktree => "bktree",
            Method::Fastss => "fastss",
        })
    }
}

/// One CSV row: a single method on a single (dataset, d, m) configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub dataset: String,
    pub n: usize,
    pub d: usize,
    /// Split threshold; `inf` for an unsplit index, empty for baselines.
    pub m: String,
    pub stored_pairs: Option<usize>,
    pub distinct_keys: Option<usize>,
    pub build_ms: Option<f64>,
    pub mean_query_us: f64,
    /// FastSS: candidate-set size. BK-tree: distance computations. Naive: n.
    pub mean_cand: f64,
    pub mean_matches: f64,
    pub method: Method,
    pub seed: u64,
    #[serde(skip)]
    pub median_query_us: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        if self.rows.is_empty() {
            out.write_record([
                "dataset",
                "n",
                "d",
                "m",
                "stored_pairs",
                "distinct_keys",
                "build_ms",
                "mean_query_us",
                "mean_cand",
                "mean_matches",
                "method",
                "seed",
            ])?;
        }
        for row in &self.rows {
            out.serialize(row)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }
}

fn m_label(m: Option<usize>) -> String {
    m.map_or_else(|| "inf".to_string(), |m| m.to_string())
}

/// Per-query timings and counts, averaged into a row.
#[derive(Default)]
struct Tally {
    times: Vec<Duration>,
    candidates: usize,
    matches: usize,
}

impl Tally {
    fn record(&mut self, elapsed: Duration, candidates: usize, matches: usize) {
        self.times.push(elapsed);
        self.candidates += candidates;
        self.matches += matches;
    }

    fn mean(&self, total: usize) -> f64 {
        if self.times.is_empty() {
            0.0
        } else {
            total as f64 / self.times.len() as f64
        }
    }

    fn mean_us(&self) -> f64 {
        if self.times.is_empty() {
            return 0.0;
        }
        let sum: Duration = self.times.iter().sum();
        sum.as_secs_f64() * 1e6 / self.times.len() as f64
    }

    fn median_us(&mut self) -> f64 {
        if self.times.is_empty() {
            return 0.0;
        }
        self.times.sort_unstable();
        let mid = self.times.len() / 2;
        let t = if self.times.len().is_multiple_of(2) {
            (self.times[mid - 1] + self.times[mid]) / 2
        } else {
            self.times[mid]
        };
        t.as_secs_f64() * 1e6
    }
}

struct RunContext<'a> {
    dataset: &'a str,
    dict: &'a Dictionary,
    workload: &'a Workload,
}

impl RunContext<'_> {
    fn row(&self, method: Method, m: String, mut tally: Tally) -> BenchRow {
        BenchRow {
            dataset: self.dataset.to_string(),
            n: self.dict.len(),
            d: self.workload.d,
            m,
            stored_pairs: None,
            distinct_keys: None,
            build_ms: None,
            mean_query_us: tally.mean_us(),
            mean_cand: tally.mean(tally.candidates),
            mean_matches: tally.mean(tally.matches),
            method,
            seed: self.workload.seed,
            median_query_us: tally.median_us(),
        }
    }

    fn check(
        &self,
        method: &str,
        m: &str,
        query: &str,
        got: &[Match],
        expected: &[Match],
    ) -> Result<()> {
        if got == expected {
            return Ok(());
        }
        let flat = |ms: &[Match]| {
            ms.iter()
                .map(|m| (m.word_id.0, m.distance as u32))
                .collect()
        };
        Err(Error::Lossless(Box::new(LosslessViolation {
            method: method.to_string(),
            query: query.to_string(),
            d: self.workload.d as u32,
            m: m.to_string(),
            seed: self.workload.seed,
            got: flat(got),
            expected: flat(expected),
        })))
    }

    fn naive(&self) -> (BenchRow, Vec<Vec<Match>>) {
        let mut tally = Tally::default();
        let mut truth = Vec::with_capacity(self.workload.queries.len());
        for q in &self.workload.queries {
            let start = Instant::now();
            let matches = naive_scan(self.dict, &q.query, self.workload.d);
            tally.record(start.elapsed(), self.dict.len(), matches.len());
            truth.push(matches);
        }
        (self.row(Method::Naive, String::new(), tally), truth)
    }

    fn fastss(&self, m: Option<usize>, truth: &[Vec<Match>]) -> Result<BenchRow> {
        let params = IndexParams::new(self.workload.d, m)?;
        let start = Instant::now();
        let index = FastSSIndex::build(self.dict.clone(), params);
        let build = start.elapsed();
        let label = m_label(m);
        let mut tally = Tally::default();
        for (q, expected) in self.workload.queries.iter().zip(truth) {
            let start = Instant::now();
            let (matches, candidates) = index.query_with_candidates(&q.query);
            tally.record(start.elapsed(), candidates, matches.len());
            self.check("fastss", &label, &q.query, &matches, expected)?;
        }
        let mut row = self.row(Method::Fastss, label, tally);
        row.stored_pairs = Some(index.stored_pairs());
        row.distinct_keys = Some(index.distinct_keys());
        row.build_ms = Some(build.as_secs_f64() * 1e3);
        Ok(row)
    }

    fn bktree(&self, truth: &[Vec<Match>]) -> Result<BenchRow> {
        let start = Instant::now();
        let tree = BkTree::build(self.dict)?;
        let build = start.elapsed();
        let mut tally = Tally::default();
        for (q, expected) in self.workload.queries.iter().zip(truth) {
            let start = Instant::now();
            let r = tree.query(&q.query, self.workload.d);
            tally.record(start.elapsed(), r.distance_computations, r.matches.len());
            self.check("bktree", "", &q.query, &r.matches, expected)?;
        }
        let mut row = self.row(Method::Bktree, String::new(), tally);
        row.stored_pairs = Some(tree.len());
        row.build_ms = Some(build.as_secs_f64() * 1e3);
        Ok(row)
    }
}

/// Builds one index with `params`, runs the workload against it and checks
/// every result against a naive scan. The workload's `d` must equal
/// `params.d()`.
pub fn run_benchmark(
    dataset: &str,
    dict: &Dictionary,
    params: IndexParams,
    workload: &Workload,
) -> Result<BenchRow> {
    if workload.d != params.d() {
        return Err(Error::usage(format!(
            "workload generated for d={} but index uses d={}",
            workload.d,
            params.d()
        )));
    }
    let ctx = RunContext {
        dataset,
        dict,
        workload,
    };
    let truth: Vec<Vec<Match>> = workload
        .queries
        .iter()
        .map(|q| naive_scan(dict, &q.query, workload.d))
        .collect();
    ctx.fastss(params.m(), &truth)
}

/// Split threshold used for the "average length" configuration.
pub fn rounded_mean_length(dict: &Dictionary) -> usize {
    (dict.mean_length().round() as usize).max(1)
}

/// Runs naive scan, BK-tree, unsplit FastSS and FastSS with `m` set to the
/// rounded mean word length over one shared workload.
pub fn compare_baselines(
    dataset: &str,
    dict: &Dictionary,
    workload: &Workload,
) -> Result<BenchReport> {
    let ctx = RunContext {
        dataset,
        dict,
        workload,
    };
    let (naive, truth) = ctx.naive();
    let mut rows = vec![naive];
    rows.push(ctx.bktree(&truth)?);
    rows.push(ctx.fastss(None, &truth)?);
    rows.push(ctx.fastss(Some(rounded_mean_length(dict)), &truth)?);
    Ok(BenchReport { rows })
}
