//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.
//!
//! Run with `cargo test -p fastss --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fastss::analysis::{expected_candidates, CollisionModel};
use fastss::bench::{perturb, random_dictionary, random_words, rounded_mean_length};
use fastss::distance::{full_edit_distance, DistanceOutcome};
use fastss::{
    banded_edit_distance, bundled_dictionary, deserialize_index, naive_scan, serialize_index,
    BkTree, Dictionary, FastSSIndex, IndexParams, Match,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_090_101;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn time_limit_note(elapsed: Duration, limit: Duration) -> (bool, String) {
    let ok = elapsed <= limit;
    (
        ok,
        format!(
            "{:.1}s of {}s budget",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ),
    )
}

/// Independent binomial used as the counting oracle.
fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

fn budget_sum(len: usize, budget: usize) -> usize {
    (0..=budget).map(|k| choose(len, k)).sum()
}

fn losslessness(bundled: &Dictionary) -> Outcome {
    let start = Instant::now();
    let random = random_dictionary(2_000, 4, 14, 26, SEED).unwrap();
    let mut configs = 0;
    let mut queries = 0;
    let mut failures = Vec::new();
    for (name, dict) in [("random-2000", &random), ("bundled", bundled)] {
        for d in 0..=3 {
            let workload = perturb(dict, 500, d, SEED + d as u64).unwrap();
            let truth: Vec<Vec<Match>> = workload
                .queries
                .iter()
                .map(|q| naive_scan(dict, &q.query, d))
                .collect();
            for m in [None, Some(8), Some(10)] {
                configs += 1;
                let index = FastSSIndex::build(dict.clone(), IndexParams::new(d, m).unwrap());
                for (q, expected) in workload.queries.iter().zip(&truth) {
                    queries += 1;
                    if &index.query(&q.query) != expected {
                        failures.push(format!("{name} d={d} m={m:?} q={:?}", q.query));
                    }
                }
            }
        }
    }
    let (in_time, timing) = time_limit_note(start.elapsed(), Duration::from_secs(120));
    Outcome::new(
        failures.is_empty() && in_time,
        format!(
            "{configs} configurations, {queries} queries, {} mismatches{}; {timing}",
            failures.len(),
            failures
                .first()
                .map(|f| format!(" (first: {f})"))
                .unwrap_or_default()
        ),
    )
}

fn band_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let alphabets: [&[u8]; 3] = [b"ab", b"abcd", b"abcdefghijklmnopqrstuvwxyz"];
    let mut disagreements = 0;
    let mut checks = 0;
    for i in 0..100_000 {
        let alphabet = alphabets[i % alphabets.len()];
        let word = |rng: &mut ChaCha8Rng| -> String {
            let len = rng.random_range(0..=15);
            (0..len)
                .map(|_| char::from(alphabet[rng.random_range(0..alphabet.len())]))
                .collect()
        };
        let a = word(&mut rng);
        // Half of the pairs are near-duplicates so small distances are common.
        let b = if i % 2 == 0 {
            word(&mut rng)
        } else {
            let mut b: Vec<char> = a.chars().collect();
            for _ in 0..rng.random_range(0..=5) {
                if b.is_empty() || rng.random_bool(0.3) {
                    let at = rng.random_range(0..=b.len());
                    b.insert(
                        at,
                        char::from(alphabet[rng.random_range(0..alphabet.len())]),
                    );
                } else if rng.random_bool(0.5) {
                    let at = rng.random_range(0..b.len());
                    b.remove(at);
                } else {
                    let at = rng.random_range(0..b.len());
                    b[at] = char::from(alphabet[rng.random_range(0..alphabet.len())]);
                }
            }
            b.truncate(15);
            b.into_iter().collect()
        };
        let full = full_edit_distance(&a, &b);
        for d in 0..=4 {
            checks += 1;
            let expected = if full <= d {
                DistanceOutcome::Exact(full)
            } else {
                DistanceOutcome::ExceedsBound
            };
            if banded_edit_distance(&a, &b, d) != expected {
                disagreements += 1;
            }
        }
    }
    let (in_time, timing) = time_limit_note(start.elapsed(), Duration::from_secs(30));
    Outcome::new(
        disagreements == 0 && in_time,
        format!("100000 pairs, {checks} (pair, d) checks, {disagreements} disagreements; {timing}"),
    )
}

fn residual_counting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut letters: Vec<char> = ('a'..='z').collect();
    let mut mismatches = Vec::new();
    let mut words = Vec::new();
    while words.len() < 100 {
        letters.shuffle(&mut rng);
        let len = rng.random_range(2..=20);
        let w: String = letters[..len].iter().collect();
        if !words.contains(&w) {
            words.push(w);
        }
    }
    for d in 0..=4usize {
        let half = d.div_ceil(2);
        for w in &words {
            let len = w.chars().count();
            let one = Dictionary::new([w.as_str()]).unwrap();
            let unsplit = FastSSIndex::build(one.clone(), IndexParams::unsplit(d).unwrap());
            if unsplit.stored_pairs() != budget_sum(len, d) {
                mismatches.push(format!("{w} d={d} unsplit"));
            }
            let m = rng.random_range(1..len);
            let split = FastSSIndex::build(one, IndexParams::new(d, Some(m)).unwrap());
            let prefix = len.div_ceil(2);
            if split.stored_pairs() != budget_sum(prefix, half) + budget_sum(len - prefix, half) {
                mismatches.push(format!("{w} d={d} m={m}"));
            }
        }
        let dict = Dictionary::new(words.iter().cloned()).unwrap();
        let total: usize = words.iter().map(|w| budget_sum(w.chars().count(), d)).sum();
        let index = FastSSIndex::build(dict, IndexParams::unsplit(d).unwrap());
        if index.stored_pairs() != total {
            mismatches.push(format!("dictionary total d={d}"));
        }
    }
    Outcome::new(
        mismatches.is_empty(),
        format!(
            "100 distinct-letter words, d=0..4, unsplit and split: {} mismatches{}",
            mismatches.len(),
            mismatches
                .first()
                .map(|f| format!(" (first: {f})"))
                .unwrap_or_default()
        ),
    )
}

fn collision_model() -> Outcome {
    let start = Instant::now();
    let dict = random_dictionary(10_000, 8, 8, 26, SEED).unwrap();
    let index = FastSSIndex::build(dict, IndexParams::unsplit(2).unwrap());
    let queries = random_words(1_000, 8, 26, SEED + 1);
    let total: usize = queries.iter().map(|q| index.candidate_set(q).len()).sum();
    let mean = total as f64 / queries.len() as f64;
    let expected = expected_candidates(&CollisionModel::new(10_000, 8, 2, 26).unwrap());
    let limit = 2.0 * expected;
    let (in_time, timing) = time_limit_note(start.elapsed(), Duration::from_secs(60));
    Outcome::new(
        mean <= limit && in_time,
        format!(
            "mean candidates {mean:.5} <= 2.0 x E[X] = {limit:.5} (E[X] = {expected:.5}); {timing}"
        ),
    )
}

fn split_space(bundled: &Dictionary) -> Outcome {
    let start = Instant::now();
    let m = rounded_mean_length(bundled);
    let unsplit = FastSSIndex::build(bundled.clone(), IndexParams::unsplit(3).unwrap());
    let split = FastSSIndex::build(bundled.clone(), IndexParams::new(3, Some(m)).unwrap());
    let ratio = split.stored_pairs() as f64 / unsplit.stored_pairs() as f64;
    let (in_time, timing) = time_limit_note(start.elapsed(), Duration::from_secs(60));
    Outcome::new(
        ratio <= 0.6 && in_time,
        format!(
            "d=3, m={m}: {} / {} stored pairs, ratio {ratio:.4} <= 0.6; {timing}",
            split.stored_pairs(),
            unsplit.stored_pairs()
        ),
    )
}

fn baseline_gap(bundled: &Dictionary) -> Outcome {
    let start = Instant::now();
    let d = 2;
    let workload = perturb(bundled, 500, d, SEED + 6).unwrap();
    let index = FastSSIndex::build(bundled.clone(), IndexParams::unsplit(d).unwrap());
    let tree = BkTree::build(bundled).unwrap();
    let mut fastss_cand = 0;
    let mut bk_computations = 0;
    let mut disagreements = 0;
    for q in &workload.queries {
        let (matches, cand) = index.query_with_candidates(&q.query);
        let bk = tree.query(&q.query, d);
        fastss_cand += cand;
        bk_computations += bk.distance_computations;
        if bk.matches != matches {
            disagreements += 1;
        }
    }
    let n = workload.queries.len() as f64;
    let (fastss_mean, bk_mean) = (fastss_cand as f64 / n, bk_computations as f64 / n);
    let (in_time, timing) = time_limit_note(start.elapsed(), Duration::from_secs(120));
    Outcome::new(
        bk_mean >= 10.0 * fastss_mean && disagreements == 0 && in_time,
        format!(
            "d=2: BK-tree {bk_mean:.1} distance computations vs FastSS {fastss_mean:.1} candidates \
             ({:.1}x, need >= 10x), {disagreements} result disagreements; {timing}",
            bk_mean / fastss_mean
        ),
    )
}

fn serialization_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = 0;
    for i in 0..50u64 {
        let n = rng.random_range(0..300);
        let dict = random_dictionary(n, 1, 12, 5, SEED + i).unwrap();
        let d = rng.random_range(0..=4);
        let m = if rng.random_bool(0.3) {
            None
        } else {
            Some(rng.random_range(1..12))
        };
        let index = FastSSIndex::build(dict, IndexParams::new(d, m).unwrap());
        let bytes = serialize_index(&index);
        match deserialize_index(&bytes) {
            Ok(back) if back == index && serialize_index(&back) == bytes => {}
            _ => failures += 1,
        }
    }
    Outcome::new(
        failures == 0,
        format!("50 random indexes, {failures} round-trip failures; query timings are reported by `fastss bench`/`compare`, not gated"),
    )
}

fn main() -> ExitCode {
    let bundled = bundled_dictionary();
    type Criterion<'a> = (&'a str, &'a str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        (
            "C1",
            "lossless query vs naive scan",
            Box::new(|| losslessness(&bundled)),
        ),
        ("C2", "banded vs full DP", Box::new(band_equivalence)),
        ("C3", "residual pair counts", Box::new(residual_counting)),
        ("C4", "collision model bound", Box::new(collision_model)),
        (
            "C5",
            "split index space",
            Box::new(|| split_space(&bundled)),
        ),
        (
            "C6",
            "BK-tree vs FastSS work",
            Box::new(|| baseline_gap(&bundled)),
        ),
        (
            "C7",
            "index serialization round trip",
            Box::new(serialization_round_trip),
        ),
    ];
    println!("bundled word list: {} words", bundled.len());
    let mut failed = 0;
    for (id, name, run) in &criteria {
        let outcome = run();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {id} {name}: {}", outcome.detail);
        if !outcome.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
