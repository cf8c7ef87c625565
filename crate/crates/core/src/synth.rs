//! Deterministic synthetic fixtures: follow graph, propagation log, lexicon.
//!
//! The generator is a desk-scale stand-in for a real crawl. The follow graph
//! grows by preferential attachment (early nodes become hubs), and two
//! planted cohorts drive the model comparison the report command makes:
//!
//! * *celebrities* (the earliest hub nodes) — heavily retweeted, so their
//!   edges carry the strongest evidence, but their messages are negative;
//! * *champions* (the next cohort) — almost as strongly retweeted, with
//!   clearly positive messages.
//!
//! A structure-only influence measure therefore favors celebrities, while
//! the positive-opinion measure favors champions; the seed cohorts' mean
//! positive opinion separates the two models on the same data.
//!
//! Everything is derived from a single seeded [`ChaCha8Rng`] stream with a
//! fixed generation order, so equal `(seed, n)` inputs produce byte-identical
//! files on every platform.

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use serde::Serialize;

use crate::rng::{uniform_f64, uniform_usize};

/// Generation parameters.
#[derive(Clone, Copy, Debug)]
pub struct SynthConfig {
    pub seed: u64,
    pub n: usize,
}

/// The three generated file bodies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthFiles {
    pub edges_csv: String,
    pub log_jsonl: String,
    pub lexicon_tsv: String,
}

const POSITIVE_WORDS: &[&str] = &["love", "great", "awesome", "excellent", "happy"];
const NEGATIVE_WORDS: &[&str] = &["hate", "awful", "terrible", "broken", "sad"];
const NEUTRAL_WORDS: &[&str] = &[
    "phone", "update", "battery", "screen", "today", "camera", "app", "price",
];

const LEXICON_TSV: &str = "# synthetic sentiment lexicon\n\
love\t0.9\t0.0\n\
great\t0.85\t0.0\n\
awesome\t0.9\t0.05\n\
excellent\t0.9\t0.0\n\
happy\t0.8\t0.1\n\
hate\t0.05\t0.9\n\
awful\t0.0\t0.9\n\
terrible\t0.0\t0.85\n\
broken\t0.05\t0.8\n\
sad\t0.1\t0.8\n";

/// How many nodes each planted cohort gets.
pub fn cohort_size(n: usize) -> usize {
    (n / 6).min(8)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Celebrity,
    Champion,
    Background,
}

fn role_of(node: usize, cohort: usize) -> Role {
    if node < cohort {
        Role::Celebrity
    } else if node < 2 * cohort {
        Role::Champion
    } else {
        Role::Background
    }
}

impl Role {
    /// (chance a token is positive, chance it is negative).
    fn word_profile(self) -> (f64, f64) {
        match self {
            Role::Celebrity => (0.06, 0.55),
            Role::Champion => (0.60, 0.04),
            Role::Background => (0.18, 0.12),
        }
    }

    /// Relative likelihood of being the source of a retweet.
    fn retweet_weight(self) -> usize {
        match self {
            Role::Celebrity => 8,
            Role::Champion => 6,
            Role::Background => 1,
        }
    }

    fn message_count(self, rng: &mut ChaCha8Rng) -> usize {
        match self {
            Role::Celebrity | Role::Champion => 8 + uniform_usize(rng, 5),
            Role::Background => 2 + uniform_usize(rng, 3),
        }
    }
}

#[derive(Serialize)]
struct LogLine<'a> {
    id: String,
    author: &'a str,
    ts: i64,
    text: String,
    mentions: Vec<&'a str>,
    retweet_of: Option<&'a str>,
}

/// Generates the three fixture files for the given seed and size.
pub fn generate(config: &SynthConfig) -> SynthFiles {
    let n = config.n;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let labels: Vec<String> = (0..n).map(|i| format!("u{i:04}")).collect();
    let cohort = cohort_size(n);

    // Preferential-attachment follow graph: each arriving node follows up to
    // five existing nodes, sampled from a repeated-endpoint list so heavily
    // followed nodes attract further followers.
    let mut follows: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges_csv = String::from("follower,followee\n");
    let mut attach: Vec<usize> = Vec::new();
    if n > 0 {
        attach.push(0);
    }
    for i in 1..n {
        let m = i.min(5);
        let mut targets: Vec<usize> = Vec::with_capacity(m);
        let mut tries = 0;
        while targets.len() < m && tries < 50 * m {
            let pick = attach[uniform_usize(&mut rng, attach.len())];
            tries += 1;
            if pick != i && !targets.contains(&pick) {
                targets.push(pick);
            }
        }
        let mut fallback = 0;
        while targets.len() < m {
            if fallback != i && !targets.contains(&fallback) {
                targets.push(fallback);
            }
            fallback += 1;
        }
        targets.sort_unstable();
        for &t in &targets {
            edges_csv.push_str(&labels[i]);
            edges_csv.push(',');
            edges_csv.push_str(&labels[t]);
            edges_csv.push('\n');
            follows[i].push(t);
            attach.push(t);
        }
        attach.push(i);
    }

    // Propagation log: users post in index order; each message is either a
    // retweet of a followee (weighted toward the planted cohorts) or an
    // original post whose words follow the author's opinion profile.
    let mut log_jsonl = String::new();
    let mut ts: i64 = 1_600_000_000;
    let mut message_no = 0usize;
    for i in 0..n {
        let role = role_of(i, cohort);
        let count = role.message_count(&mut rng);
        for _ in 0..count {
            ts += 97;
            message_no += 1;
            let id = format!("m{message_no:06}");
            let is_retweet = !follows[i].is_empty() && uniform_f64(&mut rng) < 0.55;
            let line = if is_retweet {
                let source = pick_retweet_source(&mut rng, &follows[i], cohort);
                let text = sample_text(&mut rng, role_of(source, cohort).word_profile());
                LogLine {
                    id,
                    author: &labels[i],
                    ts,
                    text,
                    mentions: Vec::new(),
                    retweet_of: Some(&labels[source]),
                }
            } else {
                let text = sample_text(&mut rng, role.word_profile());
                let mentions = if !follows[i].is_empty() && uniform_f64(&mut rng) < 0.3 {
                    let target = follows[i][uniform_usize(&mut rng, follows[i].len())];
                    vec![labels[target].as_str()]
                } else {
                    Vec::new()
                };
                LogLine {
                    id,
                    author: &labels[i],
                    ts,
                    text,
                    mentions,
                    retweet_of: None,
                }
            };
            log_jsonl.push_str(&serde_json::to_string(&line).expect("log line serializes"));
            log_jsonl.push('\n');
        }
    }

    SynthFiles {
        edges_csv,
        log_jsonl,
        lexicon_tsv: LEXICON_TSV.to_string(),
    }
}

fn pick_retweet_source(rng: &mut ChaCha8Rng, followees: &[usize], cohort: usize) -> usize {
    let total: usize = followees
        .iter()
        .map(|&f| role_of(f, cohort).retweet_weight())
        .sum();
    let mut t = uniform_usize(rng, total);
    for &f in followees {
        let w = role_of(f, cohort).retweet_weight();
        if t < w {
            return f;
        }
        t -= w;
    }
    *followees.last().expect("followees non-empty")
}

fn sample_text(rng: &mut ChaCha8Rng, (p_pos, p_neg): (f64, f64)) -> String {
    let tokens = 3 + uniform_usize(rng, 4);
    let mut words = Vec::with_capacity(tokens);
    for _ in 0..tokens {
        let r = uniform_f64(rng);
        let pool = if r < p_pos {
            POSITIVE_WORDS
        } else if r < p_pos + p_neg {
            NEGATIVE_WORDS
        } else {
            NEUTRAL_WORDS
        };
        words.push(pool[uniform_usize(rng, pool.len())]);
    }
    words.join(" ")
}
