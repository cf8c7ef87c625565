//! Seed selection: CELF lazy greedy, plain greedy, and exhaustive search.
//!
//! All three selectors maximize the spread objective σ from the influence
//! module. Greedy adds the candidate with the largest marginal gain each
//! round; CELF exploits the diminishing-returns structure by keeping stale
//! gains in a lazy max-queue and only recomputing the head, which yields the
//! same selection whenever gains actually diminish. The exhaustive selector
//! is the oracle used in tests. An empirical audit checks the
//! monotone/diminishing-returns assumptions on a concrete instance instead
//! of taking them on faith.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use thiserror::Error;

use crate::graph::UserId;
use crate::influence::{GainFormula, InfluenceView};
use crate::rng::{sample_distinct, uniform_usize};
use crate::scalar::Real;

#[derive(Debug, Error, PartialEq)]
pub enum MaximizeError {
    #[error("k = {k} out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("exhaustive search too large: C({n}, {k}) exceeds {max} subsets")]
    InstanceTooLarge { n: usize, k: usize, max: u64 },
}

/// Result of a seed-selection run.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedSelection<T: Real> {
    /// Seeds in selection order.
    pub seeds: Vec<UserId>,
    /// Marginal gain recorded when each seed was added.
    pub gains: Vec<T>,
    /// σ of the final seed set.
    pub sigma_final: T,
    /// Number of marginal-gain (or σ, for exhaustive search) evaluations.
    pub evaluations: u64,
}

fn check_k<T: Real>(view: &InfluenceView<T>, k: usize) -> Result<(), MaximizeError> {
    let n = view.n();
    if k < 1 || k > n {
        return Err(MaximizeError::KOutOfRange { k, n });
    }
    Ok(())
}

/// Plain greedy: k rounds, each evaluating every remaining candidate.
/// Ties break toward the smaller dense node index.
pub fn greedy_select<T: Real>(
    view: &InfluenceView<T>,
    k: usize,
    formula: GainFormula,
) -> Result<SeedSelection<T>, MaximizeError> {
    check_k(view, k)?;
    let n = view.n();
    let mut seeds: Vec<UserId> = Vec::with_capacity(k);
    let mut gains: Vec<T> = Vec::with_capacity(k);
    let mut selected = vec![false; n];
    let mut evaluations = 0u64;
    for _ in 0..k {
        let mut best: Option<(T, usize)> = None;
        for (x, &already) in selected.iter().enumerate() {
            if already {
                continue;
            }
            let gain = view
                .marginal_gain(&seeds, UserId(x), formula)
                .expect("candidate not in seed set");
            evaluations += 1;
            let better = match best {
                None => true,
                Some((best_gain, _)) => gain > best_gain,
            };
            if better {
                best = Some((gain, x));
            }
        }
        let (gain, x) = best.expect("k ≤ n leaves at least one candidate");
        selected[x] = true;
        seeds.push(UserId(x));
        gains.push(gain);
    }
    let sigma_final = view.sigma(&seeds);
    Ok(SeedSelection {
        seeds,
        gains,
        sigma_final,
        evaluations,
    })
}

/// Lazy-queue entry; ordered by gain descending, then node index ascending,
/// under `BinaryHeap`'s max-heap semantics.
struct LazyEntry<T> {
    gain: T,
    node: usize,
    /// |S| at which this gain was computed; fresh iff equal to current |S|.
    stamp: usize,
}

impl<T: Real> PartialEq for LazyEntry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Real> Eq for LazyEntry<T> {}

impl<T: Real> PartialOrd for LazyEntry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for LazyEntry<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .partial_cmp(&other.gain)
            .expect("marginal gains are finite")
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// CELF lazy greedy.
///
/// The first pass computes every singleton gain into a max-ordered queue.
/// Each round pops the head: if its gain was computed against the current
/// seed set (freshness stamp equals |S|) the node keeps its position and is
/// selected without further work; otherwise the gain is recomputed against
/// the current set and the entry reinserted. On instances with diminishing
/// returns, stale gains are upper bounds, so the selection matches plain
/// greedy while skipping most recomputations.
pub fn celf_select<T: Real>(
    view: &InfluenceView<T>,
    k: usize,
    formula: GainFormula,
) -> Result<SeedSelection<T>, MaximizeError> {
    check_k(view, k)?;
    let n = view.n();
    let mut seeds: Vec<UserId> = Vec::with_capacity(k);
    let mut gains: Vec<T> = Vec::with_capacity(k);
    let mut evaluations = 0u64;
    let mut queue: BinaryHeap<LazyEntry<T>> = BinaryHeap::with_capacity(n);
    for x in 0..n {
        let gain = view
            .marginal_gain(&seeds, UserId(x), formula)
            .expect("empty seed set");
        evaluations += 1;
        queue.push(LazyEntry {
            gain,
            node: x,
            stamp: 0,
        });
    }
    while seeds.len() < k {
        let head = queue.pop().expect("queue holds every unselected node");
        if head.stamp == seeds.len() {
            seeds.push(UserId(head.node));
            gains.push(head.gain);
        } else {
            let gain = view
                .marginal_gain(&seeds, UserId(head.node), formula)
                .expect("selected nodes never re-enter the queue");
            evaluations += 1;
            queue.push(LazyEntry {
                gain,
                node: head.node,
                stamp: seeds.len(),
            });
        }
    }
    let sigma_final = view.sigma(&seeds);
    Ok(SeedSelection {
        seeds,
        gains,
        sigma_final,
        evaluations,
    })
}

/// C(n, k) with an early cap so the guard cannot overflow.
fn binomial_capped(n: u64, k: u64, cap: u64) -> u64 {
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result * (n - i) as u128 / (i + 1) as u128;
        if result > cap as u128 {
            return cap + 1;
        }
    }
    result as u64
}

/// Exhaustive search over all k-subsets (σ evaluated per subset).
///
/// Ties break toward the lexicographically smallest index set. Guarded to
/// C(n, k) ≤ 10^6 subsets. The reported gains are the exact per-step gains
/// along the winning subset in ascending index order, and `evaluations`
/// counts σ evaluations.
pub fn brute_force_select<T: Real>(
    view: &InfluenceView<T>,
    k: usize,
) -> Result<SeedSelection<T>, MaximizeError> {
    const MAX_SUBSETS: u64 = 1_000_000;
    check_k(view, k)?;
    let n = view.n();
    if binomial_capped(n as u64, k as u64, MAX_SUBSETS) > MAX_SUBSETS {
        return Err(MaximizeError::InstanceTooLarge {
            n,
            k,
            max: MAX_SUBSETS,
        });
    }
    let mut best: Option<(T, Vec<UserId>)> = None;
    let mut evaluations = 0u64;
    for combo in itertools::Itertools::combinations(0..n, k) {
        let subset: Vec<UserId> = combo.into_iter().map(UserId).collect();
        let value = view.sigma(&subset);
        evaluations += 1;
        // `combinations` yields lexicographic order, so strict improvement
        // keeps the lexicographically smallest maximizer.
        let better = match &best {
            None => true,
            Some((best_value, _)) => value > *best_value,
        };
        if better {
            best = Some((value, subset));
        }
    }
    let (sigma_final, seeds) = best.expect("k ≥ 1 and n ≥ k imply at least one subset");
    let mut gains = Vec::with_capacity(k);
    for i in 0..k {
        let gain = view
            .marginal_gain_exact(&seeds[..i], seeds[i])
            .expect("prefix never contains the next seed");
        gains.push(gain);
    }
    Ok(SeedSelection {
        seeds,
        gains,
        sigma_final,
        evaluations,
    })
}

/// Outcome of the empirical monotonicity / diminishing-returns audit.
#[derive(Clone, Debug)]
pub struct AuditReport {
    /// Total (S, x) monotonicity checks plus (S, x, y) diminishing-returns
    /// checks performed.
    pub checks: u64,
    pub monotone_violations: u64,
    pub submodular_violations: u64,
    /// Human-readable dump of the first violated check, if any.
    pub counterexample: Option<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.monotone_violations == 0 && self.submodular_violations == 0
    }
}

/// Checks σ's claimed properties on one instance: monotonicity
/// (σ(S∪{x}) ≥ σ(S)) and diminishing returns
/// (gain(S, x) ≥ gain(S∪{y}, x) for S ⊆ S∪{y}).
///
/// Exhaustive over every subset for n ≤ 8; otherwise `samples` random
/// chains drawn deterministically from `seed`. Violations are counted, not
/// asserted, and the first one is dumped for diagnosis.
pub fn audit_instance<T: Real>(view: &InfluenceView<T>, samples: usize, seed: u64) -> AuditReport {
    let n = view.n();
    let tol = T::SUM_TOL;
    let mut report = AuditReport {
        checks: 0,
        monotone_violations: 0,
        submodular_violations: 0,
        counterexample: None,
    };
    let mut run_check = |seeds: &[UserId], x: UserId, y: Option<UserId>| {
        audit_chain(view, seeds, x, y, tol, &mut report);
    };
    if n <= 8 {
        for mask in 0u32..(1 << n) {
            let seeds: Vec<UserId> = (0..n)
                .filter(|&i| mask & (1 << i) != 0)
                .map(UserId)
                .collect();
            for x in 0..n {
                if mask & (1 << x) != 0 {
                    continue;
                }
                run_check(&seeds, UserId(x), None);
                for y in 0..n {
                    if y != x && mask & (1 << y) == 0 {
                        run_check(&seeds, UserId(x), Some(UserId(y)));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let max_set = (n - 2).min(6);
            let set_size = uniform_usize(&mut rng, max_set + 1);
            let picked = sample_distinct(&mut rng, n, set_size + 2);
            // The two extra picks become x and y; the rest form S.
            let x = UserId(picked[uniform_usize(&mut rng, picked.len())]);
            let remaining: Vec<usize> = picked.iter().copied().filter(|&i| i != x.0).collect();
            let y = UserId(remaining[uniform_usize(&mut rng, remaining.len())]);
            let seeds: Vec<UserId> = remaining
                .into_iter()
                .filter(|&i| i != y.0)
                .map(UserId)
                .collect();
            run_check(&seeds, x, Some(y));
        }
    }
    report
}

fn audit_chain<T: Real>(
    view: &InfluenceView<T>,
    seeds: &[UserId],
    x: UserId,
    y: Option<UserId>,
    tol: T,
    report: &mut AuditReport,
) {
    let gain_s = view
        .marginal_gain_exact(seeds, x)
        .expect("x excluded from S by construction");
    report.checks += 1;
    if gain_s < -tol {
        report.monotone_violations += 1;
        report.counterexample.get_or_insert_with(|| {
            format!(
                "monotonicity: σ(S∪{{{x}}}) − σ(S) = {gain} < 0 with S = {s:?}",
                x = x.0,
                gain = gain_s.to_f64().unwrap_or(f64::NAN),
                s = seeds.iter().map(|u| u.0).collect::<Vec<_>>(),
            )
        });
    }
    if let Some(y) = y {
        let mut extended = seeds.to_vec();
        extended.push(y);
        let gain_t = view
            .marginal_gain_exact(&extended, x)
            .expect("x ≠ y and x excluded from S");
        report.checks += 1;
        if gain_s < gain_t - tol {
            report.submodular_violations += 1;
            report.counterexample.get_or_insert_with(|| {
                format!(
                    "diminishing returns: gain(S, {x}) = {gs} < gain(S∪{{{y}}}, {x}) = {gt} \
                     with S = {s:?}",
                    x = x.0,
                    y = y.0,
                    gs = gain_s.to_f64().unwrap_or(f64::NAN),
                    gt = gain_t.to_f64().unwrap_or(f64::NAN),
                    s = seeds.iter().map(|u| u.0).collect::<Vec<_>>(),
                )
            });
        }
    }
}
