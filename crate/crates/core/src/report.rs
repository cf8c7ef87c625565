//! Seed reports and model comparison.
//!
//! A [`SeedReport`] records one selection run: per-seed rows carrying the
//! four seed-quality criteria (#Follow, #Tweet, #Mention, #Retweet) plus the
//! seed's positive-opinion probability, and aggregates over the rows. Reports
//! serialize to JSON with fixed key order and 12-significant-digit reals so
//! golden files stay stable; the wall-time field is the one intentionally
//! non-deterministic value and [`SeedReport::without_timing`] strips it for
//! byte comparisons. [`compare`] lines up several reports side by side —
//! refusing mixed node universes — and [`curves_csv`] emits per-rank
//! cumulative criterion curves for plotting.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::SocialGraph;
use crate::influence::{GainFormula, InfluenceMode};
use crate::maximize::SeedSelection;
use crate::scalar::{round_sig12, Real};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("failed to parse report JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("report has {rows} rows but k = {k}")]
    RowCountMismatch { rows: usize, k: usize },
    #[error("report ranks must be 1..=k in order")]
    BadRanks,
    #[error("aggregate `{field}` is {stored} but rows recompute to {recomputed}")]
    AggregateMismatch {
        field: &'static str,
        stored: f64,
        recomputed: f64,
    },
    #[error("no reports to compare")]
    Empty,
    #[error(
        "reports cover different node universes (fingerprint {a}… vs {b}…); \
         refusing to compare across datasets"
    )]
    MixedUniverses { a: String, b: String },
}

pub fn mode_name(mode: InfluenceMode) -> &'static str {
    match mode {
        InfluenceMode::OpinionPositive => "opinion",
        InfluenceMode::BeliefOnly => "belief",
    }
}

pub fn gain_name(formula: GainFormula) -> &'static str {
    match formula {
        GainFormula::Exact => "exact",
        GainFormula::TwoHop => "eq3",
    }
}

/// One selected seed with its quality criteria.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedRow {
    pub rank: usize,
    pub label: String,
    pub gain: f64,
    pub followers: u64,
    pub tweets: u64,
    pub mentions: u64,
    pub retweets: u64,
    pub p_pos: f64,
}

/// Criterion totals over the seed set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaTotals {
    pub followers: u64,
    pub tweets: u64,
    pub mentions: u64,
    pub retweets: u64,
}

/// Full record of one seed-selection run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedReport {
    pub model: String,
    pub gain_formula: String,
    pub k: usize,
    pub n: usize,
    pub graph_fingerprint: String,
    pub sigma: f64,
    pub mean_p_pos: f64,
    pub totals: CriteriaTotals,
    pub evaluations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub seeds: Vec<SeedRow>,
}

impl SeedReport {
    /// Assembles a report from a selection over a scored graph.
    pub fn build<T: Real>(
        graph: &SocialGraph<T>,
        selection: &SeedSelection<T>,
        mode: InfluenceMode,
        formula: GainFormula,
        elapsed_ms: Option<u64>,
    ) -> SeedReport {
        let to64 = |x: T| round_sig12(x.to_f64().unwrap_or(0.0));
        let mut rows = Vec::with_capacity(selection.seeds.len());
        let mut totals = CriteriaTotals::default();
        let mut p_pos_sum = 0.0;
        for (i, (&seed, &gain)) in selection.seeds.iter().zip(&selection.gains).enumerate() {
            let stats = graph.stats(seed);
            let p_pos = to64(graph.opinion(seed).p_pos);
            totals.followers += stats.followers;
            totals.tweets += stats.tweets;
            totals.mentions += stats.mentions_received;
            totals.retweets += stats.retweets_received;
            p_pos_sum += p_pos;
            rows.push(SeedRow {
                rank: i + 1,
                label: graph.label(seed).to_string(),
                gain: to64(gain),
                followers: stats.followers,
                tweets: stats.tweets,
                mentions: stats.mentions_received,
                retweets: stats.retweets_received,
                p_pos,
            });
        }
        let k = rows.len();
        SeedReport {
            model: mode_name(mode).to_string(),
            gain_formula: gain_name(formula).to_string(),
            k,
            n: graph.n(),
            graph_fingerprint: graph.fingerprint(),
            sigma: to64(selection.sigma_final),
            mean_p_pos: if k == 0 {
                0.0
            } else {
                round_sig12(p_pos_sum / k as f64)
            },
            totals,
            evaluations: selection.evaluations,
            elapsed_ms,
            seeds: rows,
        }
    }

    /// Copy with the wall-time field removed, for golden comparisons.
    pub fn without_timing(&self) -> SeedReport {
        let mut report = self.clone();
        report.elapsed_ms = None;
        report
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Parses and cross-checks a report: row count, rank order, and
    /// aggregates recomputed from the rows.
    pub fn from_json(text: &str) -> Result<SeedReport, ReportError> {
        let report: SeedReport = serde_json::from_str(text)?;
        report.validate()?;
        Ok(report)
    }

    fn validate(&self) -> Result<(), ReportError> {
        if self.seeds.len() != self.k {
            return Err(ReportError::RowCountMismatch {
                rows: self.seeds.len(),
                k: self.k,
            });
        }
        if self
            .seeds
            .iter()
            .enumerate()
            .any(|(i, row)| row.rank != i + 1)
        {
            return Err(ReportError::BadRanks);
        }
        let mut totals = CriteriaTotals::default();
        let mut p_pos_sum = 0.0;
        for row in &self.seeds {
            totals.followers += row.followers;
            totals.tweets += row.tweets;
            totals.mentions += row.mentions;
            totals.retweets += row.retweets;
            p_pos_sum += row.p_pos;
        }
        if totals != self.totals {
            return Err(ReportError::AggregateMismatch {
                field: "totals",
                stored: self.totals.followers as f64,
                recomputed: totals.followers as f64,
            });
        }
        let mean = if self.k == 0 {
            0.0
        } else {
            p_pos_sum / self.k as f64
        };
        if (mean - self.mean_p_pos).abs() > 1e-9 {
            return Err(ReportError::AggregateMismatch {
                field: "mean_p_pos",
                stored: self.mean_p_pos,
                recomputed: mean,
            });
        }
        Ok(())
    }

    /// Human-readable aligned table.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "model: {} (gain = {})\n",
            self.model, self.gain_formula
        ));
        out.push_str(&format!(
            "k = {}, n = {}, sigma = {:.6}, mean Pr(Pos) = {:.6}, evaluations = {}\n",
            self.k, self.n, self.sigma, self.mean_p_pos, self.evaluations
        ));
        out.push_str(&format!(
            "{:<4} {:<16} {:>12} {:>9} {:>8} {:>9} {:>9} {:>8}\n",
            "rank", "user", "gain", "#Follow", "#Tweet", "#Mention", "#Retweet", "Pr(Pos)"
        ));
        for row in &self.seeds {
            out.push_str(&format!(
                "{:<4} {:<16} {:>12.6} {:>9} {:>8} {:>9} {:>9} {:>8.4}\n",
                row.rank,
                row.label,
                row.gain,
                row.followers,
                row.tweets,
                row.mentions,
                row.retweets,
                row.p_pos
            ));
        }
        out.push_str(&format!(
            "{:<4} {:<16} {:>12} {:>9} {:>8} {:>9} {:>9}\n",
            "",
            "totals",
            "",
            self.totals.followers,
            self.totals.tweets,
            self.totals.mentions,
            self.totals.retweets
        ));
        out
    }
}

/// One model's column in a side-by-side comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonColumn {
    pub model: String,
    pub gain_formula: String,
    pub k: usize,
    pub sigma: f64,
    pub mean_p_pos: f64,
    pub totals: CriteriaTotals,
}

/// Side-by-side aggregates for reports over the same node universe.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub graph_fingerprint: String,
    pub columns: Vec<ComparisonColumn>,
}

/// Lines up reports over one dataset; order follows the input.
pub fn compare(reports: &[SeedReport]) -> Result<Comparison, ReportError> {
    let first = reports.first().ok_or(ReportError::Empty)?;
    for report in reports {
        report.validate()?;
        if report.graph_fingerprint != first.graph_fingerprint {
            return Err(ReportError::MixedUniverses {
                a: first.graph_fingerprint.chars().take(12).collect(),
                b: report.graph_fingerprint.chars().take(12).collect(),
            });
        }
    }
    Ok(Comparison {
        graph_fingerprint: first.graph_fingerprint.clone(),
        columns: reports
            .iter()
            .map(|r| ComparisonColumn {
                model: r.model.clone(),
                gain_formula: r.gain_formula.clone(),
                k: r.k,
                sigma: r.sigma,
                mean_p_pos: r.mean_p_pos,
                totals: r.totals,
            })
            .collect(),
    })
}

impl Comparison {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("comparison serializes");
        text.push('\n');
        text
    }

    /// Aligned text: one column per model.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let headers: Vec<String> = self
            .columns
            .iter()
            .map(|c| format!("{} ({})", c.model, c.gain_formula))
            .collect();
        out.push_str(&format!("{:<18}", "criterion"));
        for h in &headers {
            out.push_str(&format!(" {h:>18}"));
        }
        out.push('\n');
        let rows: Vec<(&str, Vec<String>)> = vec![
            ("k", self.columns.iter().map(|c| c.k.to_string()).collect()),
            (
                "sigma",
                self.columns
                    .iter()
                    .map(|c| format!("{:.6}", c.sigma))
                    .collect(),
            ),
            (
                "mean Pr(Pos)",
                self.columns
                    .iter()
                    .map(|c| format!("{:.6}", c.mean_p_pos))
                    .collect(),
            ),
            (
                "#Follow total",
                self.columns
                    .iter()
                    .map(|c| c.totals.followers.to_string())
                    .collect(),
            ),
            (
                "#Tweet total",
                self.columns
                    .iter()
                    .map(|c| c.totals.tweets.to_string())
                    .collect(),
            ),
            (
                "#Mention total",
                self.columns
                    .iter()
                    .map(|c| c.totals.mentions.to_string())
                    .collect(),
            ),
            (
                "#Retweet total",
                self.columns
                    .iter()
                    .map(|c| c.totals.retweets.to_string())
                    .collect(),
            ),
        ];
        for (name, values) in rows {
            out.push_str(&format!("{name:<18}"));
            for v in values {
                out.push_str(&format!(" {v:>18}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Per-rank cumulative criterion curves in long CSV form, one line per
/// (report, rank): the plotting-ready counterpart of the comparison table.
pub fn curves_csv(reports: &[SeedReport]) -> Result<String, ReportError> {
    compare(reports)?;
    let mut out = String::from("model,rank,followers,tweets,mentions,retweets,mean_p_pos\n");
    for report in reports {
        let mut cum = CriteriaTotals::default();
        let mut p_pos_sum = 0.0;
        for row in &report.seeds {
            cum.followers += row.followers;
            cum.tweets += row.tweets;
            cum.mentions += row.mentions;
            cum.retweets += row.retweets;
            p_pos_sum += row.p_pos;
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                report.model,
                row.rank,
                cum.followers,
                cum.tweets,
                cum.mentions,
                cum.retweets,
                round_sig12(p_pos_sum / row.rank as f64)
            ));
        }
    }
    Ok(out)
}
