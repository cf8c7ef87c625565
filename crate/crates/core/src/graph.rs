//! Social graph ingestion, evidence extraction, and edge scoring.
//!
//! The graph is directed in the *influence* direction: an edge u→v means
//! information flows from u to v. The follow CSV lists `follower,followee`
//! pairs, so a line `v,u` (v follows u) yields the influence edge u→v.
//! Mentions and retweets found in the propagation log attach evidence to the
//! corresponding influence edge, creating it with `follow = false` when the
//! pair is not in the follow graph — propagation can occur off the follow
//! graph, and the influence formulas need those edges.
//!
//! [`SocialGraph::score_edges`] turns the per-edge evidence triple
//! (common neighbors, mentions, retweets) into the fused edge influence:
//! each feature is max-normalized into a simple-support BBA on Ω = {I, P}
//! and the three BBAs are combined with Dempster's rule; the edge influence
//! is the combined mass on {I}.

use std::collections::{BTreeMap, HashMap};
use std::io::BufRead;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::belief::{feature_to_bba, Bba, Frame};
use crate::opinion::{score_message, user_opinion, Lexicon, OpinionDistribution};
use crate::scalar::{real, round_sig12, Real};

/// Dense node identifier; indices are 0..n and bijective with labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UserId(pub usize);

impl UserId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// One propagation-log record.
#[derive(Clone, Debug, PartialEq)]
pub struct Message {
    pub id: String,
    pub author: UserId,
    pub ts: i64,
    pub text: String,
    pub mentions: Vec<UserId>,
    pub retweet_of: Option<UserId>,
}

/// Raw evidence counts attached to an influence edge u→v.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdgeEvidence {
    /// |N(u) ∩ N(v)| over undirected neighborhoods.
    pub common_neighbors: u64,
    /// Times u mentioned v.
    pub mentions: u64,
    /// Times v retweeted from u.
    pub retweets: u64,
}

/// Edge payload: evidence, whether the pair is a real follow relation, and
/// (after scoring) the fused influence mass m^Ω(u,v)({I}).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeData<T: Real> {
    pub evidence: EdgeEvidence,
    pub follow: bool,
    pub influence: T,
}

impl<T: Real> Default for EdgeData<T> {
    fn default() -> Self {
        EdgeData {
            evidence: EdgeEvidence::default(),
            follow: false,
            influence: T::zero(),
        }
    }
}

/// Per-node activity counters shown in the seed-quality tables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ActivityStats {
    /// #Follow: how many users follow this node.
    pub followers: u64,
    /// #Tweet: messages authored.
    pub tweets: u64,
    /// #Mention: times this node was mentioned.
    pub mentions_received: u64,
    /// #Retweet: times this node's content was retweeted.
    pub retweets_received: u64,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("failed to read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("edges line 1: expected header `follower,followee`, found `{0}`")]
    EdgesHeader(String),
    #[error("edges line {line}: expected 2 comma-separated fields, found {found}")]
    EdgesFieldCount { line: usize, found: usize },
    #[error("edges line {line}: empty user label")]
    EdgesEmptyLabel { line: usize },
    #[error("log line {line}: {message}")]
    LogJson { line: usize, message: String },
    #[error("log line {line}: negative timestamp {ts}")]
    LogNegativeTimestamp { line: usize, ts: i64 },
}

#[derive(Debug, Error)]
pub enum GraphImportError {
    #[error("failed to parse graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("duplicate node label `{0}`")]
    DuplicateLabel(String),
    #[error("edge references node index {index} but the graph has {n} nodes")]
    EdgeIndexOutOfRange { index: usize, n: usize },
    #[error("edge ({u}, {v}) influence {value} outside [0, 1]")]
    InvalidInfluence { u: usize, v: usize, value: f64 },
    #[error("node `{label}` opinion ({pos}, {neg}, {obj}) is not a distribution")]
    InvalidOpinion {
        label: String,
        pos: f64,
        neg: f64,
        obj: f64,
    },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-edge ({0}, {0}) is not allowed")]
    SelfEdge(usize),
}

/// Directed social graph with evidence-scored influence edges.
#[derive(Clone, Debug)]
pub struct SocialGraph<T: Real> {
    labels: Vec<String>,
    index: HashMap<String, UserId>,
    edges: BTreeMap<(usize, usize), EdgeData<T>>,
    in_neighbors: Vec<Vec<UserId>>,
    stats: Vec<ActivityStats>,
    opinions: Vec<OpinionDistribution<T>>,
    messages: Vec<Message>,
    warnings: Vec<String>,
}

impl<T: Real> SocialGraph<T> {
    pub fn new() -> Self {
        SocialGraph {
            labels: Vec::new(),
            index: HashMap::new(),
            edges: BTreeMap::new(),
            in_neighbors: Vec::new(),
            stats: Vec::new(),
            opinions: Vec::new(),
            messages: Vec::new(),
            warnings: Vec::new(),
        }
    }

    /// Number of nodes.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = UserId> {
        (0..self.n()).map(UserId)
    }

    pub fn label(&self, u: UserId) -> &str {
        &self.labels[u.0]
    }

    pub fn user_id(&self, label: &str) -> Option<UserId> {
        self.index.get(label).copied()
    }

    pub fn stats(&self, u: UserId) -> &ActivityStats {
        &self.stats[u.0]
    }

    pub fn opinion(&self, u: UserId) -> &OpinionDistribution<T> {
        &self.opinions[u.0]
    }

    pub fn set_opinion(&mut self, u: UserId, opinion: OpinionDistribution<T>) {
        self.opinions[u.0] = opinion;
    }

    pub fn messages(&self) -> &[Message] {
        &self.messages
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Influence-direction in-neighborhood D_IN(v).
    pub fn in_neighbors(&self, v: UserId) -> &[UserId] {
        &self.in_neighbors[v.0]
    }

    pub fn edge(&self, u: UserId, v: UserId) -> Option<&EdgeData<T>> {
        self.edges.get(&(u.0, v.0))
    }

    /// Fused edge influence m^Ω(u,v)({I}); zero for non-edges.
    pub fn edge_influence(&self, u: UserId, v: UserId) -> T {
        self.edges
            .get(&(u.0, v.0))
            .map(|e| e.influence)
            .unwrap_or_else(T::zero)
    }

    /// Edges in deterministic (u, v) dense-index order.
    pub fn edges_iter(&self) -> impl Iterator<Item = (UserId, UserId, &EdgeData<T>)> {
        self.edges
            .iter()
            .map(|(&(u, v), data)| (UserId(u), UserId(v), data))
    }

    fn intern(&mut self, label: &str) -> UserId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = UserId(self.labels.len());
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        self.stats.push(ActivityStats::default());
        self.opinions.push(OpinionDistribution::objective());
        self.in_neighbors.push(Vec::new());
        id
    }

    fn touch_edge(&mut self, u: UserId, v: UserId) -> &mut EdgeData<T> {
        self.edges.entry((u.0, v.0)).or_default()
    }

    /// Parses the follow CSV and the JSONL propagation log into a graph with
    /// populated activity counters and per-edge mention/retweet evidence,
    /// then derives in-neighborhoods and common-neighbor counts.
    pub fn ingest<E: BufRead, L: BufRead>(edges: E, log: L) -> Result<Self, IngestError> {
        let mut g = SocialGraph::new();
        g.read_follow_edges(edges)?;
        g.read_log(log)?;
        g.finalize_structure();
        Ok(g)
    }

    fn read_follow_edges<R: BufRead>(&mut self, reader: R) -> Result<(), IngestError> {
        let mut lines = reader.lines().enumerate();
        match lines.next() {
            Some((_, header)) => {
                let header = header?;
                let trimmed = header.trim_start_matches('\u{feff}').trim();
                if trimmed != "follower,followee" {
                    return Err(IngestError::EdgesHeader(trimmed.to_string()));
                }
            }
            None => return Ok(()),
        }
        for (idx, line) in lines {
            let line = line?;
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 2 {
                return Err(IngestError::EdgesFieldCount {
                    line: line_no,
                    found: fields.len(),
                });
            }
            let follower = fields[0].trim();
            let followee = fields[1].trim();
            if follower.is_empty() || followee.is_empty() {
                return Err(IngestError::EdgesEmptyLabel { line: line_no });
            }
            let follower = self.intern(follower);
            let followee = self.intern(followee);
            if follower == followee {
                self.warnings
                    .push(format!("edges line {line_no}: self-follow ignored"));
                continue;
            }
            // v follows u ⇒ influence edge u→v.
            let edge = self.touch_edge(followee, follower);
            if !edge.follow {
                edge.follow = true;
                self.stats[followee.0].followers += 1;
            }
        }
        Ok(())
    }

    fn read_log<R: BufRead>(&mut self, reader: R) -> Result<(), IngestError> {
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let raw: RawMessage =
                serde_json::from_str(&line).map_err(|e| IngestError::LogJson {
                    line: line_no,
                    message: e.to_string(),
                })?;
            if raw.ts < 0 {
                return Err(IngestError::LogNegativeTimestamp {
                    line: line_no,
                    ts: raw.ts,
                });
            }
            let author = self.intern(&raw.author);
            self.stats[author.0].tweets += 1;

            let mut mention_ids = Vec::with_capacity(raw.mentions.len());
            for m in &raw.mentions {
                let target = self.intern(m);
                mention_ids.push(target);
                self.stats[target.0].mentions_received += 1;
                if target != author {
                    // Author mentions target ⇒ evidence on influence edge
                    // author→target.
                    self.touch_edge(author, target).evidence.mentions += 1;
                }
            }

            let retweet_of = match &raw.retweet_of {
                Some(source_label) => {
                    let known = self.index.contains_key(source_label);
                    let source = self.intern(source_label);
                    if !known {
                        self.warnings.push(format!(
                            "log line {line_no}: retweet_of user `{source_label}` \
                             not in graph; added"
                        ));
                    }
                    self.stats[source.0].retweets_received += 1;
                    if source != author {
                        // Author retweets from source ⇒ evidence on influence
                        // edge source→author.
                        self.touch_edge(source, author).evidence.retweets += 1;
                    }
                    Some(source)
                }
                None => None,
            };

            self.messages.push(Message {
                id: raw.id,
                author,
                ts: raw.ts,
                text: raw.text,
                mentions: mention_ids,
                retweet_of,
            });
        }
        Ok(())
    }

    /// Rebuilds in-neighbor lists and recomputes common-neighbor evidence
    /// from the current edge set.
    fn finalize_structure(&mut self) {
        self.rebuild_in_neighbors();
        let neighborhoods = self.undirected_neighborhoods();
        for (&(u, v), data) in self.edges.iter_mut() {
            data.evidence.common_neighbors =
                count_intersection(&neighborhoods[u], &neighborhoods[v]);
        }
    }

    fn rebuild_in_neighbors(&mut self) {
        for list in &mut self.in_neighbors {
            list.clear();
        }
        for &(u, v) in self.edges.keys() {
            self.in_neighbors[v].push(UserId(u));
        }
        // BTreeMap iteration is (u, v)-sorted, so each list is already
        // ascending; keep the sort as a guard for future mutation paths.
        for list in &mut self.in_neighbors {
            list.sort_unstable();
        }
    }

    /// Undirected neighbor sets N(x), as sorted index vectors.
    fn undirected_neighborhoods(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = vec![Vec::new(); self.n()];
        for &(u, v) in self.edges.keys() {
            sets[u].push(v);
            sets[v].push(u);
        }
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
        }
        sets
    }

    /// Evidence triple for an existing edge u→v.
    pub fn edge_evidence(&self, u: UserId, v: UserId) -> Option<EdgeEvidence> {
        self.edges.get(&(u.0, v.0)).map(|e| e.evidence)
    }

    /// Scores every user's opinion distribution from their messages.
    pub fn score_opinions(&mut self, lexicon: &Lexicon<T>) {
        let mut per_user: Vec<Vec<OpinionDistribution<T>>> = vec![Vec::new(); self.n()];
        for msg in &self.messages {
            per_user[msg.author.0].push(score_message(&msg.text, lexicon));
        }
        for (idx, scores) in per_user.iter().enumerate() {
            self.opinions[idx] = user_opinion(scores);
        }
    }

    /// Fuses the three per-edge evidence features into the edge influence.
    ///
    /// Each feature is normalized by its global maximum over all edges and
    /// turned into a simple-support BBA on {I}; a feature whose global max is
    /// zero contributes a vacuous BBA. The three BBAs are combined with
    /// Dempster's rule and the edge influence is the fused mass on {I}.
    pub fn score_edges(&mut self) {
        let frame = Frame::influence();
        let max_cn = self
            .edges
            .values()
            .map(|e| e.evidence.common_neighbors)
            .max()
            .unwrap_or(0);
        let max_mentions = self
            .edges
            .values()
            .map(|e| e.evidence.mentions)
            .max()
            .unwrap_or(0);
        let max_retweets = self
            .edges
            .values()
            .map(|e| e.evidence.retweets)
            .max()
            .unwrap_or(0);

        let feature_bba = |value: u64, max: u64| -> Bba<T> {
            if max == 0 {
                Bba::vacuous(frame.clone())
            } else {
                feature_to_bba(real::<T>(value as f64), real::<T>(max as f64))
                    .expect("0 ≤ count ≤ global max by construction")
            }
        };

        for data in self.edges.values_mut() {
            let ev = data.evidence;
            let fused = feature_bba(ev.common_neighbors, max_cn)
                .combine_dempster(&feature_bba(ev.mentions, max_mentions))
                .and_then(|b| b.combine_dempster(&feature_bba(ev.retweets, max_retweets)))
                .expect("simple-support BBAs on the same singleton never conflict");
            data.influence = fused.singleton_mass("I");
        }
    }

    /// Test/fixture constructor: a graph with direct influence values on its
    /// edges and fully positive opinions everywhere.
    pub fn from_influence_edges(labels: &[&str], edges: &[(usize, usize, T)]) -> Self {
        let mut g = SocialGraph::new();
        for label in labels {
            g.intern(label);
        }
        for &(u, v, influence) in edges {
            assert!(u < g.n() && v < g.n() && u != v, "invalid fixture edge");
            let data = g.touch_edge(UserId(u), UserId(v));
            data.follow = true;
            data.influence = influence;
        }
        for stats in &mut g.stats {
            stats.followers = 0;
        }
        for &(u, _) in g.edges.keys() {
            g.stats[u].followers += 1;
        }
        for opinion in &mut g.opinions {
            *opinion = OpinionDistribution::positive();
        }
        g.rebuild_in_neighbors();
        g
    }

    /// SHA-256 over the canonical export: identifies the dataset (nodes,
    /// scored edges, opinions), used to refuse cross-dataset report
    /// comparisons. Stable across export/import because the export itself
    /// round-trips byte-identically.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.export_json().as_bytes());
        let digest = hasher.finalize();
        let mut hex = String::with_capacity(64);
        for byte in digest {
            hex.push_str(&format!("{byte:02x}"));
        }
        hex
    }

    /// Deterministic JSON export: node table then edge table, dense-index
    /// ordering, reals quantized to 12 significant digits.
    pub fn export_json(&self) -> String {
        let to64 = |x: T| round_sig12(x.to_f64().unwrap_or(0.0));
        let nodes: Vec<ExportNode> = (0..self.n())
            .map(|i| {
                let s = &self.stats[i];
                let o = &self.opinions[i];
                ExportNode {
                    label: self.labels[i].clone(),
                    followers: s.followers,
                    tweets: s.tweets,
                    mentions: s.mentions_received,
                    retweets: s.retweets_received,
                    opinion: ExportOpinion {
                        pos: to64(o.p_pos),
                        neg: to64(o.p_neg),
                        obj: to64(o.p_obj),
                    },
                }
            })
            .collect();
        let edges: Vec<ExportEdge> = self
            .edges
            .iter()
            .map(|(&(u, v), data)| ExportEdge {
                u,
                v,
                follow: data.follow,
                common_neighbors: data.evidence.common_neighbors,
                mentions: data.evidence.mentions,
                retweets: data.evidence.retweets,
                influence: to64(data.influence),
            })
            .collect();
        let export = GraphExport { nodes, edges };
        let mut text = serde_json::to_string_pretty(&export).expect("graph export serializes");
        text.push('\n');
        text
    }

    /// Inverse of [`export_json`]: reconstructs a scored graph (without raw
    /// messages). With the `f64` scalar, re-exporting yields identical bytes
    /// because exported reals are already 12-digit quantized.
    ///
    /// [`export_json`]: SocialGraph::export_json
    pub fn import_json(text: &str) -> Result<Self, GraphImportError> {
        let export: GraphExport = serde_json::from_str(text)?;
        let mut g = SocialGraph::new();
        for node in &export.nodes {
            if g.index.contains_key(&node.label) {
                return Err(GraphImportError::DuplicateLabel(node.label.clone()));
            }
            let id = g.intern(&node.label);
            let o = &node.opinion;
            let valid = o.pos >= 0.0
                && o.neg >= 0.0
                && o.obj >= 0.0
                && (o.pos + o.neg + o.obj - 1.0).abs() <= 1e-9;
            if !valid {
                return Err(GraphImportError::InvalidOpinion {
                    label: node.label.clone(),
                    pos: o.pos,
                    neg: o.neg,
                    obj: o.obj,
                });
            }
            g.stats[id.0] = ActivityStats {
                followers: node.followers,
                tweets: node.tweets,
                mentions_received: node.mentions,
                retweets_received: node.retweets,
            };
            g.opinions[id.0] = OpinionDistribution {
                p_pos: real(o.pos),
                p_neg: real(o.neg),
                p_obj: real(o.obj),
            };
        }
        let n = g.n();
        for edge in &export.edges {
            for index in [edge.u, edge.v] {
                if index >= n {
                    return Err(GraphImportError::EdgeIndexOutOfRange { index, n });
                }
            }
            if edge.u == edge.v {
                return Err(GraphImportError::SelfEdge(edge.u));
            }
            if !(0.0..=1.0).contains(&edge.influence) {
                return Err(GraphImportError::InvalidInfluence {
                    u: edge.u,
                    v: edge.v,
                    value: edge.influence,
                });
            }
            let key = (edge.u, edge.v);
            if g.edges.contains_key(&key) {
                return Err(GraphImportError::DuplicateEdge {
                    u: edge.u,
                    v: edge.v,
                });
            }
            g.edges.insert(
                key,
                EdgeData {
                    evidence: EdgeEvidence {
                        common_neighbors: edge.common_neighbors,
                        mentions: edge.mentions,
                        retweets: edge.retweets,
                    },
                    follow: edge.follow,
                    influence: real(edge.influence),
                },
            );
        }
        g.rebuild_in_neighbors();
        Ok(g)
    }
}

impl<T: Real> Default for SocialGraph<T> {
    fn default() -> Self {
        SocialGraph::new()
    }
}

fn count_intersection(a: &[usize], b: &[usize]) -> u64 {
    let (mut i, mut j, mut count) = (0, 0, 0u64);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

#[derive(Deserialize)]
struct RawMessage {
    #[allow(dead_code)]
    id: String,
    author: String,
    ts: i64,
    text: String,
    mentions: Vec<String>,
    retweet_of: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct GraphExport {
    nodes: Vec<ExportNode>,
    edges: Vec<ExportEdge>,
}

#[derive(Serialize, Deserialize)]
struct ExportNode {
    label: String,
    followers: u64,
    tweets: u64,
    mentions: u64,
    retweets: u64,
    opinion: ExportOpinion,
}

#[derive(Serialize, Deserialize)]
struct ExportOpinion {
    pos: f64,
    neg: f64,
    obj: f64,
}

#[derive(Serialize, Deserialize)]
struct ExportEdge {
    u: usize,
    v: usize,
    follow: bool,
    common_neighbors: u64,
    mentions: u64,
    retweets: u64,
    influence: f64,
}
