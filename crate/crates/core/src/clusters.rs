//! Compression by greedy clustering along every semantic relation.
//!
//! Every synset starts in its own cluster. At each step the smallest cluster
//! is merged with its smallest related cluster, unless the two share a word,
//! in which case the next related cluster is tried, then the next smallest
//! cluster. Sizes count member synsets; ties go to the smaller order key,
//! which is the smallest member id unless a seed permutes ids.
//!
//! A cluster whose every merge is refused stays refused: lemma sets only
//! grow, and its neighbours only get bigger. The loop therefore skips such
//! clusters for good instead of rescanning them after each merge.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::ClusterError;
use crate::ids::SynsetId;
use crate::mapping::{MappingMetadata, Method, SenseMapping};
use crate::pos::PartOfSpeech;
use crate::relation::RelationType;
use crate::wordnet::{RelationSet, WordNetGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterConfig {
    pub relation_filter: RelationSet,
    /// Also link synsets through word-level pointers (antonymy, derivation,
    /// pertainymy and the like), lifted to their synsets.
    pub lexical_links: bool,
    /// Stop after this many successful merges.
    pub max_steps: Option<u64>,
    /// Forbid the same lemma twice in a cluster even across parts of speech.
    pub strict_cross_pos: bool,
    /// Permutes the tie-breaking order among equal-sized clusters.
    pub seed: Option<u64>,
}

impl Default for ClusterConfig {
    fn default() -> Self {
        ClusterConfig {
            relation_filter: RelationSet::all(),
            lexical_links: false,
            max_steps: None,
            strict_cross_pos: false,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    /// Smallest member synset.
    pub id: SynsetId,
    pub members: Vec<SynsetId>,
    /// Words with a sense in some member, by word class.
    pub lemma_set: BTreeSet<(String, PartOfSpeech)>,
}

impl Cluster {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Number of senses in the cluster; each sense contributes one word.
    pub fn sense_count(&self) -> usize {
        self.lemma_set.len()
    }
}

/// Whether `a` and `b` can be merged without putting two senses of one word
/// in the same cluster.
pub fn merge_allowed(a: &Cluster, b: &Cluster, strict_cross_pos: bool) -> bool {
    if strict_cross_pos {
        let lemmas: HashSet<&str> = a.lemma_set.iter().map(|(l, _)| l.as_str()).collect();
        !b.lemma_set.iter().any(|(l, _)| lemmas.contains(l.as_str()))
    } else {
        a.lemma_set.is_disjoint(&b.lemma_set)
    }
}

/// One successful merge of the smallest cluster `cluster_a` with its related
/// cluster `cluster_b`, both named by their tags just before the merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeRecord {
    pub step: u64,
    pub cluster_a: SynsetId,
    pub cluster_b: SynsetId,
    pub relation: RelationType,
}

impl fmt::Display for MergeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}\t{}", self.step, self.cluster_a, self.cluster_b, self.relation.name())
    }
}

impl FromStr for MergeRecord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fields: Vec<&str> = s.split('\t').collect();
        let [step, a, b, rel] = fields[..] else {
            return Err(format!("expected 4 tab-separated fields, got {}", fields.len()));
        };
        Ok(MergeRecord {
            step: step.parse().map_err(|_| format!("bad step `{step}`"))?,
            cluster_a: a.parse().map_err(|e| format!("{e}"))?,
            cluster_b: b.parse().map_err(|e| format!("{e}"))?,
            relation: rel.parse().map_err(|_| format!("unknown relation `{rel}`"))?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterSet {
    /// Sorted by cluster id.
    pub clusters: Vec<Cluster>,
    pub step_count: u64,
    pub merge_log: Vec<MergeRecord>,
}

impl ClusterSet {
    /// One cluster per synset.
    pub fn singletons(graph: &WordNetGraph) -> ClusterSet {
        let state = State::new(graph, false);
        state.into_cluster_set(graph, Vec::new())
    }

    /// Rebuilds the partition by applying `log` to fresh singletons, checking
    /// that each merge joins related clusters that share no word.
    pub fn replay(
        graph: &WordNetGraph,
        log: &[MergeRecord],
        strict_cross_pos: bool,
    ) -> Result<ClusterSet, ClusterError> {
        let mut state = State::new(graph, strict_cross_pos);
        let mut by_tag: HashMap<u32, u32> = (0..graph.synset_count() as u32).map(|i| (i, i)).collect();
        for (i, rec) in log.iter().enumerate() {
            let expected = i as u64 + 1;
            if rec.step != expected {
                return Err(ClusterError::OutOfOrder { step: rec.step, expected });
            }
            let slot = |tag: SynsetId| {
                graph
                    .index_of(tag)
                    .and_then(|t| by_tag.get(&(t as u32)).copied())
                    .ok_or(ClusterError::UnknownCluster { step: rec.step, tag })
            };
            let (a, b) = (slot(rec.cluster_a)?, slot(rec.cluster_b)?);
            if a == b || !state.disjoint(a, b) {
                return Err(ClusterError::Conflict { step: rec.step, a: rec.cluster_a, b: rec.cluster_b });
            }
            let joins = |from: u32, to: u32| {
                state.members[from as usize].iter().any(|&m| {
                    graph
                        .edges_at(m as usize)
                        .iter()
                        .any(|&(r, t)| r == rec.relation && state.slot_of[t as usize] == to)
                })
            };
            let joined = joins(a, b) || joins(b, a);
            if !joined {
                return Err(ClusterError::Unrelated {
                    step: rec.step,
                    a: rec.cluster_a,
                    b: rec.cluster_b,
                    relation: rec.relation,
                });
            }
            by_tag.remove(&state.tag[a as usize]);
            by_tag.remove(&state.tag[b as usize]);
            let s = state.merge(a, b);
            by_tag.insert(state.tag[s as usize], s);
        }
        Ok(state.into_cluster_set(graph, log.to_vec()))
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Cluster id of every synset.
    pub fn partition(&self) -> BTreeMap<SynsetId, SynsetId> {
        self.clusters.iter().flat_map(|c| c.members.iter().map(move |&m| (m, c.id))).collect()
    }

    /// Every sense tagged with its synset's cluster.
    pub fn to_mapping(&self, graph: &WordNetGraph, metadata: MappingMetadata) -> SenseMapping {
        let part = self.partition();
        let tags: Vec<usize> =
            graph.synsets().iter().map(|s| graph.index_of(part[&s.id]).expect("partition covers the graph")).collect();
        SenseMapping::from_synset_tags(graph, Method::AllRelations, &tags, metadata)
    }

    pub fn write_merge_log(&self, mut out: impl Write) -> std::io::Result<()> {
        for rec in &self.merge_log {
            writeln!(out, "{rec}")?;
        }
        Ok(())
    }

    pub fn merge_log_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_merge_log(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("log is UTF-8")
    }
}

/// Parses a merge log written by [`ClusterSet::write_merge_log`].
pub fn parse_merge_log(text: &str) -> Result<Vec<MergeRecord>, ClusterError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| l.parse().map_err(|message| ClusterError::Malformed { line: i + 1, message }))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterStats {
    pub count: usize,
    pub mean_senses_per_cluster: f64,
    /// Member-synset count to number of clusters of that size.
    pub size_histogram: BTreeMap<usize, usize>,
}

pub fn cluster_stats(set: &ClusterSet) -> ClusterStats {
    let senses: usize = set.clusters.iter().map(Cluster::sense_count).sum();
    let mut size_histogram = BTreeMap::new();
    for c in &set.clusters {
        *size_histogram.entry(c.size()).or_insert(0) += 1;
    }
    ClusterStats {
        count: set.len(),
        mean_senses_per_cluster: if set.is_empty() { 0.0 } else { senses as f64 / set.len() as f64 },
        size_histogram,
    }
}

/// Mutable clustering state indexed by slot. A merged cluster keeps the slot
/// of whichever side had more words.
struct State {
    members: Vec<Vec<u32>>,
    lemmas: Vec<HashSet<u32>>,
    adj: Vec<HashMap<u32, RelationType>>,
    tag: Vec<u32>,
    key: Vec<u32>,
    slot_of: Vec<u32>,
}

impl State {
    fn new(graph: &WordNetGraph, strict_cross_pos: bool) -> State {
        let n = graph.synset_count();
        let mut lemmas = vec![HashSet::new(); n];
        let mut ids: HashMap<&str, u32> = HashMap::new();
        for (w, ((lemma, _), senses)) in graph.words().enumerate() {
            let id = if strict_cross_pos {
                let next = ids.len() as u32;
                *ids.entry(lemma.as_str()).or_insert(next)
            } else {
                w as u32
            };
            for &s in senses {
                lemmas[graph.synset_index_of_sense(s as usize)].insert(id);
            }
        }
        State {
            members: (0..n as u32).map(|i| vec![i]).collect(),
            lemmas,
            adj: vec![HashMap::new(); n],
            tag: (0..n as u32).collect(),
            key: (0..n as u32).collect(),
            slot_of: (0..n as u32).collect(),
        }
    }

    fn link(&mut self, graph: &WordNetGraph, filter: RelationSet, lexical: bool) {
        for i in 0..graph.synset_count() {
            let edges = if lexical { graph.edges_at(i) } else { graph.semantic_edges_at(i) };
            for &(r, t) in edges {
                if t as usize == i || !filter.contains(r) {
                    continue;
                }
                for (from, to) in [(i as u32, t), (t, i as u32)] {
                    self.adj[from as usize].entry(to).and_modify(|x| *x = (*x).min(r)).or_insert(r);
                }
            }
        }
    }

    fn disjoint(&self, a: u32, b: u32) -> bool {
        let (small, large) = if self.lemmas[a as usize].len() <= self.lemmas[b as usize].len() {
            (&self.lemmas[a as usize], &self.lemmas[b as usize])
        } else {
            (&self.lemmas[b as usize], &self.lemmas[a as usize])
        };
        small.is_disjoint(large)
    }

    fn merge(&mut self, a: u32, b: u32) -> u32 {
        let weight = |s: u32| self.lemmas[s as usize].len() + self.adj[s as usize].len();
        let (keep, gone) = if weight(a) >= weight(b) { (a, b) } else { (b, a) };
        let (k, g) = (keep as usize, gone as usize);

        let members = std::mem::take(&mut self.members[g]);
        for &m in &members {
            self.slot_of[m as usize] = keep;
        }
        self.members[k].extend(members);
        let lemmas = std::mem::take(&mut self.lemmas[g]);
        self.lemmas[k].extend(lemmas);
        self.tag[k] = self.tag[k].min(self.tag[g]);
        self.key[k] = self.key[k].min(self.key[g]);

        let adj = std::mem::take(&mut self.adj[g]);
        self.adj[k].remove(&gone);
        for (nbr, r) in adj {
            if nbr == keep {
                continue;
            }
            let n = &mut self.adj[nbr as usize];
            n.remove(&gone);
            let e = n.entry(keep).or_insert(r);
            *e = (*e).min(r);
            let e = self.adj[k].entry(nbr).or_insert(r);
            *e = (*e).min(r);
        }
        keep
    }

    fn order(&self, s: u32) -> (usize, u32, u32) {
        (self.members[s as usize].len(), self.key[s as usize], s)
    }

    fn into_cluster_set(self, graph: &WordNetGraph, merge_log: Vec<MergeRecord>) -> ClusterSet {
        let mut word_of: Vec<Vec<(String, PartOfSpeech)>> = vec![Vec::new(); graph.synset_count()];
        for ((lemma, pos), senses) in graph.words() {
            for &s in senses {
                word_of[graph.synset_index_of_sense(s as usize)].push((lemma.clone(), *pos));
            }
        }
        let mut clusters: Vec<Cluster> = self
            .members
            .into_iter()
            .filter(|m| !m.is_empty())
            .map(|mut m| {
                m.sort_unstable();
                let lemma_set = m.iter().flat_map(|&i| word_of[i as usize].iter().cloned()).collect();
                let members: Vec<SynsetId> = m.iter().map(|&i| graph.synsets()[i as usize].id).collect();
                Cluster { id: members[0], members, lemma_set }
            })
            .collect();
        clusters.sort_by_key(|c| c.id);
        ClusterSet { clusters, step_count: merge_log.len() as u64, merge_log }
    }
}

/// Runs the greedy clustering and returns the mapping with the clusters.
pub fn compress_all_relations(graph: &WordNetGraph, config: ClusterConfig) -> (SenseMapping, ClusterSet) {
    let mut state = State::new(graph, config.strict_cross_pos);
    state.link(graph, config.relation_filter, config.lexical_links);
    if let Some(seed) = config.seed {
        let mut perm: Vec<u32> = (0..graph.synset_count() as u32).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        state.key = perm;
    }
    let id = |i: u32| graph.synsets()[i as usize].id;
    let limit = config.max_steps.unwrap_or(u64::MAX);

    let mut queue: BTreeSet<(usize, u32, u32)> = (0..graph.synset_count() as u32).map(|s| state.order(s)).collect();
    let mut log = Vec::new();
    while (log.len() as u64) < limit {
        let Some(head) = queue.pop_first() else { break };
        let c = head.2;
        let mut candidates: Vec<(usize, u32, u32, RelationType)> = state.adj[c as usize]
            .iter()
            .map(|(&d, &r)| {
                let (size, key, _) = state.order(d);
                (size, key, d, r)
            })
            .collect();
        candidates.sort_unstable();
        let Some(&(_, _, d, r)) = candidates.iter().find(|&&(_, _, d, _)| state.disjoint(c, d)) else {
            continue;
        };
        log.push(MergeRecord {
            step: log.len() as u64 + 1,
            cluster_a: id(state.tag[c as usize]),
            cluster_b: id(state.tag[d as usize]),
            relation: r,
        });
        queue.remove(&state.order(d));
        let s = state.merge(c, d);
        queue.insert(state.order(s));
    }

    let set = state.into_cluster_set(graph, log);
    let mapping = set.to_mapping(
        graph,
        MappingMetadata {
            wordnet_version: graph.version().to_string(),
            steps: Some(set.step_count),
            seed: config.seed,
            ..Default::default()
        },
    );
    (mapping, set)
}
