//! Slow, direct implementations to check the library against: all-pairs
//! distances for the hypernym hierarchy, and a clustering loop that re-sorts
//! and recomputes everything at every step.

use std::collections::{BTreeMap, BTreeSet};

use sensevocab::{ClusterConfig, MergeRecord, RelationType, WordNetGraph};

pub const INF: u32 = u32::MAX / 4;

/// All-pairs upward distances, `d[i][j]` = hops from `i` up to `j`.
pub struct Closure {
    pub parents: Vec<Vec<usize>>,
    pub d: Vec<Vec<u32>>,
}

pub fn closure(g: &WordNetGraph, instances: bool) -> Closure {
    let n = g.synset_count();
    let parents: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            g.edges_at(i)
                .iter()
                .filter(|(r, _)| *r == RelationType::Hypernym || (instances && *r == RelationType::InstanceHypernym))
                .map(|&(_, t)| t as usize)
                .collect()
        })
        .collect();
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for &p in &parents[i] {
            d[i][p] = d[i][p].min(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    Closure { parents, d }
}

impl Closure {
    /// Common ancestors of minimal summed distance.
    pub fn best(&self, a: usize, b: usize) -> Vec<usize> {
        let n = self.d.len();
        let cost = |x: usize| self.d[a][x] + self.d[b][x];
        let min = (0..n).map(cost).min().unwrap_or(INF);
        if min >= INF {
            return vec![];
        }
        (0..n).filter(|&x| cost(x) == min).collect()
    }

    /// Children of `x` on a shortest path down to `from`; `x` itself when it is `from`.
    pub fn children(&self, x: usize, from: usize) -> Vec<usize> {
        if self.d[from][x] == 0 {
            return vec![x];
        }
        (0..self.d.len()).filter(|&c| self.parents[c].contains(&x) && self.d[from][c] + 1 == self.d[from][x]).collect()
    }
}

fn word_synsets(g: &WordNetGraph) -> Vec<Vec<usize>> {
    g.words().map(|(_, senses)| senses.iter().map(|&s| g.synset_index_of_sense(s as usize)).collect()).collect()
}

/// Necessary synsets by exhaustive pair search.
pub fn necessary(g: &WordNetGraph, c: &Closure) -> Vec<bool> {
    let mut marked = vec![false; g.synset_count()];
    for syns in word_synsets(g) {
        for i in 0..syns.len() {
            for j in i + 1..syns.len() {
                let (a, b) = (syns[i], syns[j]);
                let best = c.best(a, b);
                if best.is_empty() {
                    marked[a] = true;
                    marked[b] = true;
                }
                for x in best {
                    for ch in c.children(x, a).into_iter().chain(c.children(x, b)) {
                        marked[ch] = true;
                    }
                }
            }
        }
    }
    marked
}

/// Tag synset per synset, including the collision repair.
pub fn hypernymy_tags(g: &WordNetGraph, c: &Closure, marked: &[bool]) -> Vec<usize> {
    let n = g.synset_count();
    let mut tags: Vec<usize> = (0..n)
        .map(|i| {
            let reach: Vec<usize> = (0..n).filter(|&x| c.d[i][x] < INF).collect();
            if let Some(&x) = reach.iter().filter(|&&x| marked[x]).min_by_key(|&&x| (c.d[i][x], x)) {
                return x;
            }
            let far = |xs: Vec<usize>| xs.into_iter().max_by_key(|&x| (c.d[i][x], std::cmp::Reverse(x)));
            far(reach.iter().copied().filter(|&x| c.parents[x].is_empty()).collect())
                .or_else(|| far(reach.clone()))
                .unwrap()
        })
        .collect();
    loop {
        let mut changed = false;
        for syns in word_synsets(g) {
            let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &s in &syns {
                groups.entry(tags[s]).or_default().push(s);
            }
            for group in groups.values().filter(|v| v.len() > 1) {
                for &s in group {
                    if tags[s] != s {
                        tags[s] = s;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return tags;
        }
    }
}

/// Words with a sense in `members`; lemma only when `strict`.
pub fn lemma_set(g: &WordNetGraph, members: &BTreeSet<usize>, strict: bool) -> BTreeSet<String> {
    g.senses()
        .iter()
        .enumerate()
        .filter(|(i, _)| members.contains(&g.synset_index_of_sense(*i)))
        .map(|(_, s)| if strict { s.lemma.clone() } else { format!("{}#{}", s.lemma, s.pos.word_class().letter()) })
        .collect()
}

/// Smallest relation joining two clusters, recomputed from raw edges.
pub fn link(g: &WordNetGraph, a: &BTreeSet<usize>, b: &BTreeSet<usize>, lexical: bool) -> Option<RelationType> {
    let mut best: Option<RelationType> = None;
    for (x, y) in [(a, b), (b, a)] {
        for &m in x {
            let edges = if lexical { g.edges_at(m) } else { g.semantic_edges_at(m) };
            for &(r, t) in edges {
                if t as usize != m && y.contains(&(t as usize)) {
                    best = Some(best.map_or(r, |o| o.min(r)));
                }
            }
        }
    }
    best
}

/// The clustering loop taken literally: every step sorts all clusters, and the
/// first admissible merge in (smallest cluster, smallest related cluster)
/// order is applied.
pub fn naive_clusters(g: &WordNetGraph, cfg: ClusterConfig) -> (Vec<BTreeSet<usize>>, Vec<MergeRecord>) {
    let mut clusters: Vec<BTreeSet<usize>> = (0..g.synset_count()).map(|i| BTreeSet::from([i])).collect();
    let mut log = Vec::new();
    let limit = cfg.max_steps.unwrap_or(u64::MAX);
    let id = |i: usize| g.synsets()[i].id;
    'step: while (log.len() as u64) < limit {
        clusters.sort_by_key(|c| (c.len(), *c.first().unwrap()));
        for x in 0..clusters.len() {
            let mut related: Vec<(usize, usize, usize, RelationType)> = (0..clusters.len())
                .filter(|&y| y != x)
                .filter_map(|y| {
                    link(g, &clusters[x], &clusters[y], cfg.lexical_links)
                        .map(|r| (clusters[y].len(), *clusters[y].first().unwrap(), y, r))
                })
                .collect();
            related.sort();
            for (_, _, y, r) in related {
                let (lx, ly) = (
                    lemma_set(g, &clusters[x], cfg.strict_cross_pos),
                    lemma_set(g, &clusters[y], cfg.strict_cross_pos),
                );
                if lx.is_disjoint(&ly) {
                    log.push(MergeRecord {
                        step: log.len() as u64 + 1,
                        cluster_a: id(*clusters[x].first().unwrap()),
                        cluster_b: id(*clusters[y].first().unwrap()),
                        relation: r,
                    });
                    let taken = std::mem::take(&mut clusters[y]);
                    clusters[x].extend(taken);
                    clusters.retain(|c| !c.is_empty());
                    continue 'step;
                }
            }
        }
        break;
    }
    clusters.sort_by_key(|c| *c.first().unwrap());
    (clusters, log)
}
