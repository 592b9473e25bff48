//! Compression through the hypernym hierarchy.
//!
//! Two steps. First, for every pair of senses of every polysemous word, the
//! children of their first common ancestor (one on each side) are marked
//! *necessary*: those are the most general synsets that still tell the two
//! senses apart. Second, every sense is mapped to its nearest necessary
//! synset going up the hierarchy.
//!
//! WordNet's hierarchy is a DAG, so "first" means nearest by edge count:
//! a common ancestor minimizes `dist(a, x) + dist(b, x)` and ties go to the
//! smaller synset id. A final pass restores discriminability wherever the DAG
//! still lets two senses of a word meet on one tag.

use std::collections::{HashMap, VecDeque};

use crate::error::GraphError;
use crate::ids::SynsetId;
use crate::mapping::{MappingMetadata, Method, SenseMapping};
use crate::pos::PartOfSpeech;
use crate::wordnet::{RelationSet, WordNetGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypernymyConfig {
    /// Follow instance-hypernym edges as well as hypernym edges.
    pub include_instances: bool,
}

impl Default for HypernymyConfig {
    fn default() -> Self {
        HypernymyConfig { include_instances: true }
    }
}

/// Upward-reachable synsets of one start node with their BFS distances.
#[derive(Debug, Clone)]
pub struct Ancestry {
    /// `(synset index, distance)` sorted by distance, then index. Starts with `(self, 0)`.
    pub by_distance: Vec<(u32, u32)>,
    by_node: Vec<(u32, u32)>,
}

impl Ancestry {
    pub fn distance(&self, node: u32) -> Option<u32> {
        self.by_node.binary_search_by_key(&node, |&(n, _)| n).ok().map(|i| self.by_node[i].1)
    }
}

/// The hypernym relation restricted to parent/child adjacency lists.
pub struct Hierarchy<'g> {
    graph: &'g WordNetGraph,
    parents: Vec<Vec<u32>>,
}

impl<'g> Hierarchy<'g> {
    pub fn new(graph: &'g WordNetGraph, config: HypernymyConfig) -> Self {
        let filter = RelationSet::hypernymy(config.include_instances);
        let parents = (0..graph.synset_count())
            .map(|i| {
                let mut p: Vec<u32> =
                    graph.edges_at(i).iter().filter(|(r, _)| filter.contains(*r)).map(|&(_, t)| t).collect();
                p.sort_unstable();
                p.dedup();
                p
            })
            .collect();
        Hierarchy { graph, parents }
    }

    pub fn graph(&self) -> &'g WordNetGraph {
        self.graph
    }

    pub fn parents(&self, idx: usize) -> &[u32] {
        &self.parents[idx]
    }

    /// Breadth-first walk up from `start`, which is included at distance 0.
    pub fn ancestry(&self, start: usize) -> Ancestry {
        let mut dist: HashMap<u32, u32> = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(start as u32, 0);
        queue.push_back(start as u32);
        while let Some(n) = queue.pop_front() {
            let d = dist[&n];
            for &p in &self.parents[n as usize] {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(p) {
                    e.insert(d + 1);
                    queue.push_back(p);
                }
            }
        }
        let mut by_distance: Vec<(u32, u32)> = dist.into_iter().collect();
        let mut by_node = by_distance.clone();
        by_distance.sort_unstable_by_key(|&(n, d)| (d, n));
        by_node.sort_unstable();
        Ancestry { by_distance, by_node }
    }

    /// Common ancestors of minimal summed distance, in index order.
    fn nearest_common(&self, a: &Ancestry, b: &Ancestry) -> Vec<(u32, u32, u32)> {
        let mut best = u32::MAX;
        let mut found = Vec::new();
        for &(x, da) in &a.by_node {
            if let Some(db) = b.distance(x) {
                let cost = da + db;
                if cost < best {
                    best = cost;
                    found.clear();
                }
                if cost == best {
                    found.push((x, da, db));
                }
            }
        }
        found
    }

    /// Direct children of `ancestor` lying on a shortest path down to the
    /// start of `side`; the start itself when it is the ancestor.
    fn children_toward(&self, ancestor: u32, distance: u32, side: &Ancestry) -> Vec<u32> {
        if distance == 0 {
            return vec![ancestor];
        }
        let mut out: Vec<u32> = side
            .by_distance
            .iter()
            .filter(|&&(c, d)| d == distance - 1 && self.parents[c as usize].binary_search(&ancestor).is_ok())
            .map(|&(c, _)| c)
            .collect();
        out.sort_unstable();
        out
    }

    /// Shortest upward path from `start` to `ancestor`, preferring smaller ids
    /// at every step.
    pub fn path(&self, start: usize, ancestor: usize) -> Option<AncestorPath> {
        let from = self.ancestry(start);
        let total = from.distance(ancestor as u32)?;
        let mut steps = Vec::with_capacity(total as usize);
        let mut at = start as u32;
        for d in (0..total).rev() {
            // next hop: smallest parent that still reaches `ancestor` in `d` steps
            at = *self.parents[at as usize]
                .iter()
                .find(|&&p| self.ancestry(p as usize).distance(ancestor as u32) == Some(d))?;
            steps.push(self.graph.synsets()[at as usize].id);
        }
        Some(AncestorPath { start: self.graph.synsets()[start].id, steps, distance: total })
    }
}

/// A chain of hypernym-direction hops from `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AncestorPath {
    pub start: SynsetId,
    /// Synsets visited after `start`, ending at the target ancestor.
    pub steps: Vec<SynsetId>,
    pub distance: u32,
}

/// Result of [`first_common_ancestor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommonAncestor {
    pub ancestor: SynsetId,
    /// Child of `ancestor` toward `a`; `a` itself when it is at most one hop away.
    pub child_a: SynsetId,
    pub child_b: SynsetId,
    pub distance_a: u32,
    pub distance_b: u32,
}

/// The nearest common ancestor of two synsets of the same part of speech.
pub fn first_common_ancestor(
    graph: &WordNetGraph,
    a: SynsetId,
    b: SynsetId,
    config: HypernymyConfig,
) -> Result<Option<CommonAncestor>, GraphError> {
    let ia = graph.index_of(a).ok_or(GraphError::UnknownSynset(a))?;
    let ib = graph.index_of(b).ok_or(GraphError::UnknownSynset(b))?;
    if a == b {
        return Err(GraphError::SameSynset(a));
    }
    if a.pos != b.pos {
        return Err(GraphError::PosMismatch(a, b));
    }
    let h = Hierarchy::new(graph, config);
    Ok(h.first_common_ancestor(ia, ib))
}

impl Hierarchy<'_> {
    pub fn first_common_ancestor(&self, a: usize, b: usize) -> Option<CommonAncestor> {
        let (aa, ab) = (self.ancestry(a), self.ancestry(b));
        let &(x, da, db) = self.nearest_common(&aa, &ab).first()?;
        let id = |i: u32| self.graph.synsets()[i as usize].id;
        Some(CommonAncestor {
            ancestor: id(x),
            child_a: id(self.children_toward(x, da, &aa)[0]),
            child_b: id(self.children_toward(x, db, &ab)[0]),
            distance_a: da,
            distance_b: db,
        })
    }
}

/// Why a synset was first marked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub lemma: String,
    pub pos: PartOfSpeech,
    pub sense_a: u32,
    pub sense_b: u32,
}

/// The synsets needed to keep every word's senses apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessarySet {
    marks: Vec<Option<Provenance>>,
    ids: Vec<SynsetId>,
}

impl NecessarySet {
    pub fn contains(&self, id: SynsetId) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.marks[idx].is_some()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Marked synsets in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = SynsetId> + '_ {
        self.ids.iter().copied()
    }

    pub fn provenance(&self, idx: usize) -> Option<&Provenance> {
        self.marks[idx].as_ref()
    }
}

/// Step one: marks the children of the first common ancestor(s) of every
/// sense pair of every polysemous word. All minimal-cost ancestors and all
/// their shortest-path children contribute. Pairs without any common
/// ancestor mark both of their own synsets.
pub fn mark_necessary(graph: &WordNetGraph, config: HypernymyConfig) -> NecessarySet {
    let h = Hierarchy::new(graph, config);
    let mut cache: Vec<Option<Ancestry>> = vec![None; graph.synset_count()];
    let mut marks: Vec<Option<Provenance>> = vec![None; graph.synset_count()];
    for ((lemma, pos), senses) in graph.words() {
        if senses.len() < 2 {
            continue;
        }
        let synsets: Vec<usize> = senses.iter().map(|&s| graph.synset_index_of_sense(s as usize)).collect();
        for &s in &synsets {
            if cache[s].is_none() {
                cache[s] = Some(h.ancestry(s));
            }
        }
        for i in 0..synsets.len() {
            for j in i + 1..synsets.len() {
                let (a, b) = (synsets[i], synsets[j]);
                let (aa, ab) = (cache[a].as_ref().unwrap(), cache[b].as_ref().unwrap());
                let mut mark = |m: u32| {
                    let slot = &mut marks[m as usize];
                    if slot.is_none() {
                        *slot = Some(Provenance {
                            lemma: lemma.clone(),
                            pos: *pos,
                            sense_a: i as u32 + 1,
                            sense_b: j as u32 + 1,
                        });
                    }
                };
                let common = h.nearest_common(aa, ab);
                if common.is_empty() {
                    mark(a as u32);
                    mark(b as u32);
                }
                for (x, da, db) in common {
                    for c in h.children_toward(x, da, aa) {
                        mark(c);
                    }
                    for c in h.children_toward(x, db, ab) {
                        mark(c);
                    }
                }
            }
        }
    }
    let ids = marks.iter().enumerate().filter(|(_, m)| m.is_some()).map(|(i, _)| graph.synsets()[i].id).collect();
    NecessarySet { marks, ids }
}

/// Step two, per synset: the nearest marked synset among itself and its
/// ancestors. Without one, the farthest root above it (a synset with no
/// parents); inside a parentless cycle, the farthest ancestor.
pub fn nearest_marked(h: &Hierarchy<'_>, necessary: &NecessarySet, idx: usize) -> usize {
    let anc = h.ancestry(idx);
    if let Some(&(m, _)) = anc.by_distance.iter().find(|&&(n, _)| necessary.contains_index(n as usize)) {
        return m as usize;
    }
    let farthest = |candidates: &mut dyn Iterator<Item = &(u32, u32)>| {
        candidates.max_by(|x, y| x.1.cmp(&y.1).then(y.0.cmp(&x.0))).map(|&(n, _)| n as usize)
    };
    farthest(&mut anc.by_distance.iter().filter(|(n, _)| h.parents(*n as usize).is_empty()))
        .or_else(|| farthest(&mut anc.by_distance.iter()))
        .unwrap_or(idx)
}

/// Sends colliding synsets back to themselves until every word's senses
/// have distinct tags. Returns the number of synsets changed.
pub fn repair_collisions(graph: &WordNetGraph, tags: &mut [usize]) -> usize {
    let mut repaired = vec![false; tags.len()];
    loop {
        let mut changed = false;
        for (_, senses) in graph.words() {
            if senses.len() < 2 {
                continue;
            }
            let synsets: Vec<usize> = senses.iter().map(|&s| graph.synset_index_of_sense(s as usize)).collect();
            let mut by_tag: HashMap<usize, Vec<usize>> = HashMap::new();
            for &s in &synsets {
                by_tag.entry(tags[s]).or_default().push(s);
            }
            for group in by_tag.values().filter(|g| g.len() > 1) {
                for &s in group {
                    if tags[s] != s {
                        tags[s] = s;
                        repaired[s] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    repaired.iter().filter(|&&r| r).count()
}

/// Per-synset tag indices plus repair count, from an explicit necessary set.
pub fn hypernymy_tags(graph: &WordNetGraph, necessary: &NecessarySet, config: HypernymyConfig) -> (Vec<usize>, usize) {
    let h = Hierarchy::new(graph, config);
    let mut tags: Vec<usize> = (0..graph.synset_count()).map(|i| nearest_marked(&h, necessary, i)).collect();
    let repairs = repair_collisions(graph, &mut tags);
    (tags, repairs)
}

/// Maps every sense to its nearest necessary hypernym.
pub fn compress_hypernymy(graph: &WordNetGraph, config: HypernymyConfig) -> SenseMapping {
    let necessary = mark_necessary(graph, config);
    let (tags, repairs) = hypernymy_tags(graph, &necessary, config);
    SenseMapping::from_synset_tags(
        graph,
        Method::Hypernymy,
        &tags,
        MappingMetadata {
            wordnet_version: graph.version().to_string(),
            repairs: Some(repairs as u64),
            ..Default::default()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::{verify_mapping, CompressedTag};
    use crate::relation::RelationType;
    use crate::toy::{ToyWordNet, MOUSE_FRAGMENT};
    use crate::wndb::parse_wndb;

    fn fragment() -> (ToyWordNet, WordNetGraph) {
        let toy = ToyWordNet::parse(MOUSE_FRAGMENT).unwrap();
        let g = parse_wndb(&toy.to_files()).unwrap();
        (toy, g)
    }

    fn id_of(toy: &ToyWordNet, g: &WordNetGraph, label: &str) -> SynsetId {
        let i = toy.synsets().iter().position(|s| s.label == label).unwrap();
        let first = &toy.synsets()[i].words[0];
        g.senses_of(first, toy.synsets()[i].pos)
            .into_iter()
            .map(|s| s.synset)
            .find(|sid| g.synset(*sid).unwrap().gloss == toy.synsets()[i].gloss)
            .unwrap()
    }

    #[test]
    fn mouse_senses_split_below_whole() {
        let (toy, g) = fragment();
        let m1 = id_of(&toy, &g, "mouse_animal");
        let m4 = id_of(&toy, &g, "mouse_device");
        let fca = first_common_ancestor(&g, m1, m4, HypernymyConfig::default()).unwrap().unwrap();
        assert_eq!(fca.ancestor, id_of(&toy, &g, "whole"));
        assert_eq!(fca.child_a, id_of(&toy, &g, "living_thing"));
        assert_eq!(fca.child_b, id_of(&toy, &g, "artifact"));
    }

    #[test]
    fn inclusion_case() {
        let (toy, g) = fragment();
        let x = id_of(&toy, &g, "rodent");
        let p = id_of(&toy, &g, "placental");
        let fca = first_common_ancestor(&g, x, p, HypernymyConfig::default()).unwrap().unwrap();
        assert_eq!((fca.ancestor, fca.child_a, fca.child_b), (p, x, p));
        assert_eq!((fca.distance_a, fca.distance_b), (1, 0));
    }

    #[test]
    fn fca_errors() {
        let (toy, g) = fragment();
        let n = id_of(&toy, &g, "rodent");
        let v = id_of(&toy, &g, "help");
        let cfg = HypernymyConfig::default();
        assert_eq!(first_common_ancestor(&g, n, v, cfg), Err(GraphError::PosMismatch(n, v)));
        assert_eq!(first_common_ancestor(&g, n, n, cfg), Err(GraphError::SameSynset(n)));
        let ghost = SynsetId::new(PartOfSpeech::Noun, 1);
        assert_eq!(first_common_ancestor(&g, n, ghost, cfg), Err(GraphError::UnknownSynset(ghost)));
    }

    #[test]
    fn prey_marks_animal() {
        let (toy, g) = fragment();
        let nec = mark_necessary(&g, HypernymyConfig::default());
        let animal = id_of(&toy, &g, "animal");
        assert!(nec.contains(animal));
        let prov = nec.provenance(g.index_of(animal).unwrap()).unwrap();
        assert_eq!(prov.lemma, "prey");
        // mouse#1 climbs to animal, not living_thing
        let m = compress_hypernymy(&g, HypernymyConfig::default());
        let mouse1 = &g.senses_of("mouse", PartOfSpeech::Noun)[0].key;
        assert_eq!(m.get(mouse1), Some(&CompressedTag::Synset(animal)));
        assert!(verify_mapping(&m, &g).ok());
    }

    #[test]
    fn monosemous_lexicon_marks_nothing() {
        let mut toy = ToyWordNet::new();
        let root = toy.synset(PartOfSpeech::Noun, &["root"]);
        let leaf = toy.synset(PartOfSpeech::Noun, &["leaf"]);
        toy.link(leaf, RelationType::Hypernym, root);
        let g = parse_wndb(&toy.to_files()).unwrap();
        let nec = mark_necessary(&g, HypernymyConfig::default());
        assert!(nec.is_empty());
        // unmarked everywhere: the leaf goes to its root
        let m = compress_hypernymy(&g, HypernymyConfig::default());
        let root_id =
            g.synsets()[g.synset_index_of_sense(g.sense_indices_of("root", PartOfSpeech::Noun)[0] as usize)].id;
        for s in g.senses() {
            assert_eq!(m.get(&s.key), Some(&CompressedTag::Synset(root_id)));
        }
    }

    #[test]
    fn instance_flag_controls_reach() {
        let (toy, g) = fragment();
        let einstein = g.index_of(id_of(&toy, &g, "einstein")).unwrap();
        let with = Hierarchy::new(&g, HypernymyConfig { include_instances: true });
        let without = Hierarchy::new(&g, HypernymyConfig { include_instances: false });
        assert!(with.ancestry(einstein).by_distance.len() > 1);
        assert_eq!(without.ancestry(einstein).by_distance.len(), 1);
    }

    #[test]
    fn path_follows_parents() {
        let (toy, g) = fragment();
        let h = Hierarchy::new(&g, HypernymyConfig::default());
        let m = g.index_of(id_of(&toy, &g, "mouse_animal")).unwrap();
        let a = g.index_of(id_of(&toy, &g, "animal")).unwrap();
        let p = h.path(m, a).unwrap();
        assert_eq!(p.distance, 6);
        assert_eq!(p.steps.len(), 6);
        assert_eq!(*p.steps.last().unwrap(), g.synsets()[a].id);
        let mut prev = m;
        for s in &p.steps {
            let i = g.index_of(*s).unwrap();
            assert!(h.parents(prev).contains(&(i as u32)));
            prev = i;
        }
        assert!(h.path(a, m).is_none());
    }

    #[test]
    fn cycle_without_root_falls_back_to_farthest() {
        let mut toy = ToyWordNet::new();
        let a = toy.synset(PartOfSpeech::Verb, &["restrain"]);
        let b = toy.synset(PartOfSpeech::Verb, &["inhibit"]);
        toy.link(a, RelationType::Hypernym, b);
        toy.link(b, RelationType::Hypernym, a);
        let g = parse_wndb(&toy.to_files()).unwrap();
        assert_eq!(crate::wndb::hypernym_cycles(&g).len(), 1);
        let h = Hierarchy::new(&g, HypernymyConfig::default());
        let nec = mark_necessary(&g, HypernymyConfig::default());
        assert_eq!(nearest_marked(&h, &nec, 0), 1);
        assert_eq!(nearest_marked(&h, &nec, 1), 0);
    }
}
