//! The immutable WordNet graph: synsets, word senses and typed synset-level
//! relations, with a lemma index ordered by WordNet sense numbers.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::GraphError;
use crate::ids::{SenseKey, SynsetId};
use crate::pos::PartOfSpeech;
use crate::relation::RelationType;

/// A set of relation types, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RelationSet(u32);

impl RelationSet {
    pub fn empty() -> Self {
        RelationSet(0)
    }

    pub fn all() -> Self {
        RelationType::ALL.iter().copied().collect()
    }

    /// Hypernym edges, plus instance hypernyms when asked for.
    pub fn hypernymy(include_instances: bool) -> Self {
        let mut s = RelationSet::empty();
        s.insert(RelationType::Hypernym);
        if include_instances {
            s.insert(RelationType::InstanceHypernym);
        }
        s
    }

    pub fn insert(&mut self, r: RelationType) {
        self.0 |= 1 << r as u32;
    }

    pub fn remove(&mut self, r: RelationType) {
        self.0 &= !(1 << r as u32);
    }

    pub fn contains(self, r: RelationType) -> bool {
        self.0 & (1 << r as u32) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = RelationType> {
        RelationType::ALL.into_iter().filter(move |r| self.contains(*r))
    }
}

impl FromIterator<RelationType> for RelationSet {
    fn from_iter<I: IntoIterator<Item = RelationType>>(iter: I) -> Self {
        let mut s = RelationSet::empty();
        for r in iter {
            s.insert(r);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synset {
    pub id: SynsetId,
    pub lex_filenum: u8,
    /// Member senses, as indices into [`WordNetGraph::senses`], in data-file word order.
    pub senses: Vec<u32>,
    pub gloss: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSense {
    pub lemma: String,
    /// The synset's own part of speech; satellites stay satellites here.
    pub pos: PartOfSpeech,
    /// 1-based rank from the index file.
    pub sense_number: u32,
    pub key: SenseKey,
    pub synset: SynsetId,
    pub lex_id: u8,
}

/// Key of the lemma index: the lemma and its word class (satellites fold into
/// adjectives).
pub type WordKey = (String, PartOfSpeech);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordNetGraph {
    pub(crate) version: String,
    pub(crate) synsets: Vec<Synset>,
    pub(crate) senses: Vec<WordSense>,
    pub(crate) sense_synset: Vec<u32>,
    pub(crate) edges: Vec<Vec<(RelationType, u32)>>,
    pub(crate) semantic: Vec<Vec<(RelationType, u32)>>,
    pub(crate) by_id: HashMap<SynsetId, u32>,
    pub(crate) by_key: HashMap<SenseKey, u32>,
    pub(crate) lemma_index: BTreeMap<WordKey, Vec<u32>>,
}

impl WordNetGraph {
    /// Version string found in the data file headers, or `unknown`.
    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn synset_count(&self) -> usize {
        self.synsets.len()
    }

    pub fn sense_count(&self) -> usize {
        self.senses.len()
    }

    /// All synsets in canonical id order. A synset's position in this slice is
    /// its dense index.
    pub fn synsets(&self) -> &[Synset] {
        &self.synsets
    }

    pub fn senses(&self) -> &[WordSense] {
        &self.senses
    }

    pub fn synset(&self, id: SynsetId) -> Option<&Synset> {
        self.index_of(id).map(|i| &self.synsets[i])
    }

    pub fn index_of(&self, id: SynsetId) -> Option<usize> {
        self.by_id.get(&id).map(|&i| i as usize)
    }

    /// Dense synset index of a sense.
    pub fn synset_index_of_sense(&self, sense: usize) -> usize {
        self.sense_synset[sense] as usize
    }

    pub fn sense_index(&self, key: &SenseKey) -> Option<usize> {
        self.by_key.get(key).map(|&i| i as usize)
    }

    pub fn sense_by_key(&self, key: &SenseKey) -> Option<&WordSense> {
        self.sense_index(key).map(|i| &self.senses[i])
    }

    /// Sense indices of a word in sense-number order. `pos` is folded to its
    /// word class.
    pub fn sense_indices_of(&self, lemma: &str, pos: PartOfSpeech) -> &[u32] {
        self.lemma_index.get(&(lemma.to_string(), pos.word_class())).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Senses of `(lemma, pos)` ordered by sense number; empty for unknown words.
    pub fn senses_of(&self, lemma: &str, pos: PartOfSpeech) -> Vec<&WordSense> {
        self.sense_indices_of(lemma, pos).iter().map(|&i| &self.senses[i as usize]).collect()
    }

    /// Every word of the lexicon with its senses, in `(lemma, word class)` order.
    pub fn words(&self) -> impl Iterator<Item = (&WordKey, &[u32])> {
        self.lemma_index.iter().map(|(k, v)| (k, v.as_slice()))
    }

    pub fn word_count(&self) -> usize {
        self.lemma_index.len()
    }

    /// Outgoing edges of a synset by dense index, sorted by (relation, target).
    pub fn edges_at(&self, idx: usize) -> &[(RelationType, u32)] {
        &self.edges[idx]
    }

    /// The subset of [`edges_at`](Self::edges_at) stated between whole
    /// synsets, leaving out word-level pointers such as antonymy or
    /// derivation.
    pub fn semantic_edges_at(&self, idx: usize) -> &[(RelationType, u32)] {
        &self.semantic[idx]
    }

    /// Typed neighbours of `id`, restricted to `filter`, in (relation, target id) order.
    pub fn related(&self, id: SynsetId, filter: RelationSet) -> Result<Vec<(RelationType, SynsetId)>, GraphError> {
        let idx = self.index_of(id).ok_or(GraphError::UnknownSynset(id))?;
        Ok(self.edges[idx]
            .iter()
            .filter(|(r, _)| filter.contains(*r))
            .map(|&(r, t)| (r, self.synsets[t as usize].id))
            .collect())
    }

    /// Total number of typed synset-level edges.
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Counts senses of polysemous nouns, and those of them whose synset takes
    /// part in the (non-instance) hypernym/hyponym hierarchy.
    pub fn hierarchy_stats(&self) -> (usize, usize) {
        let mut polysemous = 0;
        let mut in_hierarchy = 0;
        for ((_, pos), senses) in &self.lemma_index {
            if *pos != PartOfSpeech::Noun || senses.len() < 2 {
                continue;
            }
            polysemous += senses.len();
            in_hierarchy += senses
                .iter()
                .filter(|&&s| {
                    self.edges[self.sense_synset[s as usize] as usize]
                        .iter()
                        .any(|(r, _)| matches!(r, RelationType::Hypernym | RelationType::Hyponym))
                })
                .count();
        }
        (polysemous, in_hierarchy)
    }

    /// Canonical text serialization: one synset per line in id order,
    /// `id<TAB>lex_filenum<TAB>senses<TAB>edges`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.synsets.iter().enumerate() {
            let _ = write!(out, "{}\t{:02}\t", s.id, s.lex_filenum);
            for (j, &w) in s.senses.iter().enumerate() {
                let sense = &self.senses[w as usize];
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{}/{}", sense.key, sense.sense_number);
            }
            out.push('\t');
            for (j, &(r, t)) in self.edges[i].iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{}{}", r.symbol(), self.synsets[t as usize].id);
            }
            out.push('\n');
        }
        out
    }
}
