//! Sense mappings: the total function from sense keys to compressed tags,
//! its file format, verification and lemma-conditioned decompression.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::MappingError;
use crate::ids::{SenseKey, SynsetId};
use crate::pos::PartOfSpeech;
use crate::wordnet::WordNetGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// No compression: every sense key is its own tag.
    Identity,
    Synonymy,
    Hypernymy,
    AllRelations,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Identity => "none",
            Method::Synonymy => "synonymy",
            Method::Hypernymy => "hypernymy",
            Method::AllRelations => "all_relations",
        }
    }

    fn accepts(self, tag: &CompressedTag) -> bool {
        matches!(
            (self, tag),
            (Method::Identity, CompressedTag::Sense(_))
                | (Method::Synonymy | Method::Hypernymy, CompressedTag::Synset(_))
                | (Method::AllRelations, CompressedTag::Cluster(_))
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "none" | "identity" => Method::Identity,
            "synonymy" | "synonyms" => Method::Synonymy,
            "hypernymy" | "hypernyms" => Method::Hypernymy,
            "all_relations" | "all-relations" => Method::AllRelations,
            _ => return Err(format!("unknown method `{s}`")),
        })
    }
}

/// A compressed sense tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CompressedTag {
    /// `sense:<key>`, used by the identity mapping.
    Sense(SenseKey),
    /// `syn:<synset>`, used by synonymy and hypernymy.
    Synset(SynsetId),
    /// `clu:<smallest member synset>`, used by all-relations clustering.
    Cluster(SynsetId),
}

impl fmt::Display for CompressedTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompressedTag::Sense(k) => write!(f, "sense:{k}"),
            CompressedTag::Synset(s) => write!(f, "syn:{s}"),
            CompressedTag::Cluster(s) => write!(f, "clu:{s}"),
        }
    }
}

impl FromStr for CompressedTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("malformed tag `{s}`");
        let (prefix, rest) = s.split_once(':').ok_or_else(bad)?;
        Ok(match prefix {
            "sense" => CompressedTag::Sense(rest.parse().map_err(|_| bad())?),
            "syn" => CompressedTag::Synset(rest.parse().map_err(|_| bad())?),
            "clu" => CompressedTag::Cluster(rest.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MappingMetadata {
    pub wordnet_version: String,
    /// Successful merges (all-relations).
    pub steps: Option<u64>,
    pub seed: Option<u64>,
    /// Synsets sent back to themselves by the discriminability repair (hypernymy).
    pub repairs: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MappingStats {
    pub sense_count: usize,
    pub vocabulary_size: usize,
    pub compression_rate: f64,
    pub mean_senses_per_tag: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseMapping {
    method: Method,
    entries: BTreeMap<SenseKey, CompressedTag>,
    metadata: MappingMetadata,
}

impl SenseMapping {
    pub fn new(method: Method, entries: BTreeMap<SenseKey, CompressedTag>, metadata: MappingMetadata) -> Self {
        SenseMapping { method, entries, metadata }
    }

    /// Builds a mapping that tags every sense with a tag chosen per synset.
    /// `synset_tags[i]` is the tag synset for the synset at dense index `i`.
    pub fn from_synset_tags(
        graph: &WordNetGraph,
        method: Method,
        synset_tags: &[usize],
        metadata: MappingMetadata,
    ) -> Self {
        let wrap = |id: SynsetId| match method {
            Method::AllRelations => CompressedTag::Cluster(id),
            _ => CompressedTag::Synset(id),
        };
        let entries = graph
            .senses()
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let tag = graph.synsets()[synset_tags[graph.synset_index_of_sense(i)]].id;
                (s.key.clone(), wrap(tag))
            })
            .collect();
        SenseMapping { method, entries, metadata }
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn metadata(&self) -> &MappingMetadata {
        &self.metadata
    }

    pub fn get(&self, key: &SenseKey) -> Option<&CompressedTag> {
        self.entries.get(key)
    }

    pub fn entries(&self) -> &BTreeMap<SenseKey, CompressedTag> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn vocabulary(&self) -> BTreeSet<&CompressedTag> {
        self.entries.values().collect()
    }

    pub fn vocabulary_size(&self) -> usize {
        self.vocabulary().len()
    }

    pub fn stats(&self) -> MappingStats {
        let vocabulary_size = self.vocabulary_size();
        let sense_count = self.entries.len();
        let (rate, mean) = if sense_count == 0 {
            (0.0, 0.0)
        } else {
            (1.0 - vocabulary_size as f64 / sense_count as f64, sense_count as f64 / vocabulary_size as f64)
        };
        MappingStats { sense_count, vocabulary_size, compression_rate: rate, mean_senses_per_tag: mean }
    }

    /// Writes the mapping: `# key=value` header lines, then
    /// `sense_key<TAB>tag` sorted by sense key.
    pub fn write_to(&self, mut out: impl Write) -> std::io::Result<()> {
        writeln!(out, "# method={}", self.method)?;
        writeln!(out, "# wordnet_version={}", self.metadata.wordnet_version)?;
        if let Some(s) = self.metadata.steps {
            writeln!(out, "# steps={s}")?;
        }
        if let Some(s) = self.metadata.seed {
            writeln!(out, "# seed={s}")?;
        }
        if let Some(r) = self.metadata.repairs {
            writeln!(out, "# repairs={r}")?;
        }
        for (k, t) in &self.entries {
            writeln!(out, "{k}\t{t}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("mapping text is UTF-8")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        self.write_to(&mut w)?;
        w.flush()
    }

    /// Reads a mapping and checks it against `graph`: every key known,
    /// none repeated, all present, tags in the method's namespace.
    pub fn read_from(input: impl BufRead, graph: &WordNetGraph) -> Result<SenseMapping, MappingError> {
        let mut method = None;
        let mut metadata = MappingMetadata::default();
        let mut entries = BTreeMap::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let line_no = i + 1;
            let malformed = |m: String| MappingError::Malformed { line: line_no, message: m };
            if let Some(h) = line.strip_prefix('#') {
                let (k, v) =
                    h.trim().split_once('=').ok_or_else(|| malformed(format!("header `{line}` is not key=value")))?;
                let number = |v: &str| v.parse::<u64>().map_err(|_| malformed(format!("`{k}` must be an integer")));
                match k {
                    "method" => method = Some(v.parse::<Method>().map_err(malformed)?),
                    "wordnet_version" => metadata.wordnet_version = v.to_string(),
                    "steps" => metadata.steps = Some(number(v)?),
                    "seed" => metadata.seed = Some(number(v)?),
                    "repairs" => metadata.repairs = Some(number(v)?),
                    _ => return Err(malformed(format!("unknown header `{k}`"))),
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let method = method.ok_or_else(|| malformed("entry before `# method=` header".into()))?;
            let (k, t) = line.split_once('\t').ok_or_else(|| malformed("expected `sense_key<TAB>tag`".into()))?;
            let key: SenseKey = k.parse().map_err(|e| malformed(format!("{e}")))?;
            let tag: CompressedTag = t.parse().map_err(malformed)?;
            if !method.accepts(&tag) {
                return Err(MappingError::TagMismatch {
                    line: line_no,
                    tag: t.to_string(),
                    method: method.to_string(),
                });
            }
            if let CompressedTag::Synset(id) | CompressedTag::Cluster(id) = &tag {
                if graph.synset(*id).is_none() {
                    return Err(malformed(format!("tag {t} names an unknown synset")));
                }
            }
            if graph.sense_index(&key).is_none() {
                return Err(MappingError::UnknownSenseKey { line: line_no, key: k.to_string() });
            }
            if entries.insert(key, tag).is_some() {
                return Err(MappingError::DuplicateSenseKey { line: line_no, key: k.to_string() });
            }
        }
        let method =
            method.ok_or_else(|| MappingError::Malformed { line: 0, message: "missing `# method=` header".into() })?;
        if entries.len() != graph.sense_count() {
            let first = graph
                .senses()
                .iter()
                .map(|s| &s.key)
                .filter(|k| !entries.contains_key(*k))
                .min()
                .map(ToString::to_string)
                .unwrap_or_default();
            return Err(MappingError::NotTotal { missing: graph.sense_count() - entries.len(), first });
        }
        Ok(SenseMapping { method, entries, metadata })
    }

    pub fn load(path: impl AsRef<Path>, graph: &WordNetGraph) -> Result<SenseMapping, MappingError> {
        let file = std::fs::File::open(path)?;
        SenseMapping::read_from(std::io::BufReader::new(file), graph)
    }
}

/// The senses of `(lemma, pos)` tagged `tag`; at most one for a
/// discriminating mapping, none when the tag is not a sense of this word.
pub fn decompress(
    mapping: &SenseMapping,
    graph: &WordNetGraph,
    lemma: &str,
    pos: PartOfSpeech,
    tag: &CompressedTag,
) -> Vec<SenseKey> {
    graph
        .senses_of(lemma, pos)
        .into_iter()
        .filter(|s| mapping.get(&s.key) == Some(tag))
        .map(|s| s.key.clone())
        .collect()
}

/// Two senses of one word that share a tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub lemma: String,
    pub pos: PartOfSpeech,
    pub sense_a: SenseKey,
    pub sense_b: SenseKey,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// Every graph sense has an entry and every entry is a graph sense.
    pub total: bool,
    pub missing: usize,
    pub unknown: usize,
    pub collisions: Vec<Collision>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.total && self.collisions.is_empty()
    }
}

/// Checks totality and per-word injectivity.
pub fn verify_mapping(mapping: &SenseMapping, graph: &WordNetGraph) -> VerifyReport {
    let missing = graph.senses().iter().filter(|s| mapping.get(&s.key).is_none()).count();
    let unknown = mapping.entries().keys().filter(|k| graph.sense_index(k).is_none()).count();
    let mut collisions = Vec::new();
    for ((lemma, pos), senses) in graph.words() {
        if senses.len() < 2 {
            continue;
        }
        let mut seen: HashMap<&CompressedTag, Vec<&SenseKey>> = HashMap::new();
        for &s in senses {
            let key = &graph.senses()[s as usize].key;
            if let Some(tag) = mapping.get(key) {
                seen.entry(tag).or_default().push(key);
            }
        }
        let mut found: Vec<(&SenseKey, &SenseKey)> = Vec::new();
        for keys in seen.values() {
            for (i, a) in keys.iter().enumerate() {
                for b in &keys[i + 1..] {
                    found.push(if a <= b { (a, b) } else { (b, a) });
                }
            }
        }
        found.sort();
        collisions.extend(found.into_iter().map(|(a, b)| Collision {
            lemma: lemma.clone(),
            pos: *pos,
            sense_a: a.clone(),
            sense_b: b.clone(),
        }));
    }
    VerifyReport { total: missing == 0 && unknown == 0, missing, unknown, collisions }
}

/// No compression: each sense is its own tag.
pub fn identity_mapping(graph: &WordNetGraph) -> SenseMapping {
    let entries = graph.senses().iter().map(|s| (s.key.clone(), CompressedTag::Sense(s.key.clone()))).collect();
    SenseMapping::new(
        Method::Identity,
        entries,
        MappingMetadata { wordnet_version: graph.version().to_string(), ..Default::default() },
    )
}

/// Each sense is tagged with its own synset.
pub fn compress_synonymy(graph: &WordNetGraph) -> SenseMapping {
    let own: Vec<usize> = (0..graph.synset_count()).collect();
    SenseMapping::from_synset_tags(
        graph,
        Method::Synonymy,
        &own,
        MappingMetadata { wordnet_version: graph.version().to_string(), ..Default::default() },
    )
}
