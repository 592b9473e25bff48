//! System coverage, baselines, and F1 scoring.
//!
//! Key files follow the usual scorer layout, one instance per line:
//! `instance_id sense_key [sense_key ...]`. A prediction is correct when it
//! shares at least one key with the gold annotation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{BufRead, Write};
use std::path::Path;

use crate::corpus::{observed_tags, Corpus, Token};
use crate::error::EvalError;
use crate::ids::SenseKey;
use crate::mapping::{decompress, CompressedTag, SenseMapping};
use crate::pos::PartOfSpeech;
use crate::wordnet::WordNetGraph;

/// Sense keys per instance id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PredictionSet {
    entries: BTreeMap<String, Vec<SenseKey>>,
    backoff: BTreeSet<String>,
}

impl PredictionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: impl Into<String>, keys: Vec<SenseKey>) -> Result<(), EvalError> {
        let id = id.into();
        if self.entries.contains_key(&id) {
            return Err(EvalError::DuplicateInstance(id));
        }
        self.entries.insert(id, keys);
        Ok(())
    }

    fn insert_backoff(&mut self, id: &str, keys: Vec<SenseKey>) -> Result<(), EvalError> {
        self.insert(id, keys)?;
        self.backoff.insert(id.to_string());
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&[SenseKey]> {
        self.entries.get(id).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[SenseKey])> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    /// Instances answered by a fallback rule rather than the main one.
    pub fn backoff_count(&self) -> usize {
        self.backoff.len()
    }

    /// Gold keys of every annotated token; tokens need instance ids.
    pub fn from_corpus(corpus: &Corpus) -> Result<PredictionSet, EvalError> {
        let mut set = PredictionSet::new();
        for t in corpus.annotated() {
            let id = t.instance_id.as_ref().ok_or_else(|| EvalError::Malformed {
                line: 0,
                message: format!("annotated token `{}` has no instance id", t.surface),
            })?;
            set.insert(id.clone(), t.gold_keys.clone())?;
        }
        Ok(set)
    }

    pub fn read_from(input: impl BufRead) -> Result<PredictionSet, EvalError> {
        let mut set = PredictionSet::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let mut fields = line.split_whitespace();
            let Some(id) = fields.next() else { continue };
            let keys = fields
                .map(|k| {
                    k.parse::<SenseKey>().map_err(|e| EvalError::Malformed { line: i + 1, message: e.to_string() })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if keys.is_empty() {
                return Err(EvalError::Malformed { line: i + 1, message: format!("instance `{id}` has no keys") });
            }
            set.insert(id, keys)?;
        }
        Ok(set)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<PredictionSet, EvalError> {
        let file = std::fs::File::open(path)?;
        Self::read_from(std::io::BufReader::new(file))
    }

    pub fn write_to(&self, mut out: impl Write) -> std::io::Result<()> {
        for (id, keys) in &self.entries {
            write!(out, "{id}")?;
            for k in keys {
                write!(out, " {k}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("keys are UTF-8")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Miss {
    pub instance_id: String,
    pub lemma: String,
    pub pos: PartOfSpeech,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub total_instances: usize,
    pub covered: usize,
    pub misses: Vec<Miss>,
    /// Fraction in `[0, 1]`; 0 with no instances.
    pub coverage: f64,
    pub monosemic_backoff: bool,
}

/// The word of an annotated token, falling back to its first gold key.
fn word_of(t: &Token) -> (&str, PartOfSpeech) {
    let key = &t.gold_keys[0];
    (t.lemma.as_deref().unwrap_or_else(|| key.lemma()), t.pos.unwrap_or_else(|| key.pos().word_class()))
}

fn instance_id(t: &Token) -> String {
    t.instance_id.clone().unwrap_or_default()
}

/// Share of annotated `eval` instances for which some candidate sense maps
/// to a tag seen in `train`. With `monosemic_backoff`, one-sense words always count.
pub fn system_coverage(
    train: &Corpus,
    eval: &Corpus,
    mapping: &SenseMapping,
    graph: &WordNetGraph,
    monosemic_backoff: bool,
) -> CoverageReport {
    let observed = observed_tags(train, mapping);
    let mut covered = 0;
    let mut misses = Vec::new();
    for t in eval.annotated() {
        let (lemma, pos) = word_of(t);
        let candidates = graph.sense_indices_of(lemma, pos);
        let ok = (monosemic_backoff && candidates.len() == 1)
            || candidates
                .iter()
                .any(|&s| mapping.get(&graph.senses()[s as usize].key).is_some_and(|tag| observed.contains(tag)));
        if ok {
            covered += 1;
        } else {
            misses.push(Miss { instance_id: instance_id(t), lemma: lemma.to_string(), pos });
        }
    }
    let total_instances = covered + misses.len();
    CoverageReport {
        total_instances,
        covered,
        misses,
        coverage: if total_instances == 0 { 0.0 } else { covered as f64 / total_instances as f64 },
        monosemic_backoff,
    }
}

fn first_sense(graph: &WordNetGraph, lemma: &str, pos: PartOfSpeech) -> Option<SenseKey> {
    graph.senses_of(lemma, pos).into_iter().min_by_key(|s| s.sense_number).map(|s| s.key.clone())
}

/// WordNet's first sense for every annotated instance of a known word.
pub fn first_sense_predict(eval: &Corpus, graph: &WordNetGraph) -> Result<PredictionSet, EvalError> {
    let mut out = PredictionSet::new();
    for t in eval.annotated() {
        let (lemma, pos) = word_of(t);
        if let Some(k) = first_sense(graph, lemma, pos) {
            out.insert(instance_id(t), vec![k])?;
        }
    }
    Ok(out)
}

/// Most frequent training tag among each instance's candidates, decompressed
/// back to a sense key. Ties go to the lower sense number. Instances with no
/// observed candidate get the first sense when `backoff_first_sense` is set.
pub fn mfs_predict(
    train: &Corpus,
    eval: &Corpus,
    mapping: &SenseMapping,
    graph: &WordNetGraph,
    backoff_first_sense: bool,
) -> Result<PredictionSet, EvalError> {
    let mut freq: HashMap<&CompressedTag, usize> = HashMap::new();
    for t in train.annotated() {
        let tags: BTreeSet<&CompressedTag> = t.gold_keys.iter().filter_map(|k| mapping.get(k)).collect();
        for tag in tags {
            *freq.entry(tag).or_insert(0) += 1;
        }
    }
    let mut out = PredictionSet::new();
    for t in eval.annotated() {
        let (lemma, pos) = word_of(t);
        let best = graph
            .senses_of(lemma, pos)
            .into_iter()
            .filter_map(|s| {
                let tag = mapping.get(&s.key)?;
                let n = *freq.get(tag)?;
                Some((n, s.sense_number, tag))
            })
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let id = instance_id(t);
        match best {
            Some((_, _, tag)) => out.insert(id, decompress(mapping, graph, lemma, pos, tag))?,
            None if backoff_first_sense => {
                if let Some(k) = first_sense(graph, lemma, pos) {
                    out.insert_backoff(&id, vec![k])?;
                }
            }
            None => {}
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Score {
    pub total: usize,
    pub attempted: usize,
    pub correct: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Score {
    fn finish(total: usize, attempted: usize, correct: usize) -> Score {
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let (precision, recall) = (ratio(correct, attempted), ratio(correct, total));
        let f1 = if precision + recall == 0.0 { 0.0 } else { 2.0 * precision * recall / (precision + recall) };
        Score { total, attempted, correct, precision, recall, f1 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    pub overall: Score,
    pub per_pos: BTreeMap<PartOfSpeech, Score>,
    pub backoff_used: usize,
    /// Set when nothing was attempted; precision is then reported as 0.
    pub no_attempts: bool,
}

/// Scores `pred` against gold keys. Predictions for ids absent from the gold
/// set are an error; the part of speech comes from each instance's first gold key.
pub fn score_keys(gold: &PredictionSet, pred: &PredictionSet) -> Result<ScoreReport, EvalError> {
    if let Some((id, _)) = pred.iter().find(|(id, _)| gold.get(id).is_none()) {
        return Err(EvalError::UnknownInstance(id.to_string()));
    }
    let mut counts: BTreeMap<PartOfSpeech, (usize, usize, usize)> = BTreeMap::new();
    for (id, keys) in gold.iter() {
        let c = counts.entry(keys[0].pos().word_class()).or_default();
        c.0 += 1;
        if let Some(p) = pred.get(id) {
            c.1 += 1;
            if p.iter().any(|k| keys.contains(k)) {
                c.2 += 1;
            }
        }
    }
    let (t, a, c) = counts.values().fold((0, 0, 0), |acc, x| (acc.0 + x.0, acc.1 + x.1, acc.2 + x.2));
    Ok(ScoreReport {
        overall: Score::finish(t, a, c),
        per_pos: counts.into_iter().map(|(p, (t, a, c))| (p, Score::finish(t, a, c))).collect(),
        backoff_used: pred.backoff_count(),
        no_attempts: a == 0,
    })
}

/// Scores `pred` against the annotated instances of `gold`.
pub fn score_f1(gold: &Corpus, pred: &PredictionSet) -> Result<ScoreReport, EvalError> {
    score_keys(&PredictionSet::from_corpus(gold)?, pred)
}
