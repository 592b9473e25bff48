use std::path::PathBuf;

use thiserror::Error;

use crate::ids::SynsetId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdError {
    #[error("malformed synset id `{0}`")]
    Synset(String),
    #[error("malformed sense key `{0}`")]
    SenseKey(String),
}

/// Failures while reading WNdb files.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("missing WordNet file {0}")]
    MissingFile(PathBuf),
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}:{line}: bad {field}: {message}")]
    Malformed { file: String, line: usize, field: &'static str, message: String },
    #[error("{file}:{line}: pointer to missing synset {target}")]
    DanglingPointer { file: String, line: usize, target: String },
    #[error("{file}:{line}: index entry `{lemma}` lists {synset}, which has no such word")]
    IndexMismatch { file: String, line: usize, lemma: String, synset: SynsetId },
    #[error("word `{lemma}` in {synset} is not listed in any index file")]
    UnindexedSense { lemma: String, synset: SynsetId },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown synset {0}")]
    UnknownSynset(SynsetId),
    #[error("synsets {0} and {1} have different parts of speech")]
    PosMismatch(SynsetId, SynsetId),
    #[error("expected two distinct synsets, got {0} twice")]
    SameSynset(SynsetId),
}

#[derive(Debug, Error)]
pub enum MappingError {
    #[error("reading mapping: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: sense key {key} is not in the WordNet graph")]
    UnknownSenseKey { line: usize, key: String },
    #[error("line {line}: sense key {key} listed more than once")]
    DuplicateSenseKey { line: usize, key: String },
    #[error("mapping is not total: {missing} sense keys missing (first: {first})")]
    NotTotal { missing: usize, first: String },
    #[error("line {line}: tag {tag} does not match method {method}")]
    TagMismatch { line: usize, tag: String, method: String },
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("reading corpus {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("XML error at byte {position}: {message}")]
    Xml { position: u64, message: String },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("sense key `{key}` does not resolve in WordNet")]
    UnknownSenseKey { key: String },
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("reading key file: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("duplicate instance id `{0}`")]
    DuplicateInstance(String),
    #[error("prediction for unknown instance id `{0}`")]
    UnknownInstance(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error("merge log line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("merge step {step}: no current cluster is tagged {tag}")]
    UnknownCluster { step: u64, tag: SynsetId },
    #[error("merge step {step}: {a} and {b} share a word")]
    Conflict { step: u64, a: SynsetId, b: SynsetId },
    #[error("merge step {step}: no {relation} edge joins {a} and {b}")]
    Unrelated { step: u64, a: SynsetId, b: SynsetId, relation: crate::relation::RelationType },
    #[error("merge step {step}: expected step number {expected}")]
    OutOfOrder { step: u64, expected: u64 },
}
