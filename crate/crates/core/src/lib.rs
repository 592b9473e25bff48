//! Sense vocabulary compression over WordNet.
//!
//! Three ways of collapsing fine-grained sense keys into fewer tags while
//! keeping every sense of every word distinguishable:
//!
//! * [`mapping::compress_synonymy`]: each sense becomes its synset.
//! * [`hypernymy::compress_hypernymy`]: each sense climbs the hypernym
//!   hierarchy to the nearest synset needed to tell some word's senses apart.
//! * [`clusters::compress_all_relations`]: synsets are greedily merged along
//!   any semantic relation, smallest clusters first, while no cluster holds
//!   two senses of one word.
//!
//! The [`corpus`] and [`eval`] modules measure what a compressed vocabulary
//! buys on sense-annotated data: inventory coverage, system coverage, and
//! first-sense / most-frequent-tag baselines scored with F1.

pub mod clusters;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod hypernymy;
pub mod ids;
pub mod mapping;
pub mod pos;
pub mod relation;
pub mod toy;
pub mod wndb;
pub mod wordnet;

pub use clusters::{
    cluster_stats, compress_all_relations, merge_allowed, parse_merge_log, Cluster, ClusterConfig, ClusterSet,
    ClusterStats, MergeRecord,
};
pub use corpus::{
    inventory_coverage, observed_tags, parse_corpus, read_tsv, read_ufsac, Corpus, CorpusFormat, CorpusReport,
    KeyPolicy, Token,
};
pub use error::{ClusterError, CorpusError, EvalError, GraphError, IdError, MappingError, ParseError};
pub use eval::{
    first_sense_predict, mfs_predict, score_f1, score_keys, system_coverage, CoverageReport, PredictionSet, Score,
    ScoreReport,
};
pub use hypernymy::{
    compress_hypernymy, first_common_ancestor, mark_necessary, CommonAncestor, HypernymyConfig, NecessarySet,
};
pub use ids::{SenseKey, SynsetId};
pub use mapping::{
    compress_synonymy, decompress, identity_mapping, verify_mapping, CompressedTag, MappingMetadata, Method,
    SenseMapping, VerifyReport,
};
pub use pos::PartOfSpeech;
pub use relation::RelationType;
pub use wndb::{hypernym_cycles, parse_wndb, parse_wordnet, WndbFiles, WndbSource};
pub use wordnet::{RelationSet, Synset, WordNetGraph, WordSense};
