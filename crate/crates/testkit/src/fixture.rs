use proptest::prelude::*;
use sensevocab::toy::ToyWordNet;
use sensevocab::{parse_wndb, PartOfSpeech, RelationType, WordNetGraph};

pub const POOL: [&str; 12] =
    ["bank", "bass", "bat", "bow", "club", "crane", "date", "fair", "jam", "lead", "mouse", "seal"];

const OTHER: [RelationType; 10] = [
    RelationType::MemberHolonym,
    RelationType::PartMeronym,
    RelationType::Antonym,
    RelationType::SimilarTo,
    RelationType::DerivationallyRelated,
    RelationType::AlsoSee,
    RelationType::DomainTopic,
    RelationType::Attribute,
    RelationType::Entailment,
    RelationType::VerbGroup,
];

/// A random lexicon: synsets with words from a small pool (so words are often
/// polysemous), hypernym links that point to earlier synsets of the same part
/// of speech, and assorted other pointers.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub synsets: Vec<(PartOfSpeech, Vec<usize>)>,
    /// (child, parent, instance)
    pub hypernyms: Vec<(usize, usize, bool)>,
    /// (from, relation, to, word-level)
    pub others: Vec<(usize, RelationType, usize, bool)>,
    /// One hypernym edge from an earlier synset to a later one, which may close a cycle.
    pub back_edge: Option<(usize, usize)>,
}

fn pos_strategy() -> impl Strategy<Value = PartOfSpeech> {
    prop_oneof![
        4 => Just(PartOfSpeech::Noun),
        3 => Just(PartOfSpeech::Verb),
        1 => Just(PartOfSpeech::Adjective),
        1 => Just(PartOfSpeech::Adverb),
    ]
}

pub fn fixture(max_synsets: usize) -> impl Strategy<Value = Fixture> {
    (1..=max_synsets)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec((pos_strategy(), proptest::collection::vec(0..POOL.len(), 1..=3)), n),
                proptest::collection::vec((0..n, 0..n, proptest::bool::weighted(0.15)), 0..=2 * n),
                proptest::collection::vec((0..n, 0..OTHER.len(), 0..n, any::<bool>()), 0..=n),
                proptest::option::weighted(0.1, (0..n, 0..n)),
            )
        })
        .prop_map(|(synsets, hyp, others, back_edge)| {
            let hypernyms =
                hyp.into_iter().filter(|&(a, b, _)| a != b).map(|(a, b, inst)| (a.max(b), a.min(b), inst)).collect();
            let others =
                others.into_iter().filter(|&(a, _, b, _)| a != b).map(|(a, r, b, lex)| (a, OTHER[r], b, lex)).collect();
            Fixture { synsets, hypernyms, others, back_edge }
        })
}

impl Fixture {
    pub fn toy(&self) -> ToyWordNet {
        let mut toy = ToyWordNet::new();
        for (pos, words) in &self.synsets {
            let mut w: Vec<&str> = words.iter().map(|&i| POOL[i]).collect();
            w.dedup();
            w.sort_unstable();
            w.dedup();
            toy.synset(*pos, &w);
        }
        let same_pos = |a: usize, b: usize| self.synsets[a].0 == self.synsets[b].0;
        for &(c, p, inst) in &self.hypernyms {
            if !same_pos(c, p) {
                continue;
            }
            let r = if inst && self.synsets[c].0 == PartOfSpeech::Noun {
                RelationType::InstanceHypernym
            } else {
                RelationType::Hypernym
            };
            toy.link(c, r, p);
        }
        if let Some((a, b)) = self.back_edge {
            if a != b && same_pos(a, b) {
                toy.link(a.min(b), RelationType::Hypernym, a.max(b));
            }
        }
        for &(a, r, b, lex) in &self.others {
            if lex {
                toy.link_words(a, 1, r, b, 1);
            } else {
                toy.link(a, r, b);
            }
        }
        toy
    }

    pub fn build(&self) -> (ToyWordNet, WordNetGraph) {
        let toy = self.toy();
        let g = parse_wndb(&toy.to_files()).expect("fixture parses");
        (toy, g)
    }

    /// The fixture plus one more synset carrying `lemma`.
    pub fn with_extra(&self, pos: PartOfSpeech, lemma: usize, parent: Option<usize>) -> Fixture {
        let mut f = self.clone();
        f.synsets.push((pos, vec![lemma]));
        if let Some(p) = parent {
            f.hypernyms.push((f.synsets.len() - 1, p, false));
        }
        f
    }
}

/// `count` fixtures drawn deterministically, for harnesses outside `proptest!`.
pub fn samples(max_synsets: usize, count: usize) -> Vec<Fixture> {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;

    let mut runner = TestRunner::deterministic();
    let strategy = fixture(max_synsets);
    (0..count).map(|_| strategy.new_tree(&mut runner).expect("strategy never rejects").current()).collect()
}
