use std::collections::BTreeSet;

use proptest::prelude::*;
use sensevocab::{
    cluster_stats, compress_all_relations, merge_allowed, verify_mapping, ClusterConfig, ClusterSet, MappingMetadata,
    MergeRecord, RelationType, SynsetId, WordNetGraph,
};
use sensevocab_testkit::fixture;
use sensevocab_testkit::reference::{lemma_set, naive_clusters};

fn config() -> impl Strategy<Value = ClusterConfig> {
    (any::<bool>(), any::<bool>(), proptest::option::of(0u64..40)).prop_map(
        |(lexical_links, strict_cross_pos, max_steps)| ClusterConfig {
            lexical_links,
            strict_cross_pos,
            max_steps,
            ..Default::default()
        },
    )
}

fn members(set: &ClusterSet, g: &WordNetGraph) -> Vec<BTreeSet<usize>> {
    set.clusters.iter().map(|c| c.members.iter().map(|m| g.index_of(*m).unwrap()).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn matches_naive_loop(f in fixture(30), cfg in config()) {
        let (_, g) = f.build();
        let (_, set) = compress_all_relations(&g, cfg);
        let (want, log) = naive_clusters(&g, cfg);
        prop_assert_eq!(&set.merge_log, &log);
        prop_assert_eq!(members(&set, &g), want);
    }

    #[test]
    fn accounting_replay_and_lemma_sets(f in fixture(50), cfg in config(), seed in proptest::option::of(any::<u64>())) {
        let (_, g) = f.build();
        let cfg = ClusterConfig { seed, ..cfg };
        let (m, set) = compress_all_relations(&g, cfg);
        prop_assert_eq!(set.len() as u64, g.synset_count() as u64 - set.step_count);
        prop_assert_eq!(set.step_count as usize, set.merge_log.len());
        prop_assert_eq!(&ClusterSet::replay(&g, &set.merge_log, cfg.strict_cross_pos).unwrap(), &set);
        let mut seen = BTreeSet::new();
        for c in &set.clusters {
            prop_assert_eq!(c.id, *c.members.iter().min().unwrap());
            for &mb in &c.members {
                prop_assert!(seen.insert(mb));
            }
            let idx: BTreeSet<usize> = c.members.iter().map(|x| g.index_of(*x).unwrap()).collect();
            let want: BTreeSet<(String, _)> = g
                .senses()
                .iter()
                .enumerate()
                .filter(|(i, _)| idx.contains(&g.synset_index_of_sense(*i)))
                .map(|(_, s)| (s.lemma.clone(), s.pos.word_class()))
                .collect();
            prop_assert_eq!(&c.lemma_set, &want);
        }
        prop_assert_eq!(seen.len(), g.synset_count());
        prop_assert!(verify_mapping(&m, &g).ok());
        let stats = cluster_stats(&set);
        prop_assert!((stats.mean_senses_per_cluster - g.sense_count() as f64 / set.len() as f64).abs() < 1e-9);
    }

    #[test]
    fn every_prefix_of_the_log_discriminates(f in fixture(30)) {
        let (_, g) = f.build();
        let (_, set) = compress_all_relations(&g, ClusterConfig::default());
        for k in 0..=set.merge_log.len() {
            let partial = ClusterSet::replay(&g, &set.merge_log[..k], false).unwrap();
            let m = partial.to_mapping(&g, MappingMetadata::default());
            prop_assert!(verify_mapping(&m, &g).collisions.is_empty());
        }
    }

    #[test]
    fn merge_allowed_matches_recomputed_lemma_sets(f in fixture(15), strict in any::<bool>()) {
        let (_, g) = f.build();
        let singles = ClusterSet::singletons(&g);
        for a in &singles.clusters {
            for b in &singles.clusters {
                if a.id == b.id {
                    continue;
                }
                let ia = BTreeSet::from([g.index_of(a.id).unwrap()]);
                let ib = BTreeSet::from([g.index_of(b.id).unwrap()]);
                let want = lemma_set(&g, &ia, strict).is_disjoint(&lemma_set(&g, &ib, strict));
                prop_assert_eq!(merge_allowed(a, b, strict), want);
            }
        }
    }

    #[test]
    fn runs_are_byte_identical(f in fixture(50), seed in proptest::option::of(any::<u64>())) {
        let (_, g) = f.build();
        let cfg = ClusterConfig { seed, ..Default::default() };
        let (m1, s1) = compress_all_relations(&g, cfg);
        let (m2, s2) = compress_all_relations(&g, cfg);
        prop_assert_eq!(m1.to_text(), m2.to_text());
        prop_assert_eq!(s1.merge_log_text(), s2.merge_log_text());
    }
}

#[test]
fn unrelated_replay_is_rejected() {
    let mut toy = sensevocab::toy::ToyWordNet::new();
    toy.synset(sensevocab::PartOfSpeech::Noun, &["alpha"]);
    toy.synset(sensevocab::PartOfSpeech::Noun, &["beta"]);
    let g = sensevocab::parse_wndb(&toy.to_files()).unwrap();
    let ids: Vec<SynsetId> = g.synsets().iter().map(|s| s.id).collect();
    let rec = MergeRecord { step: 1, cluster_a: ids[0], cluster_b: ids[1], relation: RelationType::Hypernym };
    assert!(ClusterSet::replay(&g, &[rec], false).is_err());
}
