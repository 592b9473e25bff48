use proptest::prelude::*;
use sensevocab::hypernymy::{hypernymy_tags, Hierarchy};
use sensevocab::{
    compress_hypernymy, first_common_ancestor, mark_necessary, CompressedTag, HypernymyConfig, PartOfSpeech,
};
use sensevocab_testkit::reference::{closure, hypernymy_tags as reference_tags, necessary};
use sensevocab_testkit::{fixture, samples, POOL};

fn config() -> impl Strategy<Value = HypernymyConfig> {
    any::<bool>().prop_map(|include_instances| HypernymyConfig { include_instances })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn marks_and_tags_match_exhaustive_search(f in fixture(50), cfg in config()) {
        let (_, g) = f.build();
        let c = closure(&g, cfg.include_instances);
        let want = necessary(&g, &c);
        let nec = mark_necessary(&g, cfg);
        let got: Vec<bool> = (0..g.synset_count()).map(|i| nec.contains_index(i)).collect();
        prop_assert_eq!(&got, &want);
        let (tags, _) = hypernymy_tags(&g, &nec, cfg);
        prop_assert_eq!(tags, reference_tags(&g, &c, &want));
    }

    #[test]
    fn first_common_ancestor_matches_exhaustive_search(f in fixture(30), cfg in config(), pick in any::<(usize, usize)>()) {
        let (_, g) = f.build();
        let n = g.synset_count();
        let (a, b) = (pick.0 % n, pick.1 % n);
        let (ia, ib) = (g.synsets()[a].id, g.synsets()[b].id);
        let got = first_common_ancestor(&g, ia, ib, cfg);
        if a == b || ia.pos != ib.pos {
            prop_assert!(got.is_err());
            return Ok(());
        }
        let c = closure(&g, cfg.include_instances);
        let best = c.best(a, b);
        let got = got.unwrap();
        match best.first() {
            None => prop_assert!(got.is_none()),
            Some(&x) => {
                let got = got.unwrap();
                prop_assert_eq!(got.ancestor, g.synsets()[x].id);
                prop_assert_eq!(got.child_a, g.synsets()[c.children(x, a)[0]].id);
                prop_assert_eq!(got.child_b, g.synsets()[c.children(x, b)[0]].id);
                prop_assert_eq!((got.distance_a, got.distance_b), (c.d[a][x], c.d[b][x]));
            }
        }
    }

    #[test]
    fn every_tag_is_self_or_ancestor(f in fixture(50), cfg in config()) {
        let (_, g) = f.build();
        let h = Hierarchy::new(&g, cfg);
        let m = compress_hypernymy(&g, cfg);
        for (i, s) in g.senses().iter().enumerate() {
            let CompressedTag::Synset(tag) = m.get(&s.key).unwrap() else { panic!("hypernymy emits synset tags") };
            let own = g.synset_index_of_sense(i);
            prop_assert!(h.ancestry(own).distance(g.index_of(*tag).unwrap() as u32).is_some());
        }
    }

    #[test]
    fn adding_a_word_never_unmarks(f in fixture(40), lemma in 0..POOL.len(), parent in any::<prop::sample::Index>()) {
        let nouns: Vec<usize> = (0..f.synsets.len()).filter(|&i| f.synsets[i].0 == PartOfSpeech::Noun).collect();
        let parent = (!nouns.is_empty()).then(|| nouns[parent.index(nouns.len())]);
        let bigger = f.with_extra(PartOfSpeech::Noun, lemma, parent);
        let (t0, g0) = f.build();
        let (t1, g1) = bigger.build();
        let cfg = HypernymyConfig::default();
        let (n0, n1) = (mark_necessary(&g0, cfg), mark_necessary(&g1, cfg));
        let (ids0, ids1) = (t0.synset_ids(), t1.synset_ids());
        for h in 0..t0.len() {
            if n0.contains(ids0[h]) {
                prop_assert!(n1.contains(ids1[h]));
            }
        }
    }

    #[test]
    fn runs_are_byte_identical(f in fixture(50)) {
        let (_, g) = f.build();
        let cfg = HypernymyConfig::default();
        prop_assert_eq!(compress_hypernymy(&g, cfg).to_text(), compress_hypernymy(&g, cfg).to_text());
    }
}

#[test]
fn fixtures_exercise_the_hierarchy() {
    let (mut marked, mut climbed, mut cycles) = (0, 0, 0);
    for f in samples(50, 200) {
        let (_, g) = f.build();
        let nec = mark_necessary(&g, HypernymyConfig::default());
        let m = compress_hypernymy(&g, HypernymyConfig::default());
        marked += usize::from(!nec.is_empty());
        climbed += usize::from(m.vocabulary_size() < g.synset_count());
        cycles += usize::from(!sensevocab::hypernym_cycles(&g).is_empty());
    }
    assert!(marked > 150, "{marked}");
    assert!(climbed > 100, "{climbed}");
    assert!(cycles > 0, "{cycles}");
}
