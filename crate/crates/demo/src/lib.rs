//! Browser bindings: compress a small editable lexicon, explore its
//! hypernym hierarchy, and map tags back to senses.
//!
//! Every method returns JSON text so the page can stay plain JavaScript.

use std::collections::HashMap;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use sensevocab::hypernymy::Hierarchy;
use sensevocab::toy::ToyWordNet;
use sensevocab::{
    compress_all_relations, compress_hypernymy, compress_synonymy, decompress, identity_mapping, mark_necessary,
    parse_wndb, verify_mapping, ClusterConfig, CompressedTag, HypernymyConfig, Method, PartOfSpeech, SenseMapping,
    SynsetId, WordNetGraph,
};

pub const SAMPLE: &str = "\
# nouns
n entity = entity | that which exists
n organism = organism being ; @ entity
n animal = animal beast ; @ organism
n mammal = mammal ; @ animal
n rodent = rodent gnawer ; @ mammal
n mouse_animal = mouse ; @ rodent | a small rodent with a long tail
n rat = rat ; @ rodent
n feline = feline felid ; @ mammal
n cat_animal = cat true_cat ; @ feline | a small domesticated feline
n artifact = artifact ; @ entity
n device = device ; @ artifact
n mouse_device = mouse computer_mouse ; @ device | a hand-operated pointing device
n trackball = trackball ; @ device
n person = person individual ; @ organism
n coward = mouse coward ; @ person | a timid person
n guy = cat guy ; @ person | an informal term for a man
n location = location ; @ entity
n city = city metropolis ; @ location
n paris_city = Paris ; @i city | the capital of France
n paris_hero = Paris ; @i person | the prince of Troy
# verbs
v move = move travel
v run_go = run ; @ move | move fast on foot
v flee = run flee take_flight ; @ run_go | run away
v operate = run operate ; @ move | keep a machine going
v manage = run manage ; $ operate | be in charge of
";

#[wasm_bindgen]
pub struct Lexicon {
    graph: WordNetGraph,
    labels: HashMap<SynsetId, String>,
    by_label: HashMap<String, usize>,
}

#[wasm_bindgen]
impl Lexicon {
    #[wasm_bindgen(constructor)]
    pub fn new(text: &str) -> Result<Lexicon, String> {
        let toy = ToyWordNet::parse(text).map_err(|e| e.to_string())?;
        let graph = parse_wndb(&toy.to_files()).map_err(|e| e.to_string())?;
        let mut labels = HashMap::new();
        let mut by_label = HashMap::new();
        for (id, s) in toy.synset_ids().into_iter().zip(toy.synsets()) {
            labels.insert(id, s.label.clone());
            by_label.insert(s.label.clone(), graph.index_of(id).expect("toy synsets parse"));
        }
        Ok(Lexicon { graph, labels, by_label })
    }

    pub fn sample() -> String {
        SAMPLE.to_string()
    }

    /// `[{label, pos, words, gloss}]` in file order.
    pub fn synsets(&self) -> String {
        let rows: Vec<Value> = self
            .graph
            .synsets()
            .iter()
            .map(|s| {
                let words: Vec<&str> = s.senses.iter().map(|&i| self.graph.senses()[i as usize].lemma.as_str()).collect();
                json!({ "label": self.labels[&s.id], "pos": s.id.pos.letter().to_string(), "words": words, "gloss": s.gloss })
            })
            .collect();
        Value::Array(rows).to_string()
    }

    /// Builds one mapping and reports its statistics, every sense's tag, and
    /// what drove it: the marked synsets for hypernymy, the merges for clustering.
    pub fn compress(&self, method: &str, max_steps: Option<u32>) -> Result<String, String> {
        let method: Method = method.parse()?;
        let (mapping, detail) = self.build(method, max_steps)?;
        let stats = mapping.stats();
        let report = verify_mapping(&mapping, &self.graph);
        let senses: Vec<Value> = self
            .graph
            .senses()
            .iter()
            .map(|s| {
                let tag = mapping.get(&s.key).expect("mappings are total");
                json!({
                    "key": s.key.as_str(),
                    "lemma": s.lemma,
                    "pos": s.pos.letter().to_string(),
                    "synset": self.labels[&s.synset],
                    "tag": tag.to_string(),
                    "tag_label": self.tag_label(tag),
                })
            })
            .collect();
        let mut out = json!({
            "method": method.name(),
            "senses": senses,
            "vocabulary": stats.vocabulary_size,
            "sense_count": stats.sense_count,
            "compression_rate": stats.compression_rate,
            "mean_senses_per_tag": stats.mean_senses_per_tag,
            "verified": report.ok(),
            "collisions": report.collisions.len(),
        });
        out.as_object_mut().unwrap().extend(detail);
        Ok(out.to_string())
    }

    /// The first common ancestor of two synsets, by label, with both paths up to it.
    pub fn ancestor(&self, a: &str, b: &str) -> Result<String, String> {
        let (ia, ib) = (self.index(a)?, self.index(b)?);
        let (pa, pb) = (self.graph.synsets()[ia].id.pos, self.graph.synsets()[ib].id.pos);
        if ia == ib {
            return Err("pick two different synsets".to_string());
        }
        if pa.word_class() != pb.word_class() {
            return Err(format!("{a} and {b} have different parts of speech"));
        }
        let h = Hierarchy::new(&self.graph, HypernymyConfig::default());
        let Some(common) = h.first_common_ancestor(ia, ib) else {
            return Ok(json!({ "ancestor": null }).to_string());
        };
        let top = self.graph.index_of(common.ancestor).unwrap();
        let path = |start: usize| -> Vec<&str> {
            let p = h.path(start, top).expect("ancestor is reachable");
            std::iter::once(p.start).chain(p.steps).map(|id| self.labels[&id].as_str()).collect()
        };
        Ok(json!({
            "ancestor": self.labels[&common.ancestor],
            "child_a": self.labels[&common.child_a],
            "child_b": self.labels[&common.child_b],
            "path_a": path(ia),
            "path_b": path(ib),
        })
        .to_string())
    }

    /// Sense keys of `lemma` that the mapping sends to `tag`, with their synset labels.
    pub fn decompress(
        &self,
        method: &str,
        max_steps: Option<u32>,
        lemma: &str,
        pos: &str,
        tag: &str,
    ) -> Result<String, String> {
        let (mapping, _) = self.build(method.parse()?, max_steps)?;
        let pos: PartOfSpeech = pos.parse()?;
        let tag: CompressedTag = tag.parse()?;
        let keys: Vec<Value> = decompress(&mapping, &self.graph, lemma, pos, &tag)
            .into_iter()
            .map(|k| {
                let s = self.graph.sense_by_key(&k).expect("decompressed keys exist");
                json!({ "key": k.as_str(), "synset": self.labels[&s.synset] })
            })
            .collect();
        Ok(Value::Array(keys).to_string())
    }
}

impl Lexicon {
    fn index(&self, label: &str) -> Result<usize, String> {
        self.by_label.get(label).copied().ok_or_else(|| format!("no synset labelled `{label}`"))
    }

    fn tag_label(&self, tag: &CompressedTag) -> String {
        match tag {
            CompressedTag::Sense(k) => k.to_string(),
            CompressedTag::Synset(id) | CompressedTag::Cluster(id) => self.labels[id].clone(),
        }
    }

    fn build(
        &self,
        method: Method,
        max_steps: Option<u32>,
    ) -> Result<(SenseMapping, serde_json::Map<String, Value>), String> {
        let mut detail = serde_json::Map::new();
        let g = &self.graph;
        let mapping = match method {
            Method::Identity => identity_mapping(g),
            Method::Synonymy => compress_synonymy(g),
            Method::Hypernymy => {
                let nec = mark_necessary(g, HypernymyConfig::default());
                let marked: Vec<&str> = nec.iter().map(|id| self.labels[&id].as_str()).collect();
                detail.insert("marked".into(), json!(marked));
                compress_hypernymy(g, HypernymyConfig::default())
            }
            Method::AllRelations => {
                let cfg = ClusterConfig { max_steps: max_steps.map(u64::from), ..Default::default() };
                let (mapping, set) = compress_all_relations(g, cfg);
                let merges: Vec<Value> = set
                    .merge_log
                    .iter()
                    .map(|r| {
                        json!({
                            "step": r.step,
                            "a": self.labels[&r.cluster_a],
                            "b": self.labels[&r.cluster_b],
                            "relation": r.relation.name(),
                        })
                    })
                    .collect();
                detail.insert("merges".into(), Value::Array(merges));
                mapping
            }
        };
        Ok((mapping, detail))
    }
}
