//! Sense-annotated corpora and how much of a tag vocabulary they cover.
//!
//! Two input formats: a subset of UFSAC XML (`corpus/document/paragraph/
//! sentence/word` with `surface_form`, `lemma`, `pos`, `wn30_key` and `id`
//! attributes) and a TSV form with one token per line:
//!
//! ```text
//! surface<TAB>lemma<TAB>pos<TAB>key;key[<TAB>instance_id]
//! ```
//!
//! A blank line ends a sentence. Gold keys are resolved against the graph as
//! they are read; a token with keys takes its lemma and part of speech from
//! the first key.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use crate::error::CorpusError;
use crate::ids::SenseKey;
use crate::mapping::{CompressedTag, SenseMapping};
use crate::pos::PartOfSpeech;
use crate::wordnet::WordNetGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    /// Lowercase, with spaces as underscores.
    pub lemma: Option<String>,
    /// A word class: satellites read as adjectives.
    pub pos: Option<PartOfSpeech>,
    pub gold_keys: Vec<SenseKey>,
    pub instance_id: Option<String>,
}

impl Token {
    pub fn is_annotated(&self) -> bool {
        !self.gold_keys.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub name: String,
    pub sentences: Vec<Vec<Token>>,
}

impl Corpus {
    pub fn new(name: impl Into<String>) -> Self {
        Corpus { name: name.into(), sentences: Vec::new() }
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flatten()
    }

    pub fn annotated(&self) -> impl Iterator<Item = &Token> {
        self.tokens().filter(|t| t.is_annotated())
    }

    pub fn token_count(&self) -> usize {
        self.tokens().count()
    }

    pub fn annotated_count(&self) -> usize {
        self.annotated().count()
    }

    /// Distinct gold sense keys.
    pub fn sense_keys(&self) -> BTreeSet<&SenseKey> {
        self.annotated().flat_map(|t| t.gold_keys.iter()).collect()
    }

    /// Sentences of every part, in order, under a new name.
    pub fn concat<'a>(name: impl Into<String>, parts: impl IntoIterator<Item = &'a Corpus>) -> Corpus {
        Corpus { name: name.into(), sentences: parts.into_iter().flat_map(|c| c.sentences.iter().cloned()).collect() }
    }

    /// Writes the TSV form. Instance ids go in a fifth column when present.
    pub fn write_tsv(&self, mut out: impl Write) -> std::io::Result<()> {
        for (i, sentence) in self.sentences.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            for t in sentence {
                let keys: Vec<&str> = t.gold_keys.iter().map(SenseKey::as_str).collect();
                write!(
                    out,
                    "{}\t{}\t{}\t{}",
                    t.surface,
                    t.lemma.as_deref().unwrap_or(""),
                    t.pos.map(|p| p.letter().to_string()).unwrap_or_default(),
                    keys.join(";")
                )?;
                if let Some(id) = &t.instance_id {
                    write!(out, "\t{id}")?;
                }
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    UfsacXml,
    Tsv,
}

impl CorpusFormat {
    /// `.xml` is UFSAC, anything else TSV.
    pub fn from_path(path: &Path) -> CorpusFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("xml") => CorpusFormat::UfsacXml,
            _ => CorpusFormat::Tsv,
        }
    }
}

impl FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "xml" | "ufsac" | "ufsac_xml" | "ufsac-xml" => Ok(CorpusFormat::UfsacXml),
            "tsv" => Ok(CorpusFormat::Tsv),
            _ => Err(format!("unknown corpus format `{s}` (expected xml or tsv)")),
        }
    }
}

/// What to do with a gold key that does not resolve in the graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum KeyPolicy {
    #[default]
    Strict,
    /// Drop the key and count it.
    Lenient,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusReport {
    pub dropped_keys: usize,
    /// Up to ten of the dropped keys.
    pub dropped_examples: Vec<String>,
    /// Tokens whose stated lemma or part of speech disagreed with their first key.
    pub overridden: usize,
}

/// Reads a corpus file in either format.
pub fn parse_corpus(
    path: impl AsRef<Path>,
    format: CorpusFormat,
    graph: &WordNetGraph,
    policy: KeyPolicy,
) -> Result<(Corpus, CorpusReport), CorpusError> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| CorpusError::Io { path: path.to_owned(), source })?;
    let text = String::from_utf8_lossy(&bytes);
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "corpus".into());
    match format {
        CorpusFormat::UfsacXml => read_ufsac(&text, &name, graph, policy),
        CorpusFormat::Tsv => read_tsv(&text, &name, graph, policy),
    }
}

struct Builder<'g> {
    graph: &'g WordNetGraph,
    policy: KeyPolicy,
    corpus: Corpus,
    report: CorpusReport,
    current: Vec<Token>,
}

impl<'g> Builder<'g> {
    fn new(name: &str, graph: &'g WordNetGraph, policy: KeyPolicy) -> Self {
        Builder { graph, policy, corpus: Corpus::new(name), report: CorpusReport::default(), current: Vec::new() }
    }

    fn token(
        &mut self,
        surface: &str,
        lemma: &str,
        pos: &str,
        keys: &str,
        id: Option<String>,
    ) -> Result<(), CorpusError> {
        let mut gold_keys = Vec::new();
        for raw in keys.split(';').map(str::trim).filter(|k| !k.is_empty()) {
            match raw.parse::<SenseKey>().ok().filter(|k| self.graph.sense_by_key(k).is_some()) {
                Some(k) => {
                    if !gold_keys.contains(&k) {
                        gold_keys.push(k);
                    }
                }
                None if self.policy == KeyPolicy::Strict => {
                    return Err(CorpusError::UnknownSenseKey { key: raw.to_string() })
                }
                None => {
                    self.report.dropped_keys += 1;
                    if self.report.dropped_examples.len() < 10 {
                        self.report.dropped_examples.push(raw.to_string());
                    }
                }
            }
        }
        let mut lemma = Some(lemma.trim().to_lowercase().replace(' ', "_")).filter(|l| !l.is_empty());
        let mut pos = PartOfSpeech::from_tag(pos).map(PartOfSpeech::word_class);
        if let Some(first) = gold_keys.first().and_then(|k| self.graph.sense_by_key(k)) {
            let (kl, kp) = (first.lemma.to_lowercase(), first.pos.word_class());
            if (lemma.is_some() && lemma.as_deref() != Some(&kl)) || (pos.is_some() && pos != Some(kp)) {
                self.report.overridden += 1;
            }
            lemma = Some(kl);
            pos = Some(kp);
        }
        let instance_id = id.or_else(|| {
            (!gold_keys.is_empty())
                .then(|| format!("{}.s{:05}.t{:03}", self.corpus.name, self.corpus.sentences.len(), self.current.len()))
        });
        self.current.push(Token { surface: surface.to_string(), lemma, pos, gold_keys, instance_id });
        Ok(())
    }

    fn end_sentence(&mut self) {
        if !self.current.is_empty() {
            self.corpus.sentences.push(std::mem::take(&mut self.current));
        }
    }

    fn finish(mut self) -> (Corpus, CorpusReport) {
        self.end_sentence();
        (self.corpus, self.report)
    }
}

/// Parses the TSV form from memory.
pub fn read_tsv(
    text: &str,
    name: &str,
    graph: &WordNetGraph,
    policy: KeyPolicy,
) -> Result<(Corpus, CorpusReport), CorpusError> {
    let mut b = Builder::new(name, graph, policy);
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            b.end_sentence();
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if !(4..=5).contains(&f.len()) {
            return Err(CorpusError::Malformed {
                line: i + 1,
                message: format!("expected 4 or 5 tab-separated fields, got {}", f.len()),
            });
        }
        let id = f.get(4).map(|s| s.trim()).filter(|s| !s.is_empty()).map(str::to_string);
        b.token(f[0], f[1], f[2], f[3], id)?;
    }
    Ok(b.finish())
}

fn attr(e: &BytesStart<'_>, reader: &Reader<&[u8]>, name: &[u8]) -> Result<Option<String>, CorpusError> {
    for a in e.attributes() {
        let a = a.map_err(|err| CorpusError::Xml { position: reader.buffer_position(), message: err.to_string() })?;
        if a.key.local_name().as_ref() == name {
            let v = a
                .unescape_value()
                .map_err(|err| CorpusError::Xml { position: reader.buffer_position(), message: err.to_string() })?;
            return Ok(Some(v.into_owned()));
        }
    }
    Ok(None)
}

/// Parses UFSAC XML from memory. Elements other than `sentence` and `word`
/// are structural only; unknown attributes are ignored.
pub fn read_ufsac(
    text: &str,
    name: &str,
    graph: &WordNetGraph,
    policy: KeyPolicy,
) -> Result<(Corpus, CorpusReport), CorpusError> {
    let mut reader = Reader::from_reader(text.as_bytes());
    let mut b = Builder::new(name, graph, policy);
    loop {
        let event = reader
            .read_event()
            .map_err(|err| CorpusError::Xml { position: reader.error_position(), message: err.to_string() })?;
        match event {
            Event::Start(e) | Event::Empty(e) if e.local_name().as_ref() == b"word" => {
                let get = |n: &[u8]| attr(&e, &reader, n);
                let surface = get(b"surface_form")?.unwrap_or_default();
                let lemma = get(b"lemma")?.unwrap_or_default();
                let pos = get(b"pos")?.unwrap_or_default();
                let keys = get(b"wn30_key")?.unwrap_or_default();
                let id = get(b"id")?;
                b.token(&surface, &lemma, &pos, &keys, id)?;
            }
            Event::Start(e) if e.local_name().as_ref() == b"sentence" => b.end_sentence(),
            Event::End(e) if e.local_name().as_ref() == b"sentence" => b.end_sentence(),
            Event::Eof => break,
            _ => {}
        }
    }
    Ok(b.finish())
}

/// Every compressed tag reached by some gold key.
pub fn observed_tags<'m>(corpus: &Corpus, mapping: &'m SenseMapping) -> BTreeSet<&'m CompressedTag> {
    corpus.annotated().flat_map(|t| t.gold_keys.iter()).filter_map(|k| mapping.get(k)).collect()
}

/// Fraction of the mapping's vocabulary observed in the corpus.
pub fn inventory_coverage(corpus: &Corpus, mapping: &SenseMapping) -> f64 {
    let vocabulary = mapping.vocabulary_size();
    if vocabulary == 0 {
        return 0.0;
    }
    observed_tags(corpus, mapping).len() as f64 / vocabulary as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::{compress_synonymy, identity_mapping};
    use crate::toy::{ToyWordNet, MOUSE_FRAGMENT};
    use crate::wndb::parse_wndb;

    fn fragment() -> WordNetGraph {
        parse_wndb(&ToyWordNet::parse(MOUSE_FRAGMENT).unwrap().to_files()).unwrap()
    }

    fn key(g: &WordNetGraph, lemma: &str, pos: PartOfSpeech, n: usize) -> String {
        g.senses_of(lemma, pos)[n].key.as_str().to_string()
    }

    fn sample(g: &WordNetGraph) -> String {
        let m1 = key(g, "mouse", PartOfSpeech::Noun, 0);
        let m2 = key(g, "mouse", PartOfSpeech::Noun, 1);
        let h = key(g, "help", PartOfSpeech::Verb, 0);
        format!(
            "The\tthe\tDT\t\nmouse\tmouse\tNN\t{m1}\nran\trun\tVBD\t\n\nA\ta\tDT\t\nmouse\tmouse\tNN\t{m2};{m1}\tx.1\n\n\nhelp\thelp\tVB\t{h}\n"
        )
    }

    #[test]
    fn tsv_fixture_reads_exactly() {
        let g = fragment();
        let (c, r) = read_tsv(&sample(&g), "fx", &g, KeyPolicy::Strict).unwrap();
        assert_eq!(c.sentences.len(), 3);
        assert_eq!(c.sentences.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 2, 1]);
        assert_eq!(c.annotated_count(), 3);
        assert_eq!(c.sense_keys().len(), 3);
        let t = &c.sentences[1][1];
        assert_eq!(t.gold_keys.len(), 2);
        assert_eq!(t.instance_id.as_deref(), Some("x.1"));
        assert_eq!(c.sentences[0][1].instance_id.as_deref(), Some("fx.s00000.t001"));
        assert_eq!(c.sentences[0][2].pos, Some(PartOfSpeech::Verb));
        assert_eq!(c.sentences[0][0].pos, None);
        assert_eq!(r, CorpusReport::default());
    }

    #[test]
    fn empty_input_is_empty_corpus() {
        let g = fragment();
        let (c, _) = read_tsv("", "e", &g, KeyPolicy::Strict).unwrap();
        assert_eq!(c.token_count(), 0);
        let (c, _) = read_ufsac("", "e", &g, KeyPolicy::Strict).unwrap();
        assert_eq!(c.token_count(), 0);
        assert_eq!(inventory_coverage(&c, &compress_synonymy(&g)), 0.0);
    }

    #[test]
    fn tsv_round_trip_preserves_annotations() {
        let g = fragment();
        let (c, _) = read_tsv(&sample(&g), "fx", &g, KeyPolicy::Strict).unwrap();
        let mut out = Vec::new();
        c.write_tsv(&mut out).unwrap();
        let (again, _) = read_tsv(std::str::from_utf8(&out).unwrap(), "fx", &g, KeyPolicy::Strict).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn unknown_keys_follow_policy() {
        let g = fragment();
        let text = "mouse\tmouse\tNN\tmouse%1:99:00::\n";
        assert!(matches!(read_tsv(text, "u", &g, KeyPolicy::Strict), Err(CorpusError::UnknownSenseKey { .. })));
        let (c, r) = read_tsv(text, "u", &g, KeyPolicy::Lenient).unwrap();
        assert_eq!(c.annotated_count(), 0);
        assert_eq!(r.dropped_keys, 1);
        assert!(matches!(read_tsv("a\tb\n", "u", &g, KeyPolicy::Strict), Err(CorpusError::Malformed { line: 1, .. })));
    }

    #[test]
    fn keys_fill_in_lemma_and_pos() {
        let g = fragment();
        let h = key(&g, "help", PartOfSpeech::Verb, 0);
        let (c, r) = read_tsv(&format!("helped\t\t\t{h}\nhelps\thelp\tNN\t{h}\n"), "k", &g, KeyPolicy::Strict).unwrap();
        let toks: Vec<&Token> = c.tokens().collect();
        assert_eq!(toks[0].lemma.as_deref(), Some("help"));
        assert_eq!(toks[0].pos, Some(PartOfSpeech::Verb));
        assert_eq!(toks[1].pos, Some(PartOfSpeech::Verb));
        assert_eq!(r.overridden, 1);
    }

    #[test]
    fn ufsac_subset() {
        let g = fragment();
        let m1 = key(&g, "mouse", PartOfSpeech::Noun, 0);
        let h = key(&g, "help", PartOfSpeech::Verb, 0);
        let xml = format!(
            r#"<?xml version="1.0" encoding="UTF-8"?>
<corpus source="fx"><document><paragraph>
<sentence><word surface_form="The"/><word surface_form="mouse" lemma="mouse" pos="NN" wn30_key="{m1}" extra="x"/></sentence>
<sentence><word surface_form="help" lemma="help" pos="VB" wn30_key="{h}" id="d0.s1.t0"></word><word surface_form="&amp;"/></sentence>
</paragraph></document></corpus>"#
        );
        let (c, _) = read_ufsac(&xml, "fx", &g, KeyPolicy::Strict).unwrap();
        assert_eq!(c.sentences.len(), 2);
        assert_eq!(c.annotated_count(), 2);
        assert_eq!(c.sentences[1][0].instance_id.as_deref(), Some("d0.s1.t0"));
        assert_eq!(c.sentences[1][1].surface, "&");
        assert!(matches!(
            read_ufsac("<corpus><word></corpus>", "b", &g, KeyPolicy::Strict),
            Err(CorpusError::Xml { .. })
        ));
    }

    #[test]
    fn coverage_counts_distinct_tags() {
        let g = fragment();
        let (c, _) = read_tsv(&sample(&g), "fx", &g, KeyPolicy::Strict).unwrap();
        let id = identity_mapping(&g);
        assert_eq!(observed_tags(&c, &id).len(), 3);
        let cov = inventory_coverage(&c, &id);
        assert!((cov - 3.0 / g.sense_count() as f64).abs() < 1e-12);
        let syn = compress_synonymy(&g);
        assert!(observed_tags(&c, &syn).len() <= 3);
    }
}
